//! Quantitative measures over trial outcomes, satisfaction scores, and the
//! prompt corpus: proportions and decisiveness, Gini dispersion, Shannon
//! entropy, and normal-approximation confidence intervals.
//!
//! Everything here is a pure function; reductions are order-insensitive.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use unicode_normalization::UnicodeNormalization;

use crate::error::{CommonsError, Result};
use crate::sampler::{Outcome, OutcomeRecord};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutcomeSummary {
    pub method: String,
    pub n: usize,
    pub p_left: f64,
    pub p_right: f64,
    pub p_neutral: f64,
    /// D = 1 − p_neutral.
    pub decisiveness: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupStats {
    pub mean: f64,
    pub sd: f64,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SatisfactionSummary {
    pub method: String,
    pub per_group: BTreeMap<String, GroupStats>,
    pub overall_mean: f64,
    pub overall_sd: f64,
    pub gini_over_group_means: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub n_prompts: usize,
    pub mean_words: f64,
    pub median_words: f64,
    pub entropy_bits: f64,
    pub top_tokens: Vec<(String, usize)>,
    pub term_proportions: BTreeMap<String, f64>,
}

pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Sample standard deviation (n−1 denominator); 0 when n = 1.
pub fn sample_sd(values: &[f64]) -> f64 {
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    let m = mean(values);
    (values.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
}

/// Per-method outcome proportions, in method label order.
pub fn summarize_outcomes(records: &[OutcomeRecord]) -> Result<Vec<OutcomeSummary>> {
    if records.is_empty() {
        return Err(CommonsError::EmptyInput("outcome records".into()));
    }
    let mut buckets: BTreeMap<&'static str, (usize, usize, usize)> = BTreeMap::new();
    for record in records {
        let bucket = buckets.entry(record.method.label()).or_default();
        match record.outcome {
            Outcome::Left => bucket.0 += 1,
            Outcome::Right => bucket.1 += 1,
            Outcome::Neutral => bucket.2 += 1,
        }
    }
    Ok(buckets
        .into_iter()
        .map(|(method, (left, right, neutral))| {
            let n = left + right + neutral;
            let p_neutral = neutral as f64 / n as f64;
            OutcomeSummary {
                method: method.to_string(),
                n,
                p_left: left as f64 / n as f64,
                p_right: right as f64 / n as f64,
                p_neutral,
                decisiveness: 1.0 - p_neutral,
            }
        })
        .collect())
}

/// Gini coefficient G = Σᵢ Σⱼ |xᵢ − xⱼ| / (2 n² μ), computed via the sorted
/// closed form; O(n log n).
pub fn gini(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(CommonsError::EmptyInput("gini values".into()));
    }
    if values.iter().any(|v| *v < 0.0 || !v.is_finite()) {
        return Err(CommonsError::DegenerateInput(
            "gini requires finite non-negative values".into(),
        ));
    }
    let n = values.len() as f64;
    let total: f64 = values.iter().sum();
    if total <= 0.0 {
        return Err(CommonsError::DegenerateInput("gini requires positive mean".into()));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let weighted: f64 = sorted
        .iter()
        .enumerate()
        .map(|(i, v)| (i as f64 + 1.0) * v)
        .sum();
    Ok((2.0 * weighted) / (n * total) - (n + 1.0) / n)
}

/// Per-group and pooled Likert statistics with group-mean dispersion.
pub fn likert_summary(
    method: &str,
    scores: &BTreeMap<String, Vec<i64>>,
) -> Result<SatisfactionSummary> {
    if scores.is_empty() || scores.values().any(|v| v.is_empty()) {
        return Err(CommonsError::EmptyInput("likert scores".into()));
    }
    for score in scores.values().flatten() {
        if !(1..=7).contains(score) {
            return Err(CommonsError::LikertRange(*score));
        }
    }
    let mut per_group = BTreeMap::new();
    let mut group_means = Vec::new();
    let mut pooled = Vec::new();
    for (group, values) in scores {
        let values: Vec<f64> = values.iter().map(|v| *v as f64).collect();
        let m = mean(&values);
        per_group.insert(
            group.clone(),
            GroupStats { mean: m, sd: sample_sd(&values), n: values.len() },
        );
        group_means.push(m);
        pooled.extend(values);
    }
    Ok(SatisfactionSummary {
        method: method.to_string(),
        overall_mean: mean(&pooled),
        overall_sd: sample_sd(&pooled),
        gini_over_group_means: gini(&group_means)?,
        per_group,
    })
}

/// Lowercase-NFC tokenization keeping alphanumerics, '+', and internal
/// hyphens; "lgbtq+" and "step-free" are single tokens.
pub fn tokenize(text: &str) -> Vec<String> {
    let normalized: String = text.nfc().collect::<String>().to_lowercase();
    normalized
        .split_whitespace()
        .filter_map(|word| {
            let kept: String = word
                .chars()
                .filter(|c| c.is_alphanumeric() || *c == '+' || *c == '-')
                .collect();
            let trimmed = kept.trim_matches('-');
            (!trimmed.is_empty()).then(|| trimmed.to_string())
        })
        .collect()
}

/// Shannon entropy in bits of the token relative-frequency distribution.
pub fn entropy_bits(counts: &BTreeMap<String, usize>) -> f64 {
    let total: usize = counts.values().sum();
    if total == 0 {
        return 0.0;
    }
    counts
        .values()
        .map(|&c| {
            let p = c as f64 / total as f64;
            -p * p.log2()
        })
        .sum()
}

/// Corpus-level statistics. `terms` selects which normalized terms to report
/// per-prompt containment proportions for.
pub fn corpus_stats(prompts: &[String], terms: &[String]) -> Result<CorpusStats> {
    if prompts.is_empty() {
        return Err(CommonsError::EmptyInput("corpus".into()));
    }
    let tokenized: Vec<Vec<String>> = prompts.iter().map(|p| tokenize(p)).collect();
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    let mut lengths: Vec<f64> = Vec::with_capacity(prompts.len());
    for tokens in &tokenized {
        lengths.push(tokens.len() as f64);
        for token in tokens {
            *counts.entry(token.clone()).or_default() += 1;
        }
    }
    lengths.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let median_words = if lengths.len() % 2 == 1 {
        lengths[lengths.len() / 2]
    } else {
        (lengths[lengths.len() / 2 - 1] + lengths[lengths.len() / 2]) / 2.0
    };

    let mut top: Vec<(String, usize)> =
        counts.iter().map(|(t, c)| (t.clone(), *c)).collect();
    top.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    top.truncate(10);

    let mut term_proportions = BTreeMap::new();
    for term in terms {
        let needle = tokenize(term);
        let hits = tokenized
            .iter()
            .filter(|tokens| needle.iter().all(|t| tokens.contains(t)))
            .count();
        term_proportions.insert(term.clone(), hits as f64 / prompts.len() as f64);
    }

    Ok(CorpusStats {
        n_prompts: prompts.len(),
        mean_words: mean(&lengths),
        median_words,
        entropy_bits: entropy_bits(&counts),
        top_tokens: top,
        term_proportions,
    })
}

/// 95% confidence interval: (mean, 1.96 · s/√n) with sample sd.
pub fn ci95(samples: &[f64]) -> Result<(f64, f64)> {
    if samples.len() < 2 {
        return Err(CommonsError::InsufficientData(format!(
            "ci95 needs at least 2 samples, got {}",
            samples.len()
        )));
    }
    let m = mean(samples);
    let half = 1.96 * sample_sd(samples) / (samples.len() as f64).sqrt();
    Ok((m, half))
}
