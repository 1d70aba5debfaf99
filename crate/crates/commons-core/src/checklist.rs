//! Public curation checklist as a deterministic rule engine.
//!
//! Every rule produces findings rather than failures; a prompt is rejected
//! iff at least one finding carries error severity. The jargon guideline in
//! the checklist is not machine-checked: there is no operational definition,
//! so it stays a documentation-level note.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use regex::Regex;
use serde::{Deserialize, Serialize};

use crate::error::{CommonsError, Result};
use crate::prompt::{Licence, PromptDraft, Status};
use crate::store::Store;

pub const MAX_WORDS_LIMIT: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RuleId {
    LocalePresent,
    MaxWords,
    NoPii,
    ValueClaimVocab,
    AccessibilityTags,
    SafetyInclusion,
    CounterPromptExists,
    LicenceAttached,
}

impl RuleId {
    pub fn as_str(&self) -> &'static str {
        match self {
            RuleId::LocalePresent => "LOCALE_PRESENT",
            RuleId::MaxWords => "MAX_WORDS",
            RuleId::NoPii => "NO_PII",
            RuleId::ValueClaimVocab => "VALUE_CLAIM_VOCAB",
            RuleId::AccessibilityTags => "ACCESSIBILITY_TAGS",
            RuleId::SafetyInclusion => "SAFETY_INCLUSION",
            RuleId::CounterPromptExists => "COUNTER_PROMPT_EXISTS",
            RuleId::LicenceAttached => "LICENCE_ATTACHED",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RuleId {
    type Err = CommonsError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "LOCALE_PRESENT" => Ok(RuleId::LocalePresent),
            "MAX_WORDS" => Ok(RuleId::MaxWords),
            "NO_PII" => Ok(RuleId::NoPii),
            "VALUE_CLAIM_VOCAB" => Ok(RuleId::ValueClaimVocab),
            "ACCESSIBILITY_TAGS" => Ok(RuleId::AccessibilityTags),
            "SAFETY_INCLUSION" => Ok(RuleId::SafetyInclusion),
            "COUNTER_PROMPT_EXISTS" => Ok(RuleId::CounterPromptExists),
            "LICENCE_ATTACHED" => Ok(RuleId::LicenceAttached),
            other => Err(CommonsError::Parse(format!("unknown rule {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub rule: RuleId,
    pub severity: Severity,
    pub message: String,
    /// Byte offsets into the prompt text, when the finding points at a span.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub span: Option<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Accept,
    Reject,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub prompt_id: String,
    pub verdict: Verdict,
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn accepted(&self) -> bool {
        self.verdict == Verdict::Accept
    }

    pub fn has_error(&self, rule: RuleId) -> bool {
        self.findings
            .iter()
            .any(|f| f.rule == rule && f.severity == Severity::Error)
    }

    /// Spam-and-safety subset used for merges in the open governance state.
    pub fn passes_light_moderation(&self) -> bool {
        !self.has_error(RuleId::NoPii) && !self.has_error(RuleId::SafetyInclusion)
    }
}

/// Count of maximal runs of non-whitespace characters.
pub fn word_count(text: &str) -> usize {
    text.split_whitespace().count()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PiiCategory {
    Email,
    Phone,
    CivicAddress,
}

impl fmt::Display for PiiCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PiiCategory::Email => "email",
            PiiCategory::Phone => "phone",
            PiiCategory::CivicAddress => "civic_address",
        })
    }
}

static EMAIL_RE: OnceLock<Regex> = OnceLock::new();
static PHONE_RE: OnceLock<Regex> = OnceLock::new();

fn email_re() -> &'static Regex {
    EMAIL_RE.get_or_init(|| {
        Regex::new(r"[A-Za-z0-9._%+\-]+@[A-Za-z0-9.\-]+\.[A-Za-z]{2,}").unwrap()
    })
}

fn phone_re() -> &'static Regex {
    // 10 or more digits with optional single separators.
    PHONE_RE.get_or_init(|| Regex::new(r"\+?\d(?:[-.\s()]?\d){9,}").unwrap())
}

/// High-precision PII heuristics: email, phone, civic address.
/// Spans are byte offsets into `text`.
pub fn detect_pii(text: &str, street_types: &[String]) -> Vec<(PiiCategory, (usize, usize))> {
    let mut found = Vec::new();
    for m in email_re().find_iter(text) {
        found.push((PiiCategory::Email, (m.start(), m.end())));
    }
    let email_spans: Vec<(usize, usize)> = found.iter().map(|(_, s)| *s).collect();
    for m in phone_re().find_iter(text) {
        // Digit runs inside an already-flagged email stay a single finding.
        if !email_spans.iter().any(|(s, e)| m.start() >= *s && m.end() <= *e) {
            found.push((PiiCategory::Phone, (m.start(), m.end())));
        }
    }
    if !street_types.is_empty() {
        let street_alt = street_types
            .iter()
            .map(|s| regex::escape(&s.to_lowercase()))
            .collect::<Vec<_>>()
            .join("|");
        // A number followed within three tokens by a street-type word.
        let re = Regex::new(&format!(
            r"(?i)\b\d+(?:\s+\S+){{0,2}}\s+(?:{street_alt})\b"
        ))
        .expect("street regex");
        for m in re.find_iter(text) {
            found.push((PiiCategory::CivicAddress, (m.start(), m.end())));
        }
    }
    found.sort_by_key(|(_, span)| *span);
    found
}

/// Evaluate all checklist rules against a draft. The store is consulted only
/// for the counter-prompt rule; all other rules are pure in (draft, config).
pub fn validate(draft: &PromptDraft, store: &Store) -> ValidationReport {
    let config = &store.config;
    let mut findings = Vec::new();
    let mut finding = |rule, severity, message: String, span| {
        findings.push(Finding { rule, severity, message, span });
    };

    // 1. Locale specified.
    if draft.locale.trim().is_empty() {
        finding(
            RuleId::LocalePresent,
            Severity::Error,
            "locale is missing".into(),
            None,
        );
    }

    // 1. Max 60 words (prompt body only; the justification is not counted).
    let words = word_count(&draft.text);
    if words > MAX_WORDS_LIMIT {
        finding(
            RuleId::MaxWords,
            Severity::Error,
            format!("{words} words exceeds the {MAX_WORDS_LIMIT}-word limit"),
            None,
        );
    }

    // 1. No PII.
    for (category, span) in detect_pii(&draft.text, &config.street_types) {
        finding(
            RuleId::NoPii,
            Severity::Error,
            format!("possible {category} in prompt text"),
            Some(span),
        );
    }

    // 2. Value claim from the controlled vocabulary.
    if !config.claim_vocab.contains(&draft.value_claim) {
        finding(
            RuleId::ValueClaimVocab,
            Severity::Error,
            format!("value claim {:?} is not in the controlled vocabulary", draft.value_claim),
            None,
        );
    }

    // 3. Accessibility tags where relevant (advisory).
    if draft.accessibility_tags.is_empty() {
        let lower = draft.text.to_lowercase();
        if let Some(kw) = config.mobility_keywords.iter().find(|kw| lower.contains(kw.as_str())) {
            finding(
                RuleId::AccessibilityTags,
                Severity::Warning,
                format!("text mentions {kw:?} but no accessibility tags are set"),
                None,
            );
        }
    }

    // 4. Safety and inclusion: configurable blocklist escalates to error.
    {
        let lower = draft.text.to_lowercase();
        for term in &config.blocklist {
            if let Some(pos) = lower.find(term.as_str()) {
                finding(
                    RuleId::SafetyInclusion,
                    Severity::Error,
                    format!("text matches blocked phrase {term:?}"),
                    Some((pos, pos + term.len())),
                );
            }
        }
    }

    // 5. At least one counter-prompt with an opposing value claim.
    match &draft.counter_prompt_ref {
        None => finding(
            RuleId::CounterPromptExists,
            Severity::Error,
            "no counter-prompt referenced".into(),
            None,
        ),
        Some(reference) => match store.get(reference) {
            Err(_) => finding(
                RuleId::CounterPromptExists,
                Severity::Error,
                format!("counter-prompt {reference} does not exist"),
                None,
            ),
            Ok(counter) => {
                if !matches!(counter.status, Status::Merged | Status::Proposed) {
                    finding(
                        RuleId::CounterPromptExists,
                        Severity::Error,
                        format!(
                            "counter-prompt {reference} has status {}, expected merged or proposed",
                            counter.status
                        ),
                        None,
                    );
                } else if counter.value_claim.0 == draft.value_claim {
                    finding(
                        RuleId::CounterPromptExists,
                        Severity::Error,
                        format!("counter-prompt {reference} shares the value claim {:?}", draft.value_claim),
                        None,
                    );
                }
            }
        },
    }

    // 6. Licence attached (CC BY or CC BY-SA).
    if Licence::from_str(&draft.licence).is_err() {
        finding(
            RuleId::LicenceAttached,
            Severity::Error,
            format!("licence {:?} is not CC-BY-4.0 or CC-BY-SA-4.0", draft.licence),
            None,
        );
    }

    let verdict = if findings.iter().any(|f| f.severity == Severity::Error) {
        Verdict::Reject
    } else {
        Verdict::Accept
    };
    ValidationReport {
        prompt_id: draft.id.clone().unwrap_or_default(),
        verdict,
        findings,
    }
}
