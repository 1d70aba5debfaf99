//! Prompt selection methods M0–M4, input composition, and outcome adapters.
//!
//! Selection and composition are pure given a store snapshot and a seed, so
//! trials against independent adapters can run in parallel.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::checklist::validate;
use crate::error::{CommonsError, Result};
use crate::prompt::{Prompt, PromptDraft, PromptId, Status};
use crate::rng::XorShift64Star;
use crate::store::{QueryFilter, Store};

/// Instruction prepended to ensemble inputs.
pub const AGGREGATOR_INSTRUCTION: &str = "Deliberate and propose a compromise.";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Method {
    /// Single configured baseline prompt.
    M0,
    /// Uniform draw over all merged prompts.
    M1,
    /// Uniform draw over the checklist-passing merged subset.
    M2,
    /// As M2, excluding prompts with an unresolved incident.
    M3,
    /// Stratified ensemble of k prompts across author groups.
    M4 { k: usize },
}

impl Method {
    pub fn label(&self) -> &'static str {
        match self {
            Method::M0 => "M0",
            Method::M1 => "M1",
            Method::M2 => "M2",
            Method::M3 => "M3",
            Method::M4 { .. } => "M4",
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let Method::M4 { k } = self {
            if *k < 2 {
                return Err(CommonsError::Config(format!(
                    "M4 ensemble size must be at least 2, got {k}"
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Method {
    type Err = CommonsError;

    /// `M4` defaults to an ensemble of 2; callers that want a larger k set
    /// it explicitly.
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "M0" => Ok(Method::M0),
            "M1" => Ok(Method::M1),
            "M2" => Ok(Method::M2),
            "M3" => Ok(Method::M3),
            "M4" => Ok(Method::M4 { k: 2 }),
            other => Err(CommonsError::Parse(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComposedInput {
    pub method: Method,
    pub benchmark_item_id: String,
    /// Ordered provenance; outcomes trace back to these prompt ids.
    pub prompt_refs: Vec<PromptId>,
    pub text: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Left,
    Right,
    Neutral,
}

impl Outcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            Outcome::Left => "left",
            Outcome::Right => "right",
            Outcome::Neutral => "neutral",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Outcome {
    type Err = CommonsError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "left" => Ok(Outcome::Left),
            "right" => Ok(Outcome::Right),
            "neutral" => Ok(Outcome::Neutral),
            other => Err(CommonsError::Parse(format!("unknown outcome {other:?}"))),
        }
    }
}

/// Map free-form adapter text to an outcome label: first case-insensitive
/// occurrence of "neutral"/"compromise" wins, then "left", then "right".
pub fn parse_outcome_text(body: &str) -> Result<Outcome> {
    let lower = body.to_lowercase();
    if lower.contains("neutral") || lower.contains("compromise") {
        Ok(Outcome::Neutral)
    } else if lower.contains("left") {
        Ok(Outcome::Left)
    } else if lower.contains("right") {
        Ok(Outcome::Right)
    } else {
        Err(CommonsError::AdapterUnavailable(format!(
            "no outcome label in response {body:?}"
        )))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutcomeRecord {
    pub method: Method,
    pub item_id: String,
    pub prompt_refs: Vec<PromptId>,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkItem {
    pub item_id: String,
    pub text: String,
    /// Option texts in label order: left, right, neutral.
    pub options: [String; 3],
}

/// Parse a line-delimited JSON benchmark item file.
pub fn parse_benchmark_items(content: &str) -> Result<Vec<BenchmarkItem>> {
    let mut items = Vec::new();
    for (n, line) in content.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let item: BenchmarkItem = serde_json::from_str(line)
            .map_err(|e| CommonsError::Parse(format!("benchmark item line {}: {e}", n + 1)))?;
        items.push(item);
    }
    if items.is_empty() {
        return Err(CommonsError::EmptyInput("benchmark item file".into()));
    }
    Ok(items)
}

// ── eligibility pools ──────────────────────────────────────────────────

/// All merged prompts, ordered by id.
pub fn merged_pool(store: &Store) -> Vec<&Prompt> {
    store.query(&QueryFilter { status: Some(Status::Merged), ..Default::default() })
}

/// Merged prompts that pass the full checklist.
pub fn curated_pool(store: &Store) -> Vec<&Prompt> {
    merged_pool(store)
        .into_iter()
        .filter(|p| validate(&PromptDraft::from(*p), store).accepted())
        .collect()
}

/// Curated pool minus prompts with an unresolved incident in the veto log.
pub fn veto_pool(store: &Store) -> Vec<&Prompt> {
    curated_pool(store)
        .into_iter()
        .filter(|p| {
            !store
                .incidents()
                .any(|i| i.prompt_ref == p.id.0 && i.state.is_unresolved())
        })
        .collect()
}

/// Select prompts for one trial. Deterministic given (seed, pool contents).
pub fn select(method: Method, store: &Store, rng: &mut XorShift64Star) -> Result<Vec<Prompt>> {
    method.validate()?;
    match method {
        Method::M0 => {
            let id = store.config.baseline_prompt.as_ref().ok_or_else(|| {
                CommonsError::Config("M0 requires a configured baseline_prompt".into())
            })?;
            Ok(vec![store.get(id)?.clone()])
        }
        Method::M1 => uniform_one(&merged_pool(store), rng),
        Method::M2 => uniform_one(&curated_pool(store), rng),
        Method::M3 => uniform_one(&veto_pool(store), rng),
        Method::M4 { k } => stratified(&merged_pool(store), k, rng),
    }
}

fn uniform_one(pool: &[&Prompt], rng: &mut XorShift64Star) -> Result<Vec<Prompt>> {
    if pool.is_empty() {
        return Err(CommonsError::EmptyPool);
    }
    Ok(vec![pool[rng.next_below(pool.len())].clone()])
}

/// Stratified draw: visit author groups in a seeded random order, taking one
/// uniform prompt per group until k are collected; if the groups exhaust
/// first, continue uniform over the remaining unselected prompts.
fn stratified(pool: &[&Prompt], k: usize, rng: &mut XorShift64Star) -> Result<Vec<Prompt>> {
    if pool.is_empty() || pool.len() < k {
        return Err(CommonsError::EmptyPool);
    }
    let mut by_group: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (idx, prompt) in pool.iter().enumerate() {
        for group in &prompt.author_groups {
            by_group.entry(group.0.as_str()).or_default().push(idx);
        }
    }
    let mut groups: Vec<&str> = by_group.keys().copied().collect();
    rng.shuffle(&mut groups);

    let mut taken = vec![false; pool.len()];
    let mut selected = Vec::with_capacity(k);
    for group in groups {
        if selected.len() == k {
            break;
        }
        let candidates: Vec<usize> = by_group[group]
            .iter()
            .copied()
            .filter(|&i| !taken[i])
            .collect();
        if candidates.is_empty() {
            continue;
        }
        let idx = candidates[rng.next_below(candidates.len())];
        taken[idx] = true;
        selected.push(pool[idx].clone());
    }
    while selected.len() < k {
        let remaining: Vec<usize> = (0..pool.len()).filter(|&i| !taken[i]).collect();
        let idx = remaining[rng.next_below(remaining.len())];
        taken[idx] = true;
        selected.push(pool[idx].clone());
    }
    Ok(selected)
}

/// Compose the model input. Single-prompt methods concatenate prompt and
/// item; ensembles prepend the aggregator instruction and number the
/// prompts so composition is injective on ordered selections.
pub fn compose(method: Method, selection: &[Prompt], item: &BenchmarkItem) -> Result<ComposedInput> {
    if selection.is_empty() {
        return Err(CommonsError::EmptyPool);
    }
    let text = if selection.len() == 1 {
        format!("{}\n\n{}", selection[0].text, item.text)
    } else {
        let mut out = String::from(AGGREGATOR_INSTRUCTION);
        out.push('\n');
        for (i, prompt) in selection.iter().enumerate() {
            out.push_str(&format!("{}. {}\n", i + 1, prompt.text));
        }
        out.push('\n');
        out.push_str(&item.text);
        out
    };
    Ok(ComposedInput {
        method,
        benchmark_item_id: item.item_id.clone(),
        prompt_refs: selection.iter().map(|p| p.id.clone()).collect(),
        text,
    })
}

// ── adapters ───────────────────────────────────────────────────────────

pub trait Adapter {
    fn complete(&self, input: &ComposedInput) -> Result<Outcome>;
}

/// Replays outcomes from a fixture log keyed by (method, item id).
pub struct ReplayAdapter {
    outcomes: BTreeMap<(String, String), Outcome>,
}

impl ReplayAdapter {
    pub fn from_log(content: &str) -> Result<Self> {
        let mut outcomes = BTreeMap::new();
        for record in parse_outcome_log(content)? {
            outcomes.insert((record.method.label().to_string(), record.item_id), record.outcome);
        }
        Ok(ReplayAdapter { outcomes })
    }
}

impl Adapter for ReplayAdapter {
    fn complete(&self, input: &ComposedInput) -> Result<Outcome> {
        self.outcomes
            .get(&(input.method.label().to_string(), input.benchmark_item_id.clone()))
            .copied()
            .ok_or_else(|| {
                CommonsError::MissingFixture(format!(
                    "{},{}",
                    input.method,
                    input.benchmark_item_id
                ))
            })
    }
}

/// Deterministic offline adapter: outcome = hash of the composed text mod 3.
pub struct StubAdapter;

impl Adapter for StubAdapter {
    fn complete(&self, input: &ComposedInput) -> Result<Outcome> {
        let digest = Sha256::digest(input.text.as_bytes());
        let word = u64::from_be_bytes(digest[..8].try_into().expect("digest width"));
        Ok(match word % 3 {
            0 => Outcome::Left,
            1 => Outcome::Right,
            _ => Outcome::Neutral,
        })
    }
}

/// Optional external completion endpoint (`http://host:port/path`). The
/// response body is mapped to a label by `parse_outcome_text`.
pub struct HttpAdapter {
    host: String,
    port: u16,
    path: String,
}

impl HttpAdapter {
    pub fn new(endpoint: &str) -> Result<Self> {
        let rest = endpoint
            .strip_prefix("http://")
            .ok_or_else(|| CommonsError::Config(format!("unsupported endpoint {endpoint:?}")))?;
        let (authority, path) = match rest.find('/') {
            Some(i) => (&rest[..i], rest[i..].to_string()),
            None => (rest, "/".to_string()),
        };
        let (host, port) = match authority.rsplit_once(':') {
            Some((h, p)) => (
                h.to_string(),
                p.parse::<u16>()
                    .map_err(|_| CommonsError::Config(format!("bad port in {endpoint:?}")))?,
            ),
            None => (authority.to_string(), 80),
        };
        Ok(HttpAdapter { host, port, path })
    }
}

impl Adapter for HttpAdapter {
    fn complete(&self, input: &ComposedInput) -> Result<Outcome> {
        use std::io::{Read, Write};
        let unavailable = |e: std::io::Error| CommonsError::AdapterUnavailable(e.to_string());
        let mut stream = std::net::TcpStream::connect((self.host.as_str(), self.port))
            .map_err(unavailable)?;
        stream
            .set_read_timeout(Some(std::time::Duration::from_secs(10)))
            .map_err(unavailable)?;
        let body = input.text.as_bytes();
        let request = format!(
            "POST {} HTTP/1.1\r\nHost: {}\r\nContent-Type: text/plain\r\nContent-Length: {}\r\nConnection: close\r\n\r\n",
            self.path,
            self.host,
            body.len()
        );
        stream.write_all(request.as_bytes()).map_err(unavailable)?;
        stream.write_all(body).map_err(unavailable)?;
        let mut response = String::new();
        stream.read_to_string(&mut response).map_err(unavailable)?;
        let payload = response
            .split_once("\r\n\r\n")
            .map(|(_, b)| b)
            .unwrap_or(&response);
        parse_outcome_text(payload)
    }
}

/// Run one trial against an adapter, retaining provenance.
pub fn run_trial(input: &ComposedInput, adapter: &dyn Adapter) -> Result<OutcomeRecord> {
    let outcome = adapter.complete(input)?;
    Ok(OutcomeRecord {
        method: input.method,
        item_id: input.benchmark_item_id.clone(),
        prompt_refs: input.prompt_refs.clone(),
        outcome,
    })
}

/// Parse a fixture outcome log of `method,item_id,outcome` lines.
pub fn parse_outcome_log(content: &str) -> Result<Vec<OutcomeRecord>> {
    let mut records = Vec::new();
    for (n, line) in content.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.splitn(3, ',');
        let (method, item, outcome) = match (parts.next(), parts.next(), parts.next()) {
            (Some(m), Some(i), Some(o)) => (m, i, o),
            _ => {
                return Err(CommonsError::Parse(format!(
                    "outcome log line {}: expected method,item_id,outcome",
                    n + 1
                )))
            }
        };
        records.push(OutcomeRecord {
            method: method.trim().parse()?,
            item_id: item.trim().to_string(),
            prompt_refs: Vec::new(),
            outcome: outcome.trim().parse()?,
        });
    }
    if records.is_empty() {
        return Err(CommonsError::EmptyInput("outcome log".into()));
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clock::SimClock;
    use crate::config::{GovernanceConfig, GovernanceState};
    use crate::governance::{Engine, ReviewDecision};

    fn draft(text: &str, groups: &[&str], claim: &str) -> PromptDraft {
        PromptDraft {
            id: None,
            text: text.to_string(),
            author_groups: groups.iter().map(|s| s.to_string()).collect(),
            locale: "Plateau".into(),
            value_claim: claim.into(),
            justification: "test".into(),
            accessibility_tags: vec![],
            licence: "CC-BY-4.0".into(),
            counter_prompt_ref: None,
        }
    }

    fn item() -> BenchmarkItem {
        BenchmarkItem {
            item_id: "item-007".into(),
            text: "Should the city pedestrianize Rue Sainte-Catherine?".into(),
            options: ["Yes, fully".into(), "No, keep cars".into(), "Partial compromise".into()],
        }
    }

    /// Store with one merged, checklist-clean prompt per group, plus one
    /// shared counter-prompt (differing claim) that is never flagged.
    fn six_group_store() -> Store {
        let mut store = Store::in_memory(GovernanceConfig::default());
        let clock = SimClock::new(0);
        let groups = ["seniors", "women", "ethnic_minority", "disability", "lgbtq", "religious_minority"];
        let counter = store
            .put(&draft("prioritize car throughput on corridors", &["practitioner"], "transit"), "a", &clock)
            .unwrap();
        let counter_id = counter.id.0.clone();
        let mut ids = Vec::new();
        for (i, g) in groups.iter().enumerate() {
            let mut d = draft(&format!("keep corridor {i} welcoming for all"), &[g], "safety");
            d.counter_prompt_ref = Some(counter_id.clone());
            ids.push(store.put(&d, "a", &clock).unwrap().id.0.clone());
        }
        // Give the counter-prompt its own counter so it is checklist-clean.
        let mut d = PromptDraft::from(store.get(&counter_id).unwrap());
        d.counter_prompt_ref = Some(ids[0].clone());
        store.put(&d, "a", &clock).unwrap();
        {
            let mut engine = Engine::new(&mut store, &clock);
            for id in ids.iter().chain([&counter_id]) {
                engine.propose(id, "a").unwrap();
                engine.merge(id, "m", "seed").unwrap();
            }
        }
        store
    }

    /// Group prompts only, in insertion order (counter-prompt excluded).
    fn group_prompt_ids(store: &Store) -> Vec<String> {
        merged_pool(store)
            .iter()
            .filter(|p| !p.has_group("practitioner"))
            .map(|p| p.id.0.clone())
            .collect()
    }

    #[test]
    fn m0_returns_baseline_regardless_of_seed() {
        let mut store = six_group_store();
        let baseline = merged_pool(&store)[0].id.0.clone();
        store.config.baseline_prompt = Some(baseline.clone());
        for seed in [1u64, 99, 12345] {
            let mut rng = XorShift64Star::new(seed);
            let sel = select(Method::M0, &store, &mut rng).unwrap();
            assert_eq!(sel.len(), 1);
            assert_eq!(sel[0].id.0, baseline);
        }
    }

    #[test]
    fn m0_without_baseline_is_config_error() {
        let store = six_group_store();
        let mut rng = XorShift64Star::new(1);
        assert!(matches!(select(Method::M0, &store, &mut rng), Err(CommonsError::Config(_))));
    }

    #[test]
    fn m1_empty_pool() {
        let store = Store::in_memory(GovernanceConfig::default());
        let mut rng = XorShift64Star::new(1);
        assert!(matches!(select(Method::M1, &store, &mut rng), Err(CommonsError::EmptyPool)));
    }

    #[test]
    fn m3_excludes_unresolved_incidents() {
        let mut store = six_group_store();
        store.config.state = GovernanceState::VetoEnabled;
        store.config.recognized_orgs.insert("org-a".into());
        let ids = group_prompt_ids(&store);
        let clock = SimClock::new(0);

        // Quarantine five of the six group prompts; resolve one of the
        // incidents as dismissed so its prompt returns to the pool.
        let mut incident_ids = Vec::new();
        {
            let mut engine = Engine::new(&mut store, &clock);
            for id in &ids[..5] {
                incident_ids.push(engine.flag(id, "org-a", "harm").unwrap().id.0.clone());
            }
            engine
                .review(&incident_ids[0], "m", ReviewDecision::Dismiss, "no harm")
                .unwrap();
        }
        // Pool: the dismissed prompt, the never-flagged prompt, the counter.
        let pool: Vec<String> = veto_pool(&store).iter().map(|p| p.id.0.clone()).collect();
        assert_eq!(pool.len(), 3);
        assert!(pool.contains(&ids[0]));
        assert!(pool.contains(&ids[5]));
    }

    #[test]
    fn m3_single_quarantined_prompt_is_empty_pool() {
        let mut store = six_group_store();
        store.config.state = GovernanceState::VetoEnabled;
        store.config.recognized_orgs.insert("org-a".into());
        let ids = group_prompt_ids(&store);
        let clock = SimClock::new(0);
        {
            // Retire five group prompts (confirming their incidents) and
            // quarantine everything else that remains merged.
            let mut engine = Engine::new(&mut store, &clock);
            for id in &ids[..5] {
                let inc = engine.flag(id, "org-a", "harm").unwrap();
                engine.review(&inc.id.0.clone(), "m", ReviewDecision::Remediate, "confirmed").unwrap();
            }
            let rest: Vec<String> =
                merged_pool(engine.store).iter().map(|p| p.id.0.clone()).collect();
            for id in &rest {
                engine.flag(id, "org-a", "harm").unwrap();
            }
        }
        let mut rng = XorShift64Star::new(1);
        assert!(matches!(select(Method::M3, &store, &mut rng), Err(CommonsError::EmptyPool)));
    }

    #[test]
    fn m4_six_groups_all_distinct() {
        let store = six_group_store();
        let mut rng = XorShift64Star::new(7);
        let sel = select(Method::M4 { k: 6 }, &store, &mut rng).unwrap();
        assert_eq!(sel.len(), 6);
        let groups: std::collections::BTreeSet<&str> = sel
            .iter()
            .map(|p| p.author_groups.iter().next().unwrap().0.as_str())
            .collect();
        assert_eq!(groups.len(), 6);
    }

    #[test]
    fn m4_k_must_be_at_least_two() {
        let store = six_group_store();
        let mut rng = XorShift64Star::new(7);
        assert!(select(Method::M4 { k: 1 }, &store, &mut rng).is_err());
    }

    #[test]
    fn selection_is_seed_deterministic() {
        let store = six_group_store();
        for method in [Method::M1, Method::M2, Method::M3, Method::M4 { k: 3 }] {
            let a = select(method, &store, &mut XorShift64Star::new(42)).unwrap();
            let b = select(method, &store, &mut XorShift64Star::new(42)).unwrap();
            assert_eq!(a, b, "{method} not deterministic");
        }
    }

    #[test]
    fn compose_single_is_concatenation() {
        let store = six_group_store();
        let prompt = merged_pool(&store)[0].clone();
        let composed = compose(Method::M1, &[prompt.clone()], &item()).unwrap();
        assert_eq!(composed.text, format!("{}\n\n{}", prompt.text, item().text));
        assert_eq!(composed.prompt_refs, vec![prompt.id]);
    }

    #[test]
    fn compose_ensemble_leads_with_instruction_and_is_injective() {
        let store = six_group_store();
        let pool: Vec<Prompt> = merged_pool(&store).into_iter().cloned().collect();
        let ab = compose(Method::M4 { k: 2 }, &pool[..2], &item()).unwrap();
        assert!(ab.text.starts_with(AGGREGATOR_INSTRUCTION));
        let ba = compose(
            Method::M4 { k: 2 },
            &[pool[1].clone(), pool[0].clone()],
            &item(),
        )
        .unwrap();
        assert_ne!(ab.text, ba.text);
    }

    #[test]
    fn replay_adapter_lookup_and_miss() {
        let adapter = ReplayAdapter::from_log("M0,item-007,left\nM1,item-007,neutral\n").unwrap();
        let store = six_group_store();
        let prompt = merged_pool(&store)[0].clone();
        let composed = compose(Method::M0, &[prompt.clone()], &item()).unwrap();
        let record = run_trial(&composed, &adapter).unwrap();
        assert_eq!(record.outcome, Outcome::Left);
        assert_eq!(record.prompt_refs, vec![prompt.id]);

        let mut missing = composed;
        missing.benchmark_item_id = "item-404".into();
        assert!(matches!(
            run_trial(&missing, &adapter),
            Err(CommonsError::MissingFixture(_))
        ));
    }

    #[test]
    fn stub_adapter_is_deterministic() {
        let store = six_group_store();
        let prompt = merged_pool(&store)[0].clone();
        let composed = compose(Method::M1, &[prompt], &item()).unwrap();
        let a = StubAdapter.complete(&composed).unwrap();
        let b = StubAdapter.complete(&composed).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn outcome_text_parsing_priority() {
        assert_eq!(parse_outcome_text("clearly Neutral here").unwrap(), Outcome::Neutral);
        assert_eq!(parse_outcome_text("a compromise between left and right").unwrap(), Outcome::Neutral);
        assert_eq!(parse_outcome_text("the LEFT option").unwrap(), Outcome::Left);
        assert_eq!(parse_outcome_text("go right").unwrap(), Outcome::Right);
        assert!(matches!(
            parse_outcome_text("no label at all"),
            Err(CommonsError::AdapterUnavailable(_))
        ));
    }

    #[test]
    fn outcome_log_round_trip() {
        let records = parse_outcome_log("M0,item-001,left\nM4,item-002,neutral\n").unwrap();
        assert_eq!(records.len(), 2);
        assert_eq!(records[0].method, Method::M0);
        assert_eq!(records[1].outcome, Outcome::Neutral);
        assert!(parse_outcome_log("garbage line").is_err());
    }

    #[test]
    fn benchmark_items_parse() {
        let line = r#"{"item_id":"item-001","text":"Q?","options":["L","R","N"]}"#;
        let items = parse_benchmark_items(line).unwrap();
        assert_eq!(items[0].item_id, "item-001");
        assert!(parse_benchmark_items("").is_err());
    }
}
