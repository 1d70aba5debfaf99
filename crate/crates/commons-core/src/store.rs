//! Content-addressed, semantically versioned prompt storage with an
//! append-only audit log.
//!
//! On-disk layout under a repository root:
//!   prompts/<id>.prompt   front-matter + raw text
//!   audit.log             line-delimited JSON AuditEntry records
//!   incidents.log         line-delimited JSON Incident snapshots (last wins)
//!   config.commons        key: value governance configuration
//!
//! Single-writer: all mutations are expected to be serialized by the caller
//! (the CLI takes an exclusive repository lock). Reads are safe to share.

use std::collections::BTreeMap;
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::ops::{Bound, RangeBounds};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::audit::{rationale_detail, AuditAction, AuditEntry};
use crate::checklist::ValidationReport;
use crate::clock::Clock;
use crate::config::GovernanceConfig;
use crate::error::{CommonsError, Result};
use crate::incident::{Incident, IncidentId};
use crate::prompt::{
    compute_id, AccessTag, GroupTag, Prompt, PromptDraft, PromptId, Status, ValueClaim, Version,
};

/// Optional filters for [`Store::query`]; all present filters must match.
#[derive(Debug, Clone, Default)]
pub struct QueryFilter {
    pub group: Option<String>,
    pub locale: Option<String>,
    pub value_claim: Option<String>,
    pub status: Option<Status>,
}

pub struct Store {
    root: Option<PathBuf>,
    prompts: BTreeMap<PromptId, Prompt>,
    audit: Vec<AuditEntry>,
    incidents: BTreeMap<IncidentId, Incident>,
    /// group -> prompt ids withdrawn by that group's currently active strike.
    active_strikes: BTreeMap<String, Vec<PromptId>>,
    /// Checklist reports recorded at merge time (in-memory evidence trail).
    merge_reports: BTreeMap<PromptId, ValidationReport>,
    pub config: GovernanceConfig,
}

impl Store {
    /// A store with no backing directory; used by tests and the simulator.
    pub fn in_memory(config: GovernanceConfig) -> Self {
        Store {
            root: None,
            prompts: BTreeMap::new(),
            audit: Vec::new(),
            incidents: BTreeMap::new(),
            active_strikes: BTreeMap::new(),
            merge_reports: BTreeMap::new(),
            config,
        }
    }

    /// Create the on-disk layout for a fresh repository.
    pub fn init(root: &Path, config: GovernanceConfig) -> Result<Self> {
        config.validate()?;
        fs::create_dir_all(root.join("prompts"))?;
        let config_path = root.join("config.commons");
        if config_path.exists() {
            return Err(CommonsError::Config(format!(
                "repository already initialized at {}",
                root.display()
            )));
        }
        fs::write(&config_path, config.to_commons_string())?;
        fs::write(root.join("audit.log"), "")?;
        fs::write(root.join("incidents.log"), "")?;
        let mut store = Store::in_memory(config);
        store.root = Some(root.to_path_buf());
        Ok(store)
    }

    /// Load an existing repository.
    pub fn open(root: &Path) -> Result<Self> {
        let config_path = root.join("config.commons");
        if !config_path.exists() {
            return Err(CommonsError::NotFound(format!(
                "no repository at {} (missing config.commons)",
                root.display()
            )));
        }
        let config = GovernanceConfig::from_commons_str(&fs::read_to_string(&config_path)?)?;
        let mut store = Store::in_memory(config);
        store.root = Some(root.to_path_buf());

        let prompts_dir = root.join("prompts");
        if prompts_dir.exists() {
            let mut paths: Vec<PathBuf> = fs::read_dir(&prompts_dir)?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|e| e == "prompt"))
                .collect();
            paths.sort();
            for path in paths {
                let prompt = parse_prompt_file(&fs::read_to_string(&path)?)?;
                store.prompts.insert(prompt.id.clone(), prompt);
            }
        }

        let audit_path = root.join("audit.log");
        if audit_path.exists() {
            for (n, line) in fs::read_to_string(&audit_path)?.lines().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                let entry: AuditEntry = serde_json::from_str(line).map_err(|e| {
                    CommonsError::Parse(format!("audit.log line {}: {e}", n + 1))
                })?;
                store.audit.push(entry);
            }
        }

        let inc_path = root.join("incidents.log");
        if inc_path.exists() {
            for (n, line) in fs::read_to_string(&inc_path)?.lines().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                let inc: Incident = serde_json::from_str(line).map_err(|e| {
                    CommonsError::Parse(format!("incidents.log line {}: {e}", n + 1))
                })?;
                store.incidents.insert(inc.id.clone(), inc);
            }
        }

        store.rebuild_strikes();
        Ok(store)
    }

    pub fn root(&self) -> Option<&Path> {
        self.root.as_deref()
    }

    fn rebuild_strikes(&mut self) {
        self.active_strikes.clear();
        for entry in &self.audit {
            match entry.action {
                AuditAction::Strike => {
                    if let Some(group) = rationale_detail(&entry.rationale, "group") {
                        self.active_strikes
                            .entry(group.to_string())
                            .or_default()
                            .push(PromptId(entry.subject.clone()));
                    }
                }
                AuditAction::Unstrike => {
                    if let Some(group) = rationale_detail(&entry.rationale, "group") {
                        if let Some(ids) = self.active_strikes.get_mut(group) {
                            ids.retain(|id| id.0 != entry.subject);
                        }
                    }
                }
                _ => {}
            }
        }
    }

    // ── prompts ──────────────────────────────────────────────────────

    /// Insert a new prompt or update an existing one. New prompts enter at
    /// status draft, version 1.0.0. Re-puts of an existing id bump the
    /// version: value-claim or counter-prompt change is major, text change
    /// is minor, any other metadata change is patch.
    pub fn put(&mut self, draft: &PromptDraft, actor: &str, clock: &dyn Clock) -> Result<Prompt> {
        let (text, groups, locale, claim, access, licence, counter) =
            self.validate_draft(draft)?;
        let computed = compute_id(&text, groups.iter().map(|g| g.0.as_str()), &locale)?;

        // Key resolution: an explicit id pins the update target (so text
        // edits preserve identity); otherwise the content address decides.
        let key = match &draft.id {
            Some(given) => {
                let given = PromptId(given.clone());
                if !self.prompts.contains_key(&given) && given != computed {
                    return Err(CommonsError::InvalidPrompt(format!(
                        "id {given} does not match content address {computed}"
                    )));
                }
                given
            }
            None => computed.clone(),
        };

        if let Some(existing) = self.prompts.get(&key).cloned() {
            let mut updated = Prompt {
                id: existing.id.clone(),
                text,
                author_groups: groups,
                locale,
                value_claim: claim,
                justification: draft.justification.clone(),
                accessibility_tags: access,
                licence,
                counter_prompt_ref: counter,
                version: existing.version,
                status: existing.status,
            };
            if updated == existing {
                return Ok(existing);
            }
            let (bump, version) = if updated.value_claim != existing.value_claim
                || updated.counter_prompt_ref != existing.counter_prompt_ref
            {
                ("major", existing.version.bump_major())
            } else if updated.text != existing.text {
                ("minor", existing.version.bump_minor())
            } else {
                ("patch", existing.version.bump_patch())
            };
            updated.version = version;
            self.prompts.insert(key.clone(), updated.clone());
            self.persist_prompt(&updated)?;
            self.append_audit(
                actor,
                AuditAction::Update,
                key.as_str(),
                &format!("updated ({bump} bump to {version})"),
                None,
                clock,
            )?;
            Ok(updated)
        } else {
            let prompt = Prompt {
                id: key.clone(),
                text,
                author_groups: groups,
                locale,
                value_claim: claim,
                justification: draft.justification.clone(),
                accessibility_tags: access,
                licence,
                counter_prompt_ref: counter,
                version: Version::INITIAL,
                status: Status::Draft,
            };
            self.prompts.insert(key.clone(), prompt.clone());
            self.persist_prompt(&prompt)?;
            self.append_audit(actor, AuditAction::Update, key.as_str(), "created", None, clock)?;
            Ok(prompt)
        }
    }

    #[allow(clippy::type_complexity)]
    fn validate_draft(
        &self,
        draft: &PromptDraft,
    ) -> Result<(
        String,
        std::collections::BTreeSet<GroupTag>,
        String,
        ValueClaim,
        std::collections::BTreeSet<AccessTag>,
        crate::prompt::Licence,
        Option<PromptId>,
    )> {
        let text = draft.text.clone();
        if text.trim().is_empty() {
            return Err(CommonsError::InvalidPrompt("empty text".into()));
        }
        if draft.author_groups.is_empty() {
            return Err(CommonsError::InvalidPrompt("author_groups must be non-empty".into()));
        }
        if draft.locale.trim().is_empty() {
            return Err(CommonsError::InvalidPrompt("locale must be non-empty".into()));
        }
        let mut groups = std::collections::BTreeSet::new();
        for g in &draft.author_groups {
            if !self.config.group_vocab.contains(g) {
                return Err(CommonsError::Vocabulary(format!("group tag {g:?}")));
            }
            groups.insert(GroupTag(g.clone()));
        }
        if !self.config.claim_vocab.contains(&draft.value_claim) {
            return Err(CommonsError::Vocabulary(format!(
                "value claim {:?}",
                draft.value_claim
            )));
        }
        let claim = ValueClaim(draft.value_claim.clone());
        let mut access = std::collections::BTreeSet::new();
        for t in &draft.accessibility_tags {
            access.insert(AccessTag::from_str(t)?);
        }
        let licence = crate::prompt::Licence::from_str(&draft.licence)?;
        let counter = draft.counter_prompt_ref.as_ref().map(|r| PromptId(r.clone()));
        Ok((text, groups, draft.locale.clone(), claim, access, licence, counter))
    }

    pub fn get(&self, id: &str) -> Result<&Prompt> {
        self.prompts
            .get(&PromptId(id.to_string()))
            .ok_or_else(|| CommonsError::NotFound(format!("prompt {id}")))
    }

    /// All matching prompts, ordered by id ascending.
    pub fn query(&self, filter: &QueryFilter) -> Vec<&Prompt> {
        self.prompts
            .values()
            .filter(|p| {
                filter.group.as_ref().map_or(true, |g| p.has_group(g))
                    && filter.locale.as_ref().map_or(true, |l| &p.locale == l)
                    && filter.value_claim.as_ref().map_or(true, |c| &p.value_claim.0 == c)
                    && filter.status.map_or(true, |s| p.status == s)
            })
            .collect()
    }

    pub fn prompts(&self) -> impl Iterator<Item = &Prompt> {
        self.prompts.values()
    }

    /// Status changes go through here so every transition is persisted.
    /// Only the governance engine (and replay checks) should call this.
    pub(crate) fn set_status(&mut self, id: &PromptId, status: Status) -> Result<()> {
        let prompt = self
            .prompts
            .get_mut(id)
            .ok_or_else(|| CommonsError::NotFound(format!("prompt {id}")))?;
        prompt.status = status;
        let snapshot = prompt.clone();
        self.persist_prompt(&snapshot)
    }

    // ── audit log ────────────────────────────────────────────────────

    pub fn append_audit(
        &mut self,
        actor: &str,
        action: AuditAction,
        subject: &str,
        rationale: &str,
        issue_link: Option<&str>,
        clock: &dyn Clock,
    ) -> Result<u64> {
        if rationale.trim().is_empty() {
            return Err(CommonsError::Audit("rationale must be non-empty".into()));
        }
        let seq = self.audit.last().map_or(1, |e| e.seq + 1);
        let entry = AuditEntry {
            seq,
            actor: actor.to_string(),
            timestamp: clock.now(),
            action,
            subject: subject.to_string(),
            rationale: rationale.to_string(),
            issue_link: issue_link.map(|s| s.to_string()),
        };
        if let Some(root) = &self.root {
            let mut file = OpenOptions::new()
                .create(true)
                .append(true)
                .open(root.join("audit.log"))?;
            writeln!(file, "{}", serde_json::to_string(&entry).expect("audit serialize"))?;
        }
        self.audit.push(entry);
        Ok(seq)
    }

    /// Entries whose seq falls in `range`, in seq order.
    pub fn read_audit<R: RangeBounds<u64>>(&self, range: R) -> Vec<&AuditEntry> {
        self.audit
            .iter()
            .filter(|e| contains_seq(&range, e.seq))
            .collect()
    }

    pub fn audit_entries(&self) -> &[AuditEntry] {
        &self.audit
    }

    // ── incidents ────────────────────────────────────────────────────

    pub(crate) fn record_incident(&mut self, incident: Incident) -> Result<()> {
        if let Some(root) = &self.root {
            let mut file = OpenOptions::new()
                .create(true)
                .append(true)
                .open(root.join("incidents.log"))?;
            writeln!(file, "{}", serde_json::to_string(&incident).expect("incident serialize"))?;
        }
        self.incidents.insert(incident.id.clone(), incident);
        Ok(())
    }

    pub fn incident(&self, id: &str) -> Result<&Incident> {
        self.incidents
            .get(&IncidentId(id.to_string()))
            .ok_or_else(|| CommonsError::NotFound(format!("incident {id}")))
    }

    pub fn incidents(&self) -> impl Iterator<Item = &Incident> {
        self.incidents.values()
    }

    pub(crate) fn next_incident_id(&self) -> IncidentId {
        IncidentId(format!("inc-{:06}", self.incidents.len() + 1))
    }

    // ── strikes & merge evidence ─────────────────────────────────────

    pub(crate) fn record_strike(&mut self, group: &str, id: &PromptId) {
        self.active_strikes
            .entry(group.to_string())
            .or_default()
            .push(id.clone());
    }

    pub(crate) fn take_strikes(&mut self, group: &str) -> Vec<PromptId> {
        self.active_strikes.remove(group).unwrap_or_default()
    }

    pub fn active_strikes(&self, group: &str) -> &[PromptId] {
        self.active_strikes.get(group).map_or(&[], |v| v.as_slice())
    }

    pub(crate) fn record_merge_report(&mut self, id: &PromptId, report: ValidationReport) {
        self.merge_reports.insert(id.clone(), report);
    }

    pub fn merge_report(&self, id: &str) -> Option<&ValidationReport> {
        self.merge_reports.get(&PromptId(id.to_string()))
    }

    // ── persistence ──────────────────────────────────────────────────

    fn persist_prompt(&self, prompt: &Prompt) -> Result<()> {
        if let Some(root) = &self.root {
            let path = root.join("prompts").join(format!("{}.prompt", prompt.id));
            fs::write(path, render_prompt_file(prompt))?;
        }
        Ok(())
    }
}

fn contains_seq<R: RangeBounds<u64>>(range: &R, seq: u64) -> bool {
    let lower_ok = match range.start_bound() {
        Bound::Included(s) => seq >= *s,
        Bound::Excluded(s) => seq > *s,
        Bound::Unbounded => true,
    };
    let upper_ok = match range.end_bound() {
        Bound::Included(e) => seq <= *e,
        Bound::Excluded(e) => seq < *e,
        Bound::Unbounded => true,
    };
    lower_ok && upper_ok
}

/// Render the `.prompt` front-matter file. Values are single-line.
pub fn render_prompt_file(prompt: &Prompt) -> String {
    let mut out = String::from("---\n");
    out.push_str(&format!("id: {}\n", prompt.id));
    out.push_str(&format!("version: {}\n", prompt.version));
    out.push_str(&format!("status: {}\n", prompt.status));
    let groups: Vec<&str> = prompt.author_groups.iter().map(|g| g.0.as_str()).collect();
    out.push_str(&format!("groups: {}\n", groups.join(",")));
    out.push_str(&format!("locale: {}\n", prompt.locale));
    out.push_str(&format!("value_claim: {}\n", prompt.value_claim));
    out.push_str(&format!("justification: {}\n", prompt.justification));
    let access: Vec<&str> = prompt.accessibility_tags.iter().map(|t| t.as_str()).collect();
    out.push_str(&format!("accessibility: {}\n", access.join(",")));
    out.push_str(&format!("licence: {}\n", prompt.licence.as_str()));
    if let Some(counter) = &prompt.counter_prompt_ref {
        out.push_str(&format!("counter_prompt: {counter}\n"));
    }
    out.push_str("---\n");
    out.push_str(&prompt.text);
    out
}

/// Parse a `.prompt` file into a fully validated [`Prompt`].
pub fn parse_prompt_file(content: &str) -> Result<Prompt> {
    let draft = parse_prompt_draft(content)?;
    let mut groups = std::collections::BTreeSet::new();
    for g in &draft.author_groups {
        groups.insert(GroupTag(g.clone()));
    }
    let mut access = std::collections::BTreeSet::new();
    for t in &draft.accessibility_tags {
        access.insert(AccessTag::from_str(t)?);
    }
    let fm = parse_front_matter(content)?;
    let version: Version = fm
        .get("version")
        .map(|v| v.parse())
        .transpose()?
        .unwrap_or(Version::INITIAL);
    let status: Status = fm
        .get("status")
        .map(|v| v.parse())
        .transpose()?
        .unwrap_or(Status::Draft);
    let id = draft
        .id
        .clone()
        .ok_or_else(|| CommonsError::Parse("prompt file missing id".into()))?;
    Ok(Prompt {
        id: PromptId(id),
        text: draft.text,
        author_groups: groups,
        locale: draft.locale,
        value_claim: ValueClaim(draft.value_claim),
        justification: draft.justification,
        accessibility_tags: access,
        licence: crate::prompt::Licence::from_str(&draft.licence)?,
        counter_prompt_ref: draft.counter_prompt_ref.map(PromptId),
        version,
        status,
    })
}

/// Parse a `.prompt` file without enforcing vocabularies or licence; the
/// checklist validator consumes this form so bad values become findings.
pub fn parse_prompt_draft(content: &str) -> Result<PromptDraft> {
    let fm = parse_front_matter(content)?;
    let text = front_matter_body(content)?;
    let list = |v: Option<&String>| -> Vec<String> {
        v.map(|s| {
            s.split(',')
                .map(|x| x.trim().to_string())
                .filter(|x| !x.is_empty())
                .collect()
        })
        .unwrap_or_default()
    };
    Ok(PromptDraft {
        id: fm.get("id").cloned().filter(|s| !s.is_empty()),
        text,
        author_groups: list(fm.get("groups")),
        locale: fm.get("locale").cloned().unwrap_or_default(),
        value_claim: fm.get("value_claim").cloned().unwrap_or_default(),
        justification: fm.get("justification").cloned().unwrap_or_default(),
        accessibility_tags: list(fm.get("accessibility")),
        licence: fm.get("licence").cloned().unwrap_or_default(),
        counter_prompt_ref: fm.get("counter_prompt").cloned().filter(|s| !s.is_empty()),
    })
}

fn parse_front_matter(content: &str) -> Result<BTreeMap<String, String>> {
    let rest = content
        .strip_prefix("---\n")
        .ok_or_else(|| CommonsError::Parse("prompt file must start with ---".into()))?;
    let end = rest
        .find("\n---\n")
        .ok_or_else(|| CommonsError::Parse("unterminated front matter".into()))?;
    let mut map = BTreeMap::new();
    for line in rest[..end].lines() {
        if line.trim().is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| CommonsError::Parse(format!("front-matter line without ':': {line:?}")))?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn front_matter_body(content: &str) -> Result<String> {
    let rest = content
        .strip_prefix("---\n")
        .ok_or_else(|| CommonsError::Parse("prompt file must start with ---".into()))?;
    let end = rest
        .find("\n---\n")
        .ok_or_else(|| CommonsError::Parse("unterminated front matter".into()))?;
    Ok(rest[end + 5..].to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clock::SimClock;

    fn draft(text: &str, groups: &[&str], locale: &str) -> PromptDraft {
        PromptDraft {
            id: None,
            text: text.to_string(),
            author_groups: groups.iter().map(|s| s.to_string()).collect(),
            locale: locale.to_string(),
            value_claim: "safety".into(),
            justification: "community request".into(),
            accessibility_tags: vec![],
            licence: "CC-BY-4.0".into(),
            counter_prompt_ref: None,
        }
    }

    fn store() -> Store {
        Store::in_memory(GovernanceConfig::default())
    }

    #[test]
    fn put_new_prompt_starts_at_draft_one_zero_zero() {
        let mut s = store();
        let clock = SimClock::new(0);
        let p = s.put(&draft("benches near the metro", &["seniors"], "Plateau"), "a", &clock).unwrap();
        assert_eq!(p.status, Status::Draft);
        assert_eq!(p.version, Version::INITIAL);
    }

    #[test]
    fn put_metadata_change_is_patch_bump() {
        let mut s = store();
        let clock = SimClock::new(0);
        let p = s.put(&draft("benches near the metro", &["seniors"], "Plateau"), "a", &clock).unwrap();
        let mut d = draft("benches near the metro", &["seniors"], "Plateau");
        d.id = Some(p.id.0.clone());
        d.justification = "updated justification".into();
        let p2 = s.put(&d, "a", &clock).unwrap();
        assert_eq!(p2.version.to_string(), "1.0.1");
    }

    #[test]
    fn put_text_change_is_minor_bump_and_preserves_id() {
        let mut s = store();
        let clock = SimClock::new(0);
        let p = s.put(&draft("benches near the metro", &["seniors"], "Plateau"), "a", &clock).unwrap();
        let mut d = draft("more benches near the metro", &["seniors"], "Plateau");
        d.id = Some(p.id.0.clone());
        let p2 = s.put(&d, "a", &clock).unwrap();
        assert_eq!(p2.id, p.id);
        assert_eq!(p2.version.to_string(), "1.1.0");
    }

    #[test]
    fn put_value_claim_change_is_major_bump() {
        let mut s = store();
        let clock = SimClock::new(0);
        let p = s.put(&draft("benches near the metro", &["seniors"], "Plateau"), "a", &clock).unwrap();
        let mut d = draft("benches near the metro", &["seniors"], "Plateau");
        d.id = Some(p.id.0.clone());
        d.value_claim = "transit".into();
        let p2 = s.put(&d, "a", &clock).unwrap();
        assert_eq!(p2.version.to_string(), "2.0.0");
    }

    #[test]
    fn put_rejects_unknown_licence() {
        let mut s = store();
        let clock = SimClock::new(0);
        let mut d = draft("benches", &["seniors"], "Plateau");
        d.licence = "MIT".into();
        assert!(matches!(s.put(&d, "a", &clock), Err(CommonsError::Licence(_))));
    }

    #[test]
    fn put_rejects_unknown_vocabulary() {
        let mut s = store();
        let clock = SimClock::new(0);
        let mut d = draft("benches", &["plutocrats"], "Plateau");
        assert!(matches!(s.put(&d, "a", &clock), Err(CommonsError::Vocabulary(_))));
        d = draft("benches", &["seniors"], "Plateau");
        d.value_claim = "velocity".into();
        assert!(matches!(s.put(&d, "a", &clock), Err(CommonsError::Vocabulary(_))));
    }

    #[test]
    fn get_unknown_is_not_found() {
        let s = store();
        assert!(matches!(s.get("0000000000000000"), Err(CommonsError::NotFound(_))));
    }

    #[test]
    fn query_filters_by_group_and_status() {
        let mut s = store();
        let clock = SimClock::new(0);
        s.put(&draft("benches near the metro", &["seniors"], "Plateau"), "a", &clock).unwrap();
        s.put(&draft("bike lanes everywhere", &["women"], "Plateau"), "a", &clock).unwrap();
        let merged = s.query(&QueryFilter { status: Some(Status::Merged), ..Default::default() });
        assert!(merged.is_empty());
        let seniors = s.query(&QueryFilter { group: Some("seniors".into()), ..Default::default() });
        assert_eq!(seniors.len(), 1);
        assert!(seniors[0].has_group("seniors"));
    }

    #[test]
    fn audit_seq_is_dense_from_one() {
        let mut s = store();
        let clock = SimClock::new(0);
        let s1 = s.append_audit("a", AuditAction::Update, "x", "first", None, &clock).unwrap();
        let s2 = s.append_audit("a", AuditAction::Update, "x", "second", None, &clock).unwrap();
        assert_eq!((s1, s2), (1, 2));
        let seqs: Vec<u64> = s.read_audit(..).iter().map(|e| e.seq).collect();
        assert_eq!(seqs, vec![1, 2]);
    }

    #[test]
    fn audit_rejects_empty_rationale() {
        let mut s = store();
        let clock = SimClock::new(0);
        assert!(matches!(
            s.append_audit("a", AuditAction::Update, "x", "", None, &clock),
            Err(CommonsError::Audit(_))
        ));
    }

    #[test]
    fn prompt_file_round_trip() {
        let mut s = store();
        let clock = SimClock::new(0);
        let mut d = draft("benches near the metro\nwith shade", &["seniors", "women"], "Plateau");
        d.accessibility_tags = vec!["mobility".into()];
        let p = s.put(&d, "a", &clock).unwrap();
        let rendered = render_prompt_file(&p);
        let parsed = parse_prompt_file(&rendered).unwrap();
        assert_eq!(parsed, p);
    }

    #[test]
    fn disk_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let clock = SimClock::new(42);
        let mut s = Store::init(dir.path(), GovernanceConfig::default()).unwrap();
        let p = s.put(&draft("benches near the metro", &["seniors"], "Plateau"), "a", &clock).unwrap();
        s.append_audit("a", AuditAction::Propose, p.id.as_str(), "testing", None, &clock).unwrap();
        let reopened = Store::open(dir.path()).unwrap();
        assert_eq!(reopened.get(p.id.as_str()).unwrap(), &p);
        assert_eq!(reopened.audit_entries().len(), 2); // created + propose
        assert_eq!(reopened.audit_entries()[1].action, AuditAction::Propose);
    }
}
