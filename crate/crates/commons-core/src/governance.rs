//! Moderation and curation state machine: propose/merge with per-state
//! checklist requirements, quota feasibility, flagging with minority veto,
//! review and appeal with SLA tracking, graduated sanctions, and prompt
//! strikes. Every transition appends an audit entry.

use serde::{Deserialize, Serialize};

use crate::audit::{tagged_rationale, AuditAction, AuditEntry};
use crate::checklist::validate;
use crate::clock::Clock;
use crate::config::{GovernanceState, SanctionLevel};
use crate::error::{CommonsError, Result};
use crate::incident::{Incident, IncidentId, IncidentState};
use crate::prompt::{Prompt, PromptDraft, PromptId, Status};
use crate::store::{QueryFilter, Store};

#[derive(Debug, Clone, PartialEq)]
pub struct QuotaCheck {
    pub feasible: bool,
    /// Groups whose satisfied quota the candidate merge would break.
    pub violating: Vec<String>,
    /// Groups already below quota before the merge (reported, not blocking).
    pub below_quota: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SanctionRecord {
    pub actor: String,
    pub level: SanctionLevel,
    pub timestamp: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReviewDecision {
    Remediate,
    Dismiss,
}

/// The state machine over (store, event). Borrows the store mutably; the
/// caller is responsible for serializing engine use (one writer).
pub struct Engine<'a> {
    pub store: &'a mut Store,
    pub clock: &'a dyn Clock,
}

impl<'a> Engine<'a> {
    pub fn new(store: &'a mut Store, clock: &'a dyn Clock) -> Self {
        Engine { store, clock }
    }

    // ── proposal lifecycle ───────────────────────────────────────────

    pub fn propose(&mut self, prompt_id: &str, contributor: &str) -> Result<Prompt> {
        self.ensure_not_suspended(contributor)?;
        let prompt = self.store.get(prompt_id)?.clone();
        if prompt.status != Status::Draft {
            return Err(CommonsError::IllegalTransition(format!(
                "propose requires status draft, prompt {prompt_id} is {}",
                prompt.status
            )));
        }
        self.store.set_status(&prompt.id, Status::Proposed)?;
        self.store.append_audit(
            contributor,
            AuditAction::Propose,
            prompt_id,
            "proposed for inclusion",
            None,
            self.clock,
        )?;
        Ok(self.store.get(prompt_id)?.clone())
    }

    pub fn reject(&mut self, prompt_id: &str, maintainer: &str, rationale: &str) -> Result<Prompt> {
        let prompt = self.store.get(prompt_id)?.clone();
        if prompt.status != Status::Proposed {
            return Err(CommonsError::IllegalTransition(format!(
                "reject requires status proposed, prompt {prompt_id} is {}",
                prompt.status
            )));
        }
        self.store.set_status(&prompt.id, Status::Draft)?;
        self.store
            .append_audit(maintainer, AuditAction::Reject, prompt_id, rationale, None, self.clock)?;
        Ok(self.store.get(prompt_id)?.clone())
    }

    /// Merge a proposed prompt. In the open state only the spam-and-safety
    /// rules gate the merge; curated and veto-enabled states require the
    /// full checklist to accept and the merge to be quota-feasible.
    pub fn merge(&mut self, prompt_id: &str, maintainer: &str, rationale: &str) -> Result<Prompt> {
        self.ensure_not_suspended(maintainer)?;
        let prompt = self.store.get(prompt_id)?.clone();
        if prompt.status != Status::Proposed {
            return Err(CommonsError::IllegalTransition(format!(
                "merge requires status proposed, prompt {prompt_id} is {}",
                prompt.status
            )));
        }
        let draft = PromptDraft::from(&prompt);
        let report = validate(&draft, self.store);
        match self.store.config.state {
            GovernanceState::Open => {
                if !report.passes_light_moderation() {
                    return Err(CommonsError::ChecklistFailed {
                        prompt_id: prompt_id.to_string(),
                        report: Box::new(report),
                    });
                }
            }
            GovernanceState::Curated | GovernanceState::VetoEnabled => {
                if !report.accepted() {
                    return Err(CommonsError::ChecklistFailed {
                        prompt_id: prompt_id.to_string(),
                        report: Box::new(report),
                    });
                }
                let quota = self.quota_check(&prompt);
                if !quota.feasible {
                    return Err(CommonsError::QuotaBlocked(quota.violating));
                }
            }
        }
        self.store.set_status(&prompt.id, Status::Merged)?;
        self.store.record_merge_report(&prompt.id, report);
        self.store
            .append_audit(maintainer, AuditAction::Merge, prompt_id, rationale, None, self.clock)?;
        Ok(self.store.get(prompt_id)?.clone())
    }

    /// Minimum-share feasibility for merging `candidate`. A merge may never
    /// move a currently satisfied group below its floor; groups already
    /// below quota are reported but do not block.
    pub fn quota_check(&self, candidate: &Prompt) -> QuotaCheck {
        let merged: Vec<&Prompt> = self
            .store
            .query(&QueryFilter { status: Some(Status::Merged), ..Default::default() });
        let n_before = merged.len();
        let n_after = n_before + 1;
        let mut violating = Vec::new();
        let mut below_quota = Vec::new();
        for (group, min_share) in &self.store.config.quotas {
            let count_before = merged.iter().filter(|p| p.has_group(group)).count();
            let count_after = count_before + usize::from(candidate.has_group(group));
            // An empty store satisfies every quota vacuously.
            let satisfied_before =
                n_before == 0 || count_before as f64 / n_before as f64 >= *min_share;
            let satisfied_after = count_after as f64 / n_after as f64 >= *min_share;
            if satisfied_before && !satisfied_after {
                violating.push(group.clone());
            }
            if !satisfied_before {
                below_quota.push(group.clone());
            }
        }
        QuotaCheck { feasible: violating.is_empty(), violating, below_quota }
    }

    // ── incidents ────────────────────────────────────────────────────

    /// Flag a merged prompt as harmful. Under veto-enabled governance a
    /// recognized organisation's flag quarantines the prompt atomically.
    pub fn flag(&mut self, prompt_id: &str, org: &str, rationale: &str) -> Result<Incident> {
        let prompt = self.store.get(prompt_id)?.clone();
        if prompt.status != Status::Merged {
            return Err(CommonsError::IllegalTransition(format!(
                "flag requires status merged, prompt {prompt_id} is {}",
                prompt.status
            )));
        }
        let now = self.clock.now();
        let veto = self.store.config.state == GovernanceState::VetoEnabled
            && self.store.config.recognized_orgs.contains(org);
        let mut incident = Incident {
            id: self.store.next_incident_id(),
            prompt_ref: prompt_id.to_string(),
            flagger: org.to_string(),
            flagged_at: now,
            quarantined_at: None,
            resolved_at: None,
            state: IncidentState::Open,
            resolution_rationale: None,
            sla_deadline: None,
        };
        self.store.append_audit(
            org,
            AuditAction::Flag,
            incident.id.0.as_str(),
            rationale,
            None,
            self.clock,
        )?;
        if veto {
            incident.state = IncidentState::Quarantined;
            incident.quarantined_at = Some(now);
            incident.sla_deadline =
                Some(now + self.store.config.appeal_sla_hours as i64 * 3600);
            self.store.set_status(&prompt.id, Status::Quarantined)?;
            self.store.append_audit(
                org,
                AuditAction::Quarantine,
                prompt_id,
                &tagged_rationale("incident", &incident.id.0, "minority veto quarantine"),
                None,
                self.clock,
            )?;
        }
        self.store.record_incident(incident.clone())?;
        Ok(incident)
    }

    pub fn review(
        &mut self,
        incident_id: &str,
        maintainer: &str,
        decision: ReviewDecision,
        rationale: &str,
    ) -> Result<Incident> {
        let mut incident = self.store.incident(incident_id)?.clone();
        if !matches!(
            incident.state,
            IncidentState::Open | IncidentState::Quarantined | IncidentState::Appealed
        ) {
            return Err(CommonsError::IllegalTransition(format!(
                "incident {incident_id} is already resolved"
            )));
        }
        let now = self.clock.now();
        let prompt_id = PromptId(incident.prompt_ref.clone());
        let prompt_status = self.store.get(&incident.prompt_ref)?.status;
        incident.resolved_at = Some(now);
        incident.resolution_rationale = Some(rationale.to_string());
        incident.sla_deadline = None;
        match decision {
            ReviewDecision::Remediate => {
                incident.state = IncidentState::Remediated;
                if prompt_status != Status::Retired {
                    self.store.set_status(&prompt_id, Status::Retired)?;
                    self.store.append_audit(
                        maintainer,
                        AuditAction::Remediate,
                        prompt_id.as_str(),
                        &tagged_rationale("incident", incident_id, rationale),
                        None,
                        self.clock,
                    )?;
                }
                self.store.append_audit(
                    maintainer,
                    AuditAction::Remediate,
                    incident_id,
                    rationale,
                    None,
                    self.clock,
                )?;
            }
            ReviewDecision::Dismiss => {
                incident.state = IncidentState::Dismissed;
                if prompt_status != Status::Merged {
                    self.store.set_status(&prompt_id, Status::Merged)?;
                    self.store.append_audit(
                        maintainer,
                        AuditAction::Review,
                        prompt_id.as_str(),
                        &tagged_rationale("incident", incident_id, rationale),
                        None,
                        self.clock,
                    )?;
                }
                self.store.append_audit(
                    maintainer,
                    AuditAction::Review,
                    incident_id,
                    rationale,
                    None,
                    self.clock,
                )?;
            }
        }
        self.store.record_incident(incident.clone())?;
        Ok(incident)
    }

    /// Reopen a resolved incident; re-arms the appeal SLA deadline.
    pub fn appeal(&mut self, incident_id: &str, appellant: &str) -> Result<Incident> {
        let mut incident = self.store.incident(incident_id)?.clone();
        if !matches!(incident.state, IncidentState::Remediated | IncidentState::Dismissed) {
            return Err(CommonsError::IllegalTransition(format!(
                "appeal requires a resolved incident, {incident_id} is unresolved"
            )));
        }
        let now = self.clock.now();
        incident.state = IncidentState::Appealed;
        incident.resolved_at = None;
        incident.resolution_rationale = None;
        incident.sla_deadline = Some(now + self.store.config.appeal_sla_hours as i64 * 3600);
        self.store.append_audit(
            appellant,
            AuditAction::Appeal,
            incident_id,
            "appeal filed",
            None,
            self.clock,
        )?;
        self.store.record_incident(incident.clone())?;
        Ok(incident)
    }

    /// Incidents in SLA-tracked states whose deadline has passed.
    /// Breaches are reported, never auto-resolved.
    pub fn check_sla(&self) -> Vec<IncidentId> {
        let now = self.clock.now();
        self.store
            .incidents()
            .filter(|i| i.state.sla_tracked())
            .filter(|i| i.sla_deadline.is_some_and(|d| d < now))
            .map(|i| i.id.clone())
            .collect()
    }

    // ── sanctions ────────────────────────────────────────────────────

    /// Current rung on the sanction ladder for an actor, from the audit log.
    pub fn sanction_level(&self, actor: &str) -> u8 {
        self.store
            .audit_entries()
            .iter()
            .rev()
            .find(|e| e.action == AuditAction::Sanction && e.subject == actor)
            .and_then(|e| crate::audit::rationale_detail(&e.rationale, "level"))
            .and_then(|l| l.parse::<SanctionLevel>().ok().map(|l| l.rung()).or_else(|| {
                (l == "none").then_some(0)
            }))
            .unwrap_or(0)
    }

    pub fn is_suspended(&self, actor: &str) -> bool {
        self.sanction_level(actor) == SanctionLevel::TemporarySuspension.rung()
    }

    fn ensure_not_suspended(&self, actor: &str) -> Result<()> {
        if self.is_suspended(actor) {
            return Err(CommonsError::SuspendedActor(actor.to_string()));
        }
        Ok(())
    }

    /// Apply a graduated sanction. Escalation may climb at most one rung.
    pub fn sanction(
        &mut self,
        target: &str,
        level: SanctionLevel,
        maintainer: &str,
        rationale: &str,
    ) -> Result<SanctionRecord> {
        let current = self.sanction_level(target);
        if level.rung() > current + 1 {
            return Err(CommonsError::LadderViolation(format!(
                "cannot jump from rung {current} to {} ({})",
                level.rung(),
                level
            )));
        }
        self.store.append_audit(
            maintainer,
            AuditAction::Sanction,
            target,
            &tagged_rationale("level", level.as_str(), rationale),
            None,
            self.clock,
        )?;
        Ok(SanctionRecord { actor: target.to_string(), level, timestamp: self.clock.now() })
    }

    /// Lift a suspension (resets the ladder).
    pub fn lift_sanctions(&mut self, target: &str, maintainer: &str, rationale: &str) -> Result<()> {
        self.store.append_audit(
            maintainer,
            AuditAction::Sanction,
            target,
            &tagged_rationale("level", "none", rationale),
            None,
            self.clock,
        )?;
        Ok(())
    }

    // ── prompt strikes ───────────────────────────────────────────────

    /// Collective withdrawal: every merged prompt authored by the group is
    /// set to withdrawn. Returns the number withdrawn.
    pub fn strike(&mut self, group: &str, actor: &str, rationale: &str) -> Result<usize> {
        let ids: Vec<PromptId> = self
            .store
            .query(&QueryFilter {
                status: Some(Status::Merged),
                group: Some(group.to_string()),
                ..Default::default()
            })
            .iter()
            .map(|p| p.id.clone())
            .collect();
        for id in &ids {
            self.store.set_status(id, Status::Withdrawn)?;
            self.store.append_audit(
                actor,
                AuditAction::Strike,
                id.as_str(),
                &tagged_rationale("group", group, rationale),
                None,
                self.clock,
            )?;
            self.store.record_strike(group, id);
        }
        Ok(ids.len())
    }

    /// Restore exactly the prompts withdrawn by the group's active strike.
    pub fn unstrike(&mut self, group: &str, actor: &str, rationale: &str) -> Result<usize> {
        let ids = self.store.take_strikes(group);
        let mut restored = 0;
        for id in &ids {
            if self.store.get(id.as_str())?.status != Status::Withdrawn {
                continue;
            }
            self.store.set_status(id, Status::Merged)?;
            self.store.append_audit(
                actor,
                AuditAction::Unstrike,
                id.as_str(),
                &tagged_rationale("group", group, rationale),
                None,
                self.clock,
            )?;
            restored += 1;
        }
        Ok(restored)
    }
}

/// Reconstruct every prompt's status by replaying the audit log from an
/// empty repository. Used to check that the log is a complete record of
/// all transitions.
pub fn replay_statuses(entries: &[AuditEntry]) -> std::collections::BTreeMap<String, Status> {
    let mut statuses = std::collections::BTreeMap::new();
    for entry in entries {
        let subject = entry.subject.clone();
        let is_incident = subject.starts_with("inc-");
        match entry.action {
            AuditAction::Update => {
                statuses.entry(subject).or_insert(Status::Draft);
            }
            AuditAction::Propose => {
                statuses.insert(subject, Status::Proposed);
            }
            AuditAction::Merge => {
                statuses.insert(subject, Status::Merged);
            }
            AuditAction::Reject => {
                statuses.insert(subject, Status::Draft);
            }
            AuditAction::Quarantine => {
                statuses.insert(subject, Status::Quarantined);
            }
            AuditAction::Remediate if !is_incident => {
                statuses.insert(subject, Status::Retired);
            }
            AuditAction::Review if !is_incident => {
                statuses.insert(subject, Status::Merged);
            }
            AuditAction::Strike => {
                statuses.insert(subject, Status::Withdrawn);
            }
            AuditAction::Unstrike => {
                statuses.insert(subject, Status::Merged);
            }
            _ => {}
        }
    }
    statuses
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clock::SimClock;
    use crate::config::GovernanceConfig;

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

    fn open_store() -> Store {
        Store::in_memory(GovernanceConfig::default())
    }

    /// Store with a merged counter-prompt (claim transit) whose id is returned.
    fn seeded(state: GovernanceState) -> (Store, String) {
        let mut store = open_store();
        store.config.state = GovernanceState::Open;
        let clock = SimClock::new(0);
        let counter = store
            .put(&draft("prioritize car throughput downtown", &["practitioner"], "transit"), "m", &clock)
            .unwrap();
        let id = counter.id.0.clone();
        {
            let mut engine = Engine::new(&mut store, &clock);
            engine.propose(&id, "m").unwrap();
            engine.merge(&id, "m", "seed counter").unwrap();
        }
        store.config.state = state;
        (store, id)
    }

    #[test]
    fn propose_then_merge_in_open_state() {
        let mut store = open_store();
        let clock = SimClock::new(0);
        let p = store.put(&draft("benches near metro", &["seniors"], "safety"), "a", &clock).unwrap();
        let id = p.id.0.clone();
        let mut engine = Engine::new(&mut store, &clock);
        let p = engine.propose(&id, "a").unwrap();
        assert_eq!(p.status, Status::Proposed);
        // Fails the full checklist (no counter-prompt) but open state only
        // gates on spam and safety.
        let p = engine.merge(&id, "m", "looks fine").unwrap();
        assert_eq!(p.status, Status::Merged);
    }

    #[test]
    fn propose_merged_prompt_is_illegal() {
        let (mut store, id) = seeded(GovernanceState::Open);
        let clock = SimClock::new(0);
        let mut engine = Engine::new(&mut store, &clock);
        assert!(matches!(
            engine.propose(&id, "a"),
            Err(CommonsError::IllegalTransition(_))
        ));
    }

    #[test]
    fn propose_appends_exactly_one_entry() {
        let mut store = open_store();
        let clock = SimClock::new(0);
        let p = store.put(&draft("benches near metro", &["seniors"], "safety"), "a", &clock).unwrap();
        let before = store.audit_entries().len();
        let mut engine = Engine::new(&mut store, &clock);
        engine.propose(&p.id.0.clone(), "a").unwrap();
        assert_eq!(store.audit_entries().len(), before + 1);
        assert_eq!(store.audit_entries().last().unwrap().action, AuditAction::Propose);
    }

    #[test]
    fn curated_merge_requires_full_checklist() {
        let (mut store, counter_id) = seeded(GovernanceState::Curated);
        let clock = SimClock::new(0);
        // 61-word prompt passes safety but fails MAX_WORDS.
        let mut d = draft(&vec!["word"; 61].join(" "), &["seniors"], "safety");
        d.counter_prompt_ref = Some(counter_id.clone());
        let p = store.put(&d, "a", &clock).unwrap();
        let id = p.id.0.clone();

        // In open state the same prompt would merge.
        store.config.state = GovernanceState::Open;
        {
            let mut engine = Engine::new(&mut store, &clock);
            engine.propose(&id, "a").unwrap();
            engine.merge(&id, "m", "light moderation").unwrap();
            assert_eq!(store.get(&id).unwrap().status, Status::Merged);
        }

        // Reset and try under curated governance.
        let (mut store, counter_id) = seeded(GovernanceState::Curated);
        let mut d = draft(&vec!["word"; 61].join(" "), &["seniors"], "safety");
        d.counter_prompt_ref = Some(counter_id);
        let p = store.put(&d, "a", &clock).unwrap();
        let id = p.id.0.clone();
        let mut engine = Engine::new(&mut store, &clock);
        engine.propose(&id, "a").unwrap();
        assert!(matches!(
            engine.merge(&id, "m", "try"),
            Err(CommonsError::ChecklistFailed { .. })
        ));
    }

    #[test]
    fn quota_check_examples() {
        // Empty store: any candidate is feasible.
        let (mut store, _) = seeded(GovernanceState::Curated);
        store.config.quotas.insert("women".into(), 0.5);
        let clock = SimClock::new(0);
        let candidate = store.put(&draft("x benches", &["seniors"], "safety"), "a", &clock).unwrap();

        // The seeded store has 1 merged prompt (practitioner); women share
        // is 0/1, already below quota, so it reports but does not block.
        let engine = Engine::new(&mut store, &clock);
        let check = engine.quota_check(&candidate);
        assert!(check.feasible);
        assert_eq!(check.below_quota, vec!["women".to_string()]);
    }

    #[test]
    fn quota_never_breaks_a_satisfied_group() {
        // Store: 2 women + 2 seniors merged, quota women >= 0.5.
        // A seniors candidate drops women to 2/5 < 0.5: blocked.
        let mut store = open_store();
        let clock = SimClock::new(0);
        let mut ids = Vec::new();
        for (i, groups) in [&["women"], &["women"], &["seniors"], &["seniors"]].iter().enumerate() {
            let p = store
                .put(&draft(&format!("prompt number {i}"), *groups, "safety"), "a", &clock)
                .unwrap();
            ids.push(p.id.0.clone());
        }
        {
            let mut engine = Engine::new(&mut store, &clock);
            for id in &ids {
                engine.propose(id, "a").unwrap();
                engine.merge(id, "m", "seed").unwrap();
            }
        }
        store.config.quotas.insert("women".into(), 0.5);
        let candidate = store.put(&draft("one more senior prompt", &["seniors"], "safety"), "a", &clock).unwrap();
        let engine = Engine::new(&mut store, &clock);
        let check = engine.quota_check(&candidate);
        assert!(!check.feasible);
        assert_eq!(check.violating, vec!["women".to_string()]);

        // A women candidate keeps the share at 3/5 >= 0.5: feasible.
        drop(engine);
        let candidate = store.put(&draft("one more woman prompt", &["women"], "safety"), "a", &clock).unwrap();
        let engine = Engine::new(&mut store, &clock);
        assert!(engine.quota_check(&candidate).feasible);
    }

    #[test]
    fn quota_feasible_when_share_stays_above_floor() {
        // 4 merged all women, quota women 0.5, candidate seniors: 4/5 = 0.8.
        let mut store = open_store();
        let clock = SimClock::new(0);
        let mut ids = Vec::new();
        for i in 0..4 {
            let p = store
                .put(&draft(&format!("women prompt {i}"), &["women"], "safety"), "a", &clock)
                .unwrap();
            ids.push(p.id.0.clone());
        }
        {
            let mut engine = Engine::new(&mut store, &clock);
            for id in &ids {
                engine.propose(id, "a").unwrap();
                engine.merge(id, "m", "seed").unwrap();
            }
        }
        store.config.quotas.insert("women".into(), 0.5);
        let candidate = store.put(&draft("senior prompt", &["seniors"], "safety"), "a", &clock).unwrap();
        let engine = Engine::new(&mut store, &clock);
        assert!(engine.quota_check(&candidate).feasible);
    }

    #[test]
    fn veto_flag_quarantines_atomically() {
        let (mut store, id) = seeded(GovernanceState::VetoEnabled);
        store.config.recognized_orgs.insert("org-a".into());
        let clock = SimClock::new(5000);
        let mut engine = Engine::new(&mut store, &clock);
        let incident = engine.flag(&id, "org-a", "harmful output traced here").unwrap();
        assert_eq!(incident.state, IncidentState::Quarantined);
        assert_eq!(incident.quarantined_at, Some(incident.flagged_at));
        assert_eq!(store.get(&id).unwrap().status, Status::Quarantined);
    }

    #[test]
    fn open_state_flag_does_not_quarantine() {
        let (mut store, id) = seeded(GovernanceState::Open);
        store.config.recognized_orgs.insert("org-a".into());
        let clock = SimClock::new(5000);
        let mut engine = Engine::new(&mut store, &clock);
        let incident = engine.flag(&id, "org-a", "concern").unwrap();
        assert_eq!(incident.state, IncidentState::Open);
        assert_eq!(store.get(&id).unwrap().status, Status::Merged);
    }

    #[test]
    fn unrecognized_org_cannot_veto() {
        let (mut store, id) = seeded(GovernanceState::VetoEnabled);
        let clock = SimClock::new(5000);
        let mut engine = Engine::new(&mut store, &clock);
        let incident = engine.flag(&id, "org-unknown", "concern").unwrap();
        assert_eq!(incident.state, IncidentState::Open);
        assert_eq!(store.get(&id).unwrap().status, Status::Merged);
    }

    #[test]
    fn review_remediate_measures_hours() {
        let (mut store, id) = seeded(GovernanceState::VetoEnabled);
        store.config.recognized_orgs.insert("org-a".into());
        let clock = SimClock::new(0);
        let mut engine = Engine::new(&mut store, &clock);
        let incident = engine.flag(&id, "org-a", "harm").unwrap();
        clock.set(5 * 3600);
        let incident = engine
            .review(&incident.id.0.clone(), "m", ReviewDecision::Remediate, "confirmed harm")
            .unwrap();
        assert_eq!(incident.time_to_remediation_hours(), Some(5.0));
        assert_eq!(store.get(&id).unwrap().status, Status::Retired);
    }

    #[test]
    fn review_dismiss_restores_merged() {
        let (mut store, id) = seeded(GovernanceState::VetoEnabled);
        store.config.recognized_orgs.insert("org-a".into());
        let clock = SimClock::new(0);
        let mut engine = Engine::new(&mut store, &clock);
        let incident = engine.flag(&id, "org-a", "harm").unwrap();
        clock.set(3600);
        let incident = engine
            .review(&incident.id.0.clone(), "m", ReviewDecision::Dismiss, "no harm found")
            .unwrap();
        assert_eq!(incident.state, IncidentState::Dismissed);
        assert_eq!(store.get(&id).unwrap().status, Status::Merged);
    }

    #[test]
    fn double_review_is_illegal() {
        let (mut store, id) = seeded(GovernanceState::Open);
        let clock = SimClock::new(0);
        let mut engine = Engine::new(&mut store, &clock);
        let incident = engine.flag(&id, "org-a", "harm").unwrap();
        let iid = incident.id.0.clone();
        engine.review(&iid, "m", ReviewDecision::Remediate, "confirmed").unwrap();
        assert!(matches!(
            engine.review(&iid, "m", ReviewDecision::Dismiss, "again"),
            Err(CommonsError::IllegalTransition(_))
        ));
    }

    #[test]
    fn appeal_rearms_sla() {
        let (mut store, id) = seeded(GovernanceState::Open);
        let clock = SimClock::new(0);
        let mut engine = Engine::new(&mut store, &clock);
        let incident = engine.flag(&id, "org-a", "harm").unwrap();
        let iid = incident.id.0.clone();

        // Appeal of an unresolved incident is illegal.
        assert!(matches!(engine.appeal(&iid, "author"), Err(CommonsError::IllegalTransition(_))));

        engine.review(&iid, "m", ReviewDecision::Remediate, "confirmed").unwrap();
        let appealed = engine.appeal(&iid, "author").unwrap();
        assert_eq!(appealed.state, IncidentState::Appealed);
        assert_eq!(appealed.sla_deadline, Some(72 * 3600));

        // Just inside the SLA: not overdue. One second past: overdue.
        clock.set(72 * 3600);
        assert!(engine.check_sla().is_empty());
        clock.set(72 * 3600 + 1);
        assert_eq!(engine.check_sla(), vec![IncidentId(iid)]);
    }

    #[test]
    fn check_sla_empty_set() {
        let mut store = open_store();
        let clock = SimClock::new(0);
        let engine = Engine::new(&mut store, &clock);
        assert!(engine.check_sla().is_empty());
    }

    #[test]
    fn sanction_ladder() {
        let mut store = open_store();
        let clock = SimClock::new(0);
        let mut engine = Engine::new(&mut store, &clock);
        engine.sanction("spammer", SanctionLevel::SoftFix, "m", "first offence").unwrap();
        // Skipping the warning rung is rejected.
        assert!(matches!(
            engine.sanction("spammer", SanctionLevel::TemporarySuspension, "m", "skip"),
            Err(CommonsError::LadderViolation(_))
        ));
        engine.sanction("spammer", SanctionLevel::Warning, "m", "second offence").unwrap();
        engine.sanction("spammer", SanctionLevel::TemporarySuspension, "m", "third offence").unwrap();
        assert!(engine.is_suspended("spammer"));
    }

    #[test]
    fn suspended_actor_cannot_propose() {
        let mut store = open_store();
        let clock = SimClock::new(0);
        let p = store.put(&draft("benches", &["seniors"], "safety"), "spammer", &clock).unwrap();
        let id = p.id.0.clone();
        let mut engine = Engine::new(&mut store, &clock);
        engine.sanction("spammer", SanctionLevel::SoftFix, "m", "1").unwrap();
        engine.sanction("spammer", SanctionLevel::Warning, "m", "2").unwrap();
        engine.sanction("spammer", SanctionLevel::TemporarySuspension, "m", "3").unwrap();
        assert!(matches!(engine.propose(&id, "spammer"), Err(CommonsError::SuspendedActor(_))));
        engine.lift_sanctions("spammer", "m", "cooled off").unwrap();
        assert!(engine.propose(&id, "spammer").is_ok());
    }

    #[test]
    fn strike_and_unstrike_are_inverse() {
        let mut store = open_store();
        let clock = SimClock::new(0);
        let mut ids = Vec::new();
        for i in 0..3 {
            let p = store
                .put(&draft(&format!("senior prompt {i}"), &["seniors"], "safety"), "a", &clock)
                .unwrap();
            ids.push(p.id.0.clone());
        }
        let other = store.put(&draft("women prompt", &["women"], "safety"), "a", &clock).unwrap();
        let other_id = other.id.0.clone();
        let mut engine = Engine::new(&mut store, &clock);
        for id in ids.iter().chain([&other_id]) {
            engine.propose(id, "a").unwrap();
            engine.merge(id, "m", "seed").unwrap();
        }
        assert_eq!(engine.strike("seniors", "rep", "protest misuse").unwrap(), 3);
        for id in &ids {
            assert_eq!(store.get(id).unwrap().status, Status::Withdrawn);
        }
        assert_eq!(store.get(&other_id).unwrap().status, Status::Merged);
        let mut engine = Engine::new(&mut store, &clock);
        assert_eq!(engine.unstrike("seniors", "rep", "resolved").unwrap(), 3);
        for id in &ids {
            assert_eq!(store.get(id).unwrap().status, Status::Merged);
        }
    }

    #[test]
    fn replay_reconstructs_statuses() {
        let (mut store, id) = seeded(GovernanceState::VetoEnabled);
        store.config.recognized_orgs.insert("org-a".into());
        let clock = SimClock::new(0);
        let p2 = store.put(&draft("second prompt", &["women"], "safety"), "a", &clock).unwrap();
        let id2 = p2.id.0.clone();
        let mut engine = Engine::new(&mut store, &clock);
        engine.propose(&id2, "a").unwrap();
        let incident = engine.flag(&id, "org-a", "harm").unwrap();
        engine.review(&incident.id.0.clone(), "m", ReviewDecision::Remediate, "confirmed").unwrap();

        let replayed = replay_statuses(store.audit_entries());
        for prompt in store.prompts() {
            assert_eq!(replayed.get(prompt.id.as_str()), Some(&prompt.status));
        }
    }
}
