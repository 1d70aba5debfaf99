//! Flagged-harm incidents and their lifecycle timestamps.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IncidentId(pub String);

impl fmt::Display for IncidentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IncidentState {
    Open,
    Quarantined,
    UnderReview,
    Remediated,
    Dismissed,
    Appealed,
}

impl IncidentState {
    /// Unresolved incidents keep their prompt out of the veto-filtered pool.
    pub fn is_unresolved(&self) -> bool {
        matches!(
            self,
            IncidentState::Open
                | IncidentState::Quarantined
                | IncidentState::UnderReview
                | IncidentState::Appealed
        )
    }

    /// States whose SLA deadline is enforced by `check_sla`.
    pub fn sla_tracked(&self) -> bool {
        matches!(
            self,
            IncidentState::Quarantined | IncidentState::UnderReview | IncidentState::Appealed
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Incident {
    pub id: IncidentId,
    pub prompt_ref: String,
    pub flagger: String,
    pub flagged_at: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quarantined_at: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolved_at: Option<i64>,
    pub state: IncidentState,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolution_rationale: Option<String>,
    /// Epoch seconds by which the incident must be resolved; armed on
    /// quarantine and re-armed on appeal.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sla_deadline: Option<i64>,
}

impl Incident {
    /// Hours from flag to resolution; defined only for resolved incidents.
    pub fn time_to_remediation_hours(&self) -> Option<f64> {
        match self.state {
            IncidentState::Remediated | IncidentState::Dismissed => {
                self.resolved_at.map(|r| (r - self.flagged_at) as f64 / 3600.0)
            }
            _ => None,
        }
    }

    /// flagged_at <= quarantined_at <= resolved_at, where present.
    pub fn timestamps_monotone(&self) -> bool {
        let q_ok = self.quarantined_at.map_or(true, |q| self.flagged_at <= q);
        let r_ok = self.resolved_at.map_or(true, |r| {
            self.flagged_at <= r && self.quarantined_at.map_or(true, |q| q <= r)
        });
        q_ok && r_ok
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn incident(state: IncidentState) -> Incident {
        Incident {
            id: IncidentId("inc-000001".into()),
            prompt_ref: "deadbeefdeadbeef".into(),
            flagger: "org-a".into(),
            flagged_at: 1000,
            quarantined_at: None,
            resolved_at: None,
            state,
            resolution_rationale: None,
            sla_deadline: None,
        }
    }

    #[test]
    fn remediation_time_in_hours() {
        let mut i = incident(IncidentState::Remediated);
        i.resolved_at = Some(1000 + 5 * 3600);
        assert_eq!(i.time_to_remediation_hours(), Some(5.0));
    }

    #[test]
    fn unresolved_has_no_remediation_time() {
        let i = incident(IncidentState::Quarantined);
        assert_eq!(i.time_to_remediation_hours(), None);
    }

    #[test]
    fn monotonicity_check() {
        let mut i = incident(IncidentState::Remediated);
        i.quarantined_at = Some(1500);
        i.resolved_at = Some(1200);
        assert!(!i.timestamps_monotone());
        i.resolved_at = Some(1800);
        assert!(i.timestamps_monotone());
    }
}
