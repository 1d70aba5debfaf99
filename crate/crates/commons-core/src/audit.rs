//! Append-only audit log: who, when, what, rationale.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{CommonsError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AuditAction {
    Propose,
    Merge,
    Reject,
    Flag,
    Quarantine,
    Review,
    Remediate,
    Appeal,
    Sanction,
    Strike,
    Unstrike,
    Update,
}

impl fmt::Display for AuditAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AuditAction::Propose => "propose",
            AuditAction::Merge => "merge",
            AuditAction::Reject => "reject",
            AuditAction::Flag => "flag",
            AuditAction::Quarantine => "quarantine",
            AuditAction::Review => "review",
            AuditAction::Remediate => "remediate",
            AuditAction::Appeal => "appeal",
            AuditAction::Sanction => "sanction",
            AuditAction::Strike => "strike",
            AuditAction::Unstrike => "unstrike",
            AuditAction::Update => "update",
        };
        f.write_str(s)
    }
}

impl FromStr for AuditAction {
    type Err = CommonsError;

    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_value(serde_json::Value::String(s.to_string()))
            .map_err(|_| CommonsError::Parse(format!("unknown audit action {s:?}")))
    }
}

/// One immutable log record. `seq` is dense and strictly increasing;
/// entries are never rewritten.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditEntry {
    pub seq: u64,
    pub actor: String,
    pub timestamp: i64,
    pub action: AuditAction,
    pub subject: String,
    pub rationale: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub issue_link: Option<String>,
}

/// Machine-readable detail embedded in engine-generated rationales, e.g.
/// `[group=seniors]` on strike entries or `[level=warning]` on sanctions.
/// Keeps the audit log self-contained enough to replay.
pub fn rationale_detail<'a>(rationale: &'a str, key: &str) -> Option<&'a str> {
    let rest = rationale.strip_prefix('[')?;
    let end = rest.find(']')?;
    let inner = &rest[..end];
    let (k, v) = inner.split_once('=')?;
    (k == key).then_some(v)
}

/// Compose an engine rationale with an embedded detail tag.
pub fn tagged_rationale(key: &str, value: &str, rationale: &str) -> String {
    format!("[{key}={value}] {rationale}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn action_round_trip() {
        for s in ["propose", "merge", "strike", "update"] {
            let a: AuditAction = s.parse().unwrap();
            assert_eq!(a.to_string(), s);
        }
        assert!("banish".parse::<AuditAction>().is_err());
    }

    #[test]
    fn detail_extraction() {
        let r = tagged_rationale("group", "seniors", "collective withdrawal");
        assert_eq!(rationale_detail(&r, "group"), Some("seniors"));
        assert_eq!(rationale_detail(&r, "level"), None);
        assert_eq!(rationale_detail("plain text", "group"), None);
    }
}
