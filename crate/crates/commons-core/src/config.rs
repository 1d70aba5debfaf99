//! Governance configuration and the `config.commons` file format.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{CommonsError, Result};
use crate::prompt::{DEFAULT_GROUP_TAGS, DEFAULT_VALUE_CLAIMS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GovernanceState {
    Open,
    Curated,
    VetoEnabled,
}

impl GovernanceState {
    pub fn as_str(&self) -> &'static str {
        match self {
            GovernanceState::Open => "open",
            GovernanceState::Curated => "curated",
            GovernanceState::VetoEnabled => "veto_enabled",
        }
    }

    pub const ALL: [GovernanceState; 3] =
        [GovernanceState::Open, GovernanceState::Curated, GovernanceState::VetoEnabled];
}

impl fmt::Display for GovernanceState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GovernanceState {
    type Err = CommonsError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "open" => Ok(GovernanceState::Open),
            "curated" => Ok(GovernanceState::Curated),
            "veto" | "veto_enabled" | "veto-enabled" => Ok(GovernanceState::VetoEnabled),
            other => Err(CommonsError::Parse(format!("unknown governance state {other:?}"))),
        }
    }
}

/// Graduated sanction ladder. Order is fixed: escalation may climb at most
/// one rung at a time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SanctionLevel {
    SoftFix,
    Warning,
    TemporarySuspension,
}

impl SanctionLevel {
    pub fn rung(&self) -> u8 {
        match self {
            SanctionLevel::SoftFix => 1,
            SanctionLevel::Warning => 2,
            SanctionLevel::TemporarySuspension => 3,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            SanctionLevel::SoftFix => "soft_fix",
            SanctionLevel::Warning => "warning",
            SanctionLevel::TemporarySuspension => "temporary_suspension",
        }
    }
}

impl FromStr for SanctionLevel {
    type Err = CommonsError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "soft_fix" => Ok(SanctionLevel::SoftFix),
            "warning" => Ok(SanctionLevel::Warning),
            "temporary_suspension" => Ok(SanctionLevel::TemporarySuspension),
            other => Err(CommonsError::Parse(format!("unknown sanction level {other:?}"))),
        }
    }
}

impl fmt::Display for SanctionLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GovernanceConfig {
    pub state: GovernanceState,
    /// Minimum share of merged prompts per author group, each in [0,1];
    /// the shares must sum to at most 1.
    pub quotas: BTreeMap<String, f64>,
    pub appeal_sla_hours: u64,
    pub recognized_orgs: BTreeSet<String>,
    /// Baseline prompt id for the single-author method M0.
    pub baseline_prompt: Option<String>,
    pub group_vocab: BTreeSet<String>,
    pub claim_vocab: BTreeSet<String>,
    /// Lowercased phrases that escalate the safety/inclusion rule to error.
    pub blocklist: Vec<String>,
    /// Street-type words used by the civic-address PII heuristic.
    pub street_types: Vec<String>,
    /// Keywords that trigger the accessibility-tags advisory when present
    /// in the prompt text while the tag set is empty.
    pub mobility_keywords: Vec<String>,
}

impl Default for GovernanceConfig {
    fn default() -> Self {
        GovernanceConfig {
            state: GovernanceState::Open,
            quotas: BTreeMap::new(),
            appeal_sla_hours: 72,
            recognized_orgs: BTreeSet::new(),
            baseline_prompt: None,
            group_vocab: DEFAULT_GROUP_TAGS.iter().map(|s| s.to_string()).collect(),
            claim_vocab: DEFAULT_VALUE_CLAIMS.iter().map(|s| s.to_string()).collect(),
            blocklist: vec![
                "not welcome".into(),
                "keep them out".into(),
                "should be banned".into(),
                "no place for".into(),
            ],
            street_types: vec![
                "rue".into(),
                "street".into(),
                "avenue".into(),
                "boulevard".into(),
            ],
            mobility_keywords: vec![
                "wheelchair".into(),
                "ramp".into(),
                "step-free".into(),
                "mobility".into(),
                "accessible".into(),
            ],
        }
    }
}

impl GovernanceConfig {
    pub fn validate(&self) -> Result<()> {
        if self.appeal_sla_hours == 0 {
            return Err(CommonsError::Config("appeal_sla_hours must be positive".into()));
        }
        let mut total = 0.0;
        for (group, share) in &self.quotas {
            if !(0.0..=1.0).contains(share) {
                return Err(CommonsError::Config(format!(
                    "quota for {group} must be in [0,1], got {share}"
                )));
            }
            if !self.group_vocab.contains(group) {
                return Err(CommonsError::Config(format!("quota for unknown group {group:?}")));
            }
            total += share;
        }
        if total > 1.0 + 1e-12 {
            return Err(CommonsError::Config(format!("quota shares sum to {total} > 1")));
        }
        if self.group_vocab.is_empty() {
            return Err(CommonsError::Config("group vocabulary must not be empty".into()));
        }
        if self.claim_vocab.is_empty() {
            return Err(CommonsError::Config("value-claim vocabulary must not be empty".into()));
        }
        Ok(())
    }

    /// Serialize as `key: value` lines for `config.commons`.
    pub fn to_commons_string(&self) -> String {
        let mut out = String::new();
        let join = |xs: &mut dyn Iterator<Item = &String>| xs.cloned().collect::<Vec<_>>().join(",");
        out.push_str(&format!("state: {}\n", self.state));
        out.push_str(&format!("appeal_sla_hours: {}\n", self.appeal_sla_hours));
        if !self.recognized_orgs.is_empty() {
            out.push_str(&format!(
                "recognized_orgs: {}\n",
                join(&mut self.recognized_orgs.iter())
            ));
        }
        if let Some(id) = &self.baseline_prompt {
            out.push_str(&format!("baseline_prompt: {id}\n"));
        }
        for (group, share) in &self.quotas {
            out.push_str(&format!("quota.{group}: {share}\n"));
        }
        out.push_str(&format!("group_tags: {}\n", join(&mut self.group_vocab.iter())));
        out.push_str(&format!("value_claims: {}\n", join(&mut self.claim_vocab.iter())));
        out.push_str(&format!("blocklist: {}\n", self.blocklist.join(",")));
        out.push_str(&format!("street_types: {}\n", self.street_types.join(",")));
        out.push_str(&format!("mobility_keywords: {}\n", self.mobility_keywords.join(",")));
        out
    }

    /// Parse `config.commons`. Unknown keys are rejected; missing keys keep
    /// their defaults.
    pub fn from_commons_str(s: &str) -> Result<Self> {
        let mut cfg = GovernanceConfig::default();
        for (lineno, line) in s.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once(':').ok_or_else(|| {
                CommonsError::Parse(format!("config line {} has no ':'", lineno + 1))
            })?;
            let key = key.trim();
            let value = value.trim();
            let list = |v: &str| -> Vec<String> {
                v.split(',')
                    .map(|x| x.trim().to_string())
                    .filter(|x| !x.is_empty())
                    .collect()
            };
            if let Some(group) = key.strip_prefix("quota.") {
                let share: f64 = value.parse().map_err(|_| {
                    CommonsError::Parse(format!("bad quota value {value:?} for {group}"))
                })?;
                cfg.quotas.insert(group.to_string(), share);
                continue;
            }
            match key {
                "state" => cfg.state = value.parse()?,
                "appeal_sla_hours" => {
                    cfg.appeal_sla_hours = value.parse().map_err(|_| {
                        CommonsError::Parse(format!("bad appeal_sla_hours {value:?}"))
                    })?;
                }
                "recognized_orgs" => cfg.recognized_orgs = list(value).into_iter().collect(),
                "baseline_prompt" => {
                    cfg.baseline_prompt =
                        (!value.is_empty()).then(|| value.to_string());
                }
                "group_tags" => cfg.group_vocab = list(value).into_iter().collect(),
                "value_claims" => cfg.claim_vocab = list(value).into_iter().collect(),
                "blocklist" => cfg.blocklist = list(value),
                "street_types" => cfg.street_types = list(value),
                "mobility_keywords" => cfg.mobility_keywords = list(value),
                other => {
                    return Err(CommonsError::Parse(format!("unknown config key {other:?}")));
                }
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}
