//! Versioned prompt artefacts and their governance metadata.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use unicode_normalization::UnicodeNormalization;

use crate::error::{CommonsError, Result};

/// 16-lowercase-hex identifier: first 64 bits of SHA-256 over the
/// canonical form of (text, author groups, locale).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PromptId(pub String);

impl fmt::Display for PromptId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl PromptId {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

/// Author-group tag, validated against the configured vocabulary.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupTag(pub String);

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// The default closed set of author-group tags. Extensible via config.
pub const DEFAULT_GROUP_TAGS: &[&str] = &[
    "seniors",
    "women",
    "ethnic_minority",
    "disability",
    "lgbtq",
    "religious_minority",
    "immigrant",
    "neighbourhood",
    "practitioner",
    "cultural_institution",
];

/// Normative intent tag, validated against the configured vocabulary.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ValueClaim(pub String);

impl fmt::Display for ValueClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Default controlled vocabulary for value claims.
pub const DEFAULT_VALUE_CLAIMS: &[&str] = &[
    "safety",
    "accessibility",
    "biodiversity",
    "conviviality",
    "transit",
    "greenery",
    "housing",
    "heritage",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AccessTag {
    #[serde(rename = "mobility")]
    Mobility,
    #[serde(rename = "vision")]
    Vision,
    #[serde(rename = "neurodiversity")]
    Neurodiversity,
}

impl AccessTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            AccessTag::Mobility => "mobility",
            AccessTag::Vision => "vision",
            AccessTag::Neurodiversity => "neurodiversity",
        }
    }
}

impl FromStr for AccessTag {
    type Err = CommonsError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mobility" => Ok(AccessTag::Mobility),
            "vision" => Ok(AccessTag::Vision),
            "neurodiversity" => Ok(AccessTag::Neurodiversity),
            other => Err(CommonsError::Vocabulary(format!(
                "accessibility tag {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Licence {
    #[serde(rename = "CC-BY-4.0")]
    CcBy4,
    #[serde(rename = "CC-BY-SA-4.0")]
    CcBySa4,
}

impl Licence {
    pub fn as_str(&self) -> &'static str {
        match self {
            Licence::CcBy4 => "CC-BY-4.0",
            Licence::CcBySa4 => "CC-BY-SA-4.0",
        }
    }
}

impl FromStr for Licence {
    type Err = CommonsError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "CC-BY-4.0" => Ok(Licence::CcBy4),
            "CC-BY-SA-4.0" => Ok(Licence::CcBySa4),
            other => Err(CommonsError::Licence(other.to_string())),
        }
    }
}

/// Lifecycle status. Transitions happen only through the governance engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Draft,
    Proposed,
    Merged,
    Quarantined,
    Withdrawn,
    Retired,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Draft => "draft",
            Status::Proposed => "proposed",
            Status::Merged => "merged",
            Status::Quarantined => "quarantined",
            Status::Withdrawn => "withdrawn",
            Status::Retired => "retired",
        }
    }
}

impl FromStr for Status {
    type Err = CommonsError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "draft" => Ok(Status::Draft),
            "proposed" => Ok(Status::Proposed),
            "merged" => Ok(Status::Merged),
            "quarantined" => Ok(Status::Quarantined),
            "withdrawn" => Ok(Status::Withdrawn),
            "retired" => Ok(Status::Retired),
            other => Err(CommonsError::Parse(format!("unknown status {other:?}"))),
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Semantic version, major.minor.patch, starting at 1.0.0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Version {
    pub major: u64,
    pub minor: u64,
    pub patch: u64,
}

impl Version {
    pub const INITIAL: Version = Version { major: 1, minor: 0, patch: 0 };

    pub fn bump_major(self) -> Version {
        Version { major: self.major + 1, minor: 0, patch: 0 }
    }

    pub fn bump_minor(self) -> Version {
        Version { major: self.major, minor: self.minor + 1, patch: 0 }
    }

    pub fn bump_patch(self) -> Version {
        Version { major: self.major, minor: self.minor, patch: self.patch + 1 }
    }
}

impl fmt::Display for Version {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}.{}", self.major, self.minor, self.patch)
    }
}

impl FromStr for Version {
    type Err = CommonsError;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split('.');
        let mut next = |name: &str| -> Result<u64> {
            parts
                .next()
                .ok_or_else(|| CommonsError::Parse(format!("version missing {name}: {s:?}")))?
                .parse()
                .map_err(|_| CommonsError::Parse(format!("bad version component in {s:?}")))
        };
        let v = Version { major: next("major")?, minor: next("minor")?, patch: next("patch")? };
        if parts.next().is_some() {
            return Err(CommonsError::Parse(format!("trailing version components in {s:?}")));
        }
        Ok(v)
    }
}

/// A versioned prompt with governance metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prompt {
    pub id: PromptId,
    pub text: String,
    pub author_groups: BTreeSet<GroupTag>,
    pub locale: String,
    pub value_claim: ValueClaim,
    pub justification: String,
    pub accessibility_tags: BTreeSet<AccessTag>,
    pub licence: Licence,
    pub counter_prompt_ref: Option<PromptId>,
    pub version: Version,
    pub status: Status,
}

impl Prompt {
    pub fn has_group(&self, tag: &str) -> bool {
        self.author_groups.iter().any(|g| g.0 == tag)
    }
}

/// Unvalidated prompt fields, as parsed from a `.prompt` file or CLI input.
/// Conversion into a stored [`Prompt`] happens in the store, which enforces
/// the vocabularies; the checklist validator works on drafts directly so it
/// can report vocabulary problems as findings instead of hard errors.
#[derive(Debug, Clone, Default)]
pub struct PromptDraft {
    pub id: Option<String>,
    pub text: String,
    pub author_groups: Vec<String>,
    pub locale: String,
    pub value_claim: String,
    pub justification: String,
    pub accessibility_tags: Vec<String>,
    pub licence: String,
    pub counter_prompt_ref: Option<String>,
}

impl From<&Prompt> for PromptDraft {
    fn from(p: &Prompt) -> Self {
        PromptDraft {
            id: Some(p.id.0.clone()),
            text: p.text.clone(),
            author_groups: p.author_groups.iter().map(|g| g.0.clone()).collect(),
            locale: p.locale.clone(),
            value_claim: p.value_claim.0.clone(),
            justification: p.justification.clone(),
            accessibility_tags: p
                .accessibility_tags
                .iter()
                .map(|t| t.as_str().to_string())
                .collect(),
            licence: p.licence.as_str().to_string(),
            counter_prompt_ref: p.counter_prompt_ref.as_ref().map(|r| r.0.clone()),
        }
    }
}

/// Canonical text form used for hashing: NFC, lowercased, trimmed.
fn canonical_text(text: &str) -> String {
    text.nfc().collect::<String>().to_lowercase().trim().to_string()
}

/// Deterministic content address: first 16 hex chars of SHA-256 over
/// `canonical_text \n sorted,group,tags \n locale`.
pub fn compute_id<I, S>(text: &str, author_groups: I, locale: &str) -> Result<PromptId>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let canon = canonical_text(text);
    if canon.is_empty() {
        return Err(CommonsError::InvalidPrompt("empty text".into()));
    }
    let mut groups: Vec<String> = author_groups
        .into_iter()
        .map(|g| g.as_ref().to_string())
        .collect();
    groups.sort();
    let mut hasher = Sha256::new();
    hasher.update(canon.as_bytes());
    hasher.update(b"\n");
    hasher.update(groups.join(",").as_bytes());
    hasher.update(b"\n");
    hasher.update(locale.as_bytes());
    let digest = hasher.finalize();
    let hex: String = digest.iter().take(8).map(|b| format!("{b:02x}")).collect();
    Ok(PromptId(hex))
}
