//! Error types shared across the crate.

use thiserror::Error;

use crate::checklist::ValidationReport;

#[derive(Debug, Error)]
pub enum CommonsError {
    #[error("invalid prompt: {0}")]
    InvalidPrompt(String),
    #[error("unknown vocabulary value: {0}")]
    Vocabulary(String),
    #[error("licence not permitted: {0}")]
    Licence(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("audit error: {0}")]
    Audit(String),
    #[error("illegal transition: {0}")]
    IllegalTransition(String),
    #[error("checklist failed for prompt {prompt_id}")]
    ChecklistFailed {
        prompt_id: String,
        report: Box<ValidationReport>,
    },
    #[error("quota blocked: merge would push groups below their minimum share: {0:?}")]
    QuotaBlocked(Vec<String>),
    #[error("sanction ladder violation: {0}")]
    LadderViolation(String),
    #[error("actor suspended: {0}")]
    SuspendedActor(String),
    #[error("empty eligible pool")]
    EmptyPool,
    #[error("missing fixture entry for {0}")]
    MissingFixture(String),
    #[error("adapter unavailable: {0}")]
    AdapterUnavailable(String),
    #[error("empty input: {0}")]
    EmptyInput(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("likert score out of range 1..=7: {0}")]
    LikertRange(i64),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("simulation fault: {0}")]
    SimulationFault(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, CommonsError>;
