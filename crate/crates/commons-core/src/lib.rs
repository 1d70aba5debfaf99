//! Core library for a community-governed prompt repository: content-
//! addressed storage with semantic versioning and an append-only audit log,
//! a submission checklist validator, a three-state governance engine,
//! prompt-selection methods with outcome adapters, evaluation metrics, and
//! a moderation-latency simulator.

pub mod audit;
pub mod checklist;
pub mod clock;
pub mod config;
pub mod error;
pub mod governance;
pub mod incident;
pub mod metrics;
pub mod prompt;
pub mod rng;
pub mod sampler;
pub mod simulator;
pub mod store;

pub use error::{CommonsError, Result};
