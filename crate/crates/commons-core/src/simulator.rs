//! Synthetic moderation experiment: exponential remediation times per
//! governance state, plus a stress mode that drives the live governance
//! engine on a simulated clock and checks it adds no latency.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::clock::SimClock;
use crate::config::{GovernanceConfig, GovernanceState};
use crate::error::{CommonsError, Result};
use crate::governance::{Engine, ReviewDecision};
use crate::metrics::ci95;
use crate::prompt::PromptDraft;
use crate::rng::{split_seed, XorShift64Star};
use crate::store::Store;

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    /// Mean remediation hours per governance state.
    pub means: BTreeMap<GovernanceState, f64>,
    pub n_incidents: usize,
    pub seed: u64,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            means: BTreeMap::from([
                (GovernanceState::Open, 36.0),
                (GovernanceState::Curated, 12.0),
                (GovernanceState::VetoEnabled, 6.0),
            ]),
            n_incidents: 50,
            seed: 0,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_incidents < 2 {
            return Err(CommonsError::Config(format!(
                "n_incidents must be at least 2, got {}",
                self.n_incidents
            )));
        }
        for (state, mean) in &self.means {
            if !(*mean > 0.0) {
                return Err(CommonsError::Config(format!(
                    "mean remediation hours for {state} must be positive, got {mean}"
                )));
            }
        }
        Ok(())
    }

    fn mean_for(&self, state: GovernanceState) -> Result<f64> {
        self.means
            .get(&state)
            .copied()
            .ok_or_else(|| CommonsError::Config(format!("no mean configured for state {state}")))
    }
}

/// Inverse-CDF transform: t = −mean · ln(1 − u), u ∈ [0, 1).
pub fn exponential_inverse(mean: f64, u: f64) -> f64 {
    -mean * (1.0 - u).ln()
}

pub fn sample_exponential(mean: f64, rng: &mut XorShift64Star) -> Result<f64> {
    if !(mean > 0.0) {
        return Err(CommonsError::Config(format!("exponential mean must be positive, got {mean}")));
    }
    Ok(exponential_inverse(mean, rng.next_f64()))
}

/// Remediation times are quantized to whole seconds so the synthetic path
/// and the engine path (whose clocks tick in seconds) measure identical
/// values. The ≤0.5 s rounding is negligible at hour scale.
pub fn sample_remediation_seconds(mean: f64, rng: &mut XorShift64Star) -> Result<i64> {
    Ok((sample_exponential(mean, rng)? * 3600.0).round() as i64)
}

fn state_stream(state: GovernanceState) -> u64 {
    match state {
        GovernanceState::Open => 0,
        GovernanceState::Curated => 1,
        GovernanceState::VetoEnabled => 2,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateSummary {
    pub mean: f64,
    pub ci95_half: f64,
    pub samples: Vec<f64>,
}

/// Draw n remediation times per state and summarize. Deterministic per
/// seed; each state consumes an independent sub-stream so adding a state
/// never perturbs the others.
pub fn run_synthetic(config: &SimConfig) -> Result<BTreeMap<GovernanceState, StateSummary>> {
    config.validate()?;
    let mut out = BTreeMap::new();
    for state in GovernanceState::ALL {
        let mean_hours = config.mean_for(state)?;
        let mut rng = XorShift64Star::new(split_seed(config.seed, state_stream(state)));
        let samples: Vec<f64> = (0..config.n_incidents)
            .map(|_| sample_remediation_seconds(mean_hours, &mut rng).map(|s| s as f64 / 3600.0))
            .collect::<Result<_>>()?;
        let (mean, ci95_half) = ci95(&samples)?;
        out.insert(state, StateSummary { mean, ci95_half, samples });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StressReport {
    pub state: GovernanceState,
    /// Sampled remediation hours, in incident order.
    pub sampled: Vec<f64>,
    /// Engine-measured flag-to-resolution hours, in incident order.
    pub measured: Vec<f64>,
    pub sla_hours: u64,
    pub breaches: usize,
    pub breach_fraction: f64,
}

/// Flag `n_incidents` prompts at t=0, replay their reviews in time order on
/// a simulated clock, and compare the engine-measured remediation times
/// against the sampled schedule. Any engine rejection is a state-machine
/// bug surfaced as `SimulationFault`.
pub fn run_engine_stress(config: &SimConfig, state: GovernanceState) -> Result<StressReport> {
    config.validate()?;
    let mean_hours = config.mean_for(state)?;
    let clock = SimClock::new(0);
    let fault = |e: CommonsError| CommonsError::SimulationFault(e.to_string());

    // Build the fixture store under open governance (light moderation),
    // then switch to the state under test.
    let mut store = Store::in_memory(GovernanceConfig::default());
    let mut prompt_ids = Vec::with_capacity(config.n_incidents);
    for i in 0..config.n_incidents {
        let draft = PromptDraft {
            id: None,
            text: format!("improve crossing visibility at junction {i}"),
            author_groups: vec!["practitioner".into()],
            locale: "Ville-Marie".into(),
            value_claim: "safety".into(),
            justification: "synthetic stress fixture".into(),
            accessibility_tags: vec![],
            licence: "CC-BY-4.0".into(),
            counter_prompt_ref: None,
        };
        prompt_ids.push(store.put(&draft, "sim", &clock).map_err(fault)?.id.0.clone());
    }
    {
        let mut engine = Engine::new(&mut store, &clock);
        for id in &prompt_ids {
            engine.propose(id, "sim").map_err(fault)?;
            engine.merge(id, "sim-maintainer", "stress fixture").map_err(fault)?;
        }
    }
    store.config.state = state;
    store.config.recognized_orgs.insert("sim-org".into());
    let sla_hours = store.config.appeal_sla_hours;

    // Same sub-stream as run_synthetic, so schedules match per seed.
    let mut rng = XorShift64Star::new(split_seed(config.seed, state_stream(state)));
    let mut schedule = Vec::with_capacity(config.n_incidents);
    for _ in 0..config.n_incidents {
        schedule.push(sample_remediation_seconds(mean_hours, &mut rng)?);
    }

    let mut engine = Engine::new(&mut store, &clock);
    let mut incident_ids = Vec::with_capacity(config.n_incidents);
    for id in &prompt_ids {
        let incident = engine.flag(id, "sim-org", "synthetic flag").map_err(fault)?;
        if state == GovernanceState::VetoEnabled && incident.quarantined_at != Some(0) {
            return Err(CommonsError::SimulationFault(format!(
                "veto flag did not quarantine incident {} at flag time",
                incident.id
            )));
        }
        incident_ids.push(incident.id.0.clone());
    }

    let mut events: Vec<(i64, usize)> =
        schedule.iter().enumerate().map(|(i, &secs)| (secs, i)).collect();
    events.sort();
    for (secs, idx) in events {
        clock.set(secs);
        engine
            .review(&incident_ids[idx], "sim-maintainer", ReviewDecision::Remediate, "synthetic review")
            .map_err(fault)?;
    }

    let mut measured = Vec::with_capacity(config.n_incidents);
    for id in &incident_ids {
        let hours = store
            .incident(id)
            .map_err(fault)?
            .time_to_remediation_hours()
            .ok_or_else(|| CommonsError::SimulationFault(format!("incident {id} unresolved")))?;
        measured.push(hours);
    }
    let sampled: Vec<f64> = schedule.iter().map(|&s| s as f64 / 3600.0).collect();
    let breaches = measured.iter().filter(|&&h| h > sla_hours as f64).count();
    Ok(StressReport {
        state,
        breach_fraction: breaches as f64 / config.n_incidents as f64,
        sampled,
        measured,
        sla_hours,
        breaches,
    })
}
