//! Benchmark accounting: per-step regret records, the grid oracle, and the
//! aggregate statistics the experiment harness reports.
//!
//! The oracle is deliberately *noiseless*: it scores the true objective of
//! every candidate the agent could have picked at that step, under the same
//! context, and takes the maximum — so cumulative regret measures decision
//! quality, not observation luck. On capped clusters the oracle additionally
//! discards candidates whose true usage would break a cap, which makes it
//! the constrained optimum an ideal safe agent could reach.

use std::fmt;

use thiserror::Error;

use crate::encoding::{ActionVector, ContextVector};
use crate::sim::{ResourceLimit, SimEnv};

/// Errors produced by the metrics layer.
#[derive(Debug, Error)]
pub enum MetricsError {
    /// The oracle was handed an empty candidate list.
    #[error("oracle requires at least one candidate")]
    EmptyCandidates,

    /// Every candidate violated the resource caps — impossible with the
    /// built-in scenarios, whose interference ceilings leave headroom.
    #[error("no candidate satisfies the resource caps")]
    NoFeasibleCandidate,

    /// A cost comparison against an all-zero baseline is undefined.
    #[error("baseline records carry zero total cost")]
    ZeroBaselineCost,
}

/// Which regime of its schedule an agent was in when a step ran.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    /// Random draws from the initial safe set (capped clusters only).
    Exploration,
    /// Normal acquisition-driven selection.
    Exploitation,
    /// A forced resource-doubling step after a failed deployment.
    Recovery,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::Exploration => "exploration",
            Phase::Exploitation => "exploitation",
            Phase::Recovery => "recovery",
        })
    }
}

/// Everything recorded about one decision step.
#[derive(Debug, Clone, PartialEq)]
pub struct RegretRecord {
    /// Step index, starting at 1.
    pub t: u64,
    /// The context the agent saw.
    pub context: ContextVector,
    /// The action it deployed.
    pub action: ActionVector,
    /// The (noisy) objective value it observed.
    pub achieved: f64,
    /// The noiseless optimum over the shared candidate grid.
    pub oracle: f64,
    /// `oracle − achieved`; may dip slightly negative under noise.
    pub regret: f64,
    /// True `[cpu, ram, net]` usage of the deployment.
    pub usage: [f64; 3],
    /// Normalized cost incurred this step.
    pub cost: f64,
    /// Whether true usage broke a resource cap.
    pub violation: bool,
    /// Whether pods were OOM-killed this step.
    pub oom: bool,
    /// The agent's phase when it chose this action.
    pub phase: Phase,
}

/// Assembles a record, deriving regret and the cap-violation flag.
#[allow(clippy::too_many_arguments)]
pub fn build_record(
    t: u64,
    context: ContextVector,
    action: ActionVector,
    achieved: f64,
    oracle: f64,
    usage: [f64; 3],
    cost: f64,
    oom: bool,
    phase: Phase,
    limit: Option<&ResourceLimit>,
) -> RegretRecord {
    let violation = limit
        .map(|l| {
            let caps = l.as_array();
            usage.iter().zip(caps.iter()).any(|(u, c)| u > c)
        })
        .unwrap_or(false);
    RegretRecord {
        t,
        context,
        action,
        achieved,
        regret: oracle - achieved,
        oracle,
        usage,
        cost,
        violation,
        oom,
        phase,
    }
}

/// The true (noiseless) objective of an action under a context: the weighted
/// performance–cost reward on pay-per-use scenarios, plain performance on
/// capped ones. Performance is shifted from its declared `[−1, 0]` range
/// onto `[0, 1]` before weighting so both objective terms share a scale.
pub fn objective_value(env: &SimEnv, action: &ActionVector, context: &ContextVector) -> f64 {
    let perf = env.true_perf(action, context);
    if env.scenario().kind.is_private() {
        perf
    } else {
        let weights = &env.scenario().reward;
        weights.alpha * (perf + 1.0) - weights.beta * env.cost(action, context)
    }
}

/// The best true objective over a candidate grid under one context, with an
/// optional feasibility filter against resource caps. Ties keep the earliest
/// candidate, so the result is deterministic for a fixed grid order.
pub fn oracle_best(
    env: &SimEnv,
    context: &ContextVector,
    candidates: &[ActionVector],
    limit: Option<&ResourceLimit>,
) -> Result<(ActionVector, f64), MetricsError> {
    if candidates.is_empty() {
        return Err(MetricsError::EmptyCandidates);
    }
    let mut best: Option<(&ActionVector, f64)> = None;
    for candidate in candidates {
        if let Some(l) = limit {
            let usage = env.true_usage(candidate, context);
            let caps = l.as_array();
            if usage.iter().zip(caps.iter()).any(|(u, c)| u > c) {
                continue;
            }
        }
        let value = objective_value(env, candidate, context);
        if best.map(|(_, b)| value > b).unwrap_or(true) {
            best = Some((candidate, value));
        }
    }
    best.map(|(a, v)| (a.clone(), v))
        .ok_or(MetricsError::NoFeasibleCandidate)
}

/// Running sum of per-step regret, one entry per record.
pub fn cumulative_regret(records: &[RegretRecord]) -> Vec<f64> {
    let mut total = 0.0;
    records
        .iter()
        .map(|r| {
            total += r.regret;
            total
        })
        .collect()
}

/// Cap-violation and OOM accounting, split by agent phase. Rates over an
/// empty denominator are reported as zero.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ViolationStats {
    pub total_steps: u64,
    pub violations: u64,
    pub violation_rate: f64,
    pub exploration_steps: u64,
    pub exploration_violations: u64,
    pub exploitation_steps: u64,
    pub exploitation_violations: u64,
    pub exploitation_violation_rate: f64,
    pub recovery_steps: u64,
    pub recovery_violations: u64,
    pub oom_events: u64,
}

/// Tallies violations and OOM events across a run.
pub fn violation_stats(records: &[RegretRecord]) -> ViolationStats {
    let mut stats = ViolationStats {
        total_steps: records.len() as u64,
        ..ViolationStats::default()
    };
    for record in records {
        if record.oom {
            stats.oom_events += 1;
        }
        let violated = u64::from(record.violation);
        stats.violations += violated;
        match record.phase {
            Phase::Exploration => {
                stats.exploration_steps += 1;
                stats.exploration_violations += violated;
            }
            Phase::Exploitation => {
                stats.exploitation_steps += 1;
                stats.exploitation_violations += violated;
            }
            Phase::Recovery => {
                stats.recovery_steps += 1;
                stats.recovery_violations += violated;
            }
        }
    }
    if stats.total_steps > 0 {
        stats.violation_rate = stats.violations as f64 / stats.total_steps as f64;
    }
    if stats.exploitation_steps > 0 {
        stats.exploitation_violation_rate =
            stats.exploitation_violations as f64 / stats.exploitation_steps as f64;
    }
    stats
}

/// Fractional cost saving of a run against a baseline run:
/// `1 − total_cost / total_baseline_cost`. Positive means cheaper.
pub fn cost_saving(
    records: &[RegretRecord],
    baseline: &[RegretRecord],
) -> Result<f64, MetricsError> {
    let base: f64 = baseline.iter().map(|r| r.cost).sum();
    if base <= 0.0 {
        return Err(MetricsError::ZeroBaselineCost);
    }
    let own: f64 = records.iter().map(|r| r.cost).sum();
    Ok(1.0 - own / base)
}
