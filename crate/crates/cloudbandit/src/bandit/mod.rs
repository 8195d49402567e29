//! Bandit agents: shared confidence-width schedules, the reward scalarizer,
//! and the deterministic tie-breaking rule both agents use when acquisition
//! scores collide.
//!
//! Two agents live here. [`public::PublicBandit`] maximizes a weighted
//! performance–cost reward on a pay-per-use cluster; [`private::SafeBandit`]
//! maximizes performance on a capped cluster while keeping modeled resource
//! usage under the caps. Both score a shared candidate grid with a Gaussian
//! process posterior and both consume a [`ZetaSchedule`] for the width of
//! their confidence bounds.

use thiserror::Error;

use crate::encoding::{ActionVector, EncodingError};
use crate::gp::GpError;
use crate::metrics::MetricsError;
use crate::sim::scenario::PriceSpec;

pub mod private;
pub mod public;

// ── Errors ──────────────────────────────────────────────────────────────────

/// Errors produced by the agent layer.
#[derive(Debug, Error)]
pub enum BanditError {
    #[error(transparent)]
    Gp(#[from] GpError),

    #[error(transparent)]
    Encoding(#[from] EncodingError),

    #[error(transparent)]
    Metrics(#[from] MetricsError),

    /// Reward inputs must be finite.
    #[error("non-finite reward input: perf {perf}, cost {cost}")]
    NonFiniteReward { perf: f64, cost: f64 },

    /// Confidence schedules are defined for steps t ≥ 1.
    #[error("confidence schedule queried at t = {t}; steps start at 1")]
    ScheduleBeforeFirstStep { t: u64 },

    /// An agent was constructed or reconfigured inconsistently.
    #[error("invalid agent configuration: {reason}")]
    InvalidConfig { reason: String },

    /// A phase-restricted operation was called in the wrong phase.
    #[error("operation requires the {expected} phase")]
    WrongPhase { expected: &'static str },

    /// The capped agent was pointed at an environment without resource caps.
    #[error("environment declares no resource caps")]
    MissingLimit,
}

// ── Reward ──────────────────────────────────────────────────────────────────

/// Weights of the performance–cost scalarization. Both terms are expected on
/// a shared normalized scale before weighting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RewardWeights {
    pub alpha: f64,
    pub beta: f64,
}

impl RewardWeights {
    pub fn new(alpha: f64, beta: f64) -> Self {
        Self { alpha, beta }
    }
}

/// The scalar reward `α·perf − β·cost` over normalized inputs.
pub fn reward(perf: f64, cost: f64, weights: &RewardWeights) -> Result<f64, BanditError> {
    if !perf.is_finite() || !cost.is_finite() {
        return Err(BanditError::NonFiniteReward { perf, cost });
    }
    Ok(weights.alpha * perf - weights.beta * cost)
}

// ── Confidence schedules ────────────────────────────────────────────────────

/// How the exploration width grows with the step count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZetaMode {
    /// The regret-theoretic width `2B² + 300·γ_t·ln³(t/δ)`. Far too wide to
    /// be competitive in short horizons, but the property suite exercises it.
    Theoretical,
    /// The practitioner's width `c_ζ·ln(t+1)`.
    Practical,
}

/// Stand-in for the maximum information gain γ_t, which has no closed form
/// for Matérn kernels on box domains.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GammaEstimator {
    /// `d·ln(t+1)` with `d` the joint input dimension.
    DimLog { dim: usize },
    /// A fixed value, mostly for tests that pin the schedule.
    Constant(f64),
}

impl GammaEstimator {
    pub fn gamma(&self, t: u64) -> f64 {
        match self {
            GammaEstimator::DimLog { dim } => *dim as f64 * ((t + 1) as f64).ln(),
            GammaEstimator::Constant(value) => *value,
        }
    }
}

/// A nondecreasing confidence-width schedule ζ_t (also reused as the safety
/// width β_t by the capped agent — both play the same confidence-bound role).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaSchedule {
    pub mode: ZetaMode,
    /// Smoothness budget B of the objective (theoretical mode).
    pub rkhs_bound: f64,
    /// Failure probability δ (theoretical mode).
    pub delta: f64,
    /// Information-gain estimator γ_t (theoretical mode).
    pub gamma: GammaEstimator,
    /// Width constant of the practical mode.
    pub c_zeta: f64,
}

impl ZetaSchedule {
    /// The practical schedule `c_ζ·ln(t+1)`.
    pub fn practical(c_zeta: f64) -> Self {
        Self {
            mode: ZetaMode::Practical,
            rkhs_bound: 1.0,
            delta: 0.1,
            gamma: GammaEstimator::DimLog { dim: 1 },
            c_zeta,
        }
    }

    /// The theoretical schedule `2B² + 300·γ_t·ln³(t/δ)`.
    pub fn theoretical(rkhs_bound: f64, delta: f64, gamma: GammaEstimator) -> Self {
        Self {
            mode: ZetaMode::Theoretical,
            rkhs_bound,
            delta,
            gamma,
            c_zeta: 0.0,
        }
    }

    /// Evaluates the schedule at step `t ≥ 1`.
    pub fn zeta(&self, t: u64) -> Result<f64, BanditError> {
        if t < 1 {
            return Err(BanditError::ScheduleBeforeFirstStep { t });
        }
        let value = match self.mode {
            ZetaMode::Theoretical => {
                let log_term = (t as f64 / self.delta).ln();
                2.0 * self.rkhs_bound * self.rkhs_bound
                    + 300.0 * self.gamma.gamma(t) * log_term.powi(3)
            }
            ZetaMode::Practical => self.c_zeta * ((t + 1) as f64).ln(),
        };
        if !value.is_finite() || value < 0.0 {
            return Err(BanditError::InvalidConfig {
                reason: format!("schedule produced invalid width {value} at t = {t}"),
            });
        }
        Ok(value)
    }
}

// ── Tie-breaking ────────────────────────────────────────────────────────────

/// The agent-side cost model used only to order tied candidates: the
/// price-weighted hourly allocation bill. Within one step every candidate
/// shares the same spot blend, so ordering by the on-demand bill matches
/// ordering by the billed cost.
pub fn modeled_cost(action: &ActionVector, prices: &PriceSpec) -> f64 {
    let per_pod = f64::from(action.cpu_per_pod) * prices.cpu_millicore_hour
        + f64::from(action.ram_per_pod) * prices.ram_mib_hour
        + f64::from(action.net_per_pod) * prices.net_mbps_hour;
    f64::from(action.total_pods()) * per_pod
}

/// Argmax over candidates with the deterministic tie chain: higher score,
/// then lower modeled cost, then lexicographically smaller action.
pub(crate) fn argmax_candidates<'a>(
    candidates: &'a [ActionVector],
    prices: &PriceSpec,
    mut score: impl FnMut(&ActionVector) -> Result<f64, BanditError>,
) -> Result<&'a ActionVector, BanditError> {
    let mut best: Option<(f64, f64, &ActionVector)> = None;
    for candidate in candidates {
        let value = score(candidate)?;
        let bill = modeled_cost(candidate, prices);
        let wins = match &best {
            None => true,
            Some((b_value, b_bill, b_action)) => {
                value > *b_value
                    || (value == *b_value
                        && (bill < *b_bill || (bill == *b_bill && candidate < b_action)))
            }
        };
        if wins {
            best = Some((value, bill, candidate));
        }
    }
    best.map(|(_, _, action)| action)
        .ok_or(BanditError::InvalidConfig {
            reason: "candidate list is empty".into(),
        })
}
