//! Experiment configuration: the TOML file the CLI consumes, plus the
//! validation that cross-checks it against the scenario it names.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::bandit::ZetaMode;
use crate::sim::scenario::ScenarioConfig;

use super::agents::AgentKind;
use super::HarnessError;

/// Whether iterations map to fixed decision periods or to completed batch
/// jobs. The simulator evaluates one deployment per iteration either way;
/// the mode gates which scenarios are eligible (a service has no completion
/// boundary to time a quasi-online iteration against) and is echoed in
/// reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RunMode {
    #[default]
    Online,
    QuasiOnline,
}

/// Optional hyperparameter overrides; anything unset falls back to the tuned
/// harness defaults (or, for the reward weights, to the scenario's own).
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Overrides {
    /// Sliding-window capacity of every GP.
    pub window_capacity: Option<usize>,
    /// Candidate-grid budget shared by agent and oracle.
    pub candidate_budget: Option<usize>,
    /// Kernel lengthscale (isotropic).
    pub lengthscale: Option<f64>,
    /// Prior signal variance of the objective GP.
    pub signal_variance: Option<f64>,
    /// Observation-noise variance of the objective GP.
    pub noise_variance: Option<f64>,
    /// Observation-noise variance of the usage GPs.
    pub usage_noise_variance: Option<f64>,
    /// Confidence-width mode.
    pub zeta_mode: Option<ZetaMode>,
    /// Practical-mode width constant.
    pub c_zeta: Option<f64>,
    /// Theoretical-mode smoothness budget.
    pub rkhs_bound: Option<f64>,
    /// Theoretical-mode failure probability.
    pub delta: Option<f64>,
    /// Pure-exploration rounds of the safe agent.
    pub exploration_steps: Option<u64>,
    /// Reward weight on performance.
    pub alpha: Option<f64>,
    /// Reward weight on cost.
    pub beta: Option<f64>,
    /// Centering shift for `[−1, 0]` performance objectives.
    pub perf_shift: Option<f64>,
}

/// One experiment: a scenario, an agent, and the run geometry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Built-in scenario name or path to a scenario TOML file.
    pub scenario: String,
    pub agent: AgentKind,
    #[serde(default = "default_horizon")]
    pub horizon: u64,
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub mode: RunMode,
    /// Directory the CSV and summary land in; `None` keeps results in memory.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub overrides: Overrides,
}

fn default_horizon() -> u64 {
    200
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self, HarnessError> {
        Ok(toml::from_str(text)?)
    }

    pub fn to_toml_string(&self) -> Result<String, HarnessError> {
        toml::to_string_pretty(self).map_err(|e| HarnessError::InvalidConfig {
            reasons: format!("cannot serialize: {e}"),
        })
    }

    /// Resolves the scenario this experiment names (built-in first, then as
    /// a file path).
    pub fn load_scenario(&self) -> Result<ScenarioConfig, HarnessError> {
        Ok(ScenarioConfig::load(&self.scenario)?)
    }

    /// Validates the experiment against its scenario, collecting every
    /// problem rather than stopping at the first.
    pub fn validate(&self, scenario: &ScenarioConfig) -> Result<(), HarnessError> {
        let mut problems = Vec::new();
        if self.horizon < 1 {
            problems.push("horizon: must be at least 1".to_string());
        }
        if self.seeds.is_empty() {
            problems.push("seeds: at least one seed is required".to_string());
        }
        if !self.agent.compatible_with(scenario) {
            problems.push(format!(
                "agent: {} cannot run on scenario '{}' ({})",
                self.agent,
                scenario.name,
                if scenario.kind.is_private() {
                    "agent requires a pay-per-use cluster"
                } else {
                    "agent requires a resource-capped cluster"
                }
            ));
        }
        if self.mode == RunMode::QuasiOnline && !scenario.kind.is_batch() {
            problems.push(
                "mode: quasi-online requires a batch scenario (services have no \
                 job-completion boundary)"
                    .to_string(),
            );
        }
        let o = &self.overrides;
        let mut check = |ok: bool, message: &str| {
            if !ok {
                problems.push(message.to_string());
            }
        };
        if let Some(w) = o.window_capacity {
            check(w >= 1, "overrides.window_capacity: must be at least 1");
        }
        if let Some(b) = o.candidate_budget {
            check(b >= 1, "overrides.candidate_budget: must be at least 1");
        }
        if let Some(l) = o.lengthscale {
            check(
                l.is_finite() && l > 0.0,
                "overrides.lengthscale: must be positive and finite",
            );
        }
        if let Some(v) = o.signal_variance {
            check(
                v.is_finite() && v > 0.0,
                "overrides.signal_variance: must be positive and finite",
            );
        }
        for (value, key) in [
            (o.noise_variance, "overrides.noise_variance"),
            (o.usage_noise_variance, "overrides.usage_noise_variance"),
            (o.c_zeta, "overrides.c_zeta"),
        ] {
            if let Some(v) = value {
                check(
                    v.is_finite() && v >= 0.0,
                    &format!("{key}: must be non-negative and finite"),
                );
            }
        }
        if let Some(b) = o.rkhs_bound {
            check(
                b.is_finite() && b > 0.0,
                "overrides.rkhs_bound: must be positive and finite",
            );
        }
        if let Some(d) = o.delta {
            check(
                d.is_finite() && d > 0.0 && d < 1.0,
                "overrides.delta: must lie strictly between 0 and 1",
            );
        }
        for (value, key) in [(o.alpha, "overrides.alpha"), (o.beta, "overrides.beta")] {
            if let Some(v) = value {
                check(
                    v.is_finite() && v >= 0.0,
                    &format!("{key}: must be non-negative and finite"),
                );
            }
        }
        if let Some(s) = o.perf_shift {
            check(s.is_finite(), "overrides.perf_shift: must be finite");
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(HarnessError::InvalidConfig {
                reasons: problems.join("; "),
            })
        }
    }
}
