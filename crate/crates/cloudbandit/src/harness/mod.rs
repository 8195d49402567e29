//! Experiment harness: agent/scenario wiring, the practical deployment
//! heuristics (warm start, failure recovery, threshold autoscaling), the
//! experiment runner, and CSV/summary emission.
//!
//! The harness is the layer the CLI drives. A TOML [`ExperimentConfig`]
//! names a scenario and an agent, [`run_experiment`] replays that pairing
//! over a list of seeds, and each run lands as one CSV of per-step records
//! plus a TOML summary aggregating regret, violations, and the cost saving
//! against a threshold-autoscaler baseline run on the same seeds.

use thiserror::Error;

use crate::bandit::BanditError;
use crate::encoding::EncodingError;
use crate::sim::SimError;

mod agents;
mod config;
mod heuristics;
mod output;
mod runner;

pub use agents::AgentKind;
pub use config::{ExperimentConfig, Overrides, RunMode};
pub use heuristics::{initial_action, recover, rule_based_step, SCALE_DOWN_UTIL, SCALE_UP_UTIL};
pub use output::{records_to_csv, summary_to_toml, RunSummary, SeedSummary, CSV_HEADER};
pub use runner::{
    run_experiment, ExperimentOutcome, SeedRun, INCOMPLETE_MARKER, RECORDS_FILE, SUMMARY_FILE,
};

/// Errors produced by the harness layer.
#[derive(Debug, Error)]
pub enum HarnessError {
    /// The experiment configuration failed validation; the message lists
    /// every offending key.
    #[error("invalid experiment configuration: {reasons}")]
    InvalidConfig { reasons: String },

    /// The experiment file could not be parsed.
    #[error("cannot parse experiment configuration: {0}")]
    Parse(#[from] toml::de::Error),

    #[error(transparent)]
    Sim(#[from] SimError),

    #[error(transparent)]
    Bandit(#[from] BanditError),

    #[error(transparent)]
    Encoding(#[from] EncodingError),

    /// Output files could not be written.
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}
