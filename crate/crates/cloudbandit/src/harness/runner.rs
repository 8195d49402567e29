//! The experiment runner: replays one scenario–agent pairing over a list of
//! seeds, applying the deployment conventions every agent shares — a warm
//! start from the sizing heuristic, and forced recovery after out-of-memory
//! failures.

use std::fs;
use std::path::Path;

use crate::bandit::{BanditError, RewardWeights};
use crate::encoding::{enumerate_candidates, ActionVector};
use crate::metrics::{self, Phase, RegretRecord};
use crate::sim::scenario::ScenarioConfig;
use crate::sim::SimEnv;

use super::agents::{build_agent, AgentInstance, AgentKind, DEFAULT_CANDIDATE_BUDGET};
use super::config::ExperimentConfig;
use super::heuristics::{initial_action, recover, rule_based_step};
use super::output::{records_to_csv, summary_to_toml, RunSummary, SeedSummary};
use super::HarnessError;

/// File the per-step trace lands in under the experiment's output directory.
pub const RECORDS_FILE: &str = "records.csv";
/// File the aggregate summary lands in under the output directory.
pub const SUMMARY_FILE: &str = "summary.toml";
/// Marker created before output files are written and removed once all of
/// them landed; if it survives, the directory holds partial output.
pub const INCOMPLETE_MARKER: &str = "INCOMPLETE";

/// One seed's trajectory and its summary statistics.
#[derive(Debug, Clone)]
pub struct SeedRun {
    pub seed: u64,
    pub records: Vec<RegretRecord>,
    pub summary: SeedSummary,
}

/// Everything a finished experiment produced.
#[derive(Debug, Clone)]
pub struct ExperimentOutcome {
    pub scenario: ScenarioConfig,
    pub runs: Vec<SeedRun>,
    pub summary: RunSummary,
    /// The rendered per-step trace (also written to disk when an output
    /// directory is configured).
    pub csv: String,
    /// The rendered summary document.
    pub summary_toml: String,
}

/// Consecutive out-of-memory rounds tolerated before the harness forces a
/// recovery action: batch jobs recover immediately (the job was lost),
/// services ride out short spikes.
fn recovery_patience(scenario: &ScenarioConfig) -> u32 {
    if scenario.kind.is_batch() {
        1
    } else {
        3
    }
}

/// Validates the experiment, runs every seed, renders the reports, and — if
/// an output directory is configured — writes `records.csv` and
/// `summary.toml` into it.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutcome, HarnessError> {
    let scenario = config.load_scenario()?;
    config.validate(&scenario)?;

    let mut runs = Vec::with_capacity(config.seeds.len());
    for &seed in &config.seeds {
        let records = run_seed(config, &scenario, config.agent, seed)?;
        // The spend baseline is a rule-based run over the same seed (hence
        // the same workload, interference, and spot trajectories).
        let saving = if config.agent == AgentKind::RuleBased {
            None
        } else {
            let baseline = run_seed(config, &scenario, AgentKind::RuleBased, seed)?;
            Some(metrics::cost_saving(&records, &baseline).map_err(BanditError::from)?)
        };
        let summary = SeedSummary::from_records(seed, &records, saving);
        runs.push(SeedRun {
            seed,
            records,
            summary,
        });
    }

    let summary = RunSummary::aggregate(
        &scenario.name,
        config.agent.name(),
        config.horizon,
        config.mode,
        runs.iter().map(|r| r.summary.clone()).collect(),
    );
    let blocks: Vec<(u64, &[RegretRecord])> = runs
        .iter()
        .map(|r| (r.seed, r.records.as_slice()))
        .collect();
    let csv = records_to_csv(&scenario.name, config.agent.name(), &blocks);
    let summary_toml = summary_to_toml(&summary)?;

    if let Some(dir) = &config.output {
        let marker = dir.join(INCOMPLETE_MARKER);
        write_file(&marker, "output in progress; files may be partial\n")?;
        write_file(&dir.join(RECORDS_FILE), &csv)?;
        write_file(&dir.join(SUMMARY_FILE), &summary_toml)?;
        fs::remove_file(&marker).map_err(|source| HarnessError::Io {
            path: marker.display().to_string(),
            source,
        })?;
    }

    Ok(ExperimentOutcome {
        scenario,
        runs,
        summary,
        csv,
        summary_toml,
    })
}

/// Runs one agent for one seed. The candidate grid is derived from the run
/// seed and shared between the agent and the regret oracle.
fn run_seed(
    config: &ExperimentConfig,
    scenario: &ScenarioConfig,
    kind: AgentKind,
    seed: u64,
) -> Result<Vec<RegretRecord>, HarnessError> {
    let mut env = SimEnv::new(scenario, seed)?;
    let budget = config
        .overrides
        .candidate_budget
        .unwrap_or(DEFAULT_CANDIDATE_BUDGET);
    let candidates = enumerate_candidates(&scenario.space, budget, seed);
    let mut agent = build_agent(kind, scenario, &env, &config.overrides, candidates.clone(), seed)?;
    let weights = RewardWeights::new(
        config.overrides.alpha.unwrap_or(scenario.reward.alpha),
        config.overrides.beta.unwrap_or(scenario.reward.beta),
    );
    let patience = recovery_patience(scenario);

    let mut records: Vec<RegretRecord> = Vec::with_capacity(config.horizon as usize);
    let mut consecutive_oom: u32 = 0;
    for step in 0..config.horizon {
        let forced: Option<(ActionVector, Phase)> = if consecutive_oom >= patience {
            let failed = &records.last().expect("an OOM round leaves a record").action;
            consecutive_oom = 0;
            Some((recover(failed, &scenario.space), Phase::Recovery))
        } else if step == 0 && matches!(agent, AgentInstance::Public(_)) {
            // Warm start: deploy the sizing heuristic's choice before the GP
            // has seen anything. The safe agent starts inside its own
            // exploration phase instead, and the rule agent already holds
            // this action as its current deployment.
            Some((initial_action(&env), Phase::Exploitation))
        } else {
            None
        };

        let record = match &mut agent {
            AgentInstance::Public(bandit) => bandit.step(&mut env, forced)?,
            AgentInstance::Safe(bandit) => bandit.step(&mut env, forced)?,
            AgentInstance::Rule { current } => {
                let (action, phase) = match forced {
                    Some((action, phase)) => (action, phase),
                    None if step == 0 => (current.clone(), Phase::Exploitation),
                    None => (
                        rule_based_step(current, env.zone_utilization(), &scenario.space),
                        Phase::Exploitation,
                    ),
                };
                *current = action.clone();
                rule_round(&mut env, action, phase, &candidates, &weights)?
            }
        };
        if record.oom {
            consecutive_oom += 1;
        } else {
            consecutive_oom = 0;
        }
        records.push(record);
    }
    Ok(records)
}

/// One decision round for the rule-based agent: deploy the action, score it
/// against the shared oracle, and assemble the record. The agent itself
/// learns nothing from the outcome beyond its utilization feedback.
fn rule_round(
    env: &mut SimEnv,
    action: ActionVector,
    phase: Phase,
    candidates: &[ActionVector],
    weights: &RewardWeights,
) -> Result<RegretRecord, HarnessError> {
    let context = env.sample_context();
    let limit = env.resource_limit();
    let (_, oracle) = metrics::oracle_best(env, &context, candidates, limit.as_ref())
        .map_err(BanditError::from)?;
    let true_usage = env.true_usage(&action, &context);
    let t = env.step_index() + 1;
    let evaluation = env.evaluate(&action);
    let achieved = if env.scenario().kind.is_private() {
        evaluation.perf
    } else {
        crate::bandit::reward(evaluation.perf + 1.0, evaluation.cost, weights)?
    };
    Ok(metrics::build_record(
        t,
        context,
        action,
        achieved,
        oracle,
        true_usage,
        evaluation.cost,
        evaluation.oom,
        phase,
        limit.as_ref(),
    ))
}

fn write_file(path: &Path, contents: &str) -> Result<(), HarnessError> {
    let io_err = |source: std::io::Error| HarnessError::Io {
        path: path.display().to_string(),
        source,
    };
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(io_err)?;
    }
    fs::write(path, contents).map_err(io_err)
}
