//! Report rendering: the per-step CSV trace and the per-run TOML summary.
//!
//! Both renderers are pure string builders so they can be tested without
//! touching the filesystem; the runner decides where the bytes land.
//! Floats are written with Rust's shortest round-trip formatting, so two
//! runs that produce bitwise-identical records produce byte-identical
//! reports.

use serde::{Deserialize, Serialize};

use crate::metrics::{cumulative_regret, violation_stats, Phase, RegretRecord};

use super::config::RunMode;
use super::HarnessError;

/// Column order of the per-step trace.
pub const CSV_HEADER: &str =
    "t,scenario,agent,seed,achieved,oracle,regret,cum_regret,cost,violation,oom,phase";

/// Renders every seed's records as one CSV document with a single header.
pub fn records_to_csv(scenario: &str, agent: &str, runs: &[(u64, &[RegretRecord])]) -> String {
    let total: usize = runs.iter().map(|(_, records)| records.len()).sum();
    let mut out = String::with_capacity(64 * (total + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for (seed, records) in runs {
        let cumulative = cumulative_regret(records);
        for (record, cum) in records.iter().zip(cumulative) {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{}\n",
                record.t,
                scenario,
                agent,
                seed,
                record.achieved,
                record.oracle,
                record.regret,
                cum,
                record.cost,
                record.violation,
                record.oom,
                record.phase,
            ));
        }
    }
    out
}

/// Outcome statistics for one seed of a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedSummary {
    pub seed: u64,
    pub steps: u64,
    pub final_cumulative_regret: f64,
    /// Mean per-step regret over the whole horizon.
    pub mean_regret: f64,
    /// Mean per-step regret over exploitation steps only; absent when the
    /// run never left exploration.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mean_regret_exploitation: Option<f64>,
    pub total_cost: f64,
    pub violations: u64,
    pub violation_rate: f64,
    pub exploitation_violation_rate: f64,
    pub oom_events: u64,
    /// Spend reduction relative to the rule-based baseline on the same
    /// seed; absent when the agent *is* that baseline.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cost_saving: Option<f64>,
}

impl SeedSummary {
    pub fn from_records(seed: u64, records: &[RegretRecord], cost_saving: Option<f64>) -> Self {
        let stats = violation_stats(records);
        let final_cumulative_regret = records.iter().map(|r| r.regret).sum::<f64>();
        let mean_regret = if records.is_empty() {
            0.0
        } else {
            final_cumulative_regret / records.len() as f64
        };
        let exploitation: Vec<f64> = records
            .iter()
            .filter(|r| r.phase == Phase::Exploitation)
            .map(|r| r.regret)
            .collect();
        let mean_regret_exploitation = if exploitation.is_empty() {
            None
        } else {
            Some(exploitation.iter().sum::<f64>() / exploitation.len() as f64)
        };
        SeedSummary {
            seed,
            steps: records.len() as u64,
            final_cumulative_regret,
            mean_regret,
            mean_regret_exploitation,
            total_cost: records.iter().map(|r| r.cost).sum(),
            violations: stats.violations,
            violation_rate: stats.violation_rate,
            exploitation_violation_rate: stats.exploitation_violation_rate,
            oom_events: stats.oom_events,
            cost_saving,
        }
    }
}

/// Aggregate statistics across every seed of a run.
///
/// Scalar fields come before the `seeds` table array because TOML requires
/// plain values ahead of tables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub scenario: String,
    pub agent: String,
    pub horizon: u64,
    pub mode: RunMode,
    pub mean_final_cumulative_regret: f64,
    pub min_final_cumulative_regret: f64,
    pub max_final_cumulative_regret: f64,
    pub mean_violation_rate: f64,
    pub mean_total_cost: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mean_cost_saving: Option<f64>,
    pub seeds: Vec<SeedSummary>,
}

impl RunSummary {
    pub fn aggregate(
        scenario: &str,
        agent: &str,
        horizon: u64,
        mode: RunMode,
        seeds: Vec<SeedSummary>,
    ) -> Self {
        let n = seeds.len().max(1) as f64;
        let finals: Vec<f64> = seeds.iter().map(|s| s.final_cumulative_regret).collect();
        let savings: Vec<f64> = seeds.iter().filter_map(|s| s.cost_saving).collect();
        RunSummary {
            scenario: scenario.to_string(),
            agent: agent.to_string(),
            horizon,
            mode,
            mean_final_cumulative_regret: finals.iter().sum::<f64>() / n,
            min_final_cumulative_regret: finals.iter().copied().fold(f64::INFINITY, f64::min),
            max_final_cumulative_regret: finals.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            mean_violation_rate: seeds.iter().map(|s| s.violation_rate).sum::<f64>() / n,
            mean_total_cost: seeds.iter().map(|s| s.total_cost).sum::<f64>() / n,
            mean_cost_saving: if savings.is_empty() {
                None
            } else {
                Some(savings.iter().sum::<f64>() / savings.len() as f64)
            },
            seeds,
        }
    }
}

pub fn summary_to_toml(summary: &RunSummary) -> Result<String, HarnessError> {
    toml::to_string_pretty(summary).map_err(|e| HarnessError::InvalidConfig {
        reasons: format!("cannot serialize summary: {e}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::{ActionVector, ContextVector};

    fn record(t: u64, regret: f64, phase: Phase, violation: bool) -> RegretRecord {
        RegretRecord {
            t,
            context: ContextVector {
                workload_intensity: 0.5,
                cpu_util: 0.5,
                ram_util: 0.5,
                net_util: 0.5,
                contention_code: 0,
                spot_price_factor: 0.5,
            },
            action: ActionVector {
                pods_per_zone: [1, 1, 1, 1],
                cpu_per_pod: 500,
                ram_per_pod: 1024,
                net_per_pod: 100,
            },
            achieved: 1.0 - regret,
            oracle: 1.0,
            regret,
            usage: [0.5, 0.5, 0.5],
            cost: 2.0,
            violation,
            oom: false,
            phase,
        }
    }

    #[test]
    fn csv_has_exact_header_and_one_row_per_record() {
        let records = vec![
            record(1, 0.25, Phase::Exploration, false),
            record(2, 0.5, Phase::Exploitation, true),
        ];
        let csv = records_to_csv("demo", "rule-based", &[(7, &records)]);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        assert_eq!(lines.clone().count(), 2);
        let first = lines.next().unwrap();
        assert_eq!(
            first,
            "1,demo,rule-based,7,0.75,1,0.25,0.25,2,false,false,exploration"
        );
        let second = lines.next().unwrap();
        assert_eq!(
            second,
            "2,demo,rule-based,7,0.5,1,0.5,0.75,2,true,false,exploitation"
        );
    }

    #[test]
    fn csv_rendering_is_deterministic() {
        let records = vec![
            record(1, 0.125, Phase::Exploitation, false),
            record(2, 0.0625, Phase::Recovery, false),
        ];
        let a = records_to_csv("demo", "drone-public", &[(1, &records), (2, &records)]);
        let b = records_to_csv("demo", "drone-public", &[(1, &records), (2, &records)]);
        assert_eq!(a, b);
        assert_eq!(a.lines().count(), 5);
    }

    #[test]
    fn seed_summary_matches_hand_computation() {
        let records = vec![
            record(1, 0.4, Phase::Exploration, true),
            record(2, 0.2, Phase::Exploitation, false),
            record(3, 0.1, Phase::Exploitation, false),
        ];
        let summary = SeedSummary::from_records(3, &records, Some(0.25));
        assert_eq!(summary.seed, 3);
        assert_eq!(summary.steps, 3);
        assert!((summary.final_cumulative_regret - 0.7).abs() < 1e-12);
        assert!((summary.mean_regret - 0.7 / 3.0).abs() < 1e-12);
        assert!((summary.mean_regret_exploitation.unwrap() - 0.15).abs() < 1e-12);
        assert_eq!(summary.violations, 1);
        assert!((summary.violation_rate - 1.0 / 3.0).abs() < 1e-12);
        assert_eq!(summary.exploitation_violation_rate, 0.0);
        assert!((summary.total_cost - 6.0).abs() < 1e-12);
        assert_eq!(summary.cost_saving, Some(0.25));
    }

    #[test]
    fn run_summary_serializes_to_parseable_toml() {
        let seeds = vec![
            SeedSummary::from_records(1, &[record(1, 0.5, Phase::Exploitation, false)], None),
            SeedSummary::from_records(
                2,
                &[record(1, 0.25, Phase::Exploitation, false)],
                Some(0.5),
            ),
        ];
        let summary = RunSummary::aggregate("demo", "drone-public", 1, RunMode::Online, seeds);
        assert!((summary.mean_final_cumulative_regret - 0.375).abs() < 1e-12);
        assert_eq!(summary.min_final_cumulative_regret, 0.25);
        assert_eq!(summary.max_final_cumulative_regret, 0.5);
        assert_eq!(summary.mean_cost_saving, Some(0.5));
        let text = summary_to_toml(&summary).unwrap();
        let parsed: RunSummary = toml::from_str(&text).unwrap();
        assert_eq!(parsed, summary);
    }
}
