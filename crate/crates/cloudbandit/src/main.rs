//! Thin command-line front end over the experiment harness.
//!
//! Exit codes: 0 on success, 1 when a configuration fails validation, 2 when
//! a validated experiment fails at runtime.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cloudbandit::harness::{run_experiment, AgentKind, ExperimentConfig, RECORDS_FILE, SUMMARY_FILE};
use cloudbandit::sim::scenario::ScenarioConfig;

#[derive(Parser)]
#[command(
    name = "cloudbandit",
    version,
    about = "Contextual-bandit resource orchestration benchmarks on a simulated cloud"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a TOML configuration file.
    Run {
        /// Path to the experiment configuration.
        #[arg(long)]
        config: PathBuf,
        /// Replace the configured seed list with this single seed.
        #[arg(long, value_name = "SEED")]
        seed_override: Option<u64>,
        /// Write `records.csv` and `summary.toml` into this directory.
        #[arg(long, value_name = "DIR")]
        output: Option<PathBuf>,
        /// Run a different agent than the configuration names.
        #[arg(long, value_name = "NAME")]
        agent: Option<String>,
    },
    /// List the built-in scenarios.
    ListScenarios,
    /// Check an experiment configuration without running it.
    Validate {
        /// Path to the experiment configuration.
        #[arg(long)]
        config: PathBuf,
    },
}

/// Failures split by which exit code they map to.
enum CliError {
    /// The inputs are unusable (exit 1).
    Validation(String),
    /// A validated experiment failed while running (exit 2).
    Runtime(String),
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Validation(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(CliError::Runtime(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Run {
            config,
            seed_override,
            output,
            agent,
        } => {
            let mut experiment = load_config(&config)?;
            if let Some(seed) = seed_override {
                experiment.seeds = vec![seed];
            }
            if let Some(dir) = output {
                experiment.output = Some(dir);
            }
            if let Some(name) = agent {
                experiment.agent = name
                    .parse::<AgentKind>()
                    .map_err(CliError::Validation)?;
            }
            let scenario = experiment
                .load_scenario()
                .map_err(|e| CliError::Validation(e.to_string()))?;
            experiment
                .validate(&scenario)
                .map_err(|e| CliError::Validation(e.to_string()))?;
            let outcome =
                run_experiment(&experiment).map_err(|e| CliError::Runtime(e.to_string()))?;
            print!("{}", outcome.summary_toml);
            if let Some(dir) = &experiment.output {
                eprintln!(
                    "wrote {} and {} to {}",
                    RECORDS_FILE,
                    SUMMARY_FILE,
                    dir.display()
                );
            }
            Ok(())
        }
        Command::ListScenarios => {
            for (name, description) in ScenarioConfig::builtin_names() {
                println!("{name}: {description}");
            }
            Ok(())
        }
        Command::Validate { config } => {
            let experiment = load_config(&config)?;
            let scenario = experiment
                .load_scenario()
                .map_err(|e| CliError::Validation(e.to_string()))?;
            experiment
                .validate(&scenario)
                .map_err(|e| CliError::Validation(e.to_string()))?;
            println!(
                "ok: {} on {} ({} seeds, horizon {})",
                experiment.agent,
                scenario.name,
                experiment.seeds.len(),
                experiment.horizon
            );
            Ok(())
        }
    }
}

fn load_config(path: &PathBuf) -> Result<ExperimentConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
    ExperimentConfig::from_toml_str(&text).map_err(|e| CliError::Validation(e.to_string()))
}
