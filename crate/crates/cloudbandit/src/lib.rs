//! Contextual-bandit resource orchestration over a simulated containerized
//! cloud.
//!
//! The crate pairs two online deployment optimizers with a deterministic
//! cluster simulator and an experiment harness:
//!
//! * [`gp`] — Matérn-3/2 Gaussian-process regression over a sliding window
//!   of recent observations, with UCB and expected-improvement scores.
//! * [`encoding`] — the 7-dimensional deployment action grid, the observed
//!   cluster context, and their normalization into joint GP inputs.
//! * [`bandit`] — the public-cloud reward optimizer (GP-UCB over a
//!   performance–cost reward) and the private-cloud safe optimizer
//!   (performance UCB restricted to a confidence-expanded safe set under
//!   hard resource caps).
//! * [`sim`] — workload traces, Poisson interference, spot-price dynamics
//!   and the hidden performance/usage/cost models of the simulated cluster.
//! * [`metrics`] — per-step regret records, the grid oracle, cumulative
//!   regret, violation accounting and cost-saving comparisons.
//! * [`harness`] — experiment configs, baseline agents (context-free GP-UCB
//!   and expected improvement, threshold autoscaling), the benchmark runner
//!   and its CSV/summary outputs.
//!
//! Start with the `examples/` directory: each example is a runnable tour of
//! one capability, from plain GP regression to a full benchmark sweep.

pub mod bandit;
pub mod encoding;
pub mod gp;
pub mod harness;
pub mod metrics;
pub mod sim;
