//! The simulated containerized cloud.
//!
//! [`SimEnv`] holds a scenario's cluster, its stochastic processes and the
//! hidden models an orchestration agent is trying to learn:
//!
//! * **performance** — for batch scenarios, the negated and scale-normalized
//!   job elapsed time (saturating per-pod compute, a shuffle/ingress network
//!   term that punishes contended zones, and a coordination term that grows
//!   with pod count); for microservices, the negated normalized P90 latency
//!   of a processor-sharing queueing approximation. Performance lives in
//!   `[−1, 0]`, zero being ideal.
//! * **usage** — background interference plus the deployment footprint,
//!   additive and monotone in the action.
//! * **cost** — on-demand unit prices over the decision period, blended with
//!   the spot market and normalized by the maximum-allocation bill into
//!   `[0, 1]`.
//!
//! Everything an agent observes flows through [`SimEnv::evaluate`], which
//! adds Gaussian observation noise and advances the processes. All
//! randomness comes from one seeded RNG in a fixed draw order, so runs are
//! reproducible byte-for-byte.

pub mod processes;
pub mod scenario;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use thiserror::Error;

use crate::encoding::{encode_contention, ActionVector, ContextVector, ZONE_COUNT};
use processes::{spot_blend, InterferenceProcess, SpotPriceProcess, WorkloadTrace};
use scenario::{ContentionPattern, ScenarioConfig};

/// Errors produced by the simulator.
#[derive(Debug, Error)]
pub enum SimError {
    /// A scenario failed validation; the reason lists every offending key.
    #[error("invalid scenario: {reason}")]
    InvalidScenario { reason: String },

    /// A workload replay file could not be parsed.
    #[error("replay trace line {line}: {reason}")]
    ReplayParse { line: usize, reason: String },
}

/// Hard per-resource caps on a private cluster, in absolute units.
#[derive(Debug, Clone, PartialEq)]
pub struct ResourceLimit {
    pub cpu_millicores: f64,
    pub ram_mib: f64,
    pub net_mbps: f64,
}

impl ResourceLimit {
    /// The caps as a `[cpu, ram, net]` array.
    pub fn as_array(&self) -> [f64; 3] {
        [self.cpu_millicores, self.ram_mib, self.net_mbps]
    }
}

/// What one deployment round reported back to the agent.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    /// Observed (noisy) performance in roughly `[−1, 0]`.
    pub perf: f64,
    /// Observed (noisy) `[cpu, ram, net]` usage in absolute units.
    pub usage: [f64; 3],
    /// Incurred cost for the period, normalized into `[0, 1]`.
    pub cost: f64,
    /// Whether pods were killed for exceeding their memory allocation.
    pub oom: bool,
}

/// The simulated cluster environment for one scenario and seed.
#[derive(Debug, Clone)]
pub struct SimEnv {
    config: ScenarioConfig,
    capacity: [f64; 3],
    trace: WorkloadTrace,
    interference: InterferenceProcess,
    spot: SpotPriceProcess,
    rng: ChaCha8Rng,
    step_index: u64,
    prev_action: Option<ActionVector>,
}

impl SimEnv {
    /// Builds the environment, validating the scenario and loading any
    /// replay trace. Step zero starts with no interference events, so the
    /// first observed utilizations equal the background baseline.
    pub fn new(config: &ScenarioConfig, seed: u64) -> Result<Self, SimError> {
        config.validate()?;
        let trace = WorkloadTrace::from_spec(&config.workload)?;
        Ok(Self {
            capacity: config.cluster.capacity(),
            trace,
            interference: InterferenceProcess::new(config.interference.clone()),
            spot: SpotPriceProcess::new(config.spot.clone()),
            rng: ChaCha8Rng::seed_from_u64(seed),
            step_index: 0,
            prev_action: None,
            config: config.clone(),
        })
    }

    /// The scenario this environment is running.
    pub fn scenario(&self) -> &ScenarioConfig {
        &self.config
    }

    /// Current decision step (starts at zero).
    pub fn step_index(&self) -> u64 {
        self.step_index
    }

    /// Total cluster `[cpu, ram, net]` capacity.
    pub fn capacity(&self) -> [f64; 3] {
        self.capacity
    }

    /// The workload trace driving this environment.
    pub fn trace(&self) -> &WorkloadTrace {
        &self.trace
    }

    /// Absolute resource caps on private scenarios, `None` on public ones.
    pub fn resource_limit(&self) -> Option<ResourceLimit> {
        self.config.limits.as_ref().map(|l| ResourceLimit {
            cpu_millicores: l.cpu_fraction * self.capacity[0],
            ram_mib: l.ram_fraction * self.capacity[1],
            net_mbps: l.net_fraction * self.capacity[2],
        })
    }

    /// Arrivals drawn by the interference process in the latest period.
    pub fn last_interference_arrivals(&self) -> u64 {
        self.interference.last_drawn()
    }

    /// Deployment footprint `[cpu, ram, net]` of an action, absolute units.
    pub fn footprint(action: &ActionVector) -> [f64; 3] {
        let pods = action.total_pods() as f64;
        [
            pods * action.cpu_per_pod as f64,
            pods * action.ram_per_pod as f64,
            pods * action.net_per_pod as f64,
        ]
    }

    fn prev_footprint(&self) -> [f64; 3] {
        self.prev_action.as_ref().map(Self::footprint).unwrap_or([0.0; 3])
    }

    /// Cluster-wide utilization `[cpu, ram, net]` including the previous
    /// deployment's footprint, clamped into `[0, 1]`.
    pub fn utilization(&self) -> [f64; 3] {
        let bg = self.interference.background(&self.config.contention, self.step_index);
        let fp = self.prev_footprint();
        let mut util = [0.0; 3];
        for r in 0..3 {
            util[r] = (bg[r] + fp[r] / self.capacity[r]).clamp(0.0, 1.0);
        }
        // The network dimension is the mean of the per-zone view, which
        // includes zone-local events and the zone footprint split.
        let zones = self.zone_net_utilization();
        util[2] = zones.iter().sum::<f64>() / ZONE_COUNT as f64;
        util
    }

    /// Per-zone network utilization, the signal behind contention flags.
    pub fn zone_net_utilization(&self) -> [f64; ZONE_COUNT] {
        let bg = self
            .interference
            .background_net_zones(&self.config.contention, self.step_index);
        let zone_cap = self.capacity[2] / ZONE_COUNT as f64;
        let mut utils = [0.0; ZONE_COUNT];
        let prev = self.prev_action.as_ref();
        for z in 0..ZONE_COUNT {
            let fp = prev
                .map(|a| a.pods_per_zone[z] as f64 * a.net_per_pod as f64)
                .unwrap_or(0.0);
            utils[z] = (bg[z] + fp / zone_cap).clamp(0.0, 1.0);
        }
        utils
    }

    /// Per-zone scaling signal for threshold autoscalers: the worst of the
    /// cluster CPU/RAM utilization and the zone's network utilization.
    pub fn zone_utilization(&self) -> [f64; ZONE_COUNT] {
        let cluster = self.utilization();
        let zones = self.zone_net_utilization();
        let mut out = [0.0; ZONE_COUNT];
        for z in 0..ZONE_COUNT {
            out[z] = cluster[0].max(cluster[1]).max(zones[z]);
        }
        out
    }

    /// The context an agent observes at the current step. Pure function of
    /// the environment state: no randomness is consumed, so repeated calls
    /// within a step agree.
    pub fn sample_context(&self) -> ContextVector {
        let util = self.utilization();
        let zone_utils = self.zone_net_utilization();
        let contended: Vec<usize> = match self.config.contention.pattern {
            ContentionPattern::Utilization => (0..ZONE_COUNT)
                .filter(|&z| zone_utils[z] > self.config.contention.threshold)
                .collect(),
            ContentionPattern::Alternating => {
                let forced = if self.step_index % 2 == 0 {
                    &self.config.contention.even_zones
                } else {
                    &self.config.contention.odd_zones
                };
                forced.iter().copied().filter(|&z| z < ZONE_COUNT).collect()
            }
        };
        let contention_code = encode_contention(&contended, ZONE_COUNT as u32)
            .expect("zone indices are validated");
        ContextVector {
            workload_intensity: self.trace.intensity(self.step_index),
            cpu_util: util[0],
            ram_util: util[1],
            net_util: util[2],
            contention_code,
            spot_price_factor: self.spot.factor(),
        }
    }

    /// Whether pods of this deployment get killed for under-allocated RAM:
    /// the per-pod demand at the context's workload intensity exceeds the
    /// allocation scaled by the safety factor.
    pub fn oom(&self, action: &ActionVector, context: &ContextVector) -> bool {
        if action.total_pods() == 0 {
            return false;
        }
        let demand = self.config.usage.ram_demand_base_mib
            + self.config.usage.ram_demand_slope_mib * context.workload_intensity;
        demand > action.ram_per_pod as f64 * self.config.usage.oom_safety
    }

    /// Noiseless performance of an action under a context, in `[−1, 0]`.
    ///
    /// Deploying zero pods, losing pods to OOM kills, or saturating a
    /// microservice all pin performance at the defined worst value −1.
    pub fn true_perf(&self, action: &ActionVector, context: &ContextVector) -> f64 {
        if action.total_pods() == 0 {
            return -1.0;
        }
        if self.oom(action, context) {
            return -1.0;
        }
        if self.config.kind.is_batch() {
            self.batch_perf(action, context)
        } else {
            self.microservice_perf(action, context)
        }
    }

    /// Saturating per-pod throughput multiplier from the CPU allocation.
    fn cpu_saturation(&self, action: &ActionVector) -> f64 {
        let cpu = action.cpu_per_pod as f64;
        cpu / (cpu + self.config.perf.cpu_half_millicores)
    }

    /// Linear-below-knee throughput multiplier from the RAM allocation.
    fn ram_saturation(&self, action: &ActionVector) -> f64 {
        (action.ram_per_pod as f64 / self.config.perf.ram_knee_mib).min(1.0)
    }

    /// Throughput retained under ambient CPU/RAM interference.
    fn steal_factor(&self, context: &ContextVector) -> f64 {
        (1.0 - self.config.perf.cpu_steal * context.cpu_util
            - self.config.perf.ram_steal * context.ram_util)
            .max(0.05)
    }

    /// How widely pods are spread across zones: 0 for co-located, up to
    /// `1 − 1/zones` for a perfectly even spread.
    fn spread(action: &ActionVector) -> f64 {
        let total = action.total_pods() as f64;
        if total == 0.0 {
            return 0.0;
        }
        let sum_sq: f64 = action
            .pods_per_zone
            .iter()
            .map(|&p| {
                let f = p as f64 / total;
                f * f
            })
            .sum();
        1.0 - sum_sq
    }

    /// Fraction of pods sitting in zones flagged as contended.
    fn contended_fraction(&self, action: &ActionVector, context: &ContextVector) -> f64 {
        let total = action.total_pods();
        if total == 0 {
            return 0.0;
        }
        let mut contended_pods = 0u32;
        for z in 0..ZONE_COUNT {
            if context.contention_code & (1 << z) != 0 {
                contended_pods += action.pods_per_zone[z];
            }
        }
        contended_pods as f64 / total as f64
    }

    fn network_multiplier(&self, action: &ActionVector, context: &ContextVector) -> f64 {
        (1.0 + self.config.perf.contention_penalty * self.contended_fraction(action, context))
            * (1.0 + self.config.perf.net_steal * context.net_util)
    }

    fn batch_perf(&self, action: &ActionVector, context: &ContextVector) -> f64 {
        let p = &self.config.perf;
        let pods = action.total_pods() as f64;
        let w = context.workload_intensity;

        let rate = self.cpu_saturation(action) * self.ram_saturation(action)
            * self.steal_factor(context);
        let compute_s = w * p.work_scale / (pods * rate);

        // Ingress volume is placement-independent; shuffle volume grows with
        // per-pod RAM (larger partitions) and with cross-zone spread.
        let volume = p.ingress_volume
            + p.shuffle_volume * (action.ram_per_pod as f64 / p.ram_knee_mib)
                * Self::spread(action);
        let net_s = w * volume * self.network_multiplier(action, context) * 1000.0
            / (action.net_per_pod as f64 * pods);

        let coord_s = w * p.coord_seconds_per_pod * pods;

        let elapsed = compute_s + net_s + coord_s;
        -(elapsed / p.elapsed_scale_s).min(1.0)
    }

    fn microservice_perf(&self, action: &ActionVector, context: &ContextVector) -> f64 {
        let p = &self.config.perf;
        let pods = action.total_pods() as f64;
        let w = context.workload_intensity;
        if w == 0.0 {
            return 0.0;
        }

        let service_rate = p.service_rate_per_pod
            * self.cpu_saturation(action)
            * self.ram_saturation(action)
            * self.steal_factor(context);
        let arrival_rate = w * p.request_rate;
        let occupancy = arrival_rate / (pods * service_rate);
        if occupancy >= 0.999 {
            return -1.0; // saturated: queues grow without bound
        }

        // Processor-sharing sojourn with an exponential-tail P90.
        let sojourn_ms = 1000.0 / (service_rate * (1.0 - occupancy));
        let p90_queue_ms = 10f64.ln() * sojourn_ms;

        let serialization_ms = 8.0 * p.payload_kb / action.net_per_pod as f64;
        let network_ms = (serialization_ms + p.interzone_ms * Self::spread(action))
            * self.network_multiplier(action, context);

        let p90_ms = p90_queue_ms + network_ms;
        -(p90_ms / p.latency_scale_ms).min(1.0)
    }

    /// Noiseless `[cpu, ram, net]` usage of an action under the current
    /// background: interference plus footprint, additive and monotone.
    pub fn true_usage(&self, action: &ActionVector, _context: &ContextVector) -> [f64; 3] {
        let bg = self.interference.background(&self.config.contention, self.step_index);
        let fp = Self::footprint(action);
        let mut usage = [0.0; 3];
        for r in 0..3 {
            usage[r] = bg[r] * self.capacity[r] + fp[r];
        }
        usage
    }

    /// Cost of running an action for one decision period, normalized by the
    /// maximum-allocation on-demand bill. Spot coverage blends the bill
    /// toward the context's spot-price factor; an empty deployment is free.
    pub fn cost(&self, action: &ActionVector, context: &ContextVector) -> f64 {
        let hours = self.config.decision_period_s / 3600.0;
        let prices = &self.config.prices;
        let bill = |fp: [f64; 3]| {
            (fp[0] * prices.cpu_millicore_hour
                + fp[1] * prices.ram_mib_hour
                + fp[2] * prices.net_mbps_hour)
                * hours
        };
        let ondemand = bill(Self::footprint(action));
        let space = &self.config.space;
        let max_pods = (space.max_pods_per_zone * ZONE_COUNT as u32) as f64;
        let max_bill = bill([
            max_pods * space.cpu_bounds.1 as f64,
            max_pods * space.ram_bounds.1 as f64,
            max_pods * space.net_bounds.1 as f64,
        ]);
        let blend = spot_blend(self.spot.coverage(), context.spot_price_factor);
        ondemand * blend / max_bill
    }

    /// Deploys an action for one period: returns the noisy observation and
    /// advances the environment to the next step.
    pub fn evaluate(&mut self, action: &ActionVector) -> Evaluation {
        let context = self.sample_context();
        let mut perf = self.true_perf(action, &context);
        let mut usage = self.true_usage(action, &context);
        let cost = self.cost(action, &context);
        let oom = self.oom(action, &context);

        let sigma = self.config.noise.sigma;
        if sigma > 0.0 {
            let noise = Normal::new(0.0, sigma).expect("validated sigma");
            perf += noise.sample(&mut self.rng);
            for (r, u) in usage.iter_mut().enumerate() {
                let scaled = Normal::new(0.0, sigma * self.capacity[r]).expect("validated sigma");
                *u = (*u + scaled.sample(&mut self.rng)).max(0.0);
            }
        }

        self.prev_action = Some(action.clone());
        self.advance();
        Evaluation {
            perf,
            usage,
            cost,
            oom,
        }
    }

    /// Advances the stochastic processes by one decision period. Public so
    /// the process dynamics can be driven and inspected directly.
    pub fn advance(&mut self) {
        self.step_index += 1;
        self.interference
            .step(&mut self.rng, self.config.decision_period_s);
        self.spot.step(&mut self.rng);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::ActionSpace;
    use approx::assert_abs_diff_eq;

    fn env(name: &str, seed: u64) -> SimEnv {
        let config = ScenarioConfig::builtin(name).expect("builtin");
        SimEnv::new(&config, seed).expect("valid scenario")
    }

    fn action(pods: [u32; 4], cpu: u32, ram: u32, net: u32) -> ActionVector {
        ActionVector {
            pods_per_zone: pods,
            cpu_per_pod: cpu,
            ram_per_pod: ram,
            net_per_pod: net,
        }
    }

    #[test]
    fn step_zero_context_is_pure_baseline() {
        let env = env("public-batch", 1);
        let context = env.sample_context();
        assert_abs_diff_eq!(context.cpu_util, 0.1, epsilon = 1e-12);
        assert_abs_diff_eq!(context.ram_util, 0.1, epsilon = 1e-12);
        assert_abs_diff_eq!(context.net_util, 0.1, epsilon = 1e-12);
        assert_eq!(context.contention_code, 0);
        assert_abs_diff_eq!(context.spot_price_factor, 0.3, epsilon = 1e-12);
        // Recurring-batch trace starts inside the job pulse.
        assert_abs_diff_eq!(context.workload_intensity, 0.9, epsilon = 1e-12);
        assert!(context.validate().is_ok());
    }

    #[test]
    fn identical_seeds_reproduce_identical_observations() {
        let mut a = env("public-batch", 9);
        let mut b = env("public-batch", 9);
        let probe = action([2, 2, 1, 0], 1500, 2048, 300);
        for _ in 0..20 {
            assert_eq!(a.sample_context(), b.sample_context());
            assert_eq!(a.evaluate(&probe), b.evaluate(&probe));
        }
        let mut c = env("public-batch", 10);
        let mut diverged = false;
        for _ in 0..20 {
            if a.evaluate(&probe) != c.evaluate(&probe) {
                diverged = true;
                break;
            }
        }
        assert!(diverged, "different seeds must produce different streams");
    }

    #[test]
    fn contexts_remain_valid_under_load() {
        let mut env = env("public-microservice", 5);
        let heavy = action([8, 8, 8, 8], 4000, 8192, 1000);
        for _ in 0..50 {
            let context = env.sample_context();
            assert!(context.validate().is_ok());
            env.evaluate(&heavy);
        }
    }

    #[test]
    fn usage_is_additive_and_monotone_in_the_footprint() {
        let env = env("private-batch", 3);
        let context = env.sample_context();
        let small = action([1, 0, 0, 0], 1000, 1024, 100);
        let double = action([2, 0, 0, 0], 1000, 1024, 100);
        let base = env.true_usage(&action([0, 0, 0, 0], 1000, 1024, 100), &context);
        let u1 = env.true_usage(&small, &context);
        let u2 = env.true_usage(&double, &context);
        for r in 0..3 {
            let delta1 = u1[r] - base[r];
            let delta2 = u2[r] - base[r];
            assert_abs_diff_eq!(delta2, 2.0 * delta1, epsilon = 1e-9);
            assert!(u2[r] >= u1[r]);
        }
        assert_abs_diff_eq!(u1[0] - base[0], 1000.0, epsilon = 1e-9);
        assert_abs_diff_eq!(u1[1] - base[1], 1024.0, epsilon = 1e-9);
        assert_abs_diff_eq!(u1[2] - base[2], 100.0, epsilon = 1e-9);
    }

    #[test]
    fn under_allocated_ram_triggers_oom_and_worst_perf() {
        let env = env("public-batch", 2);
        let context = env.sample_context(); // workload 0.9 → demand 1433.6 MiB
        let starved = action([4, 4, 0, 0], 3000, 1024, 500);
        assert!(env.oom(&starved, &context));
        assert_eq!(env.true_perf(&starved, &context), -1.0);
        let fed = action([4, 4, 0, 0], 3000, 2048, 500);
        assert!(!env.oom(&fed, &context));
        assert!(env.true_perf(&fed, &context) > -1.0);
    }

    #[test]
    fn batch_perf_stays_in_range_and_rewards_more_cpu() {
        let env = env("public-batch", 4);
        let context = env.sample_context();
        let mut last = f64::NEG_INFINITY;
        for cpu in [400, 1200, 2400, 4000] {
            let a = action([4, 4, 0, 0], cpu, 2048, 500);
            let perf = env.true_perf(&a, &context);
            assert!((-1.0..=0.0).contains(&perf));
            assert!(perf >= last, "more CPU must not hurt batch perf");
            last = perf;
        }
    }

    #[test]
    fn co_located_pods_beat_spread_pods_at_equal_totals() {
        let env = env("public-batch", 4);
        let context = env.sample_context();
        let colocated = env.true_perf(&action([8, 0, 0, 0], 2000, 2048, 500), &context);
        let spread = env.true_perf(&action([2, 2, 2, 2], 2000, 2048, 500), &context);
        assert!(colocated >= spread);
    }

    #[test]
    fn zero_workload_makes_batch_jobs_free_of_cost_in_time() {
        let config = {
            let mut c = ScenarioConfig::builtin("public-batch").unwrap();
            c.workload.baseline = 0.0;
            c.workload.amplitude = 0.0;
            c.usage.ram_demand_base_mib = 0.0;
            c
        };
        let env = SimEnv::new(&config, 1).unwrap();
        let context = env.sample_context();
        assert_eq!(context.workload_intensity, 0.0);
        let perf = env.true_perf(&action([2, 2, 0, 0], 2000, 2048, 500), &context);
        assert_eq!(perf, 0.0);
    }

    #[test]
    fn ram_above_the_knee_hurts_under_contention() {
        // The non-monotone witness: with spread pods in contended zones,
        // doubling RAM past the knee inflates shuffle volume and lowers
        // performance, while doubling it below the knee helps.
        let env = env("public-batch", 4);
        let context = ContextVector {
            workload_intensity: 0.3,
            cpu_util: 0.3,
            ram_util: 0.2,
            net_util: 0.75,
            contention_code: encode_contention(&[0, 1], 4).unwrap(),
            spot_price_factor: 0.3,
        };
        let at_knee = env.true_perf(&action([4, 4, 0, 0], 2000, 2048, 500), &context);
        let above = env.true_perf(&action([4, 4, 0, 0], 2000, 4096, 500), &context);
        let below = env.true_perf(&action([4, 4, 0, 0], 2000, 1024, 500), &context);
        assert!(at_knee > above, "RAM beyond the knee must hurt: {at_knee} vs {above}");
        assert!(at_knee > below, "RAM below the knee must hurt: {at_knee} vs {below}");
    }

    #[test]
    fn microservice_saturates_to_worst_perf_and_idles_to_zero() {
        let env = env("public-microservice", 6);
        let mut context = env.sample_context();
        context.workload_intensity = 1.0;
        let starved = action([1, 0, 0, 0], 400, 2048, 100);
        assert_eq!(env.true_perf(&starved, &context), -1.0);
        let provisioned = action([8, 8, 0, 0], 3000, 2048, 500);
        let perf = env.true_perf(&provisioned, &context);
        assert!((-1.0..0.0).contains(&perf));
        context.workload_intensity = 0.0;
        assert_eq!(env.true_perf(&provisioned, &context), 0.0);
    }

    #[test]
    fn cost_is_normalized_zero_for_empty_and_one_at_max_on_demand() {
        let config = {
            let mut c = ScenarioConfig::builtin("public-batch").unwrap();
            c.spot.enabled = false; // pure on-demand
            c
        };
        let env = SimEnv::new(&config, 1).unwrap();
        let context = env.sample_context();
        assert_eq!(env.cost(&action([0, 0, 0, 0], 100, 128, 10), &context), 0.0);
        let space = ActionSpace::default();
        let max = action([8, 8, 8, 8], space.cpu_bounds.1, space.ram_bounds.1, space.net_bounds.1);
        assert_abs_diff_eq!(env.cost(&max, &context), 1.0, epsilon = 1e-12);
        let half = action([4, 4, 4, 4], space.cpu_bounds.1, space.ram_bounds.1, space.net_bounds.1);
        assert_abs_diff_eq!(env.cost(&half, &context), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn cost_ratio_is_invariant_to_uniform_price_scaling() {
        let base = ScenarioConfig::builtin("public-batch").unwrap();
        let mut scaled = base.clone();
        scaled.prices.cpu_millicore_hour *= 10.0;
        scaled.prices.ram_mib_hour *= 10.0;
        scaled.prices.net_mbps_hour *= 10.0;
        let env_a = SimEnv::new(&base, 1).unwrap();
        let env_b = SimEnv::new(&scaled, 1).unwrap();
        let context = env_a.sample_context();
        let probe = action([3, 1, 0, 2], 1700, 4096, 320);
        assert_abs_diff_eq!(
            env_a.cost(&probe, &context),
            env_b.cost(&probe, &context),
            epsilon = 1e-12
        );
    }

    #[test]
    fn noiseless_scenarios_report_exact_true_values() {
        let config = {
            let mut c = ScenarioConfig::builtin("public-batch").unwrap();
            c.noise.sigma = 0.0;
            c
        };
        let mut env = SimEnv::new(&config, 8).unwrap();
        let probe = action([2, 2, 2, 2], 2000, 2048, 400);
        let context = env.sample_context();
        let expected_perf = env.true_perf(&probe, &context);
        let expected_usage = env.true_usage(&probe, &context);
        let expected_cost = env.cost(&probe, &context);
        let eval = env.evaluate(&probe);
        assert_eq!(eval.perf, expected_perf);
        assert_eq!(eval.usage, expected_usage);
        assert_eq!(eval.cost, expected_cost);
    }

    #[test]
    fn advance_moves_the_clock_and_draws_arrivals() {
        let mut env = env("public-batch", 12);
        assert_eq!(env.step_index(), 0);
        env.advance();
        assert_eq!(env.step_index(), 1);
        // λ = 0.5/s × 60 s = 30: a draw of zero arrivals is essentially
        // impossible, so this also proves the Poisson stream is live.
        assert!(env.last_interference_arrivals() > 0);
    }

    #[test]
    fn alternating_scenario_flips_contention_each_step() {
        let mut env = env("public-batch-alternating", 3);
        let even = env.sample_context();
        env.advance();
        let odd = env.sample_context();
        assert_eq!(even.contention_code, encode_contention(&[0, 1], 4).unwrap());
        assert_eq!(odd.contention_code, encode_contention(&[2, 3], 4).unwrap());
    }

    #[test]
    fn private_limits_scale_with_capacity_fractions() {
        let capped = env("private-batch", 1);
        let limit = capped.resource_limit().expect("private scenario");
        assert_abs_diff_eq!(limit.ram_mib, 0.65 * 460_800.0, epsilon = 1e-9);
        assert_abs_diff_eq!(limit.cpu_millicores, 0.85 * 120_000.0, epsilon = 1e-9);
        assert_abs_diff_eq!(limit.net_mbps, 15_000.0, epsilon = 1e-9);
        assert!(env("public-batch", 1).resource_limit().is_none());
    }
}
