//! Scenario configuration: everything that defines one simulated cluster.
//!
//! A scenario is a TOML document pinning the cluster capacities, the action
//! grid, the workload trace, the interference and spot-market processes, the
//! hidden performance/usage/cost model parameters, observation noise and —
//! on private clusters — the hard resource caps. Six built-in scenarios ship
//! embedded in the binary; experiment configs may name one of them or point
//! at a TOML file of their own.

use serde::{Deserialize, Serialize};

use crate::encoding::{ActionSpace, CloudMode, ZONE_COUNT};
use crate::sim::SimError;

/// Application regime and cloud type of a scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioKind {
    /// Recurring analytics jobs on a pay-per-use cluster.
    PublicBatch,
    /// A latency-sensitive service on a pay-per-use cluster.
    PublicMicroservice,
    /// Recurring analytics jobs on a resource-capped cluster.
    PrivateBatch,
    /// A latency-sensitive service on a resource-capped cluster.
    PrivateMicroservice,
}

impl ScenarioKind {
    /// True for the resource-capped variants.
    pub fn is_private(self) -> bool {
        matches!(self, Self::PrivateBatch | Self::PrivateMicroservice)
    }

    /// True for the batch-job variants.
    pub fn is_batch(self) -> bool {
        matches!(self, Self::PublicBatch | Self::PrivateBatch)
    }

    /// The cloud mode, which fixes the joint GP dimension.
    pub fn cloud_mode(self) -> CloudMode {
        if self.is_private() {
            CloudMode::Private
        } else {
            CloudMode::Public
        }
    }
}

/// Physical capacity of the simulated cluster.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClusterSpec {
    /// Number of worker machines.
    pub workers: u32,
    /// CPU per worker, in millicores.
    pub cpu_millicores_per_worker: f64,
    /// RAM per worker, in MiB.
    pub ram_mib_per_worker: f64,
    /// Network bandwidth per worker, in Mbps.
    pub net_mbps_per_worker: f64,
}

impl Default for ClusterSpec {
    fn default() -> Self {
        Self {
            workers: 15,
            cpu_millicores_per_worker: 8000.0,
            ram_mib_per_worker: 30720.0,
            net_mbps_per_worker: 1000.0,
        }
    }
}

impl ClusterSpec {
    /// Total `[cpu, ram, net]` capacity across the cluster.
    pub fn capacity(&self) -> [f64; 3] {
        let w = self.workers as f64;
        [
            w * self.cpu_millicores_per_worker,
            w * self.ram_mib_per_worker,
            w * self.net_mbps_per_worker,
        ]
    }
}

/// Workload-trace generator selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WorkloadKind {
    /// Smooth day/night sinusoid.
    DiurnalSinusoid,
    /// Periodic pulse train of recurring analytics jobs.
    RecurringBatch,
    /// Intensities replayed from a trace file.
    FileReplay,
}

/// Workload trace parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WorkloadSpec {
    pub generator: WorkloadKind,
    /// Baseline intensity in `[0, 1]`.
    pub baseline: f64,
    /// Peak-to-baseline amplitude.
    pub amplitude: f64,
    /// Period of the generator, in decision steps.
    pub period_steps: u64,
    /// Fraction of each period a recurring batch job is active.
    pub duty: f64,
    /// Path to a replay file (required for [`WorkloadKind::FileReplay`]).
    pub replay_path: Option<String>,
}

impl Default for WorkloadSpec {
    fn default() -> Self {
        Self {
            generator: WorkloadKind::DiurnalSinusoid,
            baseline: 0.5,
            amplitude: 0.35,
            period_steps: 144,
            duty: 0.5,
            replay_path: None,
        }
    }
}

/// Poisson interference process parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct InterferenceSpec {
    /// Event arrival rate per second (scaled by the decision period).
    pub rate_per_second: f64,
    /// Maximum simultaneously active events.
    pub max_concurrent: usize,
    /// Uniform bounds on a single event's utilization intensity.
    pub intensity_bounds: (f64, f64),
    /// Always-present background utilization on every resource.
    pub background_baseline: f64,
    /// Hard ceiling on background utilization per resource; keeps the
    /// constrained oracle feasible on capped clusters.
    pub background_ceiling: f64,
}

impl Default for InterferenceSpec {
    fn default() -> Self {
        Self {
            rate_per_second: 0.5,
            max_concurrent: 5,
            intensity_bounds: (0.0, 0.5),
            background_baseline: 0.1,
            background_ceiling: 0.9,
        }
    }
}

/// Spot-market process parameters (public clouds only).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpotSpec {
    pub enabled: bool,
    /// Spot price as a fraction of on-demand at step zero.
    pub initial_factor: f64,
    /// Half-width of the uniform random-walk increment per step.
    pub walk_step: f64,
    /// The walk is reflected into these bounds.
    pub factor_bounds: (f64, f64),
    /// Per-step uniform draw of the fraction of the bill on spot capacity.
    pub coverage_bounds: (f64, f64),
}

impl Default for SpotSpec {
    fn default() -> Self {
        Self {
            enabled: true,
            initial_factor: 0.3,
            walk_step: 0.05,
            factor_bounds: (0.1, 0.5),
            coverage_bounds: (0.10, 0.30),
        }
    }
}

/// On-demand unit prices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PriceSpec {
    /// Dollars per millicore-hour.
    pub cpu_millicore_hour: f64,
    /// Dollars per MiB-hour.
    pub ram_mib_hour: f64,
    /// Dollars per Mbps-hour.
    pub net_mbps_hour: f64,
}

impl Default for PriceSpec {
    fn default() -> Self {
        Self {
            cpu_millicore_hour: 3.3e-5,
            ram_mib_hour: 4.4e-6,
            net_mbps_hour: 8.0e-6,
        }
    }
}

/// Hidden performance-model parameters.
///
/// Batch performance is the negated, scale-normalized job elapsed time built
/// from a saturating compute term, a shuffle/ingress network term and a
/// coordination term. Microservice performance is the negated, normalized
/// P90 latency of an M/M/k-style queueing approximation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PerfModelSpec {
    /// Total compute work at unit workload, in rate-normalized seconds.
    pub work_scale: f64,
    /// CPU millicores at which per-pod throughput reaches half saturation.
    pub cpu_half_millicores: f64,
    /// RAM MiB below which per-pod throughput degrades linearly.
    pub ram_knee_mib: f64,
    /// Ingress data volume term (zone-placement independent).
    pub ingress_volume: f64,
    /// Shuffle volume term; grows with per-pod RAM (larger partitions) and
    /// with how widely pods are spread across zones.
    pub shuffle_volume: f64,
    /// Coordination seconds added per pod at unit workload.
    pub coord_seconds_per_pod: f64,
    /// Fractional throughput loss per unit of ambient CPU utilization.
    pub cpu_steal: f64,
    /// Fractional throughput loss per unit of ambient RAM-bandwidth use.
    pub ram_steal: f64,
    /// Fractional network slowdown per unit of ambient network utilization.
    pub net_steal: f64,
    /// Extra network slowdown multiplier in contended zones.
    pub contention_penalty: f64,
    /// Elapsed seconds mapping to the worst batch performance of −1.
    pub elapsed_scale_s: f64,
    /// Peak request rate at unit workload, requests per second.
    pub request_rate: f64,
    /// Per-pod service rate at full CPU/RAM saturation, requests per second.
    pub service_rate_per_pod: f64,
    /// Response payload per request, in kilobytes.
    pub payload_kb: f64,
    /// One-way latency between zones, in milliseconds.
    pub interzone_ms: f64,
    /// P90 milliseconds mapping to the worst microservice performance of −1.
    pub latency_scale_ms: f64,
}

impl Default for PerfModelSpec {
    fn default() -> Self {
        Self {
            work_scale: 200.0,
            cpu_half_millicores: 1000.0,
            ram_knee_mib: 2048.0,
            ingress_volume: 30.0,
            shuffle_volume: 60.0,
            coord_seconds_per_pod: 0.05,
            cpu_steal: 0.5,
            ram_steal: 0.25,
            net_steal: 0.6,
            contention_penalty: 2.0,
            elapsed_scale_s: 60.0,
            request_rate: 600.0,
            service_rate_per_pod: 50.0,
            payload_kb: 100.0,
            interzone_ms: 5.0,
            latency_scale_ms: 500.0,
        }
    }
}

/// Hidden usage-model parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct UsageModelSpec {
    /// Per-pod RAM demand at zero workload, in MiB.
    pub ram_demand_base_mib: f64,
    /// Additional per-pod RAM demand at unit workload, in MiB.
    pub ram_demand_slope_mib: f64,
    /// A pod survives while `demand ≤ allocation × oom_safety`.
    pub oom_safety: f64,
}

impl Default for UsageModelSpec {
    fn default() -> Self {
        Self {
            ram_demand_base_mib: 512.0,
            ram_demand_slope_mib: 1024.0,
            oom_safety: 0.9,
        }
    }
}

/// Observation noise. `sigma` applies directly to performance (already on a
/// unit scale) and, scaled by the respective capacity, to usage readings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NoiseSpec {
    pub sigma: f64,
}

impl Default for NoiseSpec {
    fn default() -> Self {
        Self { sigma: 0.01 }
    }
}

/// Reward weights for the pay-per-use objective `α·perf − β·cost`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RewardSpec {
    pub alpha: f64,
    pub beta: f64,
}

impl Default for RewardSpec {
    fn default() -> Self {
        Self { alpha: 0.5, beta: 0.5 }
    }
}

/// Hard resource caps on a private cluster, as fractions of total capacity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LimitSpec {
    pub cpu_fraction: f64,
    pub ram_fraction: f64,
    pub net_fraction: f64,
}

impl Default for LimitSpec {
    fn default() -> Self {
        Self {
            cpu_fraction: 0.85,
            ram_fraction: 0.65,
            net_fraction: 1.0,
        }
    }
}

/// How the contended-zone bitmask is produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ContentionPattern {
    /// A zone is contended when its network utilization crosses a threshold.
    Utilization,
    /// A fixed pair of zone sets alternates with step parity — a controlled
    /// setting where the optimal placement flips every step.
    Alternating,
}

/// Zone-contention parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ContentionSpec {
    pub pattern: ContentionPattern,
    /// Zone network utilization above which the zone is flagged contended.
    pub threshold: f64,
    /// Zones forced contended on even steps under the alternating pattern.
    pub even_zones: Vec<usize>,
    /// Zones forced contended on odd steps under the alternating pattern.
    pub odd_zones: Vec<usize>,
    /// Background network utilization injected into forced zones.
    pub forced_util: f64,
}

impl Default for ContentionSpec {
    fn default() -> Self {
        Self {
            pattern: ContentionPattern::Utilization,
            threshold: 0.7,
            even_zones: vec![0, 1],
            odd_zones: vec![2, 3],
            forced_util: 0.85,
        }
    }
}

/// A complete scenario definition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub name: String,
    pub kind: ScenarioKind,
    #[serde(default)]
    pub description: String,
    /// Default experiment seed when the caller does not supply one.
    #[serde(default)]
    pub seed: u64,
    /// Default horizon in decision steps.
    #[serde(default = "default_horizon")]
    pub horizon: u64,
    /// Wall-clock seconds per decision step.
    #[serde(default = "default_decision_period")]
    pub decision_period_s: f64,
    #[serde(default)]
    pub cluster: ClusterSpec,
    #[serde(default)]
    pub space: ActionSpace,
    #[serde(default)]
    pub workload: WorkloadSpec,
    #[serde(default)]
    pub interference: InterferenceSpec,
    #[serde(default)]
    pub spot: SpotSpec,
    #[serde(default)]
    pub prices: PriceSpec,
    #[serde(default)]
    pub perf: PerfModelSpec,
    #[serde(default)]
    pub usage: UsageModelSpec,
    #[serde(default)]
    pub noise: NoiseSpec,
    #[serde(default)]
    pub reward: RewardSpec,
    /// Present on private scenarios; rejected on public ones.
    #[serde(default)]
    pub limits: Option<LimitSpec>,
    #[serde(default)]
    pub contention: ContentionSpec,
}

fn default_horizon() -> u64 {
    200
}

fn default_decision_period() -> f64 {
    60.0
}

impl ScenarioConfig {
    /// Parses a scenario from TOML text.
    pub fn from_toml_str(text: &str) -> Result<Self, SimError> {
        let config: Self = toml::from_str(text).map_err(|e| SimError::InvalidScenario {
            reason: e.to_string(),
        })?;
        config.validate()?;
        Ok(config)
    }

    /// Serializes back to TOML.
    pub fn to_toml_string(&self) -> String {
        toml::to_string_pretty(self).expect("scenario configs are serializable")
    }

    /// Validates every parameter range, collecting all problems into one
    /// error so a malformed file is diagnosed in a single pass.
    pub fn validate(&self) -> Result<(), SimError> {
        let mut problems = Vec::new();
        let mut check = |ok: bool, message: String| {
            if !ok {
                problems.push(message);
            }
        };

        check(!self.name.is_empty(), "name: must not be empty".into());
        check(self.horizon >= 1, format!("horizon: {} must be at least 1", self.horizon));
        check(
            self.decision_period_s > 0.0 && self.decision_period_s.is_finite(),
            format!("decision_period_s: {} must be positive", self.decision_period_s),
        );
        check(self.cluster.workers >= 1, "cluster.workers: must be at least 1".into());
        for (key, v) in [
            ("cluster.cpu_millicores_per_worker", self.cluster.cpu_millicores_per_worker),
            ("cluster.ram_mib_per_worker", self.cluster.ram_mib_per_worker),
            ("cluster.net_mbps_per_worker", self.cluster.net_mbps_per_worker),
        ] {
            check(v > 0.0 && v.is_finite(), format!("{key}: {v} must be positive"));
        }
        let space_result = self.space.validate();
        check(
            space_result.is_ok(),
            format!(
                "space: {}",
                space_result.as_ref().err().map(ToString::to_string).unwrap_or_default()
            ),
        );

        let w = &self.workload;
        check(
            (0.0..=1.0).contains(&w.baseline),
            format!("workload.baseline: {} outside [0, 1]", w.baseline),
        );
        check(
            (0.0..=1.0).contains(&w.amplitude),
            format!("workload.amplitude: {} outside [0, 1]", w.amplitude),
        );
        check(w.period_steps >= 1, "workload.period_steps: must be at least 1".into());
        check(
            (0.0..=1.0).contains(&w.duty),
            format!("workload.duty: {} outside [0, 1]", w.duty),
        );
        if w.generator == WorkloadKind::FileReplay {
            check(
                w.replay_path.is_some(),
                "workload.replay_path: required for the file-replay generator".into(),
            );
        }

        let i = &self.interference;
        check(
            i.rate_per_second >= 0.0 && i.rate_per_second.is_finite(),
            format!("interference.rate_per_second: {} must be non-negative", i.rate_per_second),
        );
        check(i.max_concurrent >= 1, "interference.max_concurrent: must be at least 1".into());
        check(
            0.0 <= i.intensity_bounds.0 && i.intensity_bounds.0 <= i.intensity_bounds.1
                && i.intensity_bounds.1 <= 1.0,
            format!(
                "interference.intensity_bounds: ({}, {}) must be ordered within [0, 1]",
                i.intensity_bounds.0, i.intensity_bounds.1
            ),
        );
        check(
            (0.0..=1.0).contains(&i.background_baseline),
            format!("interference.background_baseline: {} outside [0, 1]", i.background_baseline),
        );
        check(
            i.background_ceiling >= i.background_baseline && i.background_ceiling <= 1.0,
            format!(
                "interference.background_ceiling: {} must lie in [baseline, 1]",
                i.background_ceiling
            ),
        );

        let s = &self.spot;
        if s.enabled {
            check(
                0.0 < s.factor_bounds.0 && s.factor_bounds.0 <= s.factor_bounds.1
                    && s.factor_bounds.1 <= 1.0,
                format!(
                    "spot.factor_bounds: ({}, {}) must be ordered within (0, 1]",
                    s.factor_bounds.0, s.factor_bounds.1
                ),
            );
            check(
                (s.factor_bounds.0..=s.factor_bounds.1).contains(&s.initial_factor),
                format!("spot.initial_factor: {} outside factor bounds", s.initial_factor),
            );
            check(
                s.walk_step >= 0.0 && s.walk_step.is_finite(),
                format!("spot.walk_step: {} must be non-negative", s.walk_step),
            );
            check(
                0.0 <= s.coverage_bounds.0 && s.coverage_bounds.0 <= s.coverage_bounds.1
                    && s.coverage_bounds.1 <= 1.0,
                format!(
                    "spot.coverage_bounds: ({}, {}) must be ordered within [0, 1]",
                    s.coverage_bounds.0, s.coverage_bounds.1
                ),
            );
        }
        check(
            !(s.enabled && self.kind.is_private()),
            "spot.enabled: private clusters have no spot market".into(),
        );

        for (key, v) in [
            ("prices.cpu_millicore_hour", self.prices.cpu_millicore_hour),
            ("prices.ram_mib_hour", self.prices.ram_mib_hour),
            ("prices.net_mbps_hour", self.prices.net_mbps_hour),
        ] {
            check(v > 0.0 && v.is_finite(), format!("{key}: {v} must be positive"));
        }

        let p = &self.perf;
        for (key, v) in [
            ("perf.work_scale", p.work_scale),
            ("perf.cpu_half_millicores", p.cpu_half_millicores),
            ("perf.ram_knee_mib", p.ram_knee_mib),
            ("perf.elapsed_scale_s", p.elapsed_scale_s),
            ("perf.request_rate", p.request_rate),
            ("perf.service_rate_per_pod", p.service_rate_per_pod),
            ("perf.latency_scale_ms", p.latency_scale_ms),
        ] {
            check(v > 0.0 && v.is_finite(), format!("{key}: {v} must be positive"));
        }
        for (key, v) in [
            ("perf.ingress_volume", p.ingress_volume),
            ("perf.shuffle_volume", p.shuffle_volume),
            ("perf.coord_seconds_per_pod", p.coord_seconds_per_pod),
            ("perf.payload_kb", p.payload_kb),
            ("perf.interzone_ms", p.interzone_ms),
            ("perf.contention_penalty", p.contention_penalty),
        ] {
            check(v >= 0.0 && v.is_finite(), format!("{key}: {v} must be non-negative"));
        }
        for (key, v) in [
            ("perf.cpu_steal", p.cpu_steal),
            ("perf.ram_steal", p.ram_steal),
            ("perf.net_steal", p.net_steal),
        ] {
            check((0.0..=1.0).contains(&v), format!("{key}: {v} outside [0, 1]"));
        }
        check(
            p.cpu_steal + p.ram_steal < 1.0,
            "perf.cpu_steal + perf.ram_steal: must stay below 1".into(),
        );

        let u = &self.usage;
        check(
            u.ram_demand_base_mib >= 0.0,
            format!("usage.ram_demand_base_mib: {} must be non-negative", u.ram_demand_base_mib),
        );
        check(
            u.ram_demand_slope_mib >= 0.0,
            format!("usage.ram_demand_slope_mib: {} must be non-negative", u.ram_demand_slope_mib),
        );
        check(
            (0.0..=1.0).contains(&u.oom_safety) && u.oom_safety > 0.0,
            format!("usage.oom_safety: {} outside (0, 1]", u.oom_safety),
        );

        check(
            self.noise.sigma >= 0.0 && self.noise.sigma.is_finite(),
            format!("noise.sigma: {} must be non-negative", self.noise.sigma),
        );
        check(
            self.reward.alpha >= 0.0 && self.reward.alpha.is_finite(),
            format!("reward.alpha: {} must be non-negative", self.reward.alpha),
        );
        check(
            self.reward.beta >= 0.0 && self.reward.beta.is_finite(),
            format!("reward.beta: {} must be non-negative", self.reward.beta),
        );

        check(
            !(self.limits.is_none() && self.kind.is_private()),
            "limits: required for private scenarios".into(),
        );
        check(
            !(self.limits.is_some() && !self.kind.is_private()),
            "limits: only valid on private scenarios".into(),
        );
        if let (Some(l), true) = (&self.limits, self.kind.is_private()) {
            for (key, v) in [
                ("limits.cpu_fraction", l.cpu_fraction),
                ("limits.ram_fraction", l.ram_fraction),
                ("limits.net_fraction", l.net_fraction),
            ] {
                check(v > 0.0 && v <= 1.0, format!("{key}: {v} outside (0, 1]"));
            }
        }

        let c = &self.contention;
        check(
            (0.0..=1.0).contains(&c.threshold),
            format!("contention.threshold: {} outside [0, 1]", c.threshold),
        );
        check(
            (0.0..=1.0).contains(&c.forced_util),
            format!("contention.forced_util: {} outside [0, 1]", c.forced_util),
        );
        for (key, zones) in [
            ("contention.even_zones", &c.even_zones),
            ("contention.odd_zones", &c.odd_zones),
        ] {
            check(
                zones.iter().all(|&z| z < ZONE_COUNT),
                format!("{key}: zone indices must be below {ZONE_COUNT}"),
            );
        }

        if problems.is_empty() {
            Ok(())
        } else {
            Err(SimError::InvalidScenario {
                reason: problems.join("; "),
            })
        }
    }

    /// The built-in scenario registry: `(name, description)` pairs.
    pub fn builtin_names() -> Vec<(&'static str, &'static str)> {
        BUILTINS
            .iter()
            .map(|(name, _, description)| (*name, *description))
            .collect()
    }

    /// Fetches a built-in scenario by name.
    pub fn builtin(name: &str) -> Option<Self> {
        BUILTINS.iter().find(|(n, _, _)| *n == name).map(|(_, text, _)| {
            Self::from_toml_str(text).expect("built-in scenarios are valid")
        })
    }

    /// Resolves a scenario reference: a built-in name first, then a path.
    pub fn load(reference: &str) -> Result<Self, SimError> {
        if let Some(builtin) = Self::builtin(reference) {
            return Ok(builtin);
        }
        let text = std::fs::read_to_string(reference).map_err(|e| SimError::InvalidScenario {
            reason: format!("scenario: {reference} is neither a built-in name nor a readable file ({e})"),
        })?;
        Self::from_toml_str(&text)
    }
}

const BUILTINS: &[(&str, &str, &str)] = &[
    (
        "public-batch",
        include_str!("../../scenarios/public-batch.toml"),
        "recurring analytics jobs on a pay-per-use cluster with a spot market",
    ),
    (
        "public-batch-alternating",
        include_str!("../../scenarios/public-batch-alternating.toml"),
        "batch jobs under zone contention that flips sides every step",
    ),
    (
        "public-microservice",
        include_str!("../../scenarios/public-microservice.toml"),
        "latency-sensitive service on a pay-per-use cluster with diurnal load",
    ),
    (
        "private-batch",
        include_str!("../../scenarios/private-batch.toml"),
        "batch jobs on a capped cluster with a 65% memory ceiling",
    ),
    (
        "private-batch-planted",
        include_str!("../../scenarios/private-batch-planted.toml"),
        "capped batch cluster whose unconstrained optimum violates the caps",
    ),
    (
        "private-microservice",
        include_str!("../../scenarios/private-microservice.toml"),
        "latency-sensitive service on a capped cluster",
    ),
];
