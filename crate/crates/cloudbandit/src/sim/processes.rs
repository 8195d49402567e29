//! The stochastic processes driving the simulated cluster: workload traces,
//! Poisson interference from co-tenants, and the spot-price random walk.
//!
//! All randomness flows through the environment's single seeded RNG in a
//! fixed draw order, which is what makes whole experiment runs reproducible
//! byte-for-byte.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use crate::encoding::ZONE_COUNT;
use crate::sim::scenario::{ContentionSpec, InterferenceSpec, SpotSpec, WorkloadKind, WorkloadSpec};
use crate::sim::SimError;

// ─── Workload traces ────────────────────────────────────────────────────────

/// A deterministic workload-intensity trace, sampled once per decision step.
#[derive(Debug, Clone, PartialEq)]
pub enum WorkloadTrace {
    /// `baseline + amplitude · sin(2π t / period)`, clamped into `[0, 1]`.
    DiurnalSinusoid {
        baseline: f64,
        amplitude: f64,
        period_steps: u64,
    },
    /// A pulse train: `baseline + amplitude` during the first `duty`
    /// fraction of each period, plain `baseline` otherwise.
    RecurringBatch {
        baseline: f64,
        amplitude: f64,
        period_steps: u64,
        duty: f64,
    },
    /// Intensities replayed from a trace file; reads past the end hold the
    /// final value (experiment validation rejects horizons beyond the trace).
    Replay { interval_s: f64, values: Vec<f64> },
}

impl WorkloadTrace {
    /// Builds a trace from its scenario spec, loading replay files from disk.
    pub fn from_spec(spec: &WorkloadSpec) -> Result<Self, SimError> {
        match spec.generator {
            WorkloadKind::DiurnalSinusoid => Ok(Self::DiurnalSinusoid {
                baseline: spec.baseline,
                amplitude: spec.amplitude,
                period_steps: spec.period_steps.max(1),
            }),
            WorkloadKind::RecurringBatch => Ok(Self::RecurringBatch {
                baseline: spec.baseline,
                amplitude: spec.amplitude,
                period_steps: spec.period_steps.max(1),
                duty: spec.duty,
            }),
            WorkloadKind::FileReplay => {
                let path = spec.replay_path.as_ref().ok_or_else(|| SimError::InvalidScenario {
                    reason: "workload.replay_path: required for the file-replay generator".into(),
                })?;
                let text = std::fs::read_to_string(path).map_err(|e| SimError::ReplayParse {
                    line: 0,
                    reason: format!("cannot read {path}: {e}"),
                })?;
                Self::from_replay_str(&text)
            }
        }
    }

    /// Parses the replay format: a header line holding the sample interval
    /// in seconds, then one intensity in `[0, 1]` per line. Blank lines and
    /// `#` comments are skipped.
    pub fn from_replay_str(text: &str) -> Result<Self, SimError> {
        let mut interval_s = None;
        let mut values = Vec::new();
        for (index, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let number: f64 = line.parse().map_err(|_| SimError::ReplayParse {
                line: index + 1,
                reason: format!("{line:?} is not a number"),
            })?;
            match interval_s {
                None => {
                    if !number.is_finite() || number <= 0.0 {
                        return Err(SimError::ReplayParse {
                            line: index + 1,
                            reason: format!("sample interval {number} must be positive"),
                        });
                    }
                    interval_s = Some(number);
                }
                Some(_) => {
                    if !number.is_finite() || !(0.0..=1.0).contains(&number) {
                        return Err(SimError::ReplayParse {
                            line: index + 1,
                            reason: format!("intensity {number} outside [0, 1]"),
                        });
                    }
                    values.push(number);
                }
            }
        }
        let interval_s = interval_s.ok_or(SimError::ReplayParse {
            line: 0,
            reason: "missing sample-interval header line".into(),
        })?;
        if values.is_empty() {
            return Err(SimError::ReplayParse {
                line: 0,
                reason: "trace holds no intensity samples".into(),
            });
        }
        Ok(Self::Replay { interval_s, values })
    }

    /// Renders a replay trace back into its file format.
    pub fn to_replay_string(interval_s: f64, values: &[f64]) -> String {
        let mut out = String::with_capacity(values.len() * 8 + 16);
        out.push_str(&format!("{interval_s}\n"));
        for v in values {
            out.push_str(&format!("{v}\n"));
        }
        out
    }

    /// Workload intensity at a decision step, always in `[0, 1]`.
    pub fn intensity(&self, step: u64) -> f64 {
        match self {
            Self::DiurnalSinusoid {
                baseline,
                amplitude,
                period_steps,
            } => {
                let phase = 2.0 * std::f64::consts::PI * (step % period_steps) as f64
                    / *period_steps as f64;
                (baseline + amplitude * phase.sin()).clamp(0.0, 1.0)
            }
            Self::RecurringBatch {
                baseline,
                amplitude,
                period_steps,
                duty,
            } => {
                let position = (step % period_steps) as f64 / *period_steps as f64;
                let active = position < *duty;
                (baseline + if active { *amplitude } else { 0.0 }).clamp(0.0, 1.0)
            }
            Self::Replay { values, .. } => {
                let index = (step as usize).min(values.len() - 1);
                values[index]
            }
        }
    }

    /// Number of samples a replay trace can serve before holding its final
    /// value; unbounded for the generators.
    pub fn replay_len(&self) -> Option<usize> {
        match self {
            Self::Replay { values, .. } => Some(values.len()),
            _ => None,
        }
    }
}

// ─── Interference ───────────────────────────────────────────────────────────

/// One active interference event from a co-tenant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterferenceEvent {
    /// Target resource: 0 = CPU, 1 = RAM bandwidth, 2 = network.
    pub resource: usize,
    /// Zone the event lands in (only network events are zone-local).
    pub zone: usize,
    /// Utilization added to the target resource.
    pub intensity: f64,
}

/// The Poisson co-tenant interference process.
///
/// Each decision period draws `k ~ Poisson(rate · period)` arrivals; the
/// first `max_concurrent` become the period's active events, each targeting
/// a uniformly chosen resource and zone with a uniformly drawn intensity.
/// CPU and RAM events act cluster-wide, network events act on their zone.
#[derive(Debug, Clone)]
pub struct InterferenceProcess {
    spec: InterferenceSpec,
    active: Vec<InterferenceEvent>,
    last_drawn: u64,
}

impl InterferenceProcess {
    /// Starts with no active events, so step zero sees pure baseline.
    pub fn new(spec: InterferenceSpec) -> Self {
        Self {
            spec,
            active: Vec::new(),
            last_drawn: 0,
        }
    }

    /// Advances one decision period, returning how many arrivals were drawn
    /// (before the concurrency cap).
    pub fn step(&mut self, rng: &mut ChaCha8Rng, period_s: f64) -> u64 {
        self.active.clear();
        let lambda = self.spec.rate_per_second * period_s;
        let drawn = if lambda > 0.0 {
            let poisson = Poisson::new(lambda).expect("positive rate");
            poisson.sample(rng) as u64
        } else {
            0
        };
        for _ in 0..drawn {
            let resource = rng.random_range(0..3usize);
            let zone = rng.random_range(0..ZONE_COUNT);
            let intensity =
                rng.random_range(self.spec.intensity_bounds.0..=self.spec.intensity_bounds.1);
            if self.active.len() < self.spec.max_concurrent {
                self.active.push(InterferenceEvent {
                    resource,
                    zone,
                    intensity,
                });
            }
        }
        self.last_drawn = drawn;
        drawn
    }

    /// Arrivals drawn in the most recent period, before capping.
    pub fn last_drawn(&self) -> u64 {
        self.last_drawn
    }

    /// Currently active (capped) events.
    pub fn active(&self) -> &[InterferenceEvent] {
        &self.active
    }

    /// Cluster-wide background utilization `[cpu, ram, net]` from baseline
    /// plus active events, clamped at the configured ceiling. The network
    /// component is the mean of the per-zone backgrounds.
    pub fn background(&self, contention: &ContentionSpec, step: u64) -> [f64; 3] {
        let per_zone = self.background_net_zones(contention, step);
        let net = per_zone.iter().sum::<f64>() / ZONE_COUNT as f64;
        let mut cpu = self.spec.background_baseline;
        let mut ram = self.spec.background_baseline;
        for event in &self.active {
            match event.resource {
                0 => cpu += event.intensity,
                1 => ram += event.intensity,
                _ => {}
            }
        }
        [
            cpu.min(self.spec.background_ceiling),
            ram.min(self.spec.background_ceiling),
            net,
        ]
    }

    /// Per-zone background network utilization, including any zones forced
    /// by an alternating contention pattern.
    pub fn background_net_zones(&self, contention: &ContentionSpec, step: u64) -> [f64; ZONE_COUNT] {
        let mut zones = [self.spec.background_baseline; ZONE_COUNT];
        for event in &self.active {
            if event.resource == 2 {
                zones[event.zone] += event.intensity;
            }
        }
        for z in &mut zones {
            *z = z.min(self.spec.background_ceiling);
        }
        // Forced contention overrides the ceiling: it models a co-tenant
        // deliberately saturating those zones.
        if let crate::sim::scenario::ContentionPattern::Alternating = contention.pattern {
            let forced = if step % 2 == 0 {
                &contention.even_zones
            } else {
                &contention.odd_zones
            };
            for &z in forced {
                if z < ZONE_COUNT {
                    zones[z] = zones[z].max(contention.forced_util);
                }
            }
        }
        zones
    }
}

// ─── Spot market ────────────────────────────────────────────────────────────

/// Spot-price factor random walk plus per-period spot coverage.
///
/// The factor is the spot price as a fraction of on-demand and performs a
/// bounded uniform random walk; coverage is the fraction of the bill served
/// from spot capacity, drawn uniformly each period. Disabled process (on
/// private clusters) reports factor and coverage of zero.
#[derive(Debug, Clone)]
pub struct SpotPriceProcess {
    spec: SpotSpec,
    factor: f64,
    coverage: f64,
}

impl SpotPriceProcess {
    pub fn new(spec: SpotSpec) -> Self {
        let (factor, coverage) = if spec.enabled {
            (
                spec.initial_factor,
                (spec.coverage_bounds.0 + spec.coverage_bounds.1) / 2.0,
            )
        } else {
            (0.0, 0.0)
        };
        Self {
            spec,
            factor,
            coverage,
        }
    }

    /// Advances one decision period.
    pub fn step(&mut self, rng: &mut ChaCha8Rng) {
        if !self.spec.enabled {
            return;
        }
        if self.spec.walk_step > 0.0 {
            let delta = rng.random_range(-self.spec.walk_step..=self.spec.walk_step);
            self.factor =
                (self.factor + delta).clamp(self.spec.factor_bounds.0, self.spec.factor_bounds.1);
        }
        self.coverage =
            rng.random_range(self.spec.coverage_bounds.0..=self.spec.coverage_bounds.1);
    }

    /// Current spot price as a fraction of on-demand (zero when disabled).
    pub fn factor(&self) -> f64 {
        self.factor
    }

    /// Current fraction of the bill on spot capacity (zero when disabled).
    pub fn coverage(&self) -> f64 {
        self.coverage
    }
}

/// Blends spot coverage into an on-demand bill: `(1 − c) + c · factor`.
/// Full coverage at a factor of 1/6 cuts the bill sixfold.
pub fn spot_blend(coverage: f64, factor: f64) -> f64 {
    (1.0 - coverage) + coverage * factor
}
