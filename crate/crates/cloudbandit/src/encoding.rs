//! Action/context representation and normalization into GP inputs.
//!
//! A deployment decision is a 7-dimensional integer vector: pod counts for
//! each of the four zones plus per-pod CPU, RAM and network-bandwidth
//! allocations. The observed cluster state is a 6-dimensional context:
//! workload intensity, three cluster utilization fractions, a zone-contention
//! bitmask and the current spot-price factor. The GP layer wants a single
//! flat vector in the unit cube, so this module owns:
//!
//! * the bitmask encoding of contended-zone sets into one scalar,
//! * min–max normalization of the joint action–context vector,
//! * deterministic enumeration of the candidate grid the optimizers score.
//!
//! On resource-capped (private) clusters there is no spot market, so the
//! spot dimension is omitted and the joint vector has 12 dimensions instead
//! of 13.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gp::JointPoint;

/// Number of availability zones in the cluster model.
pub const ZONE_COUNT: usize = 4;

/// Dimensions of an [`ActionVector`] once flattened.
pub const ACTION_DIM: usize = 7;

/// Errors produced while encoding actions and contexts.
#[derive(Debug, Error)]
pub enum EncodingError {
    /// The action space itself is malformed.
    #[error("invalid action space: {reason}")]
    InvalidSpace { reason: String },

    /// An action coordinate fell outside the space bounds.
    #[error("action out of bounds: {dimension} = {value} not in [{lower}, {upper}]")]
    ActionOutOfBounds {
        dimension: &'static str,
        value: u32,
        lower: u32,
        upper: u32,
    },

    /// A context field fell outside its declared range.
    #[error("context field {field} = {value} outside its valid range")]
    ContextOutOfRange { field: &'static str, value: f64 },

    /// Zone count for a bitmask operation must lie in 1..=16.
    #[error("zone count {zone_count} outside supported range 1..=16")]
    InvalidZoneCount { zone_count: u32 },

    /// A zone index exceeded the zone count.
    #[error("zone index {index} out of range for {zone_count} zones")]
    ZoneIndexOutOfRange { index: usize, zone_count: u32 },

    /// A contention code exceeded the representable mask range.
    #[error("contention code {code} exceeds maximum {max} for {zone_count} zones")]
    ContentionCodeOutOfRange { code: u32, max: u32, zone_count: u32 },
}

// ─── Core vocabulary types ──────────────────────────────────────────────────

/// Which cloud regime an agent operates in; decides the joint GP dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CloudMode {
    /// Pay-per-use cluster with a spot market; contexts carry a spot factor.
    Public,
    /// Resource-capped cluster; no spot market, one fewer context dimension.
    Private,
}

/// Joint action–context dimension for a cloud mode (13 public, 12 private).
pub fn joint_dim(mode: CloudMode) -> usize {
    match mode {
        CloudMode::Public => ACTION_DIM + 6,
        CloudMode::Private => ACTION_DIM + 5,
    }
}

/// One deployment decision: per-zone pod counts plus per-pod allocations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ActionVector {
    /// Pods scheduled in each availability zone.
    pub pods_per_zone: [u32; ZONE_COUNT],
    /// CPU allocation per pod, in millicores.
    pub cpu_per_pod: u32,
    /// RAM allocation per pod, in MiB.
    pub ram_per_pod: u32,
    /// Network-bandwidth allocation per pod, in Mbps.
    pub net_per_pod: u32,
}

impl ActionVector {
    /// Total pod count across all zones.
    pub fn total_pods(&self) -> u32 {
        self.pods_per_zone.iter().sum()
    }
}

/// One observed cluster context.
///
/// Utilizations and workload intensity are fractions in `[0, 1]`; the
/// contention code is a [`ZONE_COUNT`]-bit mask of zones whose network is
/// contended; the spot factor is the current spot price as a fraction of the
/// on-demand price (zero on private clusters, which have no spot market).
#[derive(Debug, Clone, PartialEq)]
pub struct ContextVector {
    pub workload_intensity: f64,
    pub cpu_util: f64,
    pub ram_util: f64,
    pub net_util: f64,
    pub contention_code: u32,
    pub spot_price_factor: f64,
}

impl ContextVector {
    /// Checks every field against its declared range.
    pub fn validate(&self) -> Result<(), EncodingError> {
        let fields = [
            ("workload_intensity", self.workload_intensity),
            ("cpu_util", self.cpu_util),
            ("ram_util", self.ram_util),
            ("net_util", self.net_util),
            ("spot_price_factor", self.spot_price_factor),
        ];
        for (field, value) in fields {
            if !value.is_finite() || !(0.0..=1.0).contains(&value) {
                return Err(EncodingError::ContextOutOfRange { field, value });
            }
        }
        let max = (1u32 << ZONE_COUNT) - 1;
        if self.contention_code > max {
            return Err(EncodingError::ContentionCodeOutOfRange {
                code: self.contention_code,
                max,
                zone_count: ZONE_COUNT as u32,
            });
        }
        Ok(())
    }
}

/// The discrete deployment grid: per-zone pod range plus stepped allocation
/// ranges for CPU, RAM and network bandwidth.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ActionSpace {
    /// Inclusive upper bound on pods per zone (lower bound is 0).
    pub max_pods_per_zone: u32,
    /// Inclusive (lower, upper) CPU bounds in millicores.
    pub cpu_bounds: (u32, u32),
    /// CPU grid step in millicores.
    pub cpu_step: u32,
    /// Inclusive (lower, upper) RAM bounds in MiB.
    pub ram_bounds: (u32, u32),
    /// RAM grid step in MiB.
    pub ram_step: u32,
    /// Inclusive (lower, upper) network bounds in Mbps.
    pub net_bounds: (u32, u32),
    /// Network grid step in Mbps.
    pub net_step: u32,
}

impl Default for ActionSpace {
    fn default() -> Self {
        Self {
            max_pods_per_zone: 8,
            cpu_bounds: (100, 4000),
            cpu_step: 100,
            ram_bounds: (128, 8192),
            ram_step: 128,
            net_bounds: (10, 1000),
            net_step: 10,
        }
    }
}

impl ActionSpace {
    /// Validates bounds ordering, positive steps and step-aligned ranges.
    pub fn validate(&self) -> Result<(), EncodingError> {
        if self.max_pods_per_zone == 0 {
            return Err(EncodingError::InvalidSpace {
                reason: "max pods per zone must be at least 1".into(),
            });
        }
        for (name, (lower, upper), step) in [
            ("cpu", self.cpu_bounds, self.cpu_step),
            ("ram", self.ram_bounds, self.ram_step),
            ("net", self.net_bounds, self.net_step),
        ] {
            if lower >= upper {
                return Err(EncodingError::InvalidSpace {
                    reason: format!("{name} bounds ({lower}, {upper}) must be increasing"),
                });
            }
            if step == 0 {
                return Err(EncodingError::InvalidSpace {
                    reason: format!("{name} step must be positive"),
                });
            }
            if (upper - lower) % step != 0 {
                return Err(EncodingError::InvalidSpace {
                    reason: format!("{name} range {lower}..{upper} is not a multiple of step {step}"),
                });
            }
        }
        Ok(())
    }

    /// True when every coordinate lies inside the (inclusive) bounds.
    ///
    /// Grid alignment is *not* required here: normalization accepts any
    /// in-bounds action, e.g. the exact grid midpoint between two steps.
    pub fn contains(&self, action: &ActionVector) -> bool {
        action.pods_per_zone.iter().all(|&p| p <= self.max_pods_per_zone)
            && (self.cpu_bounds.0..=self.cpu_bounds.1).contains(&action.cpu_per_pod)
            && (self.ram_bounds.0..=self.ram_bounds.1).contains(&action.ram_per_pod)
            && (self.net_bounds.0..=self.net_bounds.1).contains(&action.net_per_pod)
    }

    /// The exact center of every bound pair (integer division, not snapped
    /// onto the step grid). This is the canonical first probe point.
    pub fn midpoint(&self) -> ActionVector {
        let mid_pods = self.max_pods_per_zone.div_ceil(2);
        ActionVector {
            pods_per_zone: [mid_pods; ZONE_COUNT],
            cpu_per_pod: (self.cpu_bounds.0 + self.cpu_bounds.1) / 2,
            ram_per_pod: (self.ram_bounds.0 + self.ram_bounds.1) / 2,
            net_per_pod: (self.net_bounds.0 + self.net_bounds.1) / 2,
        }
    }

    /// Snaps a fractional per-pod value onto the step grid (round-half-up,
    /// clamped into bounds). Used when converting utilization fractions or
    /// midpoints into concrete deployable allocations.
    pub fn snap(&self, dimension: SpaceDim, value: f64) -> u32 {
        let (lower, upper, step) = match dimension {
            SpaceDim::Pods => (0, self.max_pods_per_zone, 1),
            SpaceDim::Cpu => (self.cpu_bounds.0, self.cpu_bounds.1, self.cpu_step),
            SpaceDim::Ram => (self.ram_bounds.0, self.ram_bounds.1, self.ram_step),
            SpaceDim::Net => (self.net_bounds.0, self.net_bounds.1, self.net_step),
        };
        let clamped = value.clamp(lower as f64, upper as f64);
        let steps = ((clamped - lower as f64) / step as f64).round() as u32;
        (lower + steps * step).min(upper)
    }

    /// Number of grid levels along one allocation dimension.
    fn levels(&self, dimension: SpaceDim) -> u32 {
        match dimension {
            SpaceDim::Pods => self.max_pods_per_zone + 1,
            SpaceDim::Cpu => (self.cpu_bounds.1 - self.cpu_bounds.0) / self.cpu_step + 1,
            SpaceDim::Ram => (self.ram_bounds.1 - self.ram_bounds.0) / self.ram_step + 1,
            SpaceDim::Net => (self.net_bounds.1 - self.net_bounds.0) / self.net_step + 1,
        }
    }

    fn level_value(&self, dimension: SpaceDim, level: u32) -> u32 {
        match dimension {
            SpaceDim::Pods => level,
            SpaceDim::Cpu => self.cpu_bounds.0 + level * self.cpu_step,
            SpaceDim::Ram => self.ram_bounds.0 + level * self.ram_step,
            SpaceDim::Net => self.net_bounds.0 + level * self.net_step,
        }
    }
}

/// Names the four kinds of coordinate in an [`ActionSpace`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceDim {
    Pods,
    Cpu,
    Ram,
    Net,
}

// ─── Contention bitmask ─────────────────────────────────────────────────────

/// Encodes a set of contended zone indices into a single bitmask scalar.
///
/// Zone `i` maps to bit `i`, so zones `{0, 2}` of four encode to `0b0101 = 5`.
pub fn encode_contention(zones: &[usize], zone_count: u32) -> Result<u32, EncodingError> {
    if !(1..=16).contains(&zone_count) {
        return Err(EncodingError::InvalidZoneCount { zone_count });
    }
    let mut code = 0u32;
    for &index in zones {
        if index >= zone_count as usize {
            return Err(EncodingError::ZoneIndexOutOfRange { index, zone_count });
        }
        code |= 1 << index;
    }
    Ok(code)
}

/// Decodes a contention bitmask back into ascending zone indices.
pub fn decode_contention(code: u32, zone_count: u32) -> Result<Vec<usize>, EncodingError> {
    if !(1..=16).contains(&zone_count) {
        return Err(EncodingError::InvalidZoneCount { zone_count });
    }
    let max = (1u32 << zone_count) - 1;
    if code > max {
        return Err(EncodingError::ContentionCodeOutOfRange { code, max, zone_count });
    }
    Ok((0..zone_count as usize).filter(|&z| code & (1 << z) != 0).collect())
}

// ─── Normalization ──────────────────────────────────────────────────────────

/// Flattens an action–context pair into a unit-cube [`JointPoint`].
///
/// Action coordinates are min–max scaled by the space bounds; context
/// fractions pass through; the contention code is scaled by its maximum.
/// In [`CloudMode::Private`] the spot dimension is omitted entirely.
pub fn normalize(
    action: &ActionVector,
    context: &ContextVector,
    space: &ActionSpace,
    mode: CloudMode,
) -> Result<JointPoint, EncodingError> {
    context.validate()?;
    let mut coords = Vec::with_capacity(joint_dim(mode));
    push_action_coords(&mut coords, action, space)?;
    coords.push(context.workload_intensity);
    coords.push(context.cpu_util);
    coords.push(context.ram_util);
    coords.push(context.net_util);
    let max_code = ((1u32 << ZONE_COUNT) - 1) as f64;
    coords.push(context.contention_code as f64 / max_code);
    if mode == CloudMode::Public {
        coords.push(context.spot_price_factor);
    }
    Ok(JointPoint::new(coords).expect("validated coordinates are normalized"))
}

/// Flattens an action alone into a 7-dimensional unit-cube point.
///
/// This is the input representation for the context-free baselines, which
/// deliberately ignore the cluster state.
pub fn normalize_action(
    action: &ActionVector,
    space: &ActionSpace,
) -> Result<JointPoint, EncodingError> {
    let mut coords = Vec::with_capacity(ACTION_DIM);
    push_action_coords(&mut coords, action, space)?;
    Ok(JointPoint::new(coords).expect("validated coordinates are normalized"))
}

fn push_action_coords(
    coords: &mut Vec<f64>,
    action: &ActionVector,
    space: &ActionSpace,
) -> Result<(), EncodingError> {
    for &pods in &action.pods_per_zone {
        if pods > space.max_pods_per_zone {
            return Err(EncodingError::ActionOutOfBounds {
                dimension: "pods_per_zone",
                value: pods,
                lower: 0,
                upper: space.max_pods_per_zone,
            });
        }
        coords.push(pods as f64 / space.max_pods_per_zone as f64);
    }
    for (name, value, (lower, upper)) in [
        ("cpu_per_pod", action.cpu_per_pod, space.cpu_bounds),
        ("ram_per_pod", action.ram_per_pod, space.ram_bounds),
        ("net_per_pod", action.net_per_pod, space.net_bounds),
    ] {
        if !(lower..=upper).contains(&value) {
            return Err(EncodingError::ActionOutOfBounds {
                dimension: name,
                value,
                lower,
                upper,
            });
        }
        coords.push((value - lower) as f64 / (upper - lower) as f64);
    }
    Ok(())
}

// ─── Candidate enumeration ──────────────────────────────────────────────────

/// Enumerates a deterministic candidate list for one experiment seed.
///
/// The list starts with the grid midpoint, then every bound corner, then
/// Latin-hypercube-stratified random grid points, deduplicated and truncated
/// to `budget`. Actions with zero total pods deploy nothing and are skipped.
/// The same `(space, budget, seed)` triple always yields the same list, so
/// agents and the regret oracle score an identical grid.
pub fn enumerate_candidates(space: &ActionSpace, budget: usize, seed: u64) -> Vec<ActionVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let mut candidates = Vec::with_capacity(budget);
    let mut admit = |action: ActionVector, out: &mut Vec<ActionVector>| {
        if out.len() < budget && action.total_pods() > 0 && seen.insert(action.clone()) {
            out.push(action);
        }
    };

    admit(space.midpoint(), &mut candidates);

    // All 2^7 bound corners, low end first per dimension.
    for mask in 0u32..(1 << ACTION_DIM) {
        let pick = |bit: u32, low: u32, high: u32| if mask & (1 << bit) == 0 { low } else { high };
        let action = ActionVector {
            pods_per_zone: [
                pick(0, 0, space.max_pods_per_zone),
                pick(1, 0, space.max_pods_per_zone),
                pick(2, 0, space.max_pods_per_zone),
                pick(3, 0, space.max_pods_per_zone),
            ],
            cpu_per_pod: pick(4, space.cpu_bounds.0, space.cpu_bounds.1),
            ram_per_pod: pick(5, space.ram_bounds.0, space.ram_bounds.1),
            net_per_pod: pick(6, space.net_bounds.0, space.net_bounds.1),
        };
        admit(action, &mut candidates);
    }

    // Latin-hypercube stratification over the remaining budget: each
    // dimension sees every stratum exactly once across the batch.
    let remaining = budget.saturating_sub(candidates.len());
    if remaining > 0 {
        let dims = [
            SpaceDim::Pods,
            SpaceDim::Pods,
            SpaceDim::Pods,
            SpaceDim::Pods,
            SpaceDim::Cpu,
            SpaceDim::Ram,
            SpaceDim::Net,
        ];
        let mut strata: Vec<Vec<usize>> = Vec::with_capacity(ACTION_DIM);
        for _ in 0..ACTION_DIM {
            let mut order: Vec<usize> = (0..remaining).collect();
            order.shuffle(&mut rng);
            strata.push(order);
        }
        for i in 0..remaining {
            let mut levels = [0u32; ACTION_DIM];
            for (d, dim) in dims.iter().enumerate() {
                let count = space.levels(*dim);
                let frac = (strata[d][i] as f64 + rng.random_range(0.0..1.0)) / remaining as f64;
                levels[d] = ((frac * count as f64) as u32).min(count - 1);
            }
            let action = ActionVector {
                pods_per_zone: [levels[0], levels[1], levels[2], levels[3]],
                cpu_per_pod: space.level_value(SpaceDim::Cpu, levels[4]),
                ram_per_pod: space.level_value(SpaceDim::Ram, levels[5]),
                net_per_pod: space.level_value(SpaceDim::Net, levels[6]),
            };
            admit(action, &mut candidates);
        }
    }

    // Duplicates or zero-pod draws may have left a shortfall; top off with
    // plain uniform grid draws, bounded so tiny grids cannot loop forever.
    let mut attempts = 0usize;
    while candidates.len() < budget && attempts < budget.saturating_mul(20) {
        attempts += 1;
        let draw = |rng: &mut ChaCha8Rng, dim: SpaceDim, space: &ActionSpace| {
            let level = rng.random_range(0..space.levels(dim));
            space.level_value(dim, level)
        };
        let action = ActionVector {
            pods_per_zone: [
                draw(&mut rng, SpaceDim::Pods, space),
                draw(&mut rng, SpaceDim::Pods, space),
                draw(&mut rng, SpaceDim::Pods, space),
                draw(&mut rng, SpaceDim::Pods, space),
            ],
            cpu_per_pod: draw(&mut rng, SpaceDim::Cpu, space),
            ram_per_pod: draw(&mut rng, SpaceDim::Ram, space),
            net_per_pod: draw(&mut rng, SpaceDim::Net, space),
        };
        admit(action, &mut candidates);
    }

    candidates
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn contention_roundtrip_matches_bitmask_layout() {
        assert_eq!(encode_contention(&[0, 2], 4).unwrap(), 5);
        assert_eq!(decode_contention(5, 4).unwrap(), vec![0, 2]);
        assert_eq!(decode_contention(0, 4).unwrap(), Vec::<usize>::new());
        assert_eq!(encode_contention(&[], 4).unwrap(), 0);
        assert_eq!(encode_contention(&[0, 1, 2, 3], 4).unwrap(), 15);
    }

    #[test]
    fn contention_rejects_out_of_range_inputs() {
        assert!(encode_contention(&[4], 4).is_err());
        assert!(decode_contention(16, 4).is_err());
        assert!(encode_contention(&[0], 0).is_err());
        assert!(decode_contention(1, 17).is_err());
    }

    fn idle_context() -> ContextVector {
        ContextVector {
            workload_intensity: 0.5,
            cpu_util: 0.1,
            ram_util: 0.1,
            net_util: 0.1,
            contention_code: 0,
            spot_price_factor: 0.3,
        }
    }

    #[test]
    fn midpoint_normalizes_to_half_in_every_action_dimension() {
        let space = ActionSpace::default();
        let point = normalize(&space.midpoint(), &idle_context(), &space, CloudMode::Public)
            .unwrap();
        for (i, &coord) in point.coords().iter().take(ACTION_DIM).enumerate() {
            assert_abs_diff_eq!(coord, 0.5, epsilon = 1e-12);
            assert!(i < ACTION_DIM);
        }
    }

    #[test]
    fn bound_corners_normalize_to_zero_and_one() {
        let space = ActionSpace::default();
        let low = ActionVector {
            pods_per_zone: [0; 4],
            cpu_per_pod: 100,
            ram_per_pod: 128,
            net_per_pod: 10,
        };
        let high = ActionVector {
            pods_per_zone: [8; 4],
            cpu_per_pod: 4000,
            ram_per_pod: 8192,
            net_per_pod: 1000,
        };
        let low_point = normalize(&low, &idle_context(), &space, CloudMode::Public).unwrap();
        let high_point = normalize(&high, &idle_context(), &space, CloudMode::Public).unwrap();
        for &c in low_point.coords().iter().take(ACTION_DIM) {
            assert_eq!(c, 0.0);
        }
        for &c in high_point.coords().iter().take(ACTION_DIM) {
            assert_eq!(c, 1.0);
        }
    }

    #[test]
    fn joint_dimension_depends_on_cloud_mode() {
        let space = ActionSpace::default();
        let action = space.midpoint();
        let public = normalize(&action, &idle_context(), &space, CloudMode::Public).unwrap();
        let private = normalize(&action, &idle_context(), &space, CloudMode::Private).unwrap();
        assert_eq!(public.dim(), 13);
        assert_eq!(private.dim(), 12);
        assert_eq!(normalize_action(&action, &space).unwrap().dim(), 7);
    }

    #[test]
    fn normalize_rejects_out_of_bounds_actions() {
        let space = ActionSpace::default();
        let mut action = space.midpoint();
        action.cpu_per_pod = 5000;
        let err = normalize(&action, &idle_context(), &space, CloudMode::Public).unwrap_err();
        assert!(matches!(err, EncodingError::ActionOutOfBounds { .. }));
    }

    #[test]
    fn normalize_rejects_malformed_contexts() {
        let space = ActionSpace::default();
        let mut context = idle_context();
        context.net_util = 1.5;
        assert!(normalize(&space.midpoint(), &context, &space, CloudMode::Public).is_err());
        let mut context = idle_context();
        context.contention_code = 16;
        assert!(normalize(&space.midpoint(), &context, &space, CloudMode::Public).is_err());
    }

    #[test]
    fn budget_of_one_yields_exactly_the_midpoint() {
        let space = ActionSpace::default();
        assert_eq!(enumerate_candidates(&space, 1, 7), vec![space.midpoint()]);
    }

    #[test]
    fn default_midpoint_sits_at_the_bound_centers() {
        let space = ActionSpace::default();
        let mid = space.midpoint();
        assert_eq!(mid.pods_per_zone, [4; 4]);
        assert_eq!(mid.cpu_per_pod, 2050);
        assert_eq!(mid.ram_per_pod, 4160);
        assert_eq!(mid.net_per_pod, 505);
    }

    #[test]
    fn candidates_are_deterministic_distinct_and_in_bounds() {
        let space = ActionSpace::default();
        let a = enumerate_candidates(&space, 500, 42);
        let b = enumerate_candidates(&space, 500, 42);
        assert_eq!(a, b);
        assert_eq!(a.len(), 500);
        let unique: HashSet<_> = a.iter().cloned().collect();
        assert_eq!(unique.len(), a.len());
        for action in &a {
            assert!(space.contains(action));
            assert!(action.total_pods() > 0);
        }
        let other_seed = enumerate_candidates(&space, 500, 43);
        assert_ne!(a, other_seed);
    }

    #[test]
    fn candidates_include_the_deployable_corners() {
        let space = ActionSpace::default();
        let list = enumerate_candidates(&space, 500, 1);
        // 2^7 corners minus the 8 with zero total pods.
        let corner = ActionVector {
            pods_per_zone: [8; 4],
            cpu_per_pod: 4000,
            ram_per_pod: 8192,
            net_per_pod: 1000,
        };
        assert!(list.contains(&corner));
        let cheap_corner = ActionVector {
            pods_per_zone: [8; 4],
            cpu_per_pod: 100,
            ram_per_pod: 128,
            net_per_pod: 10,
        };
        assert!(list.contains(&cheap_corner));
    }

    #[test]
    fn space_validation_catches_malformed_grids() {
        let mut space = ActionSpace::default();
        space.cpu_bounds = (4000, 100);
        assert!(space.validate().is_err());
        let mut space = ActionSpace::default();
        space.ram_step = 0;
        assert!(space.validate().is_err());
        let mut space = ActionSpace::default();
        space.net_bounds = (10, 1005);
        assert!(space.validate().is_err());
        assert!(ActionSpace::default().validate().is_ok());
    }

    #[test]
    fn snap_rounds_half_up_onto_the_grid() {
        let space = ActionSpace::default();
        assert_eq!(space.snap(SpaceDim::Cpu, 2050.0), 2100);
        assert_eq!(space.snap(SpaceDim::Cpu, 2049.0), 2000);
        assert_eq!(space.snap(SpaceDim::Ram, 9999.0), 8192);
        assert_eq!(space.snap(SpaceDim::Net, -5.0), 10);
        assert_eq!(space.snap(SpaceDim::Pods, 3.5), 4);
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn contention_roundtrips_for_any_zone_set(code in 0u32..16) {
            let zones = decode_contention(code, 4).unwrap();
            prop_assert_eq!(encode_contention(&zones, 4).unwrap(), code);
        }

        #[test]
        fn normalized_coordinates_stay_in_the_unit_cube(
            pods in proptest::array::uniform4(0u32..=8),
            cpu in 100u32..=4000,
            ram in 128u32..=8192,
            net in 10u32..=1000,
            workload in 0.0..=1.0f64,
            util in proptest::array::uniform3(0.0..=1.0f64),
            code in 0u32..16,
            spot in 0.0..=1.0f64,
        ) {
            let space = ActionSpace::default();
            let action = ActionVector {
                pods_per_zone: pods,
                cpu_per_pod: cpu,
                ram_per_pod: ram,
                net_per_pod: net,
            };
            let context = ContextVector {
                workload_intensity: workload,
                cpu_util: util[0],
                ram_util: util[1],
                net_util: util[2],
                contention_code: code,
                spot_price_factor: spot,
            };
            let point = normalize(&action, &context, &space, CloudMode::Public).unwrap();
            prop_assert_eq!(point.dim(), 13);
            for &c in point.coords() {
                prop_assert!((0.0..=1.0).contains(&c));
            }
        }

        #[test]
        fn enumerated_candidates_respect_budget_and_bounds(
            budget in 1usize..200,
            seed in 0u64..1000,
        ) {
            let space = ActionSpace::default();
            let list = enumerate_candidates(&space, budget, seed);
            prop_assert!(list.len() <= budget);
            for action in &list {
                prop_assert!(space.contains(action));
                prop_assert!(action.total_pods() > 0);
            }
        }
    }
}
