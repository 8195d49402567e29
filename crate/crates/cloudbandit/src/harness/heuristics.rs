//! The practical deployment heuristics: the half-of-headroom warm start, the
//! midpoint-toward-maximum failure recovery, and the threshold autoscaler
//! used as the rule-based baseline.

use crate::encoding::{ActionSpace, ActionVector, SpaceDim, ZONE_COUNT};
use crate::sim::SimEnv;

/// Per-zone utilization above which the autoscaler adds a pod.
pub const SCALE_UP_UTIL: f64 = 0.7;
/// Per-zone utilization below which the autoscaler removes a pod.
pub const SCALE_DOWN_UTIL: f64 = 0.3;

/// The warm-start action: allocate half of the currently unused capacity in
/// every resource dimension. Per-pod allocations take half the headroom of
/// their own resource; the pod count takes half the headroom of the mean
/// utilization, split evenly across zones. Everything is snapped to the grid,
/// and at least one pod always deploys.
pub fn initial_action(env: &SimEnv) -> ActionVector {
    let space = &env.scenario().space;
    let util = env.utilization();
    let headroom = |u: f64| 0.5 * (1.0 - u.clamp(0.0, 1.0));
    let cpu = space.snap(
        SpaceDim::Cpu,
        headroom(util[0]) * f64::from(space.cpu_bounds.1),
    );
    let ram = space.snap(
        SpaceDim::Ram,
        headroom(util[1]) * f64::from(space.ram_bounds.1),
    );
    let net = space.snap(
        SpaceDim::Net,
        headroom(util[2]) * f64::from(space.net_bounds.1),
    );
    let mean_util = util.iter().sum::<f64>() / util.len() as f64;
    let per_zone = space.snap(
        SpaceDim::Pods,
        headroom(mean_util) * f64::from(space.max_pods_per_zone),
    );
    let mut pods = [per_zone; ZONE_COUNT];
    if pods.iter().sum::<u32>() == 0 {
        pods[0] = 1;
    }
    ActionVector {
        pods_per_zone: pods,
        cpu_per_pod: cpu,
        ram_per_pod: ram,
        net_per_pod: net,
    }
}

/// The failure-recovery action: per-pod allocations move to the midpoint
/// between the failed deployment and the upper bound (snapped); the pod
/// layout is kept, except that an empty deployment gets one pod.
pub fn recover(failed: &ActionVector, space: &ActionSpace) -> ActionVector {
    let toward_max = |dim: SpaceDim, value: u32, upper: u32| {
        space.snap(dim, 0.5 * (f64::from(value) + f64::from(upper)))
    };
    let mut pods = failed.pods_per_zone;
    if pods.iter().sum::<u32>() == 0 {
        pods[0] = 1;
    }
    ActionVector {
        pods_per_zone: pods,
        cpu_per_pod: toward_max(SpaceDim::Cpu, failed.cpu_per_pod, space.cpu_bounds.1),
        ram_per_pod: toward_max(SpaceDim::Ram, failed.ram_per_pod, space.ram_bounds.1),
        net_per_pod: toward_max(SpaceDim::Net, failed.net_per_pod, space.net_bounds.1),
    }
}

/// One horizontal-autoscaler tick: zones above [`SCALE_UP_UTIL`] gain a pod,
/// zones below [`SCALE_DOWN_UTIL`] lose one, allocations never change, and
/// the deployment keeps at least one pod in total.
pub fn rule_based_step(
    current: &ActionVector,
    zone_utilization: [f64; ZONE_COUNT],
    space: &ActionSpace,
) -> ActionVector {
    let mut next = current.clone();
    for (pods, util) in next.pods_per_zone.iter_mut().zip(zone_utilization.iter()) {
        if *util > SCALE_UP_UTIL {
            *pods = (*pods + 1).min(space.max_pods_per_zone);
        } else if *util < SCALE_DOWN_UTIL && *pods > 0 {
            *pods -= 1;
        }
    }
    if next.total_pods() == 0 {
        next.pods_per_zone[0] = 1;
    }
    next
}
