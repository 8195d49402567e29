//! The capped-cluster agent: a two-phase safe bandit that maximizes
//! performance while keeping modeled resource usage under hard caps.
//!
//! Phase one spends a fixed budget of rounds sampling uniformly inside a
//! known-safe action set, seeding one performance GP and one usage GP per
//! resource dimension. Phase two expands the safe set optimistically — any
//! candidate whose usage *lower* confidence bound clears every cap is
//! admitted — and picks the performance *upper* confidence bound argmax
//! inside it. The initial safe set is always re-admitted, so the safe set
//! can never be empty.
//!
//! Usage observations are normalized by their caps before entering the GPs,
//! which puts all three constraint dimensions on the same scale and turns
//! every cap into the constant threshold 1.0.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::encoding::{
    joint_dim, normalize, ActionSpace, ActionVector, CloudMode, ContextVector,
};
use crate::gp::{DataWindow, GpPosterior, JointPoint, KernelParams};
use crate::metrics::{self, build_record, Phase, RegretRecord};
use crate::sim::scenario::PriceSpec;
use crate::sim::SimEnv;

use super::{argmax_candidates, BanditError, ZetaSchedule};

/// Construction parameters for [`SafeBandit`].
#[derive(Debug, Clone)]
pub struct SafeBanditConfig {
    /// The action grid geometry (for normalization).
    pub space: ActionSpace,
    /// The shared candidate grid the safe set is carved from.
    pub candidates: Vec<ActionVector>,
    /// Actions known safe a priori; sampled during exploration and always
    /// kept in the safe set as the anchor.
    pub initial_safe: Vec<ActionVector>,
    /// Length of the pure-exploration phase, in rounds.
    pub exploration_steps: u64,
    /// Kernel of the performance GP.
    pub perf_kernel: KernelParams,
    /// Kernel shared by the three usage GPs.
    pub usage_kernel: KernelParams,
    /// Confidence-width schedule β_t, shared by the performance upper bound
    /// and the usage lower bounds.
    pub beta: ZetaSchedule,
    /// Sliding-window capacity of every GP.
    pub window_capacity: usize,
    /// Added to performance observations before they enter the GP. The raw
    /// objective lives in `[−1, 0]`, so a zero-mean prior would rate every
    /// unexplored action above the best reachable one and the agent would
    /// wander forever; shifting by `0.5` centers the data on the prior.
    pub perf_shift: f64,
    /// Absolute resource caps `[cpu millicores, ram MiB, net Mbps]`.
    pub limits: [f64; 3],
    /// List prices, used only for deterministic tie-breaking.
    pub prices: PriceSpec,
    /// Seed of the exploration-phase draws.
    pub seed: u64,
}

/// GP-driven safe agent for resource-capped clusters.
#[derive(Debug, Clone)]
pub struct SafeBandit {
    space: ActionSpace,
    candidates: Vec<ActionVector>,
    initial_safe: Vec<ActionVector>,
    exploration_steps: u64,
    perf_kernel: KernelParams,
    usage_kernel: KernelParams,
    beta: ZetaSchedule,
    perf_shift: f64,
    limits: [f64; 3],
    prices: PriceSpec,
    perf_window: DataWindow,
    perf_posterior: GpPosterior,
    usage_windows: [DataWindow; 3],
    usage_posteriors: [GpPosterior; 3],
    rng: ChaCha8Rng,
    t: u64,
}

impl SafeBandit {
    pub fn new(config: SafeBanditConfig) -> Result<Self, BanditError> {
        if config.candidates.is_empty() {
            return Err(BanditError::InvalidConfig {
                reason: "candidate grid is empty".into(),
            });
        }
        if config.initial_safe.is_empty() {
            return Err(BanditError::InvalidConfig {
                reason: "initial safe set is empty".into(),
            });
        }
        let expected_dim = joint_dim(CloudMode::Private);
        for (label, kernel) in [
            ("performance", &config.perf_kernel),
            ("usage", &config.usage_kernel),
        ] {
            if kernel.dim() != expected_dim {
                return Err(BanditError::InvalidConfig {
                    reason: format!(
                        "{label} kernel dimension {} does not match encoding dimension {expected_dim}",
                        kernel.dim()
                    ),
                });
            }
        }
        if config.limits.iter().any(|l| !l.is_finite() || *l <= 0.0) {
            return Err(BanditError::InvalidConfig {
                reason: format!("resource caps must be positive, got {:?}", config.limits),
            });
        }
        if !config.perf_shift.is_finite() {
            return Err(BanditError::InvalidConfig {
                reason: format!("performance shift must be finite, got {}", config.perf_shift),
            });
        }
        let perf_window = DataWindow::new(config.window_capacity)?;
        let usage_windows = [
            DataWindow::new(config.window_capacity)?,
            DataWindow::new(config.window_capacity)?,
            DataWindow::new(config.window_capacity)?,
        ];
        let perf_posterior = GpPosterior::prior(config.perf_kernel.clone());
        let usage_posteriors = [
            GpPosterior::prior(config.usage_kernel.clone()),
            GpPosterior::prior(config.usage_kernel.clone()),
            GpPosterior::prior(config.usage_kernel.clone()),
        ];
        Ok(Self {
            space: config.space,
            candidates: config.candidates,
            initial_safe: config.initial_safe,
            exploration_steps: config.exploration_steps,
            perf_kernel: config.perf_kernel,
            usage_kernel: config.usage_kernel,
            beta: config.beta,
            perf_shift: config.perf_shift,
            limits: config.limits,
            prices: config.prices,
            perf_window,
            perf_posterior,
            usage_windows,
            usage_posteriors,
            rng: ChaCha8Rng::seed_from_u64(config.seed),
            t: 0,
        })
    }

    /// Number of observations absorbed so far.
    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn candidates(&self) -> &[ActionVector] {
        &self.candidates
    }

    pub fn initial_safe(&self) -> &[ActionVector] {
        &self.initial_safe
    }

    /// The phase the *next* round will run in.
    pub fn phase(&self) -> Phase {
        if self.t < self.exploration_steps {
            Phase::Exploration
        } else {
            Phase::Exploitation
        }
    }

    fn encode(&self, action: &ActionVector, context: &ContextVector) -> Result<JointPoint, BanditError> {
        Ok(normalize(action, context, &self.space, CloudMode::Private)?)
    }

    /// The performance posterior, for inspection and plotting. Observations
    /// enter it shifted by the configured offset, so predictions live on the
    /// shifted scale.
    pub fn perf_posterior(&self) -> &GpPosterior {
        &self.perf_posterior
    }

    /// The three per-resource usage posteriors (cap-normalized scale).
    pub fn usage_posteriors(&self) -> &[GpPosterior; 3] {
        &self.usage_posteriors
    }

    /// Performance UCB of one action under a context: `μ + √β_t·σ` on the
    /// shifted observation scale, with β_t evaluated for the upcoming round.
    pub fn perf_ucb(
        &self,
        action: &ActionVector,
        context: &ContextVector,
    ) -> Result<f64, BanditError> {
        let beta = self.beta.zeta(self.t + 1)?;
        let joint = self.encode(action, context)?;
        Ok(self.perf_posterior.ucb(&joint, beta)?)
    }

    /// Per-resource lower confidence bound on normalized usage:
    /// `μ_P − √β_t·σ_P`, with β_t evaluated for the upcoming round.
    pub fn usage_lcb(
        &self,
        action: &ActionVector,
        context: &ContextVector,
    ) -> Result<[f64; 3], BanditError> {
        let beta = self.beta.zeta(self.t + 1)?;
        let joint = self.encode(action, context)?;
        let mut lcb = [0.0; 3];
        for (slot, posterior) in lcb.iter_mut().zip(self.usage_posteriors.iter()) {
            let (mean, variance) = posterior.predict(&joint)?;
            *slot = mean - beta.sqrt() * variance.sqrt();
        }
        Ok(lcb)
    }

    /// The candidates whose usage lower bound clears every (normalized) cap,
    /// plus the initial safe set as an always-admitted anchor. Order follows
    /// the candidate grid, with missing anchors appended.
    pub fn compute_safe_set(
        &self,
        context: &ContextVector,
        candidates: &[ActionVector],
    ) -> Result<Vec<ActionVector>, BanditError> {
        let mut safe = Vec::new();
        for candidate in candidates {
            let lcb = self.usage_lcb(candidate, context)?;
            if lcb.iter().all(|bound| *bound <= 1.0) {
                safe.push(candidate.clone());
            }
        }
        for anchor in &self.initial_safe {
            if !safe.contains(anchor) {
                safe.push(anchor.clone());
            }
        }
        Ok(safe)
    }

    /// Exploitation-phase selection: performance-UCB argmax over the safe
    /// set, with the usual tie chain.
    pub fn select_safe_action(&self, context: &ContextVector) -> Result<ActionVector, BanditError> {
        if self.phase() != Phase::Exploitation {
            return Err(BanditError::WrongPhase {
                expected: "exploitation",
            });
        }
        let safe = self.compute_safe_set(context, &self.candidates)?;
        let beta = self.beta.zeta(self.t + 1)?;
        let choice = argmax_candidates(&safe, &self.prices, |candidate| {
            let joint = self.encode(candidate, context)?;
            Ok(self.perf_posterior.ucb(&joint, beta)?)
        })?;
        Ok(choice.clone())
    }

    fn draw_exploration(&mut self) -> ActionVector {
        let index = self.rng.random_range(0..self.initial_safe.len());
        self.initial_safe[index].clone()
    }

    /// Absorbs one paired observation: raw performance plus raw usage, the
    /// latter normalized by the caps before entering the usage GPs. All four
    /// windows stay in lockstep — invalid input rejects the whole update.
    pub fn observe(
        &mut self,
        action: &ActionVector,
        context: &ContextVector,
        perf: f64,
        usage: [f64; 3],
    ) -> Result<(), BanditError> {
        if !perf.is_finite() || usage.iter().any(|u| !u.is_finite()) {
            return Err(BanditError::NonFiniteReward {
                perf,
                cost: usage.iter().copied().find(|u| !u.is_finite()).unwrap_or(0.0),
            });
        }
        let joint = self.encode(action, context)?;
        self.perf_window.push(joint.clone(), perf + self.perf_shift)?;
        self.perf_posterior = GpPosterior::fit(&self.perf_window, &self.perf_kernel)?;
        for ((window, posterior), (raw, limit)) in self
            .usage_windows
            .iter_mut()
            .zip(self.usage_posteriors.iter_mut())
            .zip(usage.iter().zip(self.limits.iter()))
        {
            window.push(joint.clone(), raw / limit)?;
            *posterior = GpPosterior::fit(window, &self.usage_kernel)?;
        }
        self.t += 1;
        Ok(())
    }

    /// One pure-exploration round: a uniform draw from the initial safe set,
    /// deployed and fed back to all GPs.
    pub fn explore_step(&mut self, env: &mut SimEnv) -> Result<RegretRecord, BanditError> {
        if self.phase() != Phase::Exploration {
            return Err(BanditError::WrongPhase {
                expected: "exploration",
            });
        }
        let action = self.draw_exploration();
        self.run_round(env, action, Phase::Exploration)
    }

    /// Runs one full decision round, dispatching on phase. `forced` overrides
    /// the agent's own choice (harness failure recovery); the observation is
    /// fed back either way.
    pub fn step(
        &mut self,
        env: &mut SimEnv,
        forced: Option<(ActionVector, Phase)>,
    ) -> Result<RegretRecord, BanditError> {
        match forced {
            Some((action, phase)) => self.run_round(env, action, phase),
            None => match self.phase() {
                Phase::Exploration => self.explore_step(env),
                _ => {
                    let context = env.sample_context();
                    let action = self.select_safe_action(&context)?;
                    self.run_round(env, action, Phase::Exploitation)
                }
            },
        }
    }

    fn run_round(
        &mut self,
        env: &mut SimEnv,
        action: ActionVector,
        phase: Phase,
    ) -> Result<RegretRecord, BanditError> {
        let context = env.sample_context();
        let limit = env.resource_limit().ok_or(BanditError::MissingLimit)?;
        let (_, oracle) =
            metrics::oracle_best(env, &context, &self.candidates, Some(&limit))?;
        let true_usage = env.true_usage(&action, &context);
        let t = env.step_index() + 1;
        let evaluation = env.evaluate(&action);
        // On capped clusters the objective is performance itself.
        let achieved = evaluation.perf;
        self.observe(&action, &context, evaluation.perf, evaluation.usage)?;
        Ok(build_record(
            t,
            context,
            action,
            achieved,
            oracle,
            true_usage,
            evaluation.cost,
            evaluation.oom,
            phase,
            Some(&limit),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bandit::ZetaSchedule;
    use crate::encoding::enumerate_candidates;
    use crate::sim::scenario::ScenarioConfig;
    use approx::assert_abs_diff_eq;

    fn anchor() -> ActionVector {
        ActionVector {
            pods_per_zone: [1, 1, 1, 1],
            cpu_per_pod: 1000,
            ram_per_pod: 2048,
            net_per_pod: 200,
        }
    }

    fn second_anchor() -> ActionVector {
        ActionVector {
            pods_per_zone: [2, 1, 1, 1],
            cpu_per_pod: 1200,
            ram_per_pod: 2048,
            net_per_pod: 250,
        }
    }

    fn config() -> SafeBanditConfig {
        SafeBanditConfig {
            space: ActionSpace::default(),
            candidates: enumerate_candidates(&ActionSpace::default(), 40, 5),
            initial_safe: vec![anchor(), second_anchor()],
            exploration_steps: 10,
            perf_kernel: KernelParams::isotropic(12, 1.0).unwrap(),
            usage_kernel: KernelParams::isotropic(12, 1.0).unwrap(),
            beta: ZetaSchedule::practical(2.0),
            window_capacity: 30,
            perf_shift: 0.5,
            limits: [102000.0, 299520.0, 15000.0],
            prices: PriceSpec::default(),
            seed: 11,
        }
    }

    fn context() -> ContextVector {
        ContextVector {
            workload_intensity: 0.5,
            cpu_util: 0.2,
            ram_util: 0.2,
            net_util: 0.2,
            contention_code: 0,
            spot_price_factor: 0.0,
        }
    }

    #[test]
    fn exploration_draws_stay_in_the_initial_safe_set() {
        let scenario = ScenarioConfig::builtin("private-batch").unwrap();
        let mut env = SimEnv::new(&scenario, 7).unwrap();
        let mut bandit = SafeBandit::new(config()).unwrap();
        let initial = bandit.initial_safe().to_vec();
        for round in 0..10 {
            assert_eq!(bandit.phase(), Phase::Exploration, "round {round}");
            let record = bandit.step(&mut env, None).unwrap();
            assert_eq!(record.phase, Phase::Exploration);
            assert!(initial.contains(&record.action));
            assert_eq!(bandit.perf_window.len(), bandit.usage_windows[0].len());
            assert_eq!(bandit.perf_window.len(), bandit.usage_windows[2].len());
        }
        assert_eq!(bandit.phase(), Phase::Exploitation);
        let record = bandit.step(&mut env, None).unwrap();
        assert_eq!(record.phase, Phase::Exploitation);
        assert!(bandit.explore_step(&mut env).is_err());
    }

    #[test]
    fn exploration_draw_sequence_is_seed_deterministic() {
        let run = |seed: u64| {
            let scenario = ScenarioConfig::builtin("private-batch").unwrap();
            let mut env = SimEnv::new(&scenario, 7).unwrap();
            let mut cfg = config();
            cfg.seed = seed;
            let mut bandit = SafeBandit::new(cfg).unwrap();
            (0..10)
                .map(|_| bandit.step(&mut env, None).unwrap().action)
                .collect::<Vec<_>>()
        };
        assert_eq!(run(3), run(3));
        assert_ne!(run(3), run(4));
    }

    #[test]
    fn select_safe_action_rejects_the_exploration_phase() {
        let bandit = SafeBandit::new(config()).unwrap();
        assert!(matches!(
            bandit.select_safe_action(&context()),
            Err(BanditError::WrongPhase { expected: "exploitation" })
        ));
    }

    #[test]
    fn prior_usage_lcb_is_minus_root_beta() {
        // β engineered to be 4 at the first round: practical mode gives
        // c·ln(2), so c = 4/ln(2) ⇒ lcb = 0 − √4·√(σ_f² = 1) = −2.
        let mut cfg = config();
        cfg.beta = ZetaSchedule::practical(4.0 / std::f64::consts::LN_2);
        let bandit = SafeBandit::new(cfg).unwrap();
        let lcb = bandit.usage_lcb(&anchor(), &context()).unwrap();
        for bound in lcb {
            assert_abs_diff_eq!(bound, -2.0, epsilon = 1e-9);
        }
        // β = 0 degenerates to the posterior mean (zero at the prior).
        let mut cfg = config();
        cfg.beta = ZetaSchedule::practical(0.0);
        let bandit = SafeBandit::new(cfg).unwrap();
        let lcb = bandit.usage_lcb(&anchor(), &context()).unwrap();
        for bound in lcb {
            assert_abs_diff_eq!(bound, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn prior_safe_set_admits_everything_plus_anchors() {
        let bandit = SafeBandit::new(config()).unwrap();
        let safe = bandit
            .compute_safe_set(&context(), bandit.candidates())
            .unwrap();
        assert!(safe.len() >= bandit.candidates().len());
        for anchor in bandit.initial_safe() {
            assert!(safe.contains(anchor));
        }
    }

    #[test]
    fn overloaded_candidate_is_excluded_and_stays_excluded() {
        let mut cfg = config();
        cfg.usage_kernel = KernelParams::isotropic(12, 1.0)
            .unwrap()
            .with_noise_variance(1e-8)
            .unwrap();
        cfg.beta = ZetaSchedule::practical(0.5);
        let mut bandit = SafeBandit::new(cfg).unwrap();
        let omega = context();
        let hot = bandit.candidates()[3].clone();
        let caps = bandit.limits;
        // Three tight observations pinning the hot candidate far above cap.
        for _ in 0..3 {
            bandit
                .observe(&hot, &omega, -0.5, [caps[0] * 5.0, caps[1] * 5.0, caps[2] * 5.0])
                .unwrap();
        }
        let safe = bandit
            .compute_safe_set(&omega, bandit.candidates())
            .unwrap();
        assert!(!safe.contains(&hot), "pinned overload must be excluded");
        for anchor in bandit.initial_safe() {
            assert!(safe.contains(anchor), "anchors are always admitted");
        }
        // Growing knowledge elsewhere must not re-admit it.
        let calm = bandit.initial_safe()[0].clone();
        for _ in 0..10 {
            bandit
                .observe(&calm, &omega, -0.3, [caps[0] * 0.2, caps[1] * 0.2, caps[2] * 0.2])
                .unwrap();
        }
        let safe = bandit
            .compute_safe_set(&omega, bandit.candidates())
            .unwrap();
        assert!(!safe.contains(&hot), "exclusion must persist as data grows");
    }

    #[test]
    fn exploitation_matches_exhaustive_constrained_argmax() {
        let mut cfg = config();
        cfg.exploration_steps = 3;
        let mut bandit = SafeBandit::new(cfg).unwrap();
        let scenario = ScenarioConfig::builtin("private-batch").unwrap();
        let mut env = SimEnv::new(&scenario, 9).unwrap();
        for _ in 0..3 {
            bandit.step(&mut env, None).unwrap();
        }
        let omega = env.sample_context();
        let safe = bandit.compute_safe_set(&omega, bandit.candidates()).unwrap();
        let beta = bandit.beta.zeta(bandit.t() + 1).unwrap();
        let mut best = f64::NEG_INFINITY;
        for candidate in &safe {
            let joint = bandit.encode(candidate, &omega).unwrap();
            best = best.max(bandit.perf_posterior.ucb(&joint, beta).unwrap());
        }
        let chosen = bandit.select_safe_action(&omega).unwrap();
        let joint = bandit.encode(&chosen, &omega).unwrap();
        assert_abs_diff_eq!(
            bandit.perf_posterior.ucb(&joint, beta).unwrap(),
            best,
            epsilon = 1e-12
        );
        assert!(safe.contains(&chosen));
    }

    #[test]
    fn singleton_safe_set_forces_the_anchor() {
        let mut cfg = config();
        cfg.candidates = vec![ActionVector {
            pods_per_zone: [8; 4],
            cpu_per_pod: 4000,
            ram_per_pod: 8192,
            net_per_pod: 1000,
        }];
        cfg.initial_safe = vec![anchor()];
        cfg.exploration_steps = 0;
        cfg.usage_kernel = KernelParams::isotropic(12, 1.0)
            .unwrap()
            .with_noise_variance(1e-8)
            .unwrap();
        cfg.beta = ZetaSchedule::practical(0.5);
        let mut bandit = SafeBandit::new(cfg).unwrap();
        let omega = context();
        let caps = bandit.limits;
        let only = bandit.candidates()[0].clone();
        for _ in 0..3 {
            bandit
                .observe(&only, &omega, 0.0, [caps[0] * 4.0, caps[1] * 4.0, caps[2] * 4.0])
                .unwrap();
        }
        let chosen = bandit.select_safe_action(&omega).unwrap();
        assert_eq!(chosen, anchor());
    }

    #[test]
    fn records_use_the_constrained_oracle() {
        let scenario = ScenarioConfig::builtin("private-batch").unwrap();
        let mut env = SimEnv::new(&scenario, 5).unwrap();
        let mut bandit = SafeBandit::new(config()).unwrap();
        let record = bandit.step(&mut env, None).unwrap();
        // Recompute the constrained optimum on a fresh env at the same step.
        let mut check = SimEnv::new(&scenario, 5).unwrap();
        let omega = check.sample_context();
        let limit = check.resource_limit().unwrap();
        let (_, oracle) =
            metrics::oracle_best(&check, &omega, bandit.candidates(), Some(&limit)).unwrap();
        assert_abs_diff_eq!(record.oracle, oracle, epsilon = 1e-12);
        let _ = &mut check;
    }
}
