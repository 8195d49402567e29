//! Gaussian-process regression over normalized joint action–context points.
//!
//! The orchestration agents model reward (and, on capped clusters, resource
//! usage) as a GP over the *joint* space of deployment actions and observed
//! cluster contexts. Everything here operates on points that have already
//! been normalized into the unit cube by the [`crate::encoding`] module:
//!
//! * [`JointPoint`] — a normalized joint vector,
//! * [`KernelParams`] + [`matern32`] — an anisotropic Matérn-3/2 kernel,
//! * [`DataWindow`] — the sliding window of recent observations,
//! * [`GpPosterior`] — an exact posterior fitted by Cholesky factorization,
//!   with upper-confidence-bound and expected-improvement scores on top.
//!
//! The window is deliberately small (30 points by default), so a full refit
//! per decision round is an `O(n^3)` operation on a tiny `n`; no low-rank
//! update machinery is needed or wanted here.

use std::collections::VecDeque;

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};
use statrs::distribution::{Continuous, ContinuousCDF, Normal};
use thiserror::Error;

/// Default sliding-window capacity used by the orchestration agents.
pub const DEFAULT_WINDOW_CAPACITY: usize = 30;

/// Jitter ceiling for the escalating re-factorization attempts in
/// [`GpPosterior::fit`]. A Gram matrix that is not positive definite after
/// this much regularization indicates broken inputs, not bad luck.
pub const MAX_JITTER: f64 = 1e-4;

/// Errors produced by the GP layer.
#[derive(Debug, Error)]
pub enum GpError {
    /// Kernel parameters failed validation (empty or non-positive
    /// lengthscales, non-positive signal variance, and so on).
    #[error("invalid kernel parameters: {reason}")]
    InvalidKernel { reason: String },

    /// A point coordinate fell outside the normalized unit interval.
    #[error("coordinate {index} = {value} lies outside the unit interval")]
    CoordinateOutOfRange { index: usize, value: f64 },

    /// Two objects that must share a dimension do not.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// An observation target was NaN or infinite.
    #[error("non-finite observation value {value}")]
    NonFiniteObservation { value: f64 },

    /// A window was requested with zero capacity.
    #[error("data window capacity must be at least 1")]
    ZeroWindowCapacity,

    /// The regularized Gram matrix stayed non-positive-definite even at the
    /// jitter ceiling.
    #[error("Gram factorization failed for {size} points (jitter ceiling {max_jitter:e})")]
    FactorizationFailed { size: usize, max_jitter: f64 },

    /// An acquisition score was asked for with an invalid parameter.
    #[error("invalid acquisition parameter: {reason}")]
    InvalidAcquisition { reason: String },
}

// ─── Joint points ───────────────────────────────────────────────────────────

/// A joint action–context vector normalized into the unit cube.
///
/// Construction validates that every coordinate is finite and inside
/// `[0, 1]`; downstream kernel code may therefore assume well-scaled inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct JointPoint {
    coords: Vec<f64>,
}

impl JointPoint {
    /// Wraps a normalized coordinate vector, rejecting out-of-range entries.
    pub fn new(coords: Vec<f64>) -> Result<Self, GpError> {
        if coords.is_empty() {
            return Err(GpError::InvalidKernel {
                reason: "joint point must have at least one coordinate".into(),
            });
        }
        for (index, &value) in coords.iter().enumerate() {
            if !value.is_finite() || !(0.0..=1.0).contains(&value) {
                return Err(GpError::CoordinateOutOfRange { index, value });
            }
        }
        Ok(Self { coords })
    }

    /// The normalized coordinates.
    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Number of joint dimensions.
    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

// ─── Kernel ─────────────────────────────────────────────────────────────────

/// Hyperparameters of the anisotropic Matérn-3/2 kernel plus the observation
/// noise and jitter used when fitting.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelParams {
    /// One positive lengthscale per joint dimension.
    pub lengthscales: Vec<f64>,
    /// Prior signal variance `σ_f²`.
    pub signal_variance: f64,
    /// Observation noise variance `σ²` added to the Gram diagonal.
    pub noise_variance: f64,
    /// Initial diagonal jitter; escalated ×10 on factorization failure up to
    /// [`MAX_JITTER`].
    pub jitter: f64,
}

impl KernelParams {
    /// Validated constructor.
    pub fn new(
        lengthscales: Vec<f64>,
        signal_variance: f64,
        noise_variance: f64,
        jitter: f64,
    ) -> Result<Self, GpError> {
        if lengthscales.is_empty() {
            return Err(GpError::InvalidKernel {
                reason: "at least one lengthscale is required".into(),
            });
        }
        if lengthscales.iter().any(|l| !l.is_finite() || *l <= 0.0) {
            return Err(GpError::InvalidKernel {
                reason: "lengthscales must be finite and positive".into(),
            });
        }
        if !signal_variance.is_finite() || signal_variance <= 0.0 {
            return Err(GpError::InvalidKernel {
                reason: format!("signal variance {signal_variance} must be finite and positive"),
            });
        }
        if !noise_variance.is_finite() || noise_variance < 0.0 {
            return Err(GpError::InvalidKernel {
                reason: format!("noise variance {noise_variance} must be finite and non-negative"),
            });
        }
        if !jitter.is_finite() || jitter <= 0.0 || jitter > MAX_JITTER {
            return Err(GpError::InvalidKernel {
                reason: format!("jitter {jitter} must lie in (0, {MAX_JITTER}]"),
            });
        }
        Ok(Self {
            lengthscales,
            signal_variance,
            noise_variance,
            jitter,
        })
    }

    /// A shared lengthscale across `dim` dimensions with the default prior
    /// variance (1.0), observation noise (1e-4) and jitter (1e-8).
    ///
    /// 0.2 is the conventional starting lengthscale for unit-cube inputs.
    pub fn isotropic(dim: usize, lengthscale: f64) -> Result<Self, GpError> {
        Self::new(vec![lengthscale; dim], 1.0, 1e-4, 1e-8)
    }

    /// Returns a copy with a different signal variance.
    pub fn with_signal_variance(mut self, signal_variance: f64) -> Result<Self, GpError> {
        self.signal_variance = signal_variance;
        Self::new(
            self.lengthscales,
            self.signal_variance,
            self.noise_variance,
            self.jitter,
        )
    }

    /// Returns a copy with a different observation noise variance.
    pub fn with_noise_variance(mut self, noise_variance: f64) -> Result<Self, GpError> {
        self.noise_variance = noise_variance;
        Self::new(
            self.lengthscales,
            self.signal_variance,
            self.noise_variance,
            self.jitter,
        )
    }

    /// Number of joint dimensions this kernel expects.
    pub fn dim(&self) -> usize {
        self.lengthscales.len()
    }
}

/// Anisotropic Matérn-3/2 covariance between two normalized points:
/// `k(r) = σ_f² (1 + √3 r) exp(−√3 r)` with `r` the Euclidean distance after
/// per-dimension lengthscale division.
pub fn matern32(a: &JointPoint, b: &JointPoint, params: &KernelParams) -> Result<f64, GpError> {
    if a.dim() != b.dim() {
        return Err(GpError::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    if a.dim() != params.dim() {
        return Err(GpError::DimensionMismatch {
            expected: params.dim(),
            got: a.dim(),
        });
    }
    let mut sq = 0.0;
    for ((&x, &y), &l) in a
        .coords
        .iter()
        .zip(b.coords.iter())
        .zip(params.lengthscales.iter())
    {
        let d = (x - y) / l;
        sq += d * d;
    }
    let r = sq.sqrt();
    let s = 3.0_f64.sqrt() * r;
    Ok(params.signal_variance * (1.0 + s) * (-s).exp())
}

// ─── Sliding window ─────────────────────────────────────────────────────────

/// Fixed-capacity sliding window of `(point, target)` observations.
///
/// Pushing beyond capacity evicts the oldest entry, so the fitted posterior
/// always reflects the most recent `capacity` rounds — stale cluster
/// behaviour ages out instead of polluting the model.
#[derive(Debug, Clone)]
pub struct DataWindow {
    capacity: usize,
    entries: VecDeque<(JointPoint, f64)>,
}

impl DataWindow {
    /// Creates an empty window holding at most `capacity` observations.
    pub fn new(capacity: usize) -> Result<Self, GpError> {
        if capacity == 0 {
            return Err(GpError::ZeroWindowCapacity);
        }
        Ok(Self {
            capacity,
            entries: VecDeque::with_capacity(capacity),
        })
    }

    /// Appends an observation, evicting the oldest entry once full.
    ///
    /// Rejects non-finite targets and points whose dimension disagrees with
    /// the entries already present.
    pub fn push(&mut self, point: JointPoint, target: f64) -> Result<(), GpError> {
        if !target.is_finite() {
            return Err(GpError::NonFiniteObservation { value: target });
        }
        if let Some((first, _)) = self.entries.front() {
            if first.dim() != point.dim() {
                return Err(GpError::DimensionMismatch {
                    expected: first.dim(),
                    got: point.dim(),
                });
            }
        }
        if self.entries.len() == self.capacity {
            self.entries.pop_front();
        }
        self.entries.push_back((point, target));
        Ok(())
    }

    /// Number of stored observations.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// True when no observations are stored.
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The configured capacity.
    pub fn capacity(&self) -> usize {
        self.capacity
    }

    /// Iterates over stored observations, oldest first.
    pub fn iter(&self) -> impl Iterator<Item = &(JointPoint, f64)> {
        self.entries.iter()
    }
}

impl Default for DataWindow {
    fn default() -> Self {
        Self::new(DEFAULT_WINDOW_CAPACITY).expect("default capacity is positive")
    }
}

// ─── Posterior ──────────────────────────────────────────────────────────────

/// An exact GP posterior over the observations of one [`DataWindow`].
///
/// Fitting factorizes `K + (σ² + jitter)·I` once; predictions then cost one
/// triangular solve each. An empty window produces the prior, which predicts
/// mean zero and the full signal variance everywhere.
#[derive(Debug, Clone)]
pub struct GpPosterior {
    params: KernelParams,
    points: Vec<JointPoint>,
    chol: Option<Cholesky<f64, Dyn>>,
    weights: DVector<f64>,
    jitter_used: f64,
}

impl GpPosterior {
    /// The prior: no observations, mean zero, variance `σ_f²` everywhere.
    pub fn prior(params: KernelParams) -> Self {
        let jitter = params.jitter;
        Self {
            params,
            points: Vec::new(),
            chol: None,
            weights: DVector::zeros(0),
            jitter_used: jitter,
        }
    }

    /// Fits the posterior to the window contents.
    ///
    /// If the regularized Gram matrix fails to factorize, the jitter is
    /// escalated by ×10 per attempt up to [`MAX_JITTER`] before giving up.
    pub fn fit(window: &DataWindow, params: &KernelParams) -> Result<Self, GpError> {
        if window.is_empty() {
            return Ok(Self::prior(params.clone()));
        }
        let n = window.len();
        let mut points = Vec::with_capacity(n);
        let mut targets = DVector::zeros(n);
        for (i, (point, target)) in window.iter().enumerate() {
            if !target.is_finite() {
                return Err(GpError::NonFiniteObservation { value: *target });
            }
            if point.dim() != params.dim() {
                return Err(GpError::DimensionMismatch {
                    expected: params.dim(),
                    got: point.dim(),
                });
            }
            points.push(point.clone());
            targets[i] = *target;
        }

        let mut gram = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let k = matern32(&points[i], &points[j], params)?;
                gram[(i, j)] = k;
                gram[(j, i)] = k;
            }
        }

        let mut jitter = params.jitter;
        loop {
            let mut regularized = gram.clone();
            for i in 0..n {
                regularized[(i, i)] += params.noise_variance + jitter;
            }
            if let Some(chol) = Cholesky::new(regularized) {
                let weights = chol.solve(&targets);
                return Ok(Self {
                    params: params.clone(),
                    points,
                    chol: Some(chol),
                    weights,
                    jitter_used: jitter,
                });
            }
            jitter *= 10.0;
            if jitter > MAX_JITTER {
                return Err(GpError::FactorizationFailed {
                    size: n,
                    max_jitter: MAX_JITTER,
                });
            }
        }
    }

    /// Posterior mean and variance at a query point.
    ///
    /// The variance is clamped at zero to absorb rounding in the quadratic
    /// form; it never exceeds the prior signal variance by more than noise.
    pub fn predict(&self, query: &JointPoint) -> Result<(f64, f64), GpError> {
        if query.dim() != self.params.dim() {
            return Err(GpError::DimensionMismatch {
                expected: self.params.dim(),
                got: query.dim(),
            });
        }
        let Some(chol) = &self.chol else {
            return Ok((0.0, self.params.signal_variance));
        };
        let n = self.points.len();
        let mut k_vec = DVector::zeros(n);
        for (i, point) in self.points.iter().enumerate() {
            k_vec[i] = matern32(point, query, &self.params)?;
        }
        let mean = k_vec.dot(&self.weights);
        let solved = chol.solve(&k_vec);
        let variance = (self.params.signal_variance - k_vec.dot(&solved)).max(0.0);
        Ok((mean, variance))
    }

    /// Upper confidence bound `μ(z) + √ζ · σ(z)`.
    pub fn ucb(&self, query: &JointPoint, zeta: f64) -> Result<f64, GpError> {
        if !zeta.is_finite() || zeta < 0.0 {
            return Err(GpError::InvalidAcquisition {
                reason: format!("exploration weight zeta {zeta} must be finite and non-negative"),
            });
        }
        let (mean, variance) = self.predict(query)?;
        Ok(mean + zeta.sqrt() * variance.sqrt())
    }

    /// Expected improvement over `best_so_far`:
    /// `(μ−b)·Φ(u) + σ·φ(u)` with `u = (μ−b)/σ`, and the deterministic limit
    /// `max(μ−b, 0)` when the posterior variance vanishes.
    pub fn ei(&self, query: &JointPoint, best_so_far: f64) -> Result<f64, GpError> {
        if !best_so_far.is_finite() {
            return Err(GpError::InvalidAcquisition {
                reason: format!("incumbent value {best_so_far} must be finite"),
            });
        }
        let (mean, variance) = self.predict(query)?;
        let sigma = variance.sqrt();
        let gap = mean - best_so_far;
        if sigma == 0.0 {
            return Ok(gap.max(0.0));
        }
        let standard = Normal::new(0.0, 1.0).expect("unit normal is valid");
        let u = gap / sigma;
        Ok((gap * standard.cdf(u) + sigma * standard.pdf(u)).max(0.0))
    }

    /// Number of observations behind this posterior (zero for the prior).
    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// True when this is the prior (no observations).
    pub fn is_prior(&self) -> bool {
        self.points.is_empty()
    }

    /// The jitter actually used by the accepted factorization.
    pub fn effective_jitter(&self) -> f64 {
        self.jitter_used
    }

    /// The kernel parameters this posterior was fitted with.
    pub fn params(&self) -> &KernelParams {
        &self.params
    }
}


#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn unit_coords(dim: usize) -> impl Strategy<Value = Vec<f64>> {
        proptest::collection::vec(0.0..=1.0f64, dim)
    }

    proptest! {
        #[test]
        fn kernel_is_symmetric_and_bounded(
            a in unit_coords(5),
            b in unit_coords(5),
            lengthscale in 0.05..2.0f64,
            signal in 0.1..4.0f64,
        ) {
            let params = KernelParams::new(vec![lengthscale; 5], signal, 1e-4, 1e-8).unwrap();
            let pa = JointPoint::new(a).unwrap();
            let pb = JointPoint::new(b).unwrap();
            let kab = matern32(&pa, &pb, &params).unwrap();
            let kba = matern32(&pb, &pa, &params).unwrap();
            prop_assert_eq!(kab.to_bits(), kba.to_bits());
            prop_assert!(kab > 0.0);
            prop_assert!(kab <= signal + 1e-12);
        }

        #[test]
        fn posterior_variance_stays_in_range(
            coords in proptest::collection::vec(unit_coords(3), 1..12),
            query in unit_coords(3),
        ) {
            let params = KernelParams::isotropic(3, 0.3).unwrap();
            let mut window = DataWindow::new(12).unwrap();
            for (i, c) in coords.into_iter().enumerate() {
                window.push(JointPoint::new(c).unwrap(), (i as f64).cos()).unwrap();
            }
            let posterior = GpPosterior::fit(&window, &params).unwrap();
            let (_, variance) = posterior.predict(&JointPoint::new(query).unwrap()).unwrap();
            prop_assert!(variance >= 0.0);
            prop_assert!(variance <= params.signal_variance + 1e-9);
        }

        #[test]
        fn ucb_is_monotone_in_zeta(
            query in unit_coords(2),
            zeta_low in 0.0..5.0f64,
            bump in 0.0..5.0f64,
        ) {
            let params = KernelParams::isotropic(2, 0.25).unwrap();
            let mut window = DataWindow::new(4).unwrap();
            window.push(JointPoint::new(vec![0.2, 0.8]).unwrap(), 0.4).unwrap();
            window.push(JointPoint::new(vec![0.7, 0.1]).unwrap(), -0.2).unwrap();
            let posterior = GpPosterior::fit(&window, &params).unwrap();
            let q = JointPoint::new(query).unwrap();
            let low = posterior.ucb(&q, zeta_low).unwrap();
            let high = posterior.ucb(&q, zeta_low + bump).unwrap();
            prop_assert!(high >= low - 1e-12);
        }

        #[test]
        fn ei_is_non_negative(query in unit_coords(2), best in -2.0..2.0f64) {
            let params = KernelParams::isotropic(2, 0.25).unwrap();
            let mut window = DataWindow::new(4).unwrap();
            window.push(JointPoint::new(vec![0.3, 0.3]).unwrap(), 0.6).unwrap();
            let posterior = GpPosterior::fit(&window, &params).unwrap();
            let ei = posterior.ei(&JointPoint::new(query).unwrap(), best).unwrap();
            prop_assert!(ei >= 0.0);
        }
    }
}
