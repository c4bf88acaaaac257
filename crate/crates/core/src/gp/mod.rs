//! Single-output Gaussian process regression with a squared-exponential
//! kernel and a constant prior mean.
//!
//! A fitted [`GaussianProcess`] caches the Cholesky factor `L` of the
//! regularized kernel matrix `K + λ²I + jitter·I` and `α = K⁻¹(f − μ₀)`, so a
//! posterior query costs one kernel vector plus one triangular solve:
//!
//! ```text
//! mean(x)     = μ₀ + kᵀα
//! variance(x) = k(x, x) − ‖L⁻¹k‖²
//! ```
//!
//! Inputs may be rescaled onto the unit box before the kernel sees them
//! (see [`InputScaling`]); the hyperparameters then live in unit coordinates.

mod fit;
mod kernel;
pub mod linalg;

use serde::{Deserialize, Serialize};

pub use fit::{start_candidates, FitConfig, DEFAULT_NUM_STARTS};
pub use kernel::{build_kernel_matrix, kernel_eval, KernelHyperparams, KernelMatrix, JITTER_INITIAL, JITTER_MAX};

use crate::domain::Domain;
use crate::error::{Error, Result};
use kernel::{pairwise_sq_dist, regularized_from_sq_dist};
use linalg::Cholesky;

/// Latent-function posterior moments at one query point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PosteriorSummary {
    pub mean: f64,
    pub variance: f64,
}

impl PosteriorSummary {
    pub fn new(mean: f64, variance: f64) -> Self {
        Self { mean, variance }
    }

    #[inline]
    pub fn stddev(&self) -> f64 {
        self.variance.max(0.0).sqrt()
    }
}

/// Affine map `x ↦ (x − offset) / scale` applied to inputs before the kernel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputScaling {
    offset: Vec<f64>,
    scale: Vec<f64>,
}

impl InputScaling {
    pub fn identity(dim: usize) -> Self {
        Self {
            offset: vec![0.0; dim],
            scale: vec![1.0; dim],
        }
    }

    /// Maps the domain box onto `[0, 1]^d`.
    pub fn unit_box(domain: &Domain) -> Self {
        Self {
            offset: domain.lower().to_vec(),
            scale: (0..domain.dim()).map(|j| domain.width(j)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.offset.len()
    }

    #[inline]
    pub fn apply_into(&self, x: &[f64], out: &mut Vec<f64>) {
        out.clear();
        out.extend(
            x.iter()
                .zip(self.offset.iter().zip(&self.scale))
                .map(|(v, (o, s))| (v - o) / s),
        );
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut out = Vec::with_capacity(x.len());
        self.apply_into(x, &mut out);
        out
    }
}

#[derive(Debug, Clone)]
pub struct GaussianProcess {
    hyperparams: KernelHyperparams,
    prior_mean: f64,
    train_inputs: Vec<Vec<f64>>,
    train_targets: Vec<f64>,
    scaling: InputScaling,
    scaled_inputs: Vec<Vec<f64>>,
    kernel: KernelMatrix,
    alpha: Vec<f64>,
}

fn check_training_data(points: &[Vec<f64>], targets: &[f64]) -> Result<usize> {
    if points.len() != targets.len() {
        return Err(Error::DimensionMismatch {
            expected: points.len(),
            actual: targets.len(),
        });
    }
    let Some(first) = points.first() else {
        return Err(Error::invalid("no training points"));
    };
    let d = first.len();
    for p in points {
        if p.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                actual: p.len(),
            });
        }
        if p.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("training inputs must be finite"));
        }
    }
    if let Some(t) = targets.iter().find(|t| !t.is_finite()) {
        return Err(Error::invalid(format!("training targets must be finite, got {t}")));
    }
    Ok(d)
}

impl GaussianProcess {
    /// Conditions a GP with fixed hyperparameters on the data.
    pub fn with_hyperparams(
        points: &[Vec<f64>],
        targets: &[f64],
        hyperparams: KernelHyperparams,
        prior_mean: f64,
        scaling: InputScaling,
    ) -> Result<Self> {
        hyperparams.validate()?;
        let d = check_training_data(points, targets)?;
        if scaling.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                actual: scaling.dim(),
            });
        }
        let scaled: Vec<Vec<f64>> = points.iter().map(|p| scaling.apply(p)).collect();
        let sq = pairwise_sq_dist(&scaled);
        Self::assemble(points, targets, hyperparams, prior_mean, scaling, scaled, &sq)
    }

    fn assemble(
        points: &[Vec<f64>],
        targets: &[f64],
        hyperparams: KernelHyperparams,
        prior_mean: f64,
        scaling: InputScaling,
        scaled_inputs: Vec<Vec<f64>>,
        sq: &linalg::SquareMatrix,
    ) -> Result<Self> {
        let kernel = regularized_from_sq_dist(sq, &hyperparams)?;
        let residual: Vec<f64> = targets.iter().map(|t| t - prior_mean).collect();
        let alpha = kernel.factor.solve(&residual);
        Ok(Self {
            hyperparams,
            prior_mean,
            train_inputs: points.to_vec(),
            train_targets: targets.to_vec(),
            scaling,
            scaled_inputs,
            kernel,
            alpha,
        })
    }

    /// Fits hyperparameters by maximizing the log marginal likelihood and
    /// conditions on the data. Needs at least two observations.
    pub fn fit(points: &[Vec<f64>], targets: &[f64], config: &FitConfig) -> Result<Self> {
        fit::fit(points, targets, config)
    }

    pub fn hyperparams(&self) -> &KernelHyperparams {
        &self.hyperparams
    }

    pub fn prior_mean(&self) -> f64 {
        self.prior_mean
    }

    pub fn train_inputs(&self) -> &[Vec<f64>] {
        &self.train_inputs
    }

    pub fn train_targets(&self) -> &[f64] {
        &self.train_targets
    }

    pub fn scaling(&self) -> &InputScaling {
        &self.scaling
    }

    pub fn len(&self) -> usize {
        self.train_targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.train_targets.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.scaling.dim()
    }

    pub fn chol_factor(&self) -> &Cholesky {
        &self.kernel.factor
    }

    /// The regularized matrix `K + λ²I + jitter·I` that was factored.
    pub fn kernel_matrix(&self) -> &linalg::SquareMatrix {
        &self.kernel.matrix
    }

    pub fn jitter(&self) -> f64 {
        self.kernel.jitter
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    /// `−½ rᵀK⁻¹r − Σ log L_ii − (n/2) log 2π` with `r = f − μ₀`.
    pub fn log_marginal_likelihood(&self) -> f64 {
        let n = self.len() as f64;
        let quad: f64 = self
            .train_targets
            .iter()
            .zip(&self.alpha)
            .map(|(t, a)| (t - self.prior_mean) * a)
            .sum();
        -0.5 * quad - self.kernel.factor.sum_log_diag() - 0.5 * n * (2.0 * std::f64::consts::PI).ln()
    }

    /// Posterior mean and latent variance at `x` (input coordinates).
    pub fn posterior(&self, x: &[f64]) -> Result<PosteriorSummary> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: x.len(),
            });
        }
        let mut scaled = Vec::with_capacity(x.len());
        self.scaling.apply_into(x, &mut scaled);
        let mut k: Vec<f64> = self
            .scaled_inputs
            .iter()
            .map(|p| self.hyperparams.from_sq_dist(kernel::sq_dist(&scaled, p)))
            .collect();
        let mean = self.prior_mean + k.iter().zip(&self.alpha).map(|(a, b)| a * b).sum::<f64>();
        self.kernel.factor.solve_lower_in_place(&mut k);
        let explained: f64 = k.iter().map(|v| v * v).sum();
        let variance = (self.hyperparams.signal_variance - explained).max(0.0);
        Ok(PosteriorSummary { mean, variance })
    }

    /// Variance of a noisy observation at `x`: latent variance plus `λ²`.
    pub fn predictive_variance(&self, x: &[f64]) -> Result<f64> {
        let lambda = self.hyperparams.noise_stddev;
        Ok(self.posterior(x)?.variance + lambda * lambda)
    }
}
