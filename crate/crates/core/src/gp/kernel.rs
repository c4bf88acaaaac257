//! Squared-exponential kernel and the regularized kernel matrix.

use serde::{Deserialize, Serialize};

use super::linalg::{Cholesky, SquareMatrix};
use crate::error::{Error, Result};

/// Diagonal jitter, relative to the signal variance, tried first.
pub const JITTER_INITIAL: f64 = 1e-6;
/// Largest relative jitter tried before giving up.
pub const JITTER_MAX: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelHyperparams {
    /// σ²
    pub signal_variance: f64,
    /// l
    pub lengthscale: f64,
    /// λ, the observation-noise standard deviation.
    pub noise_stddev: f64,
}

impl KernelHyperparams {
    pub fn new(signal_variance: f64, lengthscale: f64, noise_stddev: f64) -> Result<Self> {
        let hp = Self {
            signal_variance,
            lengthscale,
            noise_stddev,
        };
        hp.validate()?;
        Ok(hp)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.signal_variance > 0.0 && self.signal_variance.is_finite()) {
            return Err(Error::invalid(format!(
                "signal_variance must be finite and > 0, got {}",
                self.signal_variance
            )));
        }
        if !(self.lengthscale > 0.0 && self.lengthscale.is_finite()) {
            return Err(Error::invalid(format!(
                "lengthscale must be finite and > 0, got {}",
                self.lengthscale
            )));
        }
        if !(self.noise_stddev >= 0.0 && self.noise_stddev.is_finite()) {
            return Err(Error::invalid(format!(
                "noise_stddev must be finite and >= 0, got {}",
                self.noise_stddev
            )));
        }
        Ok(())
    }

    #[inline]
    pub(crate) fn from_sq_dist(&self, sq: f64) -> f64 {
        self.signal_variance * (-sq / (2.0 * self.lengthscale * self.lengthscale)).exp()
    }
}

#[inline]
pub(crate) fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// `σ² exp(−‖x − x'‖² / (2 l²))`.
pub fn kernel_eval(x: &[f64], x_prime: &[f64], hp: &KernelHyperparams) -> Result<f64> {
    if x.len() != x_prime.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            actual: x_prime.len(),
        });
    }
    Ok(hp.from_sq_dist(sq_dist(x, x_prime)))
}

/// `K + λ²I + jitter·I` together with its Cholesky factor.
#[derive(Debug, Clone)]
pub struct KernelMatrix {
    pub matrix: SquareMatrix,
    /// Absolute jitter that was added to the diagonal.
    pub jitter: f64,
    pub factor: Cholesky,
}

pub(crate) fn pairwise_sq_dist(points: &[Vec<f64>]) -> SquareMatrix {
    let n = points.len();
    let mut m = SquareMatrix::zeros(n);
    for i in 0..n {
        for j in 0..i {
            let d = sq_dist(&points[i], &points[j]);
            m.set(i, j, d);
            m.set(j, i, d);
        }
    }
    m
}

/// Builds the regularized kernel matrix from precomputed squared distances,
/// escalating the jitter ×10 from `JITTER_INITIAL·σ²` up to `JITTER_MAX·σ²`
/// until the Cholesky factorization succeeds.
pub(crate) fn regularized_from_sq_dist(
    sq: &SquareMatrix,
    hp: &KernelHyperparams,
) -> Result<KernelMatrix> {
    let n = sq.n();
    let noise = hp.noise_stddev * hp.noise_stddev;
    let mut base = SquareMatrix::zeros(n);
    for i in 0..n {
        for j in 0..i {
            let v = hp.from_sq_dist(sq.get(i, j));
            base.set(i, j, v);
            base.set(j, i, v);
        }
        base.set(i, i, hp.signal_variance + noise);
    }

    let mut rel = JITTER_INITIAL;
    while rel <= JITTER_MAX * (1.0 + 1e-9) {
        let jitter = rel * hp.signal_variance;
        if let Some(factor) = Cholesky::factor_shifted(&base, jitter) {
            for i in 0..n {
                base.set(i, i, base.get(i, i) + jitter);
            }
            return Ok(KernelMatrix {
                matrix: base,
                jitter,
                factor,
            });
        }
        rel *= 10.0;
    }
    Err(Error::DegenerateKernel {
        jitter: JITTER_MAX * hp.signal_variance,
    })
}

/// Regularized kernel matrix over `points`. Errors if the points are of
/// mixed dimension or the matrix cannot be factored at maximum jitter.
pub fn build_kernel_matrix(points: &[Vec<f64>], hp: &KernelHyperparams) -> Result<KernelMatrix> {
    hp.validate()?;
    if points.is_empty() {
        return Err(Error::invalid("kernel matrix needs at least one point"));
    }
    let d = points[0].len();
    if let Some(bad) = points.iter().find(|p| p.len() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            actual: bad.len(),
        });
    }
    regularized_from_sq_dist(&pairwise_sq_dist(points), hp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn unit() -> KernelHyperparams {
        KernelHyperparams::new(1.0, 1.0, 0.0).unwrap()
    }

    #[test]
    fn zero_distance_gives_signal_variance() {
        let hp = KernelHyperparams::new(2.5, 0.3, 0.0).unwrap();
        assert_eq!(kernel_eval(&[1.0, 2.0], &[1.0, 2.0], &hp).unwrap(), 2.5);
    }

    #[test]
    fn squared_distance_two() {
        // ‖x − x'‖² = 1 + 1 = 2 → exp(−2/2)
        let v = kernel_eval(&[0.0, 0.0], &[1.0, -1.0], &unit()).unwrap();
        let expected = (-1.0f64).exp();
        assert!((v - expected).abs() < 1e-15);
        assert!((v - 0.367879).abs() < 1e-6);
    }

    #[test]
    fn symmetric_and_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let hp = KernelHyperparams::new(1.7, 0.4, 0.0).unwrap();
        for _ in 0..100 {
            let a: Vec<f64> = (0..3).map(|_| rng.random_range(-2.0..2.0)).collect();
            let b: Vec<f64> = (0..3).map(|_| rng.random_range(-2.0..2.0)).collect();
            let ab = kernel_eval(&a, &b, &hp).unwrap();
            assert_eq!(ab, kernel_eval(&b, &a, &hp).unwrap());
            assert!(ab > 0.0 && ab <= hp.signal_variance);
            assert!(ab <= kernel_eval(&a, &a, &hp).unwrap());
        }
    }

    #[test]
    fn dimension_mismatch_errors() {
        assert!(matches!(
            kernel_eval(&[0.0], &[0.0, 1.0], &unit()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn single_point_matrix() {
        let km = build_kernel_matrix(&[vec![0.3]], &unit()).unwrap();
        assert_eq!(km.jitter, JITTER_INITIAL);
        assert_eq!(km.matrix.get(0, 0), 1.0 + JITTER_INITIAL);
    }

    #[test]
    fn identical_points_with_noise() {
        let hp = KernelHyperparams::new(1.0, 1.0, 0.1).unwrap();
        let km = build_kernel_matrix(&[vec![0.5], vec![0.5]], &hp).unwrap();
        let j = km.jitter;
        assert!((km.matrix.get(0, 0) - (1.01 + j)).abs() < 1e-15);
        assert!((km.matrix.get(1, 1) - (1.01 + j)).abs() < 1e-15);
        assert_eq!(km.matrix.get(0, 1), 1.0);
        assert_eq!(km.matrix.get(1, 0), 1.0);
    }

    #[test]
    fn matrix_is_exactly_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let pts: Vec<Vec<f64>> = (0..15)
            .map(|_| (0..2).map(|_| rng.random::<f64>()).collect())
            .collect();
        let km = build_kernel_matrix(&pts, &KernelHyperparams::new(3.0, 0.2, 0.0).unwrap()).unwrap();
        assert!(km.matrix.is_symmetric());
    }

    #[test]
    fn duplicates_without_noise_still_factor() {
        // exact duplicates are rescued by the jitter
        let pts = vec![vec![0.1, 0.2]; 4];
        let km = build_kernel_matrix(&pts, &unit()).unwrap();
        assert!(km.jitter >= JITTER_INITIAL);
    }

    #[test]
    fn mixed_dimensions_error() {
        let pts = vec![vec![0.0], vec![0.0, 1.0]];
        assert!(build_kernel_matrix(&pts, &unit()).is_err());
    }
}
