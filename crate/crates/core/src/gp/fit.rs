//! Hyperparameter selection by log-marginal-likelihood maximization.
//!
//! Multi-start projected ascent in log space with central finite-difference
//! gradients. In the noiseless case the kernel matrix is `σ²(R(l) + εI)`, so
//! for a fixed lengthscale the optimal signal variance has the closed form
//! `σ̂² = rᵀ(R + εI)⁻¹r / n` (clamped to its bounds) and the ascent runs over
//! the lengthscale alone. With observation noise both parameters are searched.

use serde::{Deserialize, Serialize};

use super::kernel::{pairwise_sq_dist, regularized_from_sq_dist, KernelHyperparams};
use super::linalg::SquareMatrix;
use super::{check_training_data, GaussianProcess, InputScaling};
use crate::domain::Domain;
use crate::error::{Error, Result};

pub const DEFAULT_NUM_STARTS: usize = 8;

const LENGTHSCALE_RANGE: (f64, f64) = (1e-3, 1e3);
const SIGNAL_RANGE: (f64, f64) = (1e-4, 1e4);
const FD_STEP: f64 = 1e-4;
const MIN_MOVE: f64 = 1e-3;
const MAX_MOVE: f64 = 2.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitConfig {
    /// Fixed λ. Zero for noiseless observations.
    pub noise_stddev: f64,
    /// When set, inputs are mapped to the unit box and lengthscale bounds are
    /// relative to its diagonal `√d`; otherwise to the data's bounding box.
    pub domain: Option<Domain>,
    pub num_starts: usize,
    pub max_ascent_steps: usize,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            noise_stddev: 0.0,
            domain: None,
            num_starts: DEFAULT_NUM_STARTS,
            max_ascent_steps: 40,
        }
    }
}

impl FitConfig {
    pub fn with_domain(domain: Domain) -> Self {
        Self {
            domain: Some(domain),
            ..Self::default()
        }
    }
}

struct Problem {
    sq: SquareMatrix,
    residual: Vec<f64>,
    n: f64,
    noise_stddev: f64,
    log_l: (f64, f64),
    log_s: (f64, f64),
}

const LN_2PI: f64 = 1.837_877_066_409_345_5;

impl Problem {
    /// Returns `(lml, σ̂²)` for the noiseless profiled objective.
    fn profiled(&self, log_l: f64) -> Option<(f64, f64)> {
        let hp = KernelHyperparams {
            signal_variance: 1.0,
            lengthscale: log_l.exp(),
            noise_stddev: 0.0,
        };
        let km = regularized_from_sq_dist(&self.sq, &hp).ok()?;
        let mut y = self.residual.clone();
        km.factor.solve_lower_in_place(&mut y);
        let q: f64 = y.iter().map(|v| v * v).sum();
        let s2 = (q / self.n).clamp(self.log_s.0.exp(), self.log_s.1.exp());
        let lml = -0.5 * q / s2 - 0.5 * self.n * s2.ln() - km.factor.sum_log_diag() - 0.5 * self.n * LN_2PI;
        lml.is_finite().then_some((lml, s2))
    }

    fn full(&self, log_l: f64, log_s: f64) -> Option<f64> {
        let hp = KernelHyperparams {
            signal_variance: log_s.exp(),
            lengthscale: log_l.exp(),
            noise_stddev: self.noise_stddev,
        };
        let km = regularized_from_sq_dist(&self.sq, &hp).ok()?;
        let mut y = self.residual.clone();
        km.factor.solve_lower_in_place(&mut y);
        let q: f64 = y.iter().map(|v| v * v).sum();
        let lml = -0.5 * q - km.factor.sum_log_diag() - 0.5 * self.n * LN_2PI;
        lml.is_finite().then_some(lml)
    }

    fn noiseless(&self) -> bool {
        self.noise_stddev == 0.0
    }

    fn objective(&self, x: &[f64]) -> f64 {
        let v = if self.noiseless() {
            self.profiled(x[0]).map(|(l, _)| l)
        } else {
            self.full(x[0], x[1])
        };
        v.unwrap_or(f64::NEG_INFINITY)
    }

    fn bounds(&self) -> (Vec<f64>, Vec<f64>) {
        if self.noiseless() {
            (vec![self.log_l.0], vec![self.log_l.1])
        } else {
            (vec![self.log_l.0, self.log_s.0], vec![self.log_l.1, self.log_s.1])
        }
    }

    /// Stratum midpoints of the log box; the signal-variance strata are
    /// paired in reverse so the starts spread over both axes.
    fn starts(&self, k: usize) -> Vec<Vec<f64>> {
        let mid = |(lo, hi): (f64, f64), i: usize| lo + (hi - lo) * (i as f64 + 0.5) / k as f64;
        (0..k)
            .map(|i| {
                if self.noiseless() {
                    vec![mid(self.log_l, i)]
                } else {
                    vec![mid(self.log_l, i), mid(self.log_s, k - 1 - i)]
                }
            })
            .collect()
    }

    fn hyperparams_at(&self, x: &[f64]) -> Option<KernelHyperparams> {
        let lengthscale = x[0].exp();
        let signal_variance = if self.noiseless() {
            self.profiled(x[0])?.1
        } else {
            x[1].exp()
        };
        Some(KernelHyperparams {
            signal_variance,
            lengthscale,
            noise_stddev: self.noise_stddev,
        })
    }
}

fn project(x: &mut [f64], lo: &[f64], hi: &[f64]) {
    for (k, v) in x.iter_mut().enumerate() {
        *v = v.clamp(lo[k], hi[k]);
    }
}

fn fd_gradient(f: &dyn Fn(&[f64]) -> f64, x: &[f64], lo: &[f64], hi: &[f64]) -> Vec<f64> {
    (0..x.len())
        .map(|k| {
            let mut xp = x.to_vec();
            let mut xm = x.to_vec();
            xp[k] = (x[k] + FD_STEP).min(hi[k]);
            xm[k] = (x[k] - FD_STEP).max(lo[k]);
            let (fp, fm) = (f(&xp), f(&xm));
            if fp.is_finite() && fm.is_finite() && xp[k] > xm[k] {
                (fp - fm) / (xp[k] - xm[k])
            } else {
                0.0
            }
        })
        .collect()
}

/// Projected normalized-gradient ascent with step doubling on success and
/// halving on failure. Stops once the step falls below `MIN_MOVE`.
fn ascend(
    f: &dyn Fn(&[f64]) -> f64,
    x0: Vec<f64>,
    lo: &[f64],
    hi: &[f64],
    max_steps: usize,
) -> (Vec<f64>, f64) {
    let mut x = x0;
    let mut fx = f(&x);
    if !fx.is_finite() {
        return (x, fx);
    }
    let mut t = 0.5;
    'outer: for _ in 0..max_steps {
        let g = fd_gradient(f, &x, lo, hi);
        let norm = g.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            break;
        }
        loop {
            let mut cand: Vec<f64> = x.iter().zip(&g).map(|(xi, gi)| xi + t * gi / norm).collect();
            project(&mut cand, lo, hi);
            let moved = cand.iter().zip(&x).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            if moved < 1e-12 {
                break 'outer;
            }
            let fc = f(&cand);
            if fc > fx {
                x = cand;
                fx = fc;
                t = (2.0 * t).min(MAX_MOVE);
                break;
            }
            t *= 0.5;
            if t < MIN_MOVE {
                break 'outer;
            }
        }
    }
    (x, fx)
}

fn setup(points: &[Vec<f64>], targets: &[f64], config: &FitConfig) -> Result<(Problem, InputScaling, Vec<Vec<f64>>, f64)> {
    if points.len() < 2 {
        return Err(Error::invalid(format!(
            "fitting needs at least 2 observations, got {}",
            points.len()
        )));
    }
    let d = check_training_data(points, targets)?;
    if !(config.noise_stddev >= 0.0 && config.noise_stddev.is_finite()) {
        return Err(Error::invalid("noise_stddev must be finite and >= 0"));
    }
    if config.num_starts == 0 {
        return Err(Error::invalid("num_starts must be >= 1"));
    }
    let (scaling, diag) = match &config.domain {
        Some(domain) => {
            if domain.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    actual: domain.dim(),
                });
            }
            (InputScaling::unit_box(domain), (d as f64).sqrt())
        }
        None => {
            let diag = (0..d)
                .map(|j| {
                    let (lo, hi) = points
                        .iter()
                        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p[j]), b.max(p[j])));
                    (hi - lo).powi(2)
                })
                .sum::<f64>()
                .sqrt();
            (InputScaling::identity(d), if diag > 0.0 { diag } else { 1.0 })
        }
    };
    let scaled: Vec<Vec<f64>> = points.iter().map(|p| scaling.apply(p)).collect();
    let n = targets.len() as f64;
    let mean = targets.iter().sum::<f64>() / n;
    let var = targets.iter().map(|t| (t - mean).powi(2)).sum::<f64>() / n;
    let var_ref = if var > f64::MIN_POSITIVE * 1e6 { var } else { 1.0 };
    let problem = Problem {
        sq: pairwise_sq_dist(&scaled),
        residual: targets.iter().map(|t| t - mean).collect(),
        n,
        noise_stddev: config.noise_stddev,
        log_l: ((LENGTHSCALE_RANGE.0 * diag).ln(), (LENGTHSCALE_RANGE.1 * diag).ln()),
        log_s: ((SIGNAL_RANGE.0 * var_ref).ln(), (SIGNAL_RANGE.1 * var_ref).ln()),
    };
    Ok((problem, scaling, scaled, mean))
}

/// The hyperparameters the multi-start ascent begins from. The fitted
/// model's likelihood is never below any of these.
pub fn start_candidates(points: &[Vec<f64>], targets: &[f64], config: &FitConfig) -> Result<Vec<KernelHyperparams>> {
    let (problem, ..) = setup(points, targets, config)?;
    Ok(problem
        .starts(config.num_starts)
        .iter()
        .filter_map(|x| problem.hyperparams_at(x))
        .collect())
}

pub(super) fn fit(points: &[Vec<f64>], targets: &[f64], config: &FitConfig) -> Result<GaussianProcess> {
    let (problem, scaling, scaled, mean) = setup(points, targets, config)?;
    let (lo, hi) = problem.bounds();
    let f = |x: &[f64]| problem.objective(x);

    let mut best: Option<(Vec<f64>, f64)> = None;
    for start in problem.starts(config.num_starts) {
        let (x, fx) = ascend(&f, start, &lo, &hi, config.max_ascent_steps);
        if fx.is_finite() && best.as_ref().is_none_or(|(_, b)| fx > *b) {
            best = Some((x, fx));
        }
    }
    let (x, _) = best.ok_or(Error::DegenerateKernel {
        jitter: super::JITTER_MAX,
    })?;
    let hp = problem
        .hyperparams_at(&x)
        .ok_or(Error::DegenerateKernel { jitter: super::JITTER_MAX })?;
    GaussianProcess::assemble(points, targets, hp, mean, scaling, scaled, &problem.sq)
}
