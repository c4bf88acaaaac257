//! Acquisition functions over per-constituent posteriors.
//!
//! * [`vanilla_ei`] / [`vanilla_ucb`] score a single GP placed directly on `g`.
//! * [`c_ei`] is the composite expected improvement
//!   `E[(h(μ₁ + σ₁Z₁, …, μ_M + σ_M Z_M) − g*ₙ)⁺]` with `Z ~ N(0, I_M)`,
//!   estimated by Monte Carlo.
//! * [`c_ucb`] is the composite UCB `h(μ₁ + βσ₁, …, μ_M + βσ_M)`.
//!
//! `σᵢ` is the posterior standard deviation throughout.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gp::PosteriorSummary;
use crate::seed::rng_from_seed;

pub const DEFAULT_MC_SAMPLES: usize = 128;

type CompositionEval = dyn Fn(&[f64]) -> f64 + Send + Sync;

/// An outer function over `M` constituent values.
pub trait Composition {
    fn arity(&self) -> usize;
    fn eval(&self, values: &[f64]) -> f64;

    fn check_arity(&self, got: usize) -> Result<()> {
        if got == self.arity() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.arity(),
                actual: got,
            })
        }
    }
}

/// The known, cheap outer function `h : R^M → R`.
#[derive(Clone)]
pub struct CompositionFn {
    arity: usize,
    eval: Arc<CompositionEval>,
}

impl fmt::Debug for CompositionFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CompositionFn").field("arity", &self.arity).finish_non_exhaustive()
    }
}

impl CompositionFn {
    pub fn new(arity: usize, eval: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            arity,
            eval: Arc::new(eval),
        }
    }

    pub fn identity() -> Self {
        Self::new(1, |v| v[0])
    }

    pub fn sum(arity: usize) -> Self {
        Self::new(arity, |v| v.iter().sum())
    }

}

impl Composition for CompositionFn {
    fn arity(&self) -> usize {
        self.arity
    }

    #[inline]
    fn eval(&self, values: &[f64]) -> f64 {
        debug_assert_eq!(values.len(), self.arity);
        (self.eval)(values)
    }
}

/// Exploration weight `β_n = β₀ · decayⁿ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UcbSchedule {
    pub beta0: f64,
    pub decay: f64,
}

impl Default for UcbSchedule {
    fn default() -> Self {
        Self {
            beta0: 1.0,
            decay: 0.99,
        }
    }
}

impl UcbSchedule {
    pub fn new(beta0: f64, decay: f64) -> Result<Self> {
        if !(beta0 >= 0.0 && beta0.is_finite()) {
            return Err(Error::invalid(format!("beta0 must be >= 0, got {beta0}")));
        }
        if !(decay > 0.0 && decay <= 1.0) {
            return Err(Error::invalid(format!("beta decay must be in (0, 1], got {decay}")));
        }
        Ok(Self { beta0, decay })
    }

    pub fn beta_at(&self, step: usize) -> f64 {
        self.beta0 * self.decay.powi(step as i32)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct McConfig {
    pub num_samples: usize,
    pub seed: u64,
}

impl McConfig {
    pub fn new(num_samples: usize, seed: u64) -> Result<Self> {
        if num_samples == 0 {
            return Err(Error::invalid("num_samples must be >= 1"));
        }
        Ok(Self { num_samples, seed })
    }
}

/// A fixed `L × M` block of standard-normal draws, reused across candidates
/// so the Monte Carlo acquisition surface is deterministic within a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalDraws {
    arity: usize,
    data: Vec<f64>,
}

impl NormalDraws {
    /// Draws are generated row by row, matching the order [`c_ei`] consumes
    /// them, so `c_ei_with_draws(.., &NormalDraws::new(cfg, m))` equals `c_ei(.., cfg)`.
    pub fn new(mc: McConfig, arity: usize) -> Self {
        let mut rng = rng_from_seed(mc.seed);
        let data = (0..mc.num_samples * arity).map(|_| rng.sample(StandardNormal)).collect();
        Self { arity, data }
    }

    pub fn num_samples(&self) -> usize {
        self.data.len().checked_div(self.arity).unwrap_or(0)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.arity.max(1))
    }
}

#[inline]
fn norm_pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * PI).sqrt()
}

#[inline]
fn norm_cdf(z: f64) -> f64 {
    0.5 * statrs::function::erf::erfc(-z * FRAC_1_SQRT_2)
}

/// Closed-form `E[(Y − best)⁺]` for `Y ~ N(mean, variance)`.
pub fn vanilla_ei(post: &PosteriorSummary, best: f64) -> f64 {
    let sd = post.stddev();
    let diff = post.mean - best;
    if sd <= 0.0 {
        return diff.max(0.0);
    }
    let z = diff / sd;
    (diff * norm_cdf(z) + sd * norm_pdf(z)).max(0.0)
}

/// `mean + β·sd`.
pub fn vanilla_ucb(post: &PosteriorSummary, beta: f64) -> f64 {
    post.mean + beta * post.stddev()
}

#[inline]
fn improvement<H: Composition + ?Sized>(posts: &[PosteriorSummary], sds: &[f64], z: &[f64], h: &H, best: f64, buf: &mut [f64]) -> f64 {
    for ((b, (p, s)), zi) in buf.iter_mut().zip(posts.iter().zip(sds)).zip(z) {
        *b = p.mean + s * zi;
    }
    (h.eval(buf) - best).max(0.0)
}

/// Composite EI with fresh draws from `mc.seed`.
pub fn c_ei<H: Composition + ?Sized>(posts: &[PosteriorSummary], h: &H, best: f64, mc: McConfig) -> Result<f64> {
    h.check_arity(posts.len())?;
    if mc.num_samples == 0 {
        return Err(Error::invalid("num_samples must be >= 1"));
    }
    let m = posts.len();
    let sds: Vec<f64> = posts.iter().map(PosteriorSummary::stddev).collect();
    let mut rng = rng_from_seed(mc.seed);
    let mut z = vec![0.0; m];
    let mut buf = vec![0.0; m];
    let mut total = 0.0;
    for _ in 0..mc.num_samples {
        for zi in z.iter_mut() {
            *zi = rng.sample(StandardNormal);
        }
        total += improvement(posts, &sds, &z, h, best, &mut buf);
    }
    Ok(total / mc.num_samples as f64)
}

/// Composite EI over a fixed block of draws (common random numbers).
pub fn c_ei_with_draws<H: Composition + ?Sized>(posts: &[PosteriorSummary], h: &H, best: f64, draws: &NormalDraws) -> Result<f64> {
    h.check_arity(posts.len())?;
    if draws.arity() != posts.len() {
        return Err(Error::DimensionMismatch {
            expected: posts.len(),
            actual: draws.arity(),
        });
    }
    let l = draws.num_samples();
    if l == 0 {
        return Err(Error::invalid("no Monte Carlo draws"));
    }
    let sds: Vec<f64> = posts.iter().map(PosteriorSummary::stddev).collect();
    let mut buf = vec![0.0; posts.len()];
    let total: f64 = draws.rows().map(|z| improvement(posts, &sds, z, h, best, &mut buf)).sum();
    Ok(total / l as f64)
}

/// Composite UCB: `h` applied to `mean_i + β·sd_i`.
pub fn c_ucb<H: Composition + ?Sized>(posts: &[PosteriorSummary], h: &H, beta: f64) -> Result<f64> {
    h.check_arity(posts.len())?;
    let optimistic: Vec<f64> = posts.iter().map(|p| p.mean + beta * p.stddev()).collect();
    Ok(h.eval(&optimistic))
}

/// Composite UCB with the bonus signed per constituent: each `mean_i ± β·sd_i`
/// takes whichever sign raises `h` with the other arguments at their means.
pub fn c_ucb_optimistic<H: Composition + ?Sized>(posts: &[PosteriorSummary], h: &H, beta: f64) -> Result<f64> {
    h.check_arity(posts.len())?;
    let mut probe: Vec<f64> = posts.iter().map(|p| p.mean).collect();
    let mut bound = probe.clone();
    for (i, p) in posts.iter().enumerate() {
        let bonus = beta * p.stddev();
        probe[i] = p.mean + bonus;
        let up = h.eval(&probe);
        probe[i] = p.mean - bonus;
        let down = h.eval(&probe);
        probe[i] = p.mean;
        bound[i] = if down > up { p.mean - bonus } else { p.mean + bonus };
    }
    Ok(h.eval(&bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn post(mean: f64, variance: f64) -> PosteriorSummary {
        PosteriorSummary::new(mean, variance)
    }

    #[test]
    fn ei_at_the_incumbent_is_pdf_zero() {
        let v = vanilla_ei(&post(0.3, 1.0), 0.3);
        assert!((v - 1.0 / (2.0 * PI).sqrt()).abs() < 1e-15);
        assert!((v - 0.398942).abs() < 1e-6);
    }

    #[test]
    fn ei_matches_monte_carlo_oracle() {
        // independent plain MC of E[(Y - best)^+] with 1e6 draws
        let mut rng = ChaCha8Rng::seed_from_u64(1234);
        let n = 1_000_000;
        let s: f64 = (0..n)
            .map(|_| {
                let z: f64 = rng.sample(StandardNormal);
                z.max(0.0)
            })
            .sum();
        let mc = s / n as f64;
        assert!((mc - vanilla_ei(&post(0.0, 1.0), 0.0)).abs() < 2e-3);
    }

    #[test]
    fn ei_degenerate_variance() {
        assert_eq!(vanilla_ei(&post(3.0, 0.0), 1.0), 2.0);
        assert_eq!(vanilla_ei(&post(0.0, 0.0), 1.0), 0.0);
    }

    #[test]
    fn ei_far_below_best_vanishes() {
        assert!(vanilla_ei(&post(-10.0, 1e-6), 0.0) <= 1e-9);
    }

    #[test]
    fn ucb_arithmetic() {
        assert_eq!(vanilla_ucb(&post(1.0, 4.0), 0.0), 1.0);
        assert_eq!(vanilla_ucb(&post(1.0, 4.0), 0.5), 2.0);
    }

    #[test]
    fn c_ei_degenerate_sampling() {
        let h = CompositionFn::sum(2);
        let posts = [post(1.0, 0.0), post(2.5, 0.0)];
        for l in [1, 7, 100] {
            let mc = McConfig::new(l, 3).unwrap();
            assert_eq!(c_ei(&posts, &h, 3.0, mc).unwrap(), 0.5);
            assert_eq!(c_ei(&posts, &h, 4.0, mc).unwrap(), 0.0);
        }
    }

    #[test]
    fn c_ei_identity_converges_to_ei() {
        let mc = McConfig::new(1_000_000, 42).unwrap();
        let v = c_ei(&[post(0.0, 1.0)], &CompositionFn::identity(), 0.0, mc).unwrap();
        assert!((v - 0.398942).abs() < 2e-3, "{v}");
    }

    #[test]
    fn c_ei_sum_of_independent_normals() {
        // N(m1, s1²) + N(m2, s2²) = N(m1 + m2, 1) with m1 + m2 = best
        let (s1, s2) = (0.6f64, 0.8f64);
        let posts = [post(1.5, s1 * s1), post(-0.5, s2 * s2)];
        let mc = McConfig::new(1_000_000, 7).unwrap();
        let v = c_ei(&posts, &CompositionFn::sum(2), 1.0, mc).unwrap();
        let oracle = vanilla_ei(&post(1.0, 1.0), 1.0);
        assert!((v - oracle).abs() < 2e-3, "{v} vs {oracle}");
        assert!((v - 0.398942).abs() < 2e-3);
    }

    #[test]
    fn c_ei_arity_mismatch() {
        let mc = McConfig::new(4, 0).unwrap();
        assert!(c_ei(&[post(0.0, 1.0)], &CompositionFn::sum(2), 0.0, mc).is_err());
        assert!(c_ucb(&[post(0.0, 1.0)], &CompositionFn::sum(2), 1.0).is_err());
    }

    #[test]
    fn streamed_and_cached_draws_agree_bitwise() {
        let h = CompositionFn::new(3, |v| v[0] * v[1] - v[2].exp());
        let posts = [post(0.2, 0.5), post(-1.0, 2.0), post(0.1, 0.01)];
        let mc = McConfig::new(500, 99).unwrap();
        let a = c_ei(&posts, &h, -0.5, mc).unwrap();
        let b = c_ei_with_draws(&posts, &h, -0.5, &NormalDraws::new(mc, 3)).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
        assert_eq!(a.to_bits(), c_ei(&posts, &h, -0.5, mc).unwrap().to_bits());
    }

    #[test]
    fn c_ucb_examples() {
        let h = CompositionFn::sum(2);
        let posts = [post(1.0, 1.0), post(2.0, 4.0)];
        assert_eq!(c_ucb(&posts, &h, 0.0).unwrap(), 3.0);
        assert_eq!(c_ucb(&posts, &h, 1.0).unwrap(), 6.0);
    }

    #[test]
    fn schedule() {
        let s = UcbSchedule::new(1.0, 0.99).unwrap();
        assert_eq!(s.beta_at(0), 1.0);
        assert!((s.beta_at(70) - 0.99f64.powi(70)).abs() < 1e-15);
        assert!((s.beta_at(70) - 0.4948).abs() < 1e-4);
        let flat = UcbSchedule::new(2.0, 1.0).unwrap();
        assert!((0..50).all(|k| flat.beta_at(k) == 2.0));
        assert!(UcbSchedule::new(1.0, 0.0).is_err());
        assert!(UcbSchedule::new(-1.0, 0.5).is_err());
    }

    #[test]
    fn optimistic_bound_follows_the_sign_of_h() {
        let posts = [post(1.0, 1.0), post(2.0, 4.0)];
        let neg = CompositionFn::new(2, |v| -v[0] - v[1]);
        // (1 − 1) + (2 − 2) under the negation
        assert_eq!(c_ucb_optimistic(&posts, &neg, 1.0).unwrap(), 0.0);
        assert_eq!(c_ucb(&posts, &neg, 1.0).unwrap(), -6.0);
        let mixed = CompositionFn::new(2, |v| v[0] - v[1]);
        assert_eq!(c_ucb_optimistic(&posts, &mixed, 0.5).unwrap(), 1.5 - 1.0);
        assert_eq!(c_ucb_optimistic(&posts, &neg, 0.0).unwrap(), c_ucb(&posts, &neg, 0.0).unwrap());
    }

    proptest! {
        #[test]
        fn optimistic_equals_literal_for_increasing_h(m1 in -5.0..5.0f64, v1 in 0.0..4.0f64, m2 in -5.0..5.0f64,
                                                      v2 in 0.0..4.0f64, b in 0.0..3.0f64) {
            let h = CompositionFn::new(2, |v| v[0] + v[1].exp());
            let posts = [post(m1, v1), post(m2, v2)];
            prop_assert_eq!(c_ucb_optimistic(&posts, &h, b).unwrap(), c_ucb(&posts, &h, b).unwrap());
        }

        #[test]
        fn optimistic_dominates_both_uniform_signs(m1 in -5.0..5.0f64, v1 in 0.0..4.0f64, m2 in -5.0..5.0f64,
                                                  v2 in 0.0..4.0f64, b in 0.0..3.0f64) {
            // separable, so the per-coordinate choice is the coordinate-wise maximum
            let h = CompositionFn::new(2, |v| -v[0] * v[0] + (-v[1]).exp());
            let posts = [post(m1, v1), post(m2, v2)];
            let opt = c_ucb_optimistic(&posts, &h, b).unwrap();
            prop_assert!(opt >= c_ucb(&posts, &h, b).unwrap() - 1e-12);
            let minus: Vec<f64> = posts.iter().map(|p| p.mean - b * p.stddev()).collect();
            prop_assert!(opt >= h.eval(&minus) - 1e-12);
        }

        #[test]
        fn c_ucb_identity_is_vanilla_ucb(m in -50.0..50.0f64, v in 0.0..20.0f64, beta in 0.0..5.0f64) {
            let p = post(m, v);
            prop_assert_eq!(c_ucb(&[p], &CompositionFn::identity(), beta).unwrap(), vanilla_ucb(&p, beta));
        }

        #[test]
        fn c_ucb_monotone_in_beta(m1 in -5.0..5.0f64, v1 in 0.0..4.0f64, m2 in -5.0..5.0f64, v2 in 0.0..4.0f64,
                                  b in 0.0..3.0f64, db in 0.0..3.0f64) {
            let h = CompositionFn::new(2, |v| v[0] + v[1].exp());
            let posts = [post(m1, v1), post(m2, v2)];
            prop_assert!(c_ucb(&posts, &h, b + db).unwrap() >= c_ucb(&posts, &h, b).unwrap());
        }

        #[test]
        fn vanilla_ucb_monotone_in_beta(m in -5.0..5.0f64, v in 0.0..4.0f64, b in 0.0..3.0f64, db in 0.0..3.0f64) {
            prop_assert!(vanilla_ucb(&post(m, v), b + db) >= vanilla_ucb(&post(m, v), b));
        }

        #[test]
        fn c_ei_nonnegative(m1 in -5.0..5.0f64, v1 in 0.0..4.0f64, m2 in -5.0..5.0f64, v2 in 0.0..4.0f64,
                            best in -10.0..10.0f64, seed in any::<u64>()) {
            let h = CompositionFn::new(2, |v| v[0] * v[1]);
            let mc = McConfig::new(64, seed).unwrap();
            prop_assert!(c_ei(&[post(m1, v1), post(m2, v2)], &h, best, mc).unwrap() >= 0.0);
        }

        #[test]
        fn c_ei_permutation_invariant(m in prop::collection::vec(-3.0..3.0f64, 3), v in prop::collection::vec(0.0..2.0f64, 3),
                                      best in -3.0..3.0f64, seed in any::<u64>()) {
            // h(a, b, c) = a + 2b − c², with the permuted h reading its arguments as (c, a, b)
            let h = CompositionFn::new(3, |x| x[0] + 2.0 * x[1] - x[2] * x[2]);
            let hp = CompositionFn::new(3, |x| x[1] + 2.0 * x[2] - x[0] * x[0]);
            let posts = [post(m[0], v[0]), post(m[1], v[1]), post(m[2], v[2])];
            let permuted = [posts[2], posts[0], posts[1]];
            let mc = McConfig::new(256, seed).unwrap();
            let draws = NormalDraws::new(mc, 3);
            let pd = NormalDraws { arity: 3, data: draws.rows().flat_map(|r| [r[2], r[0], r[1]]).collect() };
            let a = c_ei_with_draws(&posts, &h, best, &draws).unwrap();
            let b = c_ei_with_draws(&permuted, &hp, best, &pd).unwrap();
            prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()));
        }
    }
}
