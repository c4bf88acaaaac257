//! Derivative-free acquisition maximization: a uniform random sweep
//! followed by pattern-search refinement of the best candidates.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::domain::Domain;
use crate::search::{pattern_search, PatternSearchSettings};
use crate::seed::rng_from_seed;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizerSettings {
    /// Uniform random candidates scored in the sweep (R).
    pub raw_candidates: usize,
    /// How many of the best candidates get a local refinement (N_r).
    pub refinements: usize,
    /// Initial pattern-search step, as a fraction of each dimension's width.
    pub initial_step: f64,
    /// Refinement stops when the step falls below this fraction of the width.
    pub min_step: f64,
    /// Evaluation cap per refinement.
    pub max_evals_per_refinement: usize,
    /// Score the sweep and run refinements on the rayon pool.
    pub parallel: bool,
}

impl Default for OptimizerSettings {
    fn default() -> Self {
        Self {
            raw_candidates: 1024,
            refinements: 8,
            initial_step: 0.05,
            min_step: 1e-4,
            max_evals_per_refinement: 500,
            parallel: false,
        }
    }
}

#[inline]
fn sanitize(v: f64) -> f64 {
    if v.is_nan() {
        f64::NEG_INFINITY
    } else {
        v
    }
}

/// Returns the best point found. The result lies in `domain` and scores at
/// least as high as the best raw candidate. Deterministic in `seed`; the
/// parallel and sequential paths give identical results.
pub fn maximize_acquisition<F>(acq: F, domain: &Domain, settings: &OptimizerSettings, seed: u64) -> Vec<f64>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let mut rng = rng_from_seed(seed);
    let n_raw = settings.raw_candidates.max(1);
    let candidates: Vec<Vec<f64>> = (0..n_raw).map(|_| domain.sample_uniform(&mut rng)).collect();
    let scores: Vec<f64> = if settings.parallel {
        candidates.par_iter().map(|x| sanitize(acq(x))).collect()
    } else {
        candidates.iter().map(|x| sanitize(acq(x))).collect()
    };

    let mut order: Vec<usize> = (0..n_raw).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));

    let pattern = PatternSearchSettings {
        initial_step: settings.initial_step,
        min_step: settings.min_step,
        max_evals: settings.max_evals_per_refinement,
    };
    let starts = &order[..settings.refinements.min(n_raw)];
    let refine = |&i: &usize| {
        let (x, fx) = pattern_search(|x| sanitize(acq(x)), domain, &candidates[i], &pattern);
        (x, fx)
    };
    let refined: Vec<(Vec<f64>, f64)> = if settings.parallel {
        starts.par_iter().map(refine).collect()
    } else {
        starts.iter().map(refine).collect()
    };

    let mut best = (candidates[order[0]].clone(), scores[order[0]]);
    for (x, fx) in refined {
        if fx > best.1 {
            best = (x, fx);
        }
    }
    best.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interior_quadratic() {
        let d = Domain::new(vec![-2.0, 0.0, 10.0], vec![2.0, 1.0, 20.0]).unwrap();
        let c = [0.37, 0.81, 13.3];
        let x = maximize_acquisition(
            |x| -x.iter().zip(&c).map(|(a, b)| (a - b).powi(2)).sum::<f64>(),
            &d,
            &OptimizerSettings::default(),
            4,
        );
        for j in 0..3 {
            assert!((x[j] - c[j]).abs() < 1e-2 * d.width(j));
        }
    }

    #[test]
    fn constant_objective_returns_in_domain_point() {
        let d = Domain::cube(-1.0, 1.0, 4).unwrap();
        let x = maximize_acquisition(|_| 3.0, &d, &OptimizerSettings::default(), 0);
        assert!(d.contains(&x));
    }

    #[test]
    fn boundary_maximizer() {
        let d = Domain::cube(0.0, 1.0, 2).unwrap();
        let x = maximize_acquisition(|x| x[0], &d, &OptimizerSettings::default(), 1);
        assert!(x[0] >= 0.99);
    }

    #[test]
    fn never_below_best_raw_candidate() {
        let d = Domain::cube(0.0, 1.0, 2).unwrap();
        let f = |x: &[f64]| (17.0 * x[0]).sin() * (11.0 * x[1]).cos();
        let settings = OptimizerSettings::default();
        let x = maximize_acquisition(f, &d, &settings, 5);
        let mut rng = rng_from_seed(5);
        let raw_best = (0..settings.raw_candidates)
            .map(|_| f(&d.sample_uniform(&mut rng)))
            .fold(f64::NEG_INFINITY, f64::max);
        assert!(f(&x) >= raw_best);
    }

    #[test]
    fn nan_scores_are_ignored() {
        let d = Domain::cube(0.0, 1.0, 1).unwrap();
        let x = maximize_acquisition(|x| if x[0] < 0.5 { f64::NAN } else { x[0] }, &d, &OptimizerSettings::default(), 2);
        assert!(x[0] >= 0.99);
    }

    #[test]
    fn parallel_matches_sequential() {
        let d = Domain::cube(-3.0, 3.0, 3).unwrap();
        let f = |x: &[f64]| -(x[0] - 1.0).powi(2) + (3.0 * x[1]).sin() - x[2].abs();
        let seq = maximize_acquisition(f, &d, &OptimizerSettings::default(), 9);
        let par = maximize_acquisition(
            f,
            &d,
            &OptimizerSettings {
                parallel: true,
                ..OptimizerSettings::default()
            },
            9,
        );
        assert_eq!(seq, par);
    }
}
