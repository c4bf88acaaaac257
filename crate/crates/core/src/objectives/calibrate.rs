//! Reference-optimum oracles: dense grid plus pattern-search polish.

use std::sync::Arc;

use super::{CompositeObjective, OptimumOracle};
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::search::{pattern_search, PatternSearchSettings};

pub(crate) const SEPARABLE_DENSITY: usize = 10_001;
const POLISH_STARTS: usize = 16;
const MAX_GRID_POINTS: usize = 50_000_000;

/// Grid density the `calibrate` command uses when none is given.
pub fn default_density(objective: &CompositeObjective) -> usize {
    match (objective.oracle(), objective.dim()) {
        (OptimumOracle::Separable(_), _) => SEPARABLE_DENSITY,
        (_, 1) => 100_001,
        (_, 2) => 2001,
        _ => 201,
    }
}

fn polish_settings(density: usize) -> PatternSearchSettings {
    PatternSearchSettings {
        initial_step: 1.0 / (density - 1) as f64,
        min_step: 1e-13,
        max_evals: 20_000,
    }
}

/// Keeps the `k` largest `(value, point)` pairs seen.
struct TopK {
    k: usize,
    items: Vec<(f64, Vec<f64>)>,
}

impl TopK {
    fn push(&mut self, v: f64, x: &[f64]) {
        if self.items.len() < self.k {
            self.items.push((v, x.to_vec()));
        } else if let Some((i, _)) = self
            .items
            .iter()
            .enumerate()
            .min_by(|a, b| a.1 .0.total_cmp(&b.1 .0))
            .filter(|(_, w)| v > w.0)
        {
            self.items[i] = (v, x.to_vec());
        }
    }
}

/// Maximizes `f` over the full tensor grid with `density` points per axis,
/// then polishes the best grid points by pattern search.
fn grid_then_polish(f: &dyn Fn(&[f64]) -> f64, domain: &Domain, density: usize) -> Result<(Vec<f64>, f64)> {
    if density < 2 {
        return Err(Error::invalid("grid density must be >= 2"));
    }
    let d = domain.dim();
    let total = (density as f64).powi(d as i32);
    if total > MAX_GRID_POINTS as f64 {
        return Err(Error::invalid(format!(
            "grid of {density}^{d} points is too large; use a task with a known or separable optimum"
        )));
    }
    let axis = |j: usize, i: usize| domain.lower()[j] + domain.width(j) * i as f64 / (density - 1) as f64;
    let mut idx = vec![0usize; d];
    let mut x: Vec<f64> = (0..d).map(|j| axis(j, 0)).collect();
    let mut top = TopK {
        k: POLISH_STARTS,
        items: Vec::new(),
    };
    loop {
        top.push(f(&x), &x);
        let mut j = 0;
        loop {
            if j == d {
                // exhausted
                let settings = polish_settings(density);
                let mut best: Option<(Vec<f64>, f64)> = None;
                for (_, start) in &top.items {
                    let (p, fp) = pattern_search(f, domain, start, &settings);
                    if best.as_ref().is_none_or(|b| fp > b.1) {
                        best = Some((p, fp));
                    }
                }
                return Ok(best.expect("grid is non-empty"));
            }
            idx[j] += 1;
            if idx[j] < density {
                x[j] = axis(j, idx[j]);
                break;
            }
            idx[j] = 0;
            x[j] = axis(j, 0);
            j += 1;
        }
    }
}

/// Grid-and-polish maximizer of `g` over the task's domain.
pub fn grid_maximize(objective: &CompositeObjective, density: usize) -> Result<(Vec<f64>, f64)> {
    grid_then_polish(&|x| objective.g(x), objective.domain(), density)
}

/// Sum of the per-coordinate maxima of a separable objective.
pub(crate) fn separable_max(terms: &[Arc<dyn Fn(f64) -> f64 + Send + Sync>], domain: &Domain, density: usize) -> f64 {
    terms
        .iter()
        .enumerate()
        .map(|(j, t)| {
            let axis = Domain::new(vec![domain.lower()[j]], vec![domain.upper()[j]]).expect("valid axis");
            grid_then_polish(&|x| t(x[0]), &axis, density).expect("1-d grid").1
        })
        .sum()
}

/// Recomputes a task's reference maximum with its oracle.
pub fn calibrate(objective: &CompositeObjective, density: usize) -> Result<f64> {
    match objective.oracle() {
        OptimumOracle::Known(x) => Ok(objective.g(x)),
        OptimumOracle::Grid => Ok(grid_maximize(objective, density)?.1),
        OptimumOracle::Separable(terms) => {
            if density < 2 {
                return Err(Error::invalid("grid density must be >= 2"));
            }
            Ok(separable_max(terms, objective.domain(), density))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::{ackley, dixon_price, identical_price, independent_demand, langermann, correlated_demand};

    #[test]
    fn known_optima() {
        assert!(calibrate(&ackley(), 0).unwrap().abs() < 1e-9);
        assert!(calibrate(&dixon_price(), 0).unwrap().abs() < 1e-9);
    }

    #[test]
    fn stored_grid_optima_are_reproduced() {
        for t in [langermann(), correlated_demand(), identical_price()] {
            let fresh = calibrate(&t, default_density(&t)).unwrap();
            assert!((fresh - t.g_star()).abs() < 1e-6, "{}: stored {} fresh {}", t.name(), t.g_star(), fresh);
        }
    }

    #[test]
    fn separable_matches_joint_grid_on_one_axis_task() {
        let t = independent_demand(3);
        let coarse = calibrate(&t, 2001).unwrap();
        assert!((coarse - t.g_star()).abs() < 1e-9);
    }

    #[test]
    fn refuses_huge_grids() {
        assert!(grid_maximize(&ackley(), 201).is_err());
    }
}
