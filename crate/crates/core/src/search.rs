//! Bounded coordinate pattern search, used to polish acquisition maximizers
//! and reference optima.

use crate::domain::Domain;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PatternSearchSettings {
    /// Initial step as a fraction of each dimension's width.
    pub initial_step: f64,
    /// Stop once the step (fraction of width) drops below this.
    pub min_step: f64,
    pub max_evals: usize,
}

impl Default for PatternSearchSettings {
    fn default() -> Self {
        Self {
            initial_step: 0.05,
            min_step: 1e-4,
            max_evals: 2000,
        }
    }
}

/// Maximizes `f` from `x0`. Each poll tries `±step·width_j` along every
/// coordinate (clamped to the box) and moves to the best improving point;
/// an unsuccessful poll halves the step. Never returns a point worse than `x0`.
pub fn pattern_search<F>(f: F, domain: &Domain, x0: &[f64], settings: &PatternSearchSettings) -> (Vec<f64>, f64)
where
    F: Fn(&[f64]) -> f64,
{
    let mut x = x0.to_vec();
    domain.clamp_in_place(&mut x);
    let mut fx = f(&x);
    let mut evals = 1;
    let mut step = settings.initial_step;
    let mut cand = x.clone();
    while step >= settings.min_step && evals < settings.max_evals {
        let mut best: Option<(usize, f64, f64)> = None;
        for j in 0..x.len() {
            let w = domain.width(j);
            for dir in [1.0, -1.0] {
                let v = (x[j] + dir * step * w).clamp(domain.lower()[j], domain.upper()[j]);
                if v == x[j] {
                    continue;
                }
                cand[j] = v;
                let fc = f(&cand);
                evals += 1;
                cand[j] = x[j];
                if fc > best.map_or(fx, |b| b.2) {
                    best = Some((j, v, fc));
                }
            }
        }
        match best {
            Some((j, v, fc)) => {
                x[j] = v;
                cand[j] = v;
                fx = fc;
            }
            None => step *= 0.5,
        }
    }
    (x, fx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_interior_quadratic_max() {
        let d = Domain::cube(-1.0, 3.0, 2).unwrap();
        let (x, fx) = pattern_search(
            |x| -(x[0] - 0.7).powi(2) - 2.0 * (x[1] - 1.9).powi(2),
            &d,
            &[0.0, 0.0],
            &PatternSearchSettings::default(),
        );
        assert!((x[0] - 0.7).abs() < 1e-3 && (x[1] - 1.9).abs() < 1e-3);
        assert!(fx <= 0.0 && fx > -1e-5);
    }

    #[test]
    fn never_worse_than_start() {
        let d = Domain::cube(0.0, 1.0, 1).unwrap();
        let f = |x: &[f64]| (40.0 * x[0]).sin();
        let (_, fx) = pattern_search(f, &d, &[0.3], &PatternSearchSettings::default());
        assert!(fx >= f(&[0.3]));
    }
}
