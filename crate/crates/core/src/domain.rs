//! Axis-aligned box search spaces.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A box `[lower_j, upper_j]` in `R^d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Domain {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                actual: upper.len(),
            });
        }
        if lower.is_empty() {
            return Err(Error::invalid("domain must have at least one dimension"));
        }
        for (j, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::invalid(format!(
                    "dimension {j}: need finite lower < upper, got [{lo}, {hi}]"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    /// The cube `[lo, hi]^d`.
    pub fn cube(lo: f64, hi: f64, dim: usize) -> Result<Self> {
        Self::new(vec![lo; dim], vec![hi; dim])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn width(&self, j: usize) -> f64 {
        self.upper[j] - self.lower[j]
    }

    pub fn diagonal(&self) -> f64 {
        (0..self.dim())
            .map(|j| self.width(j).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (lo, hi))| *v >= *lo && *v <= *hi)
    }

    pub fn clamp_in_place(&self, x: &mut [f64]) {
        for (j, v) in x.iter_mut().enumerate() {
            *v = v.clamp(self.lower[j], self.upper[j]);
        }
    }

    pub fn sample_uniform<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(lo, hi)| lo + (hi - lo) * rng.random::<f64>())
            .collect()
    }

    /// Human-readable form, `[-10,10]^5` for cubes.
    pub fn describe(&self) -> String {
        let lo = self.lower[0];
        let hi = self.upper[0];
        if self.lower.iter().all(|v| *v == lo) && self.upper.iter().all(|v| *v == hi) {
            format!("[{lo},{hi}]^{}", self.dim())
        } else {
            self.lower
                .iter()
                .zip(&self.upper)
                .map(|(a, b)| format!("[{a},{b}]"))
                .collect::<Vec<_>>()
                .join("x")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_inverted_bounds() {
        assert!(Domain::new(vec![0.0, 1.0], vec![1.0, 1.0]).is_err());
        assert!(Domain::new(vec![0.0], vec![1.0, 2.0]).is_err());
        assert!(Domain::new(vec![], vec![]).is_err());
    }

    #[test]
    fn describe_cube() {
        assert_eq!(Domain::cube(-10.0, 10.0, 5).unwrap().describe(), "[-10,10]^5");
        assert_eq!(
            Domain::new(vec![0.0, 1.0], vec![1.0, 2.0]).unwrap().describe(),
            "[0,1]x[1,2]"
        );
    }

    #[test]
    fn diagonal_of_unit_square() {
        let d = Domain::cube(0.0, 1.0, 2).unwrap();
        assert!((d.diagonal() - 2f64.sqrt()).abs() < 1e-15);
    }
}
