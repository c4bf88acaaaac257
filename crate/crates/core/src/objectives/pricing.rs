//! Revenue objectives: price times demand (or purchase probability).

use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::calibrate::separable_max;
use super::special::ccdf_gamma;
use super::{CompositeObjective, Constituent, OptimumOracle};
use crate::domain::Domain;
use crate::seed::rng_from_seed;

/// Seed of the parameter draw every experiment on `indep-demand` uses.
pub const INDEP_DEMAND_CANONICAL_SEED: u64 = 2023;

/// Identical-price willingness-to-pay parameters.
const EXP_RATE: f64 = 5.0;
const GAMMA_SHAPE: f64 = 10.0;
const GAMMA_RATE: f64 = 10.0;
/// Identical-price search interval `[0, IDENTICAL_PRICE_MAX]`.
pub(crate) const IDENTICAL_PRICE_MAX: f64 = 3.0;

/// Max over `[0,10]²` of `p₁d₁ + p₂d₂`, grid-and-polish oracle at density 2001.
pub(crate) const CORR_DEMAND_G_STAR: f64 = 10_490.539_276_644_02;
/// Max over `[0,3]` of `p e^{−5p} + p Q(10, 10p)`, 1-d grid oracle at density 100001.
pub(crate) const IDENTICAL_PRICE_G_STAR: f64 = 0.602_751_284_494_104;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DemandKind {
    Logit,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DemandRegionParams {
    pub kind: DemandKind,
    pub z1: f64,
    pub z2: f64,
}

impl DemandRegionParams {
    /// Draws parameters uniformly from the ranges of the given family:
    /// logit `z₁ ∈ [1, 2], z₂ ∈ [−1, 1]`; linear `z₁ ∈ [0.75, 1], z₂ ∈ [2/3, 0.75]`.
    pub fn sample<R: Rng + ?Sized>(kind: DemandKind, rng: &mut R) -> Self {
        let (z1, z2) = match kind {
            DemandKind::Logit => (rng.random_range(1.0..=2.0), rng.random_range(-1.0..=1.0)),
            DemandKind::Linear => (rng.random_range(0.75..=1.0), rng.random_range(2.0 / 3.0..=0.75)),
        };
        Self { kind, z1, z2 }
    }

    pub fn demand(&self, p: f64) -> f64 {
        match self.kind {
            DemandKind::Logit => {
                let e = (-self.z1 - self.z2 * p).exp();
                e / (1.0 + e)
            }
            DemandKind::Linear => self.z1 - self.z2 * p,
        }
    }
}

/// Four regions, two logit and two linear, each demand depending only on its
/// own price; `h = Σ pᵢ dᵢ(pᵢ)` on `[0,1]⁴`.
pub fn independent_demand(seed: u64) -> CompositeObjective {
    let mut rng = rng_from_seed(seed);
    let regions: Vec<DemandRegionParams> = [DemandKind::Logit, DemandKind::Logit, DemandKind::Linear, DemandKind::Linear]
        .into_iter()
        .map(|k| DemandRegionParams::sample(k, &mut rng))
        .collect();
    independent_demand_with(&regions)
}

pub(crate) fn independent_demand_with(regions: &[DemandRegionParams]) -> CompositeObjective {
    let constituents: Vec<Constituent> = regions
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let r = *r;
            Arc::new(move |p: &[f64]| r.demand(p[i])) as Constituent
        })
        .collect();
    let terms: Vec<Arc<dyn Fn(f64) -> f64 + Send + Sync>> = regions
        .iter()
        .map(|r| {
            let r = *r;
            Arc::new(move |p: f64| p * r.demand(p)) as Arc<dyn Fn(f64) -> f64 + Send + Sync>
        })
        .collect();
    let domain = Domain::cube(0.0, 1.0, regions.len()).expect("valid");
    let g_star = separable_max(&terms, &domain, super::calibrate::SEPARABLE_DENSITY);
    CompositeObjective::new(
        "indep-demand",
        domain,
        constituents,
        Arc::new(|p, d| p.iter().zip(d).map(|(pi, di)| pi * di).sum()),
        g_star,
        OptimumOracle::Separable(terms),
    )
    .expect("valid objective")
}

fn matyas(p: &[f64]) -> f64 {
    0.26 * (p[0] * p[0] + p[1] * p[1]) - 0.48 * p[0] * p[1]
}

fn booth(p: &[f64]) -> f64 {
    (p[0] + 2.0 * p[1] - 7.0).powi(2) + (2.0 * p[0] + p[1] - 5.0).powi(2)
}

/// Two products with cross-price effects: `d₁ = 8(100 − Matyas)`,
/// `d₂ = 1154 − Booth`, `h = p₁d₁ + p₂d₂` on `[0,10]²`.
pub fn correlated_demand() -> CompositeObjective {
    CompositeObjective::new(
        "corr-demand",
        Domain::cube(0.0, 10.0, 2).expect("valid"),
        vec![
            Arc::new(|p: &[f64]| 8.0 * (100.0 - matyas(p))),
            Arc::new(|p: &[f64]| 1154.0 - booth(p)),
        ],
        Arc::new(|p, d| p[0] * d[0] + p[1] * d[1]),
        CORR_DEMAND_G_STAR,
        OptimumOracle::Grid,
    )
    .expect("valid objective")
}

/// One price for two regions. Willingness to pay is exponential (rate 5) in
/// one and Gamma(shape 10, rate 10) in the other, so `d₁ = e^{−5p}`,
/// `d₂ = Q(10, 10p)` and `h = p d₁ + p d₂` on `[0, 3]`.
pub fn identical_price() -> CompositeObjective {
    CompositeObjective::new(
        "identical-price",
        Domain::cube(0.0, IDENTICAL_PRICE_MAX, 1).expect("valid"),
        vec![
            Arc::new(|p: &[f64]| (-EXP_RATE * p[0]).exp()),
            Arc::new(|p: &[f64]| ccdf_gamma(p[0].max(0.0), GAMMA_SHAPE, GAMMA_RATE).expect("valid gamma")),
        ],
        Arc::new(|p, d| p[0] * d[0] + p[0] * d[1]),
        IDENTICAL_PRICE_G_STAR,
        OptimumOracle::Grid,
    )
    .expect("valid objective")
}
