//! Langermann, Dixon-Price and Ackley written as compositions.

use std::f64::consts::{E, PI};
use std::sync::Arc;

use super::{CompositeObjective, Constituent, OptimumOracle};
use crate::domain::Domain;

const LANGERMANN_C: [f64; 5] = [1.0, 2.0, 5.0, 2.0, 3.0];
const LANGERMANN_A: [[f64; 2]; 5] = [[3.0, 5.0], [5.0, 2.0], [2.0, 1.0], [1.0, 4.0], [7.0, 9.0]];

/// Max of `−Σ cᵢ fᵢ` over `[0,10]²`, from the grid-and-polish oracle at density 2001.
pub(crate) const LANGERMANN_G_STAR: f64 = 4.644_775_659_998_53;

/// `fᵢ(x) = exp(−(1/π) Σⱼ (xⱼ − Aᵢⱼ)²) · cos(π Σⱼ (xⱼ − Aᵢⱼ))`, `h = −Σ cᵢ fᵢ`.
pub fn langermann() -> CompositeObjective {
    let constituents: Vec<Constituent> = LANGERMANN_A
        .iter()
        .map(|a| {
            let a = *a;
            Arc::new(move |x: &[f64]| {
                let sq: f64 = x.iter().zip(&a).map(|(xj, aj)| (xj - aj).powi(2)).sum();
                let lin: f64 = x.iter().zip(&a).map(|(xj, aj)| xj - aj).sum();
                (-sq / PI).exp() * (PI * lin).cos()
            }) as Constituent
        })
        .collect();
    CompositeObjective::new(
        "langermann",
        Domain::cube(0.0, 10.0, 2).expect("valid"),
        constituents,
        Arc::new(|_, f| -f.iter().zip(&LANGERMANN_C).map(|(fi, ci)| ci * fi).sum::<f64>()),
        LANGERMANN_G_STAR,
        OptimumOracle::Grid,
    )
    .expect("valid objective")
}

/// `f₁ = (x₁ − 1)²`, `fᵢ = i(2xᵢ² − xᵢ₋₁)²`, `h = −Σ fᵢ`, on `[−10,10]⁵`.
pub fn dixon_price() -> CompositeObjective {
    const D: usize = 5;
    let mut constituents: Vec<Constituent> = vec![Arc::new(|x: &[f64]| (x[0] - 1.0).powi(2))];
    for i in 1..D {
        constituents.push(Arc::new(move |x: &[f64]| {
            (i + 1) as f64 * (2.0 * x[i] * x[i] - x[i - 1]).powi(2)
        }));
    }
    // xᵢ = 2^{−(2^i − 2)/2^i}, i = 1..d
    let optimum: Vec<f64> = (1..=D as i32)
        .map(|i| {
            let p = 2f64.powi(i);
            2f64.powf(-(p - 2.0) / p)
        })
        .collect();
    CompositeObjective::new(
        "dixon-price",
        Domain::cube(-10.0, 10.0, D).expect("valid"),
        constituents,
        Arc::new(|_, f| -f.iter().sum::<f64>()),
        0.0,
        OptimumOracle::Known(optimum),
    )
    .expect("valid objective")
}

/// `f₁ = √(mean xᵢ²)`, `f₂ = mean cos(c xᵢ)`,
/// `h = a·exp(−b f₁) + exp(f₂) − a − e` (negated Ackley), on `[−32.768, 32.768]⁵`.
pub fn ackley() -> CompositeObjective {
    const D: usize = 5;
    const A: f64 = 20.0;
    const B: f64 = 0.2;
    const C: f64 = 2.0 * PI;
    let constituents: Vec<Constituent> = vec![
        Arc::new(|x: &[f64]| (x.iter().map(|v| v * v).sum::<f64>() / x.len() as f64).sqrt()),
        Arc::new(|x: &[f64]| x.iter().map(|v| (C * v).cos()).sum::<f64>() / x.len() as f64),
    ];
    CompositeObjective::new(
        "ackley",
        Domain::cube(-32.768, 32.768, D).expect("valid"),
        constituents,
        Arc::new(|_, f| A * (-B * f[0]).exp() + f[1].exp() - A - E),
        0.0,
        OptimumOracle::Known(vec![0.0; D]),
    )
    .expect("valid objective")
}
