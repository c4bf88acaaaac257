//! Regularized incomplete gamma function.

use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

const EPS: f64 = 1e-16;
const MAX_TERMS: usize = 10_000;
const TINY: f64 = 1e-300;

/// `e^{−x} x^a / Γ(a)`, the common prefactor of both expansions.
fn prefactor(a: f64, x: f64) -> f64 {
    (a * x.ln() - x - ln_gamma(a)).exp()
}

/// Lower regularized `P(a, x)` by its power series; converges fast for `x < a + 1`.
fn lower_series(a: f64, x: f64) -> f64 {
    let mut ap = a;
    let mut term = 1.0 / a;
    let mut sum = term;
    for _ in 0..MAX_TERMS {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if term.abs() < sum.abs() * EPS {
            break;
        }
    }
    sum * prefactor(a, x)
}

/// Upper regularized `Q(a, x)` by its continued fraction (modified Lentz); for `x ≥ a + 1`.
fn upper_continued_fraction(a: f64, x: f64) -> f64 {
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..=MAX_TERMS {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < EPS {
            break;
        }
    }
    prefactor(a, x) * h
}

/// Upper regularized incomplete gamma `Q(a, x) = Γ(a, x) / Γ(a)`.
pub fn regularized_upper_gamma(a: f64, x: f64) -> Result<f64> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::invalid(format!("gamma shape must be > 0, got {a}")));
    }
    if !(x >= 0.0) {
        return Err(Error::invalid(format!("incomplete gamma argument must be >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(1.0);
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    let q = if x < a + 1.0 {
        1.0 - lower_series(a, x)
    } else {
        upper_continued_fraction(a, x)
    };
    Ok(q.clamp(0.0, 1.0))
}

/// `Pr{V ≥ p}` for `V ~ Gamma(shape α, rate β)`.
pub fn ccdf_gamma(p: f64, alpha: f64, beta: f64) -> Result<f64> {
    if !(p >= 0.0) {
        return Err(Error::invalid(format!("price must be >= 0, got {p}")));
    }
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::invalid(format!("gamma rate must be > 0, got {beta}")));
    }
    regularized_upper_gamma(alpha, beta * p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gamma_pdf(v: f64, a: f64, b: f64) -> f64 {
        if v <= 0.0 {
            return 0.0;
        }
        (a * b.ln() + (a - 1.0) * v.ln() - b * v - ln_gamma(a)).exp()
    }

    /// Adaptive Simpson quadrature, the independent oracle.
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
        fn rec(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
            let m = 0.5 * (a + b);
            let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
            let (flm, frm) = (f(lm), f(rm));
            let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
                left + right + (left + right - whole) / 15.0
            } else {
                rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
                    + rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
            }
        }
        let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
        let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        rec(f, a, b, fa, fm, fb, whole, tol, 50)
    }

    #[test]
    fn zero_price_is_one() {
        assert_eq!(ccdf_gamma(0.0, 10.0, 10.0).unwrap(), 1.0);
    }

    #[test]
    fn shape_one_is_exponential() {
        let v = ccdf_gamma(0.2, 1.0, 5.0).unwrap();
        assert!((v - (-1.0f64).exp()).abs() < 1e-14);
        assert!((v - 0.367879).abs() < 1e-6);
    }

    #[test]
    fn matches_quadrature_oracle() {
        for (p, a, b) in [(1.0, 10.0, 10.0), (0.5, 10.0, 10.0), (1.7, 10.0, 10.0), (0.3, 2.5, 4.0), (3.0, 0.7, 1.0)] {
            // Q = 1 − ∫₀^p pdf; integrate the shorter tail for accuracy
            let f = |v: f64| gamma_pdf(v, a, b);
            let upper = p + 60.0 * (a.sqrt() + 1.0) / b + 60.0 / b;
            let oracle = simpson(&f, p, upper, 1e-13);
            let q = ccdf_gamma(p, a, b).unwrap();
            assert!((q - oracle).abs() < 1e-8, "p={p} a={a} b={b}: {q} vs {oracle}");
        }
    }

    #[test]
    fn agrees_with_statrs() {
        for a in [0.5, 1.0, 3.0, 10.0, 25.0] {
            for x in [0.01, 0.5, 1.0, 5.0, 9.9, 11.0, 20.0, 60.0] {
                let ours = regularized_upper_gamma(a, x).unwrap();
                let theirs = statrs::function::gamma::gamma_ur(a, x);
                assert!((ours - theirs).abs() < 1e-10, "a={a} x={x}: {ours} vs {theirs}");
            }
        }
    }

    #[test]
    fn monotone_non_increasing() {
        let mut prev = 1.0;
        for i in 0..=3000 {
            let q = ccdf_gamma(i as f64 * 1e-3, 10.0, 10.0).unwrap();
            assert!(q <= prev + 1e-15);
            assert!((0.0..=1.0).contains(&q));
            prev = q;
        }
    }

    #[test]
    fn negative_price_errors() {
        assert!(ccdf_gamma(-0.1, 10.0, 10.0).is_err());
        assert!(ccdf_gamma(f64::NAN, 10.0, 10.0).is_err());
    }
}
