//! Helpers shared by the integration tests.
#![allow(dead_code)]

use coxdes::DiscreteDistribution;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use statrs::distribution::{Continuous, ContinuousCDF, Normal};

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Law on `points` distinct integers from `[-span, span]` with random
/// integer weights.
pub fn random_law<R: Rng>(rng: &mut R, points: usize, span: i64) -> DiscreteDistribution {
    let mut xs: Vec<i64> = Vec::new();
    while xs.len() < points {
        let x = rng.gen_range(-span..=span);
        if !xs.contains(&x) {
            xs.push(x);
        }
    }
    let ws: Vec<i64> = xs.iter().map(|_| rng.gen_range(1..=50)).collect();
    let total: i64 = ws.iter().sum();
    DiscreteDistribution::new(xs.iter().zip(&ws).map(|(&x, &w)| (rational(x, 1), rational(w, total)))).unwrap()
}

#[allow(clippy::too_many_arguments)]
fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
        left + right + (left + right - whole) / 15.0
    } else {
        simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
}

fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson(&f, a, b, fa, fm, fb, whole, 1e-13, 40)
}

/// `d₂(μ, N(0,1))` by adaptive quadrature of `(v − z)² φ(z)` between the
/// normal quantiles of consecutive CDF values, using statrs for `Φ⁻¹` and `φ`.
pub fn quadrature_d2(values: &[f64], probs: &[f64]) -> f64 {
    let n = Normal::new(0.0, 1.0).unwrap();
    let limit = 12.0;
    let mut acc = 0.0;
    let mut total = 0.0;
    for (i, (&v, &p)) in values.iter().zip(probs).enumerate() {
        let lo = if i == 0 { -limit } else { n.inverse_cdf(acc).max(-limit) };
        acc += p;
        let hi = if i + 1 == values.len() { limit } else { n.inverse_cdf(acc).min(limit) };
        total += integrate(|z| (v - z) * (v - z) * n.pdf(z), lo, hi);
    }
    total.sqrt()
}
