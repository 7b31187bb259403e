//! Characteristic functions of finite laws, and numerical checks of the
//! Fourier-side estimates used in the normal-approximation argument.
//!
//! Each checker returns both sides of its inequality so callers can look at
//! the slack, not just a boolean.

pub mod audit;

use crate::distribution::DiscreteDistribution;
use crate::error::{Error, Result};
use crate::wasserstein::InequalityCheck;
use num_complex::Complex64;

/// Tolerance on moment preconditions (mean zero, unit variance).
const MOMENT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharacteristicEvaluation {
    pub zeta: f64,
    pub value: Complex64,
}

/// `E[exp(iζX)]` over the (viewed) support. Exactly `1` at `ζ = 0`.
pub fn charfn(d: &DiscreteDistribution, zeta: f64) -> Complex64 {
    if zeta == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    d.real_support()
        .iter()
        .zip(d.real_probs())
        .map(|(&x, p)| Complex64::from_polar(p, zeta * x))
        .sum()
}

pub fn evaluate(d: &DiscreteDistribution, zeta: f64) -> CharacteristicEvaluation {
    CharacteristicEvaluation {
        zeta,
        value: charfn(d, zeta),
    }
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::PreconditionViolated(msg()))
    }
}

fn centered_moments(d: &DiscreteDistribution) -> Result<(f64, f64)> {
    let m = d.moments();
    let mean = m.mean_f64();
    require(mean.abs() <= MOMENT_TOLERANCE, || format!("law is not centered (mean {mean})"))?;
    Ok((m.variance_f64(), m.third_abs_central))
}

fn gaussian_gap(d: &DiscreteDistribution, s_n: f64, zeta: f64, var: f64) -> f64 {
    let t = zeta / s_n;
    (charfn(d, t) - Complex64::new((-t * t * var / 2.0).exp(), 0.0)).norm()
}

fn check_scale(s_n: f64, zeta: f64, var: f64) -> Result<()> {
    require(s_n > 0.0 && s_n.is_finite(), || format!("s_n must be positive, got {s_n}"))?;
    let ratio = zeta * zeta * var / (s_n * s_n);
    require(ratio <= 1.0 + MOMENT_TOLERANCE, || {
        format!("zeta^2 Var / s_n^2 = {ratio} exceeds 1")
    })
}

/// `|φ(ζ/s) − exp(−ζ²σ²/2s²)| ≤ |ζ|³E|X|³/s³ + ζ⁴σ⁴/s⁴` for a centered law
/// with `ζ²σ² ≤ s²`.
pub fn check_lindeberg_bound(d: &DiscreteDistribution, s_n: f64, zeta: f64) -> Result<InequalityCheck> {
    let (var, third) = centered_moments(d)?;
    check_scale(s_n, zeta, var)?;
    let r = zeta.abs() / s_n;
    Ok(InequalityCheck {
        lhs: gaussian_gap(d, s_n, zeta, var),
        rhs: r.powi(3) * third + r.powi(4) * var * var,
    })
}

/// The same left side against `2K²|ζ|³σ²/s³`, for a centered law supported
/// in `[−K, K]` and `|ζ| ≤ s`.
pub fn check_simplified_bound(
    d: &DiscreteDistribution,
    bound: f64,
    s_n: f64,
    zeta: f64,
) -> Result<InequalityCheck> {
    let (var, _) = centered_moments(d)?;
    check_scale(s_n, zeta, var)?;
    let max_abs = d.real_support().iter().fold(0.0f64, |m, x| m.max(x.abs()));
    require(max_abs <= bound + MOMENT_TOLERANCE, || {
        format!("support reaches {max_abs}, beyond K = {bound}")
    })?;
    require(zeta.abs() <= s_n, || format!("|zeta| = {} exceeds s_n = {s_n}", zeta.abs()))?;
    Ok(InequalityCheck {
        lhs: gaussian_gap(d, s_n, zeta, var),
        rhs: 2.0 * bound * bound * zeta.abs().powi(3) * var / s_n.powi(3),
    })
}

/// `|Π a_i − Π b_i| ≤ Σ |a_i − b_i|` for points of the closed unit disk.
pub fn product_difference_bound(a: &[Complex64], b: &[Complex64]) -> Result<InequalityCheck> {
    require(a.len() == b.len(), || format!("lengths differ: {} and {}", a.len(), b.len()))?;
    for (index, z) in a.iter().chain(b).enumerate() {
        let modulus = z.norm();
        if modulus > 1.0 + MOMENT_TOLERANCE || modulus.is_nan() {
            return Err(Error::ModulusExceedsOne { index, modulus });
        }
    }
    let pa: Complex64 = a.iter().product();
    let pb: Complex64 = b.iter().product();
    Ok(InequalityCheck {
        lhs: (pa - pb).norm(),
        rhs: a.iter().zip(b).map(|(x, y)| (x - y).norm()).sum(),
    })
}

/// `|φ(wζ) − exp(−w²ζ²/2)| ≤ |ζ|·d₂(X, Z)` for standardized `X` and
/// `w ∈ [0, 1]`; `d2_value` should be `d2_to_normal(d)`.
pub fn check_lipschitz_bound(
    d: &DiscreteDistribution,
    weight: f64,
    zeta: f64,
    d2_value: f64,
) -> Result<InequalityCheck> {
    let m = d.moments();
    let (mean, var) = (m.mean_f64(), m.variance_f64());
    require(mean.abs() <= MOMENT_TOLERANCE && (var - 1.0).abs() <= MOMENT_TOLERANCE, || {
        format!("law is not standardized (mean {mean}, variance {var})")
    })?;
    require((0.0..=1.0).contains(&weight), || format!("weight {weight} outside [0, 1]"))?;
    let u = zeta * weight;
    Ok(InequalityCheck {
        lhs: (charfn(d, u) - Complex64::new((-u * u / 2.0).exp(), 0.0)).norm(),
        rhs: zeta.abs() * d2_value,
    })
}
