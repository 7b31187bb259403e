//! The Wasserstein-2 (Mallows) distance between laws on the line.
//!
//! In one dimension the comonotone coupling `(F⁻¹(U), G⁻¹(U))` attains the
//! infimum over couplings, so `d₂(μ, ν)² = ∫₀¹ (F⁻¹(u) − G⁻¹(u))² du`. For a
//! step quantile function against the normal quantile the integral is a sum
//! of closed forms, one per step.

use crate::distribution::{ratio_to_f64, DiscreteDistribution, RealDistribution};
use crate::error::{Error, Result};
use crate::normal;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Right-continuous inverse CDF of a finite law: step `i` has height
/// `values[i]` on `(cdf[i-1], cdf[i])` (with `cdf[-1] = 0`, `cdf[k-1] = 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct QuantileView {
    values: Vec<f64>,
    widths: Vec<f64>,
    /// Interior breakpoints `F(x_0), …, F(x_{k-2})`.
    cdf: Vec<f64>,
    /// `1 − cdf[i]`, computed without cancellation.
    ccdf: Vec<f64>,
}

impl QuantileView {
    pub fn from_discrete(d: &DiscreteDistribution) -> Self {
        let values = d.real_support();
        let widths = d.real_probs();
        let k = values.len();
        let mut cdf = Vec::with_capacity(k.saturating_sub(1));
        let mut ccdf = Vec::with_capacity(k.saturating_sub(1));
        let mut acc = BigRational::zero();
        for p in &d.probs()[..k.saturating_sub(1)] {
            acc += p;
            cdf.push(ratio_to_f64(&acc));
            ccdf.push(ratio_to_f64(&(BigRational::one() - &acc)));
        }
        Self::checked(values, widths, cdf, ccdf)
    }

    pub fn from_real(d: &RealDistribution) -> Self {
        let k = d.len();
        let probs = d.probs();
        let mut cdf = Vec::with_capacity(k.saturating_sub(1));
        let mut acc = 0.0;
        for p in &probs[..k.saturating_sub(1)] {
            acc += p;
            cdf.push(acc);
        }
        let mut ccdf = vec![0.0; k.saturating_sub(1)];
        let mut tail = 0.0;
        for i in (0..k.saturating_sub(1)).rev() {
            tail += probs[i + 1];
            ccdf[i] = tail;
        }
        // renormalise against rounding in the weights
        let total = acc + probs.last().copied().unwrap_or(0.0);
        if total > 0.0 {
            cdf.iter_mut().for_each(|c| *c /= total);
            ccdf.iter_mut().for_each(|c| *c /= total);
        }
        let widths = probs.iter().map(|p| p / total).collect();
        Self::checked(d.values().to_vec(), widths, cdf, ccdf)
    }

    fn checked(values: Vec<f64>, widths: Vec<f64>, cdf: Vec<f64>, ccdf: Vec<f64>) -> Self {
        assert!(!values.is_empty(), "quantile view of an empty law");
        assert!(values.windows(2).all(|w| w[0] <= w[1]), "quantile values must be nondecreasing");
        QuantileView {
            values,
            widths,
            cdf,
            ccdf,
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.cdf
    }

    /// `F⁻¹(u)` for `u ∈ (0, 1)`.
    pub fn eval(&self, u: f64) -> f64 {
        let i = self.cdf.partition_point(|&c| c < u);
        self.values[i]
    }

    /// Normal quantiles at the breakpoints, padded with `∓∞`, taking each
    /// from whichever tail is smaller for accuracy.
    fn normal_breakpoints(&self) -> Vec<f64> {
        let mut z = Vec::with_capacity(self.cdf.len() + 2);
        z.push(f64::NEG_INFINITY);
        for (&c, &cc) in self.cdf.iter().zip(&self.ccdf) {
            z.push(if c <= 0.5 { normal::quantile(c) } else { normal::upper_quantile(cc) });
        }
        z.push(f64::INFINITY);
        z
    }
}

/// `(∫_a^b Φ⁻¹(u) du, ∫_a^b Φ⁻¹(u)² du)` for `0 ≤ a ≤ b ≤ 1`.
pub fn normal_partial_moments(a: f64, b: f64) -> (f64, f64) {
    assert!(0.0 <= a && a <= b && b <= 1.0, "need 0 <= a <= b <= 1, got [{a}, {b}]");
    if a == b {
        return (0.0, 0.0);
    }
    let za = normal::quantile(a);
    let zb = normal::quantile(b);
    (normal::first_moment_between(za, zb), normal::second_moment_between(za, zb))
}

/// `d₂` between two step quantile functions.
pub fn d2_quantiles(a: &QuantileView, b: &QuantileView) -> f64 {
    let (mut i, mut j) = (0, 0);
    let mut u = 0.0;
    let mut sum = 0.0;
    loop {
        let next_a = a.cdf.get(i).copied().unwrap_or(1.0);
        let next_b = b.cdf.get(j).copied().unwrap_or(1.0);
        let next = next_a.min(next_b);
        let diff = a.values[i] - b.values[j];
        sum += diff * diff * (next - u).max(0.0);
        u = next;
        let (done_a, done_b) = (i == a.cdf.len(), j == b.cdf.len());
        if done_a && done_b {
            break;
        }
        if next_a <= next && !done_a {
            i += 1;
        }
        if next_b <= next && !done_b {
            j += 1;
        }
    }
    sum.max(0.0).sqrt()
}

/// `d₂` between a step quantile function and the standard normal.
pub fn d2_quantile_to_normal(q: &QuantileView) -> f64 {
    let z = q.normal_breakpoints();
    let sum: f64 = q
        .values
        .iter()
        .zip(&q.widths)
        .enumerate()
        .map(|(i, (&v, &w))| {
            let m1 = normal::first_moment_between(z[i], z[i + 1]);
            let m2 = normal::second_moment_between(z[i], z[i + 1]);
            v * v * w - 2.0 * v * m1 + m2
        })
        .sum();
    sum.max(0.0).sqrt()
}

/// `d₂(μ, ν)` for finite laws (through their affine views).
pub fn d2_discrete(mu: &DiscreteDistribution, nu: &DiscreteDistribution) -> f64 {
    d2_quantiles(&QuantileView::from_discrete(mu), &QuantileView::from_discrete(nu))
}

/// `d₂(μ, Z)` with `Z` standard normal.
pub fn d2_to_normal(mu: &DiscreteDistribution) -> f64 {
    d2_quantile_to_normal(&QuantileView::from_discrete(mu))
}

pub fn d2_real_to_normal(mu: &RealDistribution) -> f64 {
    d2_quantile_to_normal(&QuantileView::from_real(mu))
}

/// Both sides of the weighted-sum inequality `d₂(Σ a_j X_j, Z) ≤ Σ a_j² d₂(X_j, Z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InequalityCheck {
    pub lhs: f64,
    pub rhs: f64,
}

/// Slack for floating-point comparisons of the audited inequalities.
pub const INEQUALITY_TOLERANCE: f64 = 1e-9;

impl InequalityCheck {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs + INEQUALITY_TOLERANCE
    }
}

const MOMENT_TOLERANCE: f64 = 1e-12;

/// Evaluates both sides for independent standardized `X_j` and coefficients
/// with `Σ a_j² = 1`. The law of the sum is formed by scaling supports and
/// convolving.
pub fn check_mallows_sum_inequality(laws: &[DiscreteDistribution], coeffs: &[f64]) -> Result<InequalityCheck> {
    if laws.is_empty() || laws.len() != coeffs.len() {
        return Err(Error::ConstraintViolated(format!(
            "{} laws and {} coefficients",
            laws.len(),
            coeffs.len()
        )));
    }
    let norm: f64 = coeffs.iter().map(|a| a * a).sum();
    if (norm - 1.0).abs() > MOMENT_TOLERANCE {
        return Err(Error::ConstraintViolated(format!("sum of squared coefficients is {norm}")));
    }
    for (j, law) in laws.iter().enumerate() {
        let m = law.moments();
        let (mean, var) = (m.mean_f64(), m.variance_f64());
        if mean.abs() > MOMENT_TOLERANCE || (var - 1.0).abs() > MOMENT_TOLERANCE {
            return Err(Error::ConstraintViolated(format!(
                "law {j} is not standardized (mean {mean}, variance {var})"
            )));
        }
    }
    let sum = laws
        .iter()
        .zip(coeffs)
        .map(|(law, &a)| RealDistribution::from_discrete(law).scale(a))
        .reduce(|acc, x| acc.convolve(&x))
        .expect("nonempty");
    let lhs = d2_real_to_normal(&sum);
    let rhs = laws.iter().zip(coeffs).map(|(law, a)| a * a * d2_to_normal(law)).sum();
    Ok(InequalityCheck { lhs, rhs })
}
