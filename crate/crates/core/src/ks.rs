//! Kolmogorov–Smirnov distance of a finite law to the standard normal.

use crate::distribution::{DiscreteDistribution, RealDistribution};
use crate::normal;

/// `sup_x |F(x) − Φ(x)|` for a step CDF with sorted jump points `values`.
/// The supremum is attained at a jump, either just before or at it.
pub fn ks_steps_to_normal(values: &[f64], probs: &[f64]) -> f64 {
    let mut before = 0.0;
    let mut sup: f64 = 0.0;
    for (&x, &p) in values.iter().zip(probs) {
        let after = before + p;
        let phi = normal::cdf(x);
        sup = sup.max((before - phi).abs()).max((after - phi).abs());
        before = after;
    }
    sup
}

pub fn ks_to_normal(d: &DiscreteDistribution) -> f64 {
    ks_steps_to_normal(&d.real_support(), &d.real_probs())
}

pub fn ks_real_to_normal(d: &RealDistribution) -> f64 {
    ks_steps_to_normal(d.values(), d.probs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_mass_at_zero() {
        assert_eq!(ks_steps_to_normal(&[0.0], &[1.0]), 0.5);
    }

    #[test]
    fn rademacher() {
        // largest gap is just below +1: |1/2 − Φ(1)|
        let d = ks_steps_to_normal(&[-1.0, 1.0], &[0.5, 0.5]);
        assert!((d - (normal::cdf(1.0) - 0.5)).abs() < 1e-15);
    }
}
