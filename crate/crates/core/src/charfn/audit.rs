//! Fixed audit suites for the inequality checkers. The grids, trial counts
//! and seeds here are the configuration shared by the test suite and the
//! `audit` command.

use super::{check_lindeberg_bound, check_lipschitz_bound, check_simplified_bound, product_difference_bound};
use crate::coxeter::{Family, IrreducibleType};
use crate::distribution::{exact_t_distribution, DiscreteDistribution};
use crate::error::Result;
use crate::wasserstein::{d2_to_normal, InequalityCheck};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

pub const MAX_ORDER: u64 = 10_000;
pub const RANDOM_TRIALS: usize = 1000;
pub const AUDIT_SEED: u64 = 20_250_917;
/// Multiples of the smallest admissible `s_n` used on the grid.
pub const SCALE_MULTIPLIERS: [f64; 4] = [1.0, 2.0, 4.0, 8.0];

/// `ζ ∈ {0.1, 0.2, …, 3.0}`.
pub fn zeta_grid() -> Vec<f64> {
    (1..=30).map(|i| i as f64 / 10.0).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditOutcome {
    pub name: &'static str,
    pub checks: usize,
    pub violations: usize,
    /// Largest `lhs − rhs` seen; negative when every check had slack.
    pub worst_excess: f64,
}

impl AuditOutcome {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.checks > 0
    }

    fn collect(name: &'static str, checks: impl IntoIterator<Item = InequalityCheck>) -> Self {
        let mut out = AuditOutcome {
            name,
            checks: 0,
            violations: 0,
            worst_excess: f64::NEG_INFINITY,
        };
        for c in checks {
            out.checks += 1;
            out.violations += usize::from(!c.holds());
            out.worst_excess = out.worst_excess.max(c.lhs - c.rhs);
        }
        out
    }
}

/// Every irreducible type with at most `max_order` elements.
pub fn small_factor_types(max_order: u64) -> Vec<IrreducibleType> {
    let fits = |t: &IrreducibleType| t.order().to_u64().is_some_and(|o| o <= max_order);
    let mut out = Vec::new();
    for (family, start) in [(Family::A, 1), (Family::B, 2), (Family::D, 4), (Family::I2, 3)] {
        for p in start.. {
            let t = IrreducibleType::new(family, Some(p)).expect("valid parameter");
            if !fits(&t) {
                break;
            }
            out.push(t);
        }
    }
    for family in [Family::H3, Family::F4, Family::H4, Family::E6, Family::E7, Family::E8] {
        let t = IrreducibleType::exceptional(family).expect("exceptional");
        if fits(&t) {
            out.push(t);
        }
    }
    out
}

fn centered_laws(types: &[IrreducibleType]) -> Result<Vec<(IrreducibleType, DiscreteDistribution)>> {
    types
        .par_iter()
        .map(|t| Ok((*t, exact_t_distribution(t, MAX_ORDER)?.centered())))
        .collect()
}

/// Lindeberg-type bound and its simplified form over all factor laws of
/// order at most [`MAX_ORDER`], the ζ-grid, and admissible `s_n`.
pub fn lindeberg_grid() -> Result<(AuditOutcome, AuditOutcome)> {
    let laws = centered_laws(&small_factor_types(MAX_ORDER))?;
    let grid = zeta_grid();
    let zeta_max = grid.iter().copied().fold(0.0, f64::max);
    let per_law: Vec<(Vec<InequalityCheck>, Vec<InequalityCheck>)> = laws
        .par_iter()
        .map(|(t, d)| {
            let sigma = d.moments().variance_f64().sqrt();
            let bound = 2.0 * t.rank() as f64;
            let mut full = Vec::new();
            let mut simple = Vec::new();
            for c in SCALE_MULTIPLIERS {
                let s_n = c * zeta_max * sigma.max(1.0);
                for &z in &grid {
                    full.push(check_lindeberg_bound(d, s_n, z)?);
                    simple.push(check_simplified_bound(d, bound, s_n, z)?);
                }
            }
            Ok((full, simple))
        })
        .collect::<Result<_>>()?;
    let (full, simple): (Vec<_>, Vec<_>) = per_law.into_iter().unzip();
    Ok((
        AuditOutcome::collect("lindeberg-grid", full.into_iter().flatten()),
        AuditOutcome::collect("simplified-grid", simple.into_iter().flatten()),
    ))
}

/// Simplified bound at random admissible `(ζ, s_n)` on laws of rank ≤ 4.
pub fn simplified_random(trials: usize, seed: u64) -> Result<AuditOutcome> {
    let types: Vec<_> = small_factor_types(MAX_ORDER)
        .into_iter()
        .filter(|t| t.rank() <= 4 && (t.family() != Family::I2 || t.parameter() <= 20))
        .collect();
    let laws = centered_laws(&types)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::with_capacity(trials);
    for _ in 0..trials {
        let (t, d) = &laws[rng.gen_range(0..laws.len())];
        let sigma = d.moments().variance_f64().sqrt();
        let zeta: f64 = rng.gen_range(-3.0..=3.0);
        let lo = zeta.abs() * sigma.max(1.0);
        let s_n = if lo == 0.0 { 1.0 } else { lo * rng.gen_range(1.0..10.0) };
        checks.push(check_simplified_bound(d, 2.0 * t.rank() as f64, s_n, zeta)?);
    }
    Ok(AuditOutcome::collect("simplified-random", checks))
}

fn unit_disk_point(rng: &mut ChaCha8Rng) -> Complex64 {
    // one in eight on the circle itself, where equality cases live
    let r = if rng.gen_ratio(1, 8) { 1.0 } else { rng.gen::<f64>().sqrt() };
    Complex64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU))
}

/// Random tuples of length 1..=20 from the closed unit disk.
pub fn product_random(trials: usize, seed: u64) -> Result<AuditOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::with_capacity(trials);
    for _ in 0..trials {
        let len = rng.gen_range(1..=20);
        let a: Vec<_> = (0..len).map(|_| unit_disk_point(&mut rng)).collect();
        let b: Vec<_> = (0..len).map(|_| unit_disk_point(&mut rng)).collect();
        checks.push(product_difference_bound(&a, &b)?);
    }
    Ok(AuditOutcome::collect("product-random", checks))
}

/// Standardized `I2(m)` laws, `m = 3..=12`, at random weight and ζ, plus the
/// standardized `A_5` law at weight 1.
pub fn lipschitz_random(trials: usize, seed: u64) -> Result<AuditOutcome> {
    let laws: Vec<(DiscreteDistribution, f64)> = (3..=12)
        .map(|m| {
            let d = exact_t_distribution(&IrreducibleType::i2(m)?, MAX_ORDER)?.standardize()?;
            let d2 = d2_to_normal(&d);
            Ok((d, d2))
        })
        .collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::with_capacity(trials + 3);
    for _ in 0..trials {
        let (d, d2) = &laws[rng.gen_range(0..laws.len())];
        let weight = rng.gen_range(0.0..=1.0);
        let zeta = rng.gen_range(-5.0..=5.0);
        checks.push(check_lipschitz_bound(d, weight, zeta, *d2)?);
    }
    let a5 = exact_t_distribution(&IrreducibleType::a(5)?, MAX_ORDER)?.standardize()?;
    let d2 = d2_to_normal(&a5);
    for zeta in [0.5, 1.0, 2.0] {
        checks.push(check_lipschitz_bound(&a5, 1.0, zeta, d2)?);
    }
    Ok(AuditOutcome::collect("lipschitz-random", checks))
}

/// All suites with the default configuration, in a fixed order.
pub fn run_all() -> Result<Vec<AuditOutcome>> {
    let (lindeberg, simplified) = lindeberg_grid()?;
    Ok(vec![
        lindeberg,
        simplified,
        simplified_random(RANDOM_TRIALS, AUDIT_SEED)?,
        product_random(RANDOM_TRIALS, AUDIT_SEED + 1)?,
        lipschitz_random(RANDOM_TRIALS, AUDIT_SEED + 2)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_types_listing() {
        let names: Vec<String> = small_factor_types(200).iter().map(|t| t.to_string()).collect();
        assert!(names.contains(&"A4".to_string()));
        assert!(!names.contains(&"A5".to_string()));
        assert!(names.contains(&"D4".to_string()));
        assert!(names.contains(&"H3".to_string()));
        assert!(names.contains(&"I2(100)".to_string()));
        assert!(!names.contains(&"I2(101)".to_string()));
    }

    #[test]
    fn random_suites_pass() {
        assert!(product_random(200, 1).unwrap().passed());
        assert!(lipschitz_random(200, 2).unwrap().passed());
        assert!(simplified_random(200, 3).unwrap().passed());
    }
}
