//! Exact laws of the two-sided descent statistic.
//!
//! Probabilities are big rationals throughout. Standardization attaches an
//! affine view `x ↦ (x − shift)/scale` without touching the exact data; reals
//! appear only when a view is evaluated.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::coxeter::perm;
use crate::coxeter::{CoxeterGroup, Dihedral, Family, IrreducibleType};
use crate::enumerate::{self, check_cap};
use crate::error::{Error, Result};

/// Affine view `x ↦ (x − shift) / sqrt(scale_squared)`. Both parameters are
/// exact so the standardized moments are exactly 0 and 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineView {
    pub shift: BigRational,
    pub scale_squared: BigRational,
}

impl AffineView {
    pub fn shift_f64(&self) -> f64 {
        ratio_to_f64(&self.shift)
    }

    pub fn scale_f64(&self) -> f64 {
        ratio_to_f64(&self.scale_squared).sqrt()
    }

    pub fn apply(&self, x: &BigRational) -> f64 {
        ratio_to_f64(&(x - &self.shift)) / self.scale_f64()
    }
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().expect("rational converts to f64")
}

/// Finite law with exact rational support points and probabilities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteDistribution {
    support: Vec<BigRational>,
    probs: Vec<BigRational>,
    view: Option<AffineView>,
}

/// Exact mean and variance; the third absolute central moment as a real.
#[derive(Debug, Clone, PartialEq)]
pub struct Moments {
    pub mean: BigRational,
    pub variance: BigRational,
    pub third_abs_central: f64,
}

impl Moments {
    pub fn mean_f64(&self) -> f64 {
        ratio_to_f64(&self.mean)
    }

    pub fn variance_f64(&self) -> f64 {
        ratio_to_f64(&self.variance)
    }
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl DiscreteDistribution {
    /// Builds a law from `(point, probability)` pairs. Repeated points are
    /// merged, zero-probability points dropped; the total must be exactly 1.
    pub fn new(points: impl IntoIterator<Item = (BigRational, BigRational)>) -> Result<Self> {
        let mut map: BTreeMap<BigRational, BigRational> = BTreeMap::new();
        for (x, p) in points {
            if p.is_negative() {
                return Err(Error::ConstraintViolated(format!("negative probability {p}")));
            }
            *map.entry(x).or_insert_with(BigRational::zero) += p;
        }
        map.retain(|_, p| !p.is_zero());
        let total: BigRational = map.values().sum();
        if !total.is_one() {
            return Err(Error::ConstraintViolated(format!("probabilities sum to {total}, not 1")));
        }
        let (support, probs) = map.into_iter().unzip();
        Ok(DiscreteDistribution {
            support,
            probs,
            view: None,
        })
    }

    pub fn point_mass(x: BigRational) -> Self {
        DiscreteDistribution {
            support: vec![x],
            probs: vec![BigRational::one()],
            view: None,
        }
    }

    /// Law of a uniform draw from a population given by integer value counts.
    pub fn from_counts(counts: &BTreeMap<i64, BigUint>) -> Result<Self> {
        let total: BigUint = counts.values().sum();
        if total.is_zero() {
            return Err(Error::ConstraintViolated("no observations".into()));
        }
        let total = BigInt::from(total);
        Self::new(
            counts
                .iter()
                .map(|(&x, c)| (int(x), BigRational::new(BigInt::from(c.clone()), total.clone()))),
        )
    }

    /// Convenience for integer-valued laws given as `u64` counts at `0..len`.
    pub fn from_dense_counts(counts: &[u64]) -> Result<Self> {
        let map = counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (i as i64, BigUint::from(c)))
            .collect();
        Self::from_counts(&map)
    }

    pub fn support(&self) -> &[BigRational] {
        &self.support
    }

    pub fn probs(&self) -> &[BigRational] {
        &self.probs
    }

    pub fn view(&self) -> Option<&AffineView> {
        self.view.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.view.is_none()
    }

    /// Drops the affine view, recovering the exact law.
    pub fn unviewed(&self) -> DiscreteDistribution {
        DiscreteDistribution {
            view: None,
            ..self.clone()
        }
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    /// Probability of the exact support point `x` (ignores the view).
    pub fn prob_of(&self, x: &BigRational) -> BigRational {
        match self.support.binary_search(x) {
            Ok(i) => self.probs[i].clone(),
            Err(_) => BigRational::zero(),
        }
    }

    /// Support points as reals, through the view when present.
    pub fn real_support(&self) -> Vec<f64> {
        match &self.view {
            None => self.support.iter().map(ratio_to_f64).collect(),
            Some(v) => self.support.iter().map(|x| v.apply(x)).collect(),
        }
    }

    pub fn real_probs(&self) -> Vec<f64> {
        self.probs.iter().map(ratio_to_f64).collect()
    }

    /// Moments of the exact law, ignoring any view.
    pub fn exact_moments(&self) -> Moments {
        let mean: BigRational = self.support.iter().zip(&self.probs).map(|(x, p)| x * p).sum();
        let variance: BigRational = self
            .support
            .iter()
            .zip(&self.probs)
            .map(|(x, p)| {
                let d = x - &mean;
                &d * &d * p
            })
            .sum();
        let third: BigRational = self
            .support
            .iter()
            .zip(&self.probs)
            .map(|(x, p)| {
                let d = (x - &mean).abs();
                &d * &d * &d * p
            })
            .sum();
        Moments {
            mean,
            variance,
            third_abs_central: ratio_to_f64(&third),
        }
    }

    /// Moments of the law as seen through its view (exact for mean and
    /// variance, since the view parameters are exact).
    pub fn moments(&self) -> Moments {
        let m = self.exact_moments();
        match &self.view {
            None => m,
            Some(v) => {
                let scale = v.scale_f64();
                // exactly zero when the view is centred on the mean
                let mean = if m.mean == v.shift {
                    BigRational::zero()
                } else {
                    BigRational::from_float(ratio_to_f64(&(&m.mean - &v.shift)) / scale).expect("finite")
                };
                Moments {
                    mean,
                    variance: &m.variance / &v.scale_squared,
                    third_abs_central: self.third_abs_about(&m.mean) / (scale * scale * scale),
                }
            }
        }
    }

    fn third_abs_about(&self, center: &BigRational) -> f64 {
        let s: BigRational = self
            .support
            .iter()
            .zip(&self.probs)
            .map(|(x, p)| {
                let d = (x - center).abs();
                &d * &d * &d * p
            })
            .sum();
        ratio_to_f64(&s)
    }

    /// Attaches the view `shift = mean`, `scale = standard deviation`.
    pub fn standardize(&self) -> Result<DiscreteDistribution> {
        let m = self.exact_moments();
        if m.variance.is_zero() {
            return Err(Error::ZeroVariance);
        }
        Ok(DiscreteDistribution {
            view: Some(AffineView {
                shift: m.mean,
                scale_squared: m.variance,
            }),
            ..self.unviewed()
        })
    }

    /// The exact law shifted to mean zero.
    pub fn centered(&self) -> DiscreteDistribution {
        let mean = self.exact_moments().mean;
        DiscreteDistribution {
            support: self.support.iter().map(|x| x - &mean).collect(),
            probs: self.probs.clone(),
            view: None,
        }
    }

    pub fn to_json(&self) -> DistributionJson {
        DistributionJson {
            support: self.support.iter().map(|x| x.to_string()).collect(),
            probs: self.probs.iter().map(|p| p.to_string()).collect(),
            shift: self.view.as_ref().map(AffineView::shift_f64),
            scale: self.view.as_ref().map(AffineView::scale_f64),
        }
    }

    /// Validates a serialized law. A view read from JSON carries the binary
    /// values of its `shift` and `scale` numbers.
    pub fn from_json(json: &DistributionJson) -> Result<Self> {
        if json.support.len() != json.probs.len() {
            return Err(Error::ConstraintViolated("support and probs differ in length".into()));
        }
        let parse = |s: &String| -> Result<BigRational> {
            s.trim()
                .parse::<BigRational>()
                .map_err(|_| Error::ConstraintViolated(format!("not a rational: {s:?}")))
        };
        let support: Vec<BigRational> = json.support.iter().map(parse).collect::<Result<_>>()?;
        if support.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::ConstraintViolated("support must be strictly increasing".into()));
        }
        let probs: Vec<BigRational> = json.probs.iter().map(parse).collect::<Result<_>>()?;
        if probs.iter().any(|p| !p.is_positive()) {
            return Err(Error::ConstraintViolated("probabilities must be positive".into()));
        }
        let mut d = Self::new(support.into_iter().zip(probs))?;
        d.view = match (json.shift, json.scale) {
            (None, None) => None,
            (Some(shift), Some(scale)) if scale > 0.0 && scale.is_finite() && shift.is_finite() => {
                let scale = BigRational::from_float(scale).expect("finite");
                Some(AffineView {
                    shift: BigRational::from_float(shift).expect("finite"),
                    scale_squared: &scale * &scale,
                })
            }
            _ => return Err(Error::ConstraintViolated("shift and scale must both be set, scale > 0".into())),
        };
        Ok(d)
    }
}

impl fmt::Display for DiscreteDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (x, p)) in self.support.iter().zip(&self.probs).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}: {p}")?;
        }
        write!(f, "}}")?;
        if let Some(v) = &self.view {
            write!(f, " viewed as (x - {})/{}", v.shift_f64(), v.scale_f64())?;
        }
        Ok(())
    }
}

/// Wire form: `{"support": [...], "probs": [...], "shift": .., "scale": ..}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionJson {
    pub support: Vec<String>,
    pub probs: Vec<String>,
    pub shift: Option<f64>,
    pub scale: Option<f64>,
}

/// Law of `X + Y` for independent `X ~ d1`, `Y ~ d2`. Both must be exact.
pub fn convolve(d1: &DiscreteDistribution, d2: &DiscreteDistribution) -> DiscreteDistribution {
    assert!(d1.is_exact() && d2.is_exact(), "convolve takes exact laws (no affine view)");
    let mut map: BTreeMap<BigRational, BigRational> = BTreeMap::new();
    for (x, p) in d1.support.iter().zip(&d1.probs) {
        for (y, q) in d2.support.iter().zip(&d2.probs) {
            *map.entry(x + y).or_insert_with(BigRational::zero) += p * q;
        }
    }
    let (support, probs) = map.into_iter().unzip();
    DiscreteDistribution {
        support,
        probs,
        view: None,
    }
}

/// Exact law of `t` on the dihedral group I2(m).
pub fn dihedral_t_distribution(m: u32) -> DiscreteDistribution {
    let m = BigInt::from(m);
    let end = BigRational::new(BigInt::one(), &m * 2);
    let mid = BigRational::new(&m - 1, m);
    DiscreteDistribution {
        support: vec![int(0), int(2), int(4)],
        probs: vec![end.clone(), mid, end],
        view: None,
    }
}

/// Exact law of `t` for a uniform element of one irreducible factor.
/// I2(m) is closed-form for every `m`; other factors are enumerated and must
/// have order at most `cap`.
pub fn exact_t_distribution(t: &IrreducibleType, cap: u64) -> Result<DiscreteDistribution> {
    if t.family() == Family::I2 {
        return Ok(dihedral_t_distribution(t.parameter()));
    }
    check_cap(t, &t.order(), cap)?;
    let mut counts = vec![0u64; 2 * t.rank() + 1];
    let p = t.rank();
    match t.family() {
        Family::A => {
            let mut inv = vec![0u32; p + 1];
            perm::for_each_permutation(p + 1, |w| {
                for (i, &x) in w.iter().enumerate() {
                    inv[x as usize] = i as u32;
                }
                counts[perm::adjacent_descents(w) + perm::adjacent_descents(&inv)] += 1;
            });
        }
        Family::B | Family::D => {
            let even = t.family() == Family::D;
            let des = if even { perm::des_d } else { perm::des_b };
            let mut inv = vec![0i32; p];
            perm::for_each_signed_permutation(p, even, |w| {
                for (i, &x) in w.iter().enumerate() {
                    let pos = i as i32 + 1;
                    inv[(x.unsigned_abs() - 1) as usize] = if x < 0 { -pos } else { pos };
                }
                counts[des(w) + des(&inv)] += 1;
            });
        }
        f => {
            let table = enumerate::exceptional_table(f, cap)?;
            for &v in table.t_values() {
                counts[v as usize] += 1;
            }
        }
    }
    DiscreteDistribution::from_dense_counts(&counts)
}

/// Law of `t` on a product group: the convolution of its factor laws.
pub fn product_t_distribution(group: &CoxeterGroup, cap: u64) -> Result<DiscreteDistribution> {
    group
        .factors()
        .iter()
        .try_fold(DiscreteDistribution::point_mass(int(0)), |acc, t| {
            Ok(convolve(&acc, &exact_t_distribution(t, cap)?))
        })
}

/// Law of `t` by evaluating the statistic on every element of the full
/// product enumeration. Independent of the per-factor fast paths.
pub fn brute_force_t_distribution(group: &CoxeterGroup, cap: u64) -> Result<DiscreteDistribution> {
    let table = enumerate::enumerate(group, cap)?;
    let mut counts = vec![0u64; 2 * group.rank() + 1];
    for w in table.iter() {
        counts[w.two_sided_descent()] += 1;
    }
    DiscreteDistribution::from_dense_counts(&counts)
}

/// Law of `t` for a dihedral group by enumerating its elements through the
/// generic element API.
pub fn dihedral_brute_force(m: u32) -> DiscreteDistribution {
    let mut counts = vec![0u64; 5];
    for i in 0..2 * m as u64 {
        counts[Dihedral::from_index(m, i).two_sided_descent()] += 1;
    }
    DiscreteDistribution::from_dense_counts(&counts).expect("nonempty")
}

/// Finite law on the reals with `f64` weights, for laws that leave the
/// rationals (weighted sums with real coefficients).
#[derive(Debug, Clone, PartialEq)]
pub struct RealDistribution {
    values: Vec<f64>,
    probs: Vec<f64>,
}

/// Points closer than this (relative to their magnitude) are merged.
pub const MERGE_TOLERANCE: f64 = 1e-12;

impl RealDistribution {
    /// Sorts, merges coincident points and drops zero weights.
    pub fn new(points: impl IntoIterator<Item = (f64, f64)>) -> Self {
        let mut pts: Vec<(f64, f64)> = points.into_iter().filter(|&(_, p)| p > 0.0).collect();
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut values: Vec<f64> = Vec::with_capacity(pts.len());
        let mut probs: Vec<f64> = Vec::with_capacity(pts.len());
        for (x, p) in pts {
            match values.last() {
                Some(&last) if (x - last).abs() <= MERGE_TOLERANCE * last.abs().max(1.0) => {
                    *probs.last_mut().expect("nonempty") += p;
                }
                _ => {
                    values.push(x);
                    probs.push(p);
                }
            }
        }
        RealDistribution { values, probs }
    }

    /// The law as seen through its affine view (if any).
    pub fn from_discrete(d: &DiscreteDistribution) -> Self {
        RealDistribution {
            values: d.real_support(),
            probs: d.real_probs(),
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Law of `c·X`.
    pub fn scale(&self, c: f64) -> Self {
        Self::new(self.values.iter().map(|&x| c * x).zip(self.probs.iter().copied()))
    }

    pub fn convolve(&self, other: &Self) -> Self {
        Self::new(
            self.values
                .iter()
                .zip(&self.probs)
                .flat_map(|(&x, &p)| other.values.iter().zip(&other.probs).map(move |(&y, &q)| (x + y, p * q))),
        )
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().zip(&self.probs).map(|(x, p)| x * p).sum()
    }

    pub fn variance(&self) -> f64 {
        let m = self.mean();
        self.values.iter().zip(&self.probs).map(|(x, p)| (x - m) * (x - m) * p).sum()
    }
}
