use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Family tag of an irreducible finite Coxeter group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    D,
    I2,
    H3,
    H4,
    F4,
    E6,
    E7,
    E8,
}

impl Family {
    pub fn is_exceptional(self) -> bool {
        matches!(
            self,
            Family::H3 | Family::H4 | Family::F4 | Family::E6 | Family::E7 | Family::E8
        )
    }
}

/// Largest parameter accepted for the A, B, D and I2 families.
pub const MAX_PARAMETER: u32 = 1 << 24;

/// One irreducible finite Coxeter group: family plus rank (A/B/D) or bond
/// order `m` (I2). Only constructible through [`IrreducibleType::new`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IrreducibleType {
    family: Family,
    param: u32,
}

impl IrreducibleType {
    /// Validates a family/parameter pair. Exceptional families take no
    /// parameter (or their own rank).
    pub fn new(family: Family, parameter: Option<u32>) -> Result<Self> {
        let out_of_range =
            |msg: &str| Err(Error::ParameterOutOfRange(format!("{family:?}: {msg}")));
        let param = match family {
            Family::A | Family::B | Family::D | Family::I2 => {
                let Some(p) = parameter else {
                    return out_of_range("missing parameter");
                };
                let min = match family {
                    Family::A => 1,
                    Family::B => 2,
                    Family::D => 4,
                    _ => 3,
                };
                if p < min {
                    let name = if family == Family::I2 { "m" } else { "p" };
                    return out_of_range(&format!("requires {name} >= {min}, got {p}"));
                }
                if p > MAX_PARAMETER {
                    return out_of_range(&format!("parameter {p} exceeds {MAX_PARAMETER}"));
                }
                p
            }
            _ => {
                let rank = exceptional_rank(family);
                match parameter {
                    None => rank,
                    Some(p) if p == rank => rank,
                    Some(p) => return out_of_range(&format!("takes no parameter, got {p}")),
                }
            }
        };
        Ok(IrreducibleType { family, param })
    }

    pub fn a(p: u32) -> Result<Self> {
        Self::new(Family::A, Some(p))
    }
    pub fn b(p: u32) -> Result<Self> {
        Self::new(Family::B, Some(p))
    }
    pub fn d(p: u32) -> Result<Self> {
        Self::new(Family::D, Some(p))
    }
    pub fn i2(m: u32) -> Result<Self> {
        Self::new(Family::I2, Some(m))
    }
    pub fn exceptional(family: Family) -> Result<Self> {
        Self::new(family, None)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// `p` for A/B/D, `m` for I2, the rank for exceptional types.
    pub fn parameter(&self) -> u32 {
        self.param
    }

    pub fn rank(&self) -> usize {
        match self.family {
            Family::I2 => 2,
            _ => self.param as usize,
        }
    }

    pub fn order(&self) -> BigUint {
        let p = self.param as u64;
        match self.family {
            Family::A => factorial(p + 1),
            Family::B => factorial(p) << p as usize,
            Family::D => factorial(p) << (p - 1) as usize,
            Family::I2 => BigUint::from(2 * p),
            Family::H3 => BigUint::from(120u32),
            Family::H4 => BigUint::from(14_400u32),
            Family::F4 => BigUint::from(1_152u32),
            Family::E6 => BigUint::from(51_840u32),
            Family::E7 => BigUint::from(2_903_040u32),
            Family::E8 => BigUint::from(696_729_600u32),
        }
    }

    /// The standard Coxeter matrix in this crate's generator ordering:
    ///
    /// * A_p: `s_i` swaps one-line positions `i, i+1` (0-based), left to right.
    /// * B_p: generator 0 negates position 0; generator `i >= 1` swaps
    ///   positions `i-1, i`.
    /// * D_p: generator 0 swaps positions 0, 1 and negates both; generator
    ///   `i >= 1` swaps positions `i-1, i`.
    /// * I2(m): generators `s, t`.
    /// * Exceptional types: Bourbaki numbering, shifted to start at 0
    ///   (H3 `0-5-1-2`, H4 `0-5-1-2-3`, F4 `0-1=4=2-3`, E_n with generator 1
    ///   attached to generator 3 and the chain `0-2-3-4-...`).
    pub fn coxeter_matrix(&self) -> CoxeterMatrix {
        let n = self.rank();
        let mut m = vec![vec![2u32; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        let mut bond = |i: usize, j: usize, v: u32| {
            m[i][j] = v;
            m[j][i] = v;
        };
        match self.family {
            Family::A => (1..n).for_each(|i| bond(i - 1, i, 3)),
            Family::B => {
                bond(0, 1, 4);
                (2..n).for_each(|i| bond(i - 1, i, 3));
            }
            Family::D => {
                bond(0, 2, 3);
                (2..n).for_each(|i| bond(i - 1, i, 3));
            }
            Family::I2 => bond(0, 1, self.param),
            Family::H3 | Family::H4 => {
                bond(0, 1, 5);
                (2..n).for_each(|i| bond(i - 1, i, 3));
            }
            Family::F4 => {
                bond(0, 1, 3);
                bond(1, 2, 4);
                bond(2, 3, 3);
            }
            Family::E6 | Family::E7 | Family::E8 => {
                bond(0, 2, 3);
                bond(1, 3, 3);
                (3..n).for_each(|i| bond(i - 1, i, 3));
            }
        }
        CoxeterMatrix { entries: m }
    }
}

fn exceptional_rank(family: Family) -> u32 {
    match family {
        Family::H3 => 3,
        Family::H4 | Family::F4 => 4,
        Family::E6 => 6,
        Family::E7 => 7,
        Family::E8 => 8,
        _ => unreachable!("not an exceptional family"),
    }
}

fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Spec-style constructor: `make_irreducible(D, Some(4))`.
pub fn make_irreducible(family: Family, parameter: Option<u32>) -> Result<IrreducibleType> {
    IrreducibleType::new(family, parameter)
}

impl fmt::Display for IrreducibleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::A => write!(f, "A{}", self.param),
            Family::B => write!(f, "B{}", self.param),
            Family::D => write!(f, "D{}", self.param),
            Family::I2 => write!(f, "I2({})", self.param),
            other => write!(f, "{other:?}"),
        }
    }
}

/// Symmetric matrix of bond orders. [`CoxeterMatrix::INFINITY`] marks an
/// infinite bond; finite groups never contain it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterMatrix {
    entries: Vec<Vec<u32>>,
}

impl CoxeterMatrix {
    pub const INFINITY: u32 = u32::MAX;

    pub fn new(entries: Vec<Vec<u32>>) -> Result<Self> {
        let n = entries.len();
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::ConstraintViolated("coxeter matrix is not square".into()));
            }
            for (j, &v) in row.iter().enumerate() {
                if v != entries[j][i] {
                    return Err(Error::ConstraintViolated(format!(
                        "coxeter matrix not symmetric at ({i},{j})"
                    )));
                }
                if (v == 1) != (i == j) || v == 0 {
                    return Err(Error::ConstraintViolated(format!(
                        "entry ({i},{j}) = {v}: m_ij = 1 must hold exactly on the diagonal"
                    )));
                }
            }
        }
        Ok(CoxeterMatrix { entries })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.entries
    }

    pub fn is_finite_valued(&self) -> bool {
        self.entries.iter().flatten().all(|&v| v != Self::INFINITY)
    }
}

/// An ordered direct product of irreducible factors. The empty product is
/// the trivial group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CoxeterGroup {
    factors: Vec<IrreducibleType>,
}

impl CoxeterGroup {
    pub fn new(factors: Vec<IrreducibleType>) -> Self {
        CoxeterGroup { factors }
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn irreducible(t: IrreducibleType) -> Self {
        CoxeterGroup { factors: vec![t] }
    }

    pub fn factors(&self) -> &[IrreducibleType] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(IrreducibleType::rank).sum()
    }

    pub fn order(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, t| acc * t.order())
    }

    /// `log10 |W|`, computed without materialising huge orders.
    pub fn log10_order(&self) -> f64 {
        self.factors.iter().map(log10_factor_order).sum()
    }

    /// First global generator index of each factor.
    pub fn generator_offsets(&self) -> Vec<usize> {
        let mut off = 0;
        self.factors
            .iter()
            .map(|t| {
                let o = off;
                off += t.rank();
                o
            })
            .collect()
    }

    /// Block-diagonal Coxeter matrix of the product (cross-factor bonds are 2).
    pub fn coxeter_matrix(&self) -> CoxeterMatrix {
        let n = self.rank();
        let mut m = vec![vec![2u32; n]; n];
        for (t, off) in self.factors.iter().zip(self.generator_offsets()) {
            let block = t.coxeter_matrix();
            for i in 0..block.size() {
                for j in 0..block.size() {
                    m[off + i][off + j] = block.get(i, j);
                }
            }
        }
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        CoxeterMatrix { entries: m }
    }
}

fn log10_factor_order(t: &IrreducibleType) -> f64 {
    let p = t.parameter() as f64;
    let log_fact = |n: u32| (2..=n).map(|k| (k as f64).log10()).sum::<f64>();
    match t.family() {
        Family::A => log_fact(t.parameter() + 1),
        Family::B => log_fact(t.parameter()) + p * 2f64.log10(),
        Family::D => log_fact(t.parameter()) + (p - 1.0) * 2f64.log10(),
        Family::I2 => (2.0 * p).log10(),
        _ => {
            let o: u64 = t.order().try_into().expect("exceptional orders fit in u64");
            (o as f64).log10()
        }
    }
}

impl fmt::Display for CoxeterGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, t) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for CoxeterGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_group(s)
    }
}

/// Parses a group string such as `"A4xI2(5)xB3"`.
///
/// Case-insensitive, whitespace ignored. An empty string or `"1"` is the
/// trivial group. Error positions are character offsets into `s`.
pub fn parse_group(s: &str) -> Result<CoxeterGroup> {
    let chars: Vec<(usize, char)> = s
        .chars()
        .enumerate()
        .filter(|(_, c)| !c.is_whitespace())
        .map(|(i, c)| (i, c.to_ascii_uppercase()))
        .collect();
    if chars.is_empty() || (chars.len() == 1 && chars[0].1 == '1') {
        return Ok(CoxeterGroup::trivial());
    }
    let mut factors = Vec::new();
    for token in chars.split(|&(_, c)| c == 'X') {
        let position = token.first().map(|&(i, _)| i).unwrap_or(s.chars().count());
        let text: String = token.iter().map(|&(_, c)| c).collect();
        factors.push(parse_factor(&text, position)?);
    }
    Ok(CoxeterGroup::new(factors))
}

fn parse_factor(text: &str, position: usize) -> Result<IrreducibleType> {
    if text.is_empty() {
        return Err(Error::parse(position, "empty factor"));
    }
    let exceptional = match text {
        "H3" => Some(Family::H3),
        "H4" => Some(Family::H4),
        "F4" => Some(Family::F4),
        "E6" => Some(Family::E6),
        "E7" => Some(Family::E7),
        "E8" => Some(Family::E8),
        _ => None,
    };
    if let Some(f) = exceptional {
        return IrreducibleType::exceptional(f);
    }
    let number = |digits: &str| -> Result<u32> {
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::parse(position, format!("bad factor {text:?}")));
        }
        digits
            .parse::<u32>()
            .map_err(|_| Error::ParameterOutOfRange(format!("{text}: parameter too large")))
    };
    if let Some(rest) = text.strip_prefix("I2(") {
        let digits = rest
            .strip_suffix(')')
            .ok_or_else(|| Error::parse(position, format!("unclosed parenthesis in {text:?}")))?;
        return IrreducibleType::i2(number(digits)?);
    }
    let (family, digits) = match text.split_at(1) {
        ("A", d) => (Family::A, d),
        ("B", d) => (Family::B, d),
        ("D", d) => (Family::D, d),
        ("E" | "F" | "H", _) => {
            return Err(Error::ParameterOutOfRange(format!(
                "{text}: no such exceptional type"
            )))
        }
        _ => return Err(Error::parse(position, format!("unknown factor {text:?}"))),
    };
    IrreducibleType::new(family, Some(number(digits)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_irreducible_examples() {
        let a1 = make_irreducible(Family::A, Some(1)).unwrap();
        assert_eq!(a1.rank(), 1);
        assert!(matches!(
            make_irreducible(Family::D, Some(3)),
            Err(Error::ParameterOutOfRange(_))
        ));
        assert_eq!(make_irreducible(Family::E8, None).unwrap().rank(), 8);
        assert!(make_irreducible(Family::B, Some(1)).is_err());
        assert!(make_irreducible(Family::I2, Some(2)).is_err());
        assert!(make_irreducible(Family::A, None).is_err());
        assert!(make_irreducible(Family::H3, Some(4)).is_err());
    }

    #[test]
    fn exceptional_ranks() {
        let ranks: Vec<usize> = [
            Family::H3,
            Family::H4,
            Family::F4,
            Family::E6,
            Family::E7,
            Family::E8,
        ]
        .into_iter()
        .map(|f| IrreducibleType::exceptional(f).unwrap().rank())
        .collect();
        assert_eq!(ranks, vec![3, 4, 4, 6, 7, 8]);
    }

    #[test]
    fn small_coxeter_matrices() {
        let i2 = IrreducibleType::i2(7).unwrap().coxeter_matrix();
        assert_eq!(i2.rows(), &[vec![1, 7], vec![7, 1]]);
        let a2 = IrreducibleType::a(2).unwrap().coxeter_matrix();
        assert_eq!(a2.rows(), &[vec![1, 3], vec![3, 1]]);
        let b2 = IrreducibleType::b(2).unwrap().coxeter_matrix();
        assert_eq!(b2, IrreducibleType::i2(4).unwrap().coxeter_matrix());
    }

    #[test]
    fn all_matrices_are_valid() {
        for s in ["A5", "B4", "D6", "I2(9)", "H3", "H4", "F4", "E6", "E7", "E8"] {
            let g: CoxeterGroup = s.parse().unwrap();
            let m = g.coxeter_matrix();
            let checked = CoxeterMatrix::new(m.rows().to_vec()).unwrap();
            assert!(checked.is_finite_valued());
            assert_eq!(checked.size(), g.rank());
        }
    }

    #[test]
    fn matrix_validation() {
        assert!(CoxeterMatrix::new(vec![vec![1, 3], vec![2, 1]]).is_err());
        assert!(CoxeterMatrix::new(vec![vec![1, 1], vec![1, 1]]).is_err());
        let inf = CoxeterMatrix::new(vec![
            vec![1, CoxeterMatrix::INFINITY],
            vec![CoxeterMatrix::INFINITY, 1],
        ])
        .unwrap();
        assert!(!inf.is_finite_valued());
    }

    #[test]
    fn parse_examples() {
        let g: CoxeterGroup = "A4xI2(5)".parse().unwrap();
        assert_eq!(g.factors(), &[IrreducibleType::a(4).unwrap(), IrreducibleType::i2(5).unwrap()]);
        assert_eq!(g.rank(), 6);
        assert!(matches!("D3".parse::<CoxeterGroup>(), Err(Error::ParameterOutOfRange(_))));
        assert_eq!("E8".parse::<CoxeterGroup>().unwrap().rank(), 8);
        let g: CoxeterGroup = " a4 X i2( 5 ) x b3 ".parse().unwrap();
        assert_eq!(g.to_string(), "A4xI2(5)xB3");
        assert_eq!("".parse::<CoxeterGroup>().unwrap(), CoxeterGroup::trivial());
        assert_eq!(CoxeterGroup::trivial().to_string(), "1");
    }

    #[test]
    fn parse_errors_carry_positions() {
        match "A4xQ7".parse::<CoxeterGroup>() {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!("A4x".parse::<CoxeterGroup>(), Err(Error::Parse { .. })));
        assert!(matches!("I2(5".parse::<CoxeterGroup>(), Err(Error::Parse { .. })));
        assert!(matches!("A".parse::<CoxeterGroup>(), Err(Error::Parse { .. })));
        assert!(matches!("E9".parse::<CoxeterGroup>(), Err(Error::ParameterOutOfRange(_))));
    }

    #[test]
    fn orders_and_ranks() {
        let g: CoxeterGroup = "A2xB2".parse().unwrap();
        assert_eq!(g.order(), BigUint::from(48u32));
        assert_eq!(g.rank(), 4);
        assert_eq!(CoxeterGroup::trivial().order(), BigUint::one());
        assert_eq!(CoxeterGroup::trivial().rank(), 0);
        let d4: CoxeterGroup = "D4".parse().unwrap();
        assert_eq!(d4.order(), BigUint::from(192u32));
        assert!((g.log10_order() - 48f64.log10()).abs() < 1e-12);
        let big: CoxeterGroup = "A100".parse().unwrap();
        let exact = big.order().to_string().len() as f64;
        assert!((big.log10_order() - (exact - 1.0)).abs() < 1.0);
    }
}
