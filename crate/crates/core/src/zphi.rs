//! Exact arithmetic in the ring ℤ[φ] ⊂ ℚ(√5), with φ² = φ + 1.
//!
//! Every reflection matrix of a finite Coxeter group, written in the basis of
//! simple roots with a Cartan matrix whose off-diagonal entries are
//! `-2cos(π/m)` (rescaled to integers for the crystallographic types), has
//! entries in this ring, so a pair of integers is an exact representation.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// `a + b·φ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct ZPhi {
    pub a: i64,
    pub b: i64,
}

impl ZPhi {
    pub const ZERO: ZPhi = ZPhi { a: 0, b: 0 };
    pub const ONE: ZPhi = ZPhi { a: 1, b: 0 };
    pub const PHI: ZPhi = ZPhi { a: 0, b: 1 };

    pub const fn int(a: i64) -> Self {
        ZPhi { a, b: 0 }
    }

    pub const fn new(a: i64, b: i64) -> Self {
        ZPhi { a, b }
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// Exact sign of `a + bφ`.
    ///
    /// `2(a + bφ) = (2a + b) + b√5`, so the sign of `x + y√5` is decided by
    /// comparing `x²` against `5y²` when the two terms disagree.
    pub fn signum(self) -> Ordering {
        let x = 2 * self.a as i128 + self.b as i128;
        let y = self.b as i128;
        match (x.cmp(&0), y.cmp(&0)) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (sx, sy) if sx == sy => sx,
            (sx, _) => {
                // opposite signs: the larger magnitude wins
                match (x * x).cmp(&(5 * y * y)) {
                    Ordering::Greater => sx,
                    Ordering::Less => sx.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn is_positive(self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn to_f64(self) -> f64 {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        self.a as f64 + self.b as f64 * phi
    }
}

impl Add for ZPhi {
    type Output = ZPhi;
    fn add(self, rhs: ZPhi) -> ZPhi {
        ZPhi::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl Sub for ZPhi {
    type Output = ZPhi;
    fn sub(self, rhs: ZPhi) -> ZPhi {
        ZPhi::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl Neg for ZPhi {
    type Output = ZPhi;
    fn neg(self) -> ZPhi {
        ZPhi::new(-self.a, -self.b)
    }
}

impl Mul for ZPhi {
    type Output = ZPhi;
    fn mul(self, rhs: ZPhi) -> ZPhi {
        // (a + bφ)(c + dφ) = ac + bd + (ad + bc + bd)φ
        let bd = self.b * rhs.b;
        ZPhi::new(
            self.a * rhs.a + bd,
            self.a * rhs.b + self.b * rhs.a + bd,
        )
    }
}

impl fmt::Display for ZPhi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, b) => write!(f, "{b}φ"),
            (a, b) if b < 0 => write!(f, "{a}{b}φ"),
            (a, b) => write!(f, "{a}+{b}φ"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn phi_squared() {
        assert_eq!(ZPhi::PHI * ZPhi::PHI, ZPhi::PHI + ZPhi::ONE);
    }

    #[test]
    fn signs() {
        assert!(ZPhi::PHI.is_positive());
        assert!(ZPhi::new(2, -1).is_positive()); // 2 - φ ≈ 0.382
        assert!(ZPhi::new(1, -1).is_negative()); // 1 - φ ≈ -0.618
        assert!(ZPhi::new(-1, 1).is_positive()); // φ - 1
        assert_eq!(ZPhi::ZERO.signum(), Ordering::Equal);
    }

    proptest! {
        #[test]
        fn sign_matches_float(a in -1000i64..1000, b in -1000i64..1000) {
            let z = ZPhi::new(a, b);
            let f = z.to_f64();
            match z.signum() {
                Ordering::Greater => prop_assert!(f > 0.0),
                Ordering::Less => prop_assert!(f < 0.0),
                Ordering::Equal => prop_assert!(a == 0 && b == 0),
            }
        }

        #[test]
        fn mul_matches_float(a in -50i64..50, b in -50i64..50, c in -50i64..50, d in -50i64..50) {
            let x = ZPhi::new(a, b);
            let y = ZPhi::new(c, d);
            prop_assert!(((x * y).to_f64() - x.to_f64() * y.to_f64()).abs() < 1e-6);
        }
    }
}
