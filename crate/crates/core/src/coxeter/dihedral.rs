//! Dihedral groups I2(m) in reduced-word coordinates.
//!
//! An element is the alternating word of length `k` starting with `s`
//! ([`Side::S`]) or with `t` ([`Side::T`]). Lengths 0 and `m` name a single
//! element each and are stored with `Side::S`.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    S,
    T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dihedral {
    m: u32,
    length: u32,
    side: Side,
}

impl Dihedral {
    /// Canonicalises the side for lengths 0 and `m`; `None` when `length > m`.
    pub fn new(m: u32, length: u32, side: Side) -> Option<Self> {
        if length > m {
            return None;
        }
        let side = if length == 0 || length == m { Side::S } else { side };
        Some(Dihedral { m, length, side })
    }

    pub fn identity(m: u32) -> Self {
        Dihedral { m, length: 0, side: Side::S }
    }

    pub fn longest(m: u32) -> Self {
        Dihedral { m, length: m, side: Side::S }
    }

    /// Generator 0 is `s`, generator 1 is `t`.
    pub fn generator(m: u32, index: usize) -> Self {
        let side = if index == 0 { Side::S } else { Side::T };
        Dihedral { m, length: 1, side }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn length(&self) -> u32 {
        self.length
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// Position in `0..2m`: rotations `ρ^j` at `2j`, reflections `ρ^j s` at
    /// `2j + 1`, with `ρ = st`.
    pub fn index(&self) -> u64 {
        let (j, refl) = self.to_rotation();
        2 * j as u64 + refl as u64
    }

    pub fn from_index(m: u32, index: u64) -> Self {
        Self::from_rotation(m, (index / 2) as u32, index % 2 == 1)
    }

    fn to_rotation(self) -> (u32, bool) {
        let (m, k) = (self.m as u64, self.length as u64);
        let neg = |x: u64| ((m - x % m) % m) as u32;
        match (self.side, k % 2 == 1) {
            (Side::S, false) => ((k / 2) as u32, false),
            (Side::S, true) => (((k - 1) / 2) as u32, true),
            (Side::T, false) => (neg(k / 2), false),
            (Side::T, true) => (neg(k.div_ceil(2)), true),
        }
    }

    fn from_rotation(m: u32, j: u32, reflection: bool) -> Self {
        let (m64, j) = (m as u64, j as u64 % m as u64);
        let (k_s, k_t) = if reflection {
            // ρ^j s = (st)^j s = (ts)^(m-j-1) t
            (2 * j + 1, 2 * (m64 - j) - 1)
        } else if j == 0 {
            (0, 0)
        } else {
            // ρ^j = (st)^j = (ts)^(m-j)
            (2 * j, 2 * (m64 - j))
        };
        let (length, side) = if k_s <= k_t { (k_s, Side::S) } else { (k_t, Side::T) };
        Dihedral::new(m, length as u32, side).expect("reduced length never exceeds m")
    }

    pub fn multiply(&self, other: &Dihedral) -> Dihedral {
        debug_assert_eq!(self.m, other.m);
        let m = self.m as u64;
        let (a, e) = self.to_rotation();
        let (b, f) = other.to_rotation();
        let b = if e { (m - b as u64) % m } else { b as u64 };
        Self::from_rotation(self.m, ((a as u64 + b) % m) as u32, e ^ f)
    }

    pub fn inverse(&self) -> Dihedral {
        let (j, refl) = self.to_rotation();
        if refl {
            *self
        } else {
            Self::from_rotation(self.m, (self.m - j) % self.m, false)
        }
    }

    fn last_letter(&self) -> usize {
        // the word alternates, so the last letter flips with parity
        let first = (self.side == Side::T) as usize;
        if self.length % 2 == 1 {
            first
        } else {
            1 - first
        }
    }

    /// Closed-form right descents.
    pub fn descents(&self) -> Vec<usize> {
        match self.length {
            0 => vec![],
            k if k == self.m => vec![0, 1],
            _ => vec![self.last_letter()],
        }
    }

    pub fn des(&self) -> usize {
        match self.length {
            0 => 0,
            k if k == self.m => 2,
            _ => 1,
        }
    }

    /// `t = des(w) + des(w⁻¹)`: 0 at the identity, 4 at the longest element,
    /// 2 everywhere else.
    pub fn two_sided_descent(&self) -> usize {
        match self.length {
            0 => 0,
            k if k == self.m => 4,
            _ => 2,
        }
    }
}
