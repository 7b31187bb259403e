//! Exact reflection representation of the exceptional types.
//!
//! Elements act on the span of the simple roots. With the Cartan entries
//! `c[j][i] = ⟨α_i, α_j^∨⟩`, the simple reflection `s_j` only changes
//! coordinate `j`: `v_j ↦ v_j − Σ_i c[j][i] v_i`. For H3/H4 the entries are
//! `−2cos(π/m) ∈ {0, −1, −φ}`; for F4 the non-simply-laced bond uses the
//! integral Cartan pair `(−2, −1)`, so every matrix has entries in ℤ[φ].

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::coxeter::types::Family;
use crate::zphi::ZPhi;

/// The root system of one exceptional type, with roots indexed as
/// `0..N` positive (simple roots first) and `N..2N` their negatives.
#[derive(Debug)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    cartan: Vec<Vec<ZPhi>>,
    roots: Vec<Vec<ZPhi>>,
    num_positive: usize,
    lookup: HashMap<Vec<ZPhi>, u8>,
    reflect: Vec<Vec<u8>>,
}

const EXCEPTIONAL: [Family; 6] = [
    Family::H3,
    Family::H4,
    Family::F4,
    Family::E6,
    Family::E7,
    Family::E8,
];

/// Shared, lazily built root system for an exceptional family.
pub fn root_system(family: Family) -> &'static RootSystem {
    static CACHE: [OnceLock<RootSystem>; 6] = [const { OnceLock::new() }; 6];
    let slot = EXCEPTIONAL
        .iter()
        .position(|&f| f == family)
        .unwrap_or_else(|| panic!("{family:?} is not an exceptional family"));
    CACHE[slot].get_or_init(|| RootSystem::build(family))
}

fn cartan_matrix(family: Family) -> Vec<Vec<ZPhi>> {
    let t = crate::coxeter::types::IrreducibleType::exceptional(family)
        .expect("exceptional family");
    let m = t.coxeter_matrix();
    let n = m.size();
    let mut c = vec![vec![ZPhi::ZERO; n]; n];
    for (j, row) in c.iter_mut().enumerate() {
        for (i, entry) in row.iter_mut().enumerate() {
            *entry = match m.get(j, i) {
                1 => ZPhi::int(2),
                2 => ZPhi::ZERO,
                3 => ZPhi::int(-1),
                5 => -ZPhi::PHI,
                // the F4 double bond: generator 1 long, generator 2 short
                4 if j < i => ZPhi::int(-2),
                4 => ZPhi::int(-1),
                other => unreachable!("bond order {other} in an exceptional diagram"),
            };
        }
    }
    c
}

fn is_negative_vector(v: &[ZPhi]) -> bool {
    v.iter().fold(ZPhi::ZERO, |acc, &x| acc + x).is_negative()
}

impl RootSystem {
    fn build(family: Family) -> Self {
        let cartan = cartan_matrix(family);
        let rank = cartan.len();
        let reflect_vec = |j: usize, v: &[ZPhi]| -> Vec<ZPhi> {
            let mut out = v.to_vec();
            let pairing = (0..rank).fold(ZPhi::ZERO, |acc, i| acc + cartan[j][i] * v[i]);
            out[j] = v[j] - pairing;
            out
        };

        let simple: Vec<Vec<ZPhi>> = (0..rank)
            .map(|i| {
                let mut e = vec![ZPhi::ZERO; rank];
                e[i] = ZPhi::ONE;
                e
            })
            .collect();
        let mut positive = simple.clone();
        let mut seen: HashMap<Vec<ZPhi>, ()> = positive.iter().map(|r| (r.clone(), ())).collect();
        let mut head = 0;
        while head < positive.len() {
            let root = positive[head].clone();
            head += 1;
            for j in 0..rank {
                let image = reflect_vec(j, &root);
                if !is_negative_vector(&image) && !seen.contains_key(&image) {
                    seen.insert(image.clone(), ());
                    positive.push(image);
                }
            }
        }
        let num_positive = positive.len();
        let mut roots = positive.clone();
        roots.extend(positive.iter().map(|r| r.iter().map(|&x| -x).collect::<Vec<_>>()));
        assert!(roots.len() <= 256, "root indices must fit in a byte");

        let lookup: HashMap<Vec<ZPhi>, u8> = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i as u8))
            .collect();
        let reflect = (0..rank)
            .map(|j| {
                roots
                    .iter()
                    .map(|r| lookup[&reflect_vec(j, r)])
                    .collect()
            })
            .collect();

        RootSystem {
            family,
            rank,
            cartan,
            roots,
            num_positive,
            lookup,
            reflect,
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_positive(&self) -> usize {
        self.num_positive
    }

    pub fn roots(&self) -> &[Vec<ZPhi>] {
        &self.roots
    }

    pub fn root(&self, index: u8) -> &[ZPhi] {
        &self.roots[index as usize]
    }

    pub fn index_of(&self, v: &[ZPhi]) -> Option<u8> {
        self.lookup.get(v).copied()
    }

    pub fn is_negative_root(&self, index: u8) -> bool {
        index as usize >= self.num_positive
    }

    /// `s_j(root)` as an index.
    pub fn reflect(&self, j: usize, root: u8) -> u8 {
        self.reflect[j][root as usize]
    }

    pub fn cartan(&self, j: usize, i: usize) -> ZPhi {
        self.cartan[j][i]
    }
}

/// An exceptional-group element as an exact matrix. Column `c` holds the
/// simple-root coordinates of `w(α_c)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootMatrix {
    family: Family,
    rank: usize,
    entries: Vec<ZPhi>,
}

impl RootMatrix {
    pub fn identity(family: Family) -> Self {
        let rank = root_system(family).rank();
        let mut entries = vec![ZPhi::ZERO; rank * rank];
        for i in 0..rank {
            entries[i * rank + i] = ZPhi::ONE;
        }
        RootMatrix { family, rank, entries }
    }

    pub fn generator(family: Family, j: usize) -> Self {
        let sys = root_system(family);
        let mut m = Self::identity(family);
        for i in 0..m.rank {
            m.entries[j * m.rank + i] = m.entries[j * m.rank + i] - sys.cartan(j, i);
        }
        m
    }

    /// Rebuilds a matrix from the root indices of its columns.
    pub fn from_key(family: Family, key: &[u8]) -> Self {
        let sys = root_system(family);
        let rank = sys.rank();
        assert_eq!(key.len(), rank);
        let mut entries = vec![ZPhi::ZERO; rank * rank];
        for (c, &r) in key.iter().enumerate() {
            for (row, &x) in sys.root(r).iter().enumerate() {
                entries[row * rank + c] = x;
            }
        }
        RootMatrix { family, rank, entries }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[ZPhi] {
        &self.entries
    }

    pub fn column(&self, c: usize) -> Vec<ZPhi> {
        (0..self.rank).map(|r| self.entries[r * self.rank + c]).collect()
    }

    pub fn apply(&self, v: &[ZPhi]) -> Vec<ZPhi> {
        (0..self.rank)
            .map(|r| {
                (0..self.rank).fold(ZPhi::ZERO, |acc, c| acc + self.entries[r * self.rank + c] * v[c])
            })
            .collect()
    }

    pub fn multiply(&self, other: &RootMatrix) -> RootMatrix {
        debug_assert_eq!(self.family, other.family);
        let n = self.rank;
        let mut entries = vec![ZPhi::ZERO; n * n];
        for r in 0..n {
            for c in 0..n {
                entries[r * n + c] = (0..n).fold(ZPhi::ZERO, |acc, k| {
                    acc + self.entries[r * n + k] * other.entries[k * n + c]
                });
            }
        }
        RootMatrix { family: self.family, rank: n, entries }
    }

    /// `w·s_j`: column `i` becomes `w(α_i) − c[j][i]·w(α_j)`.
    pub fn multiply_generator(&self, j: usize) -> RootMatrix {
        let sys = root_system(self.family);
        let n = self.rank;
        let mut out = self.clone();
        for i in 0..n {
            let c = sys.cartan(j, i);
            if c.is_zero() {
                continue;
            }
            for r in 0..n {
                out.entries[r * n + i] = out.entries[r * n + i] - c * self.entries[r * n + j];
            }
        }
        out
    }

    /// Root index of each column; `None` if some column is not a root.
    pub fn try_key(&self) -> Option<Vec<u8>> {
        let sys = root_system(self.family);
        (0..self.rank).map(|c| sys.index_of(&self.column(c))).collect()
    }

    /// Canonical byte form: root indices of the columns.
    pub fn canonical_key(&self) -> Vec<u8> {
        self.try_key().expect("every column of a group element is a root")
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self) -> usize {
        let sys = root_system(self.family);
        sys.roots()[..sys.num_positive()]
            .iter()
            .filter(|beta| is_negative_vector(&self.apply(beta)))
            .count()
    }

    /// Right descents: `s` with `w(α_s) < 0`.
    pub fn descents(&self) -> Vec<usize> {
        (0..self.rank)
            .filter(|&c| is_negative_vector(&self.column(c)))
            .collect()
    }

    /// Inverse via a reduced word: peel right descents until the identity,
    /// so `w·s_1⋯s_k = 1` and `w⁻¹ = s_1⋯s_k`.
    pub fn inverse(&self) -> RootMatrix {
        let mut w = self.clone();
        let mut inv = RootMatrix::identity(self.family);
        while let Some(&s) = w.descents().first() {
            w = w.multiply_generator(s);
            inv = inv.multiply_generator(s);
        }
        inv
    }

    pub fn is_identity(&self) -> bool {
        *self == RootMatrix::identity(self.family)
    }
}
