//! Uniform sampling of group elements and batched `t` samples.
//!
//! Randomness comes from ChaCha8 keyed by a 64-bit seed, with the 64-bit
//! ChaCha stream id selecting independent substreams. A batch of `n` samples
//! is cut into chunks of [`CHUNK_SIZE`]; chunk `c` of a [`SeededRng`] with
//! stream `s` draws from ChaCha stream `(s << 32) | c`. Output therefore does
//! not depend on how chunks are spread over threads.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::coxeter::{Component, CoxeterGroup, Dihedral, Family, GroupElement, IrreducibleType};
use crate::enumerate::{ExceptionalTable, TableSet};
use crate::error::{Error, Result};
use std::sync::Arc;

pub const CHUNK_SIZE: usize = 4096;

/// `(seed, stream)` pair naming a reproducible random sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeededRng {
    pub seed: u64,
    pub stream: u32,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng { seed, stream: 0 }
    }

    pub fn with_stream(seed: u64, stream: u32) -> Self {
        SeededRng { seed, stream }
    }

    /// Generator for chunk `chunk` of this stream.
    pub fn chunk_rng(&self, chunk: u32) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(((self.stream as u64) << 32) | chunk as u64);
        rng
    }

    pub fn rng(&self) -> ChaCha8Rng {
        self.chunk_rng(0)
    }
}

/// Fisher–Yates shuffle with `u32` indices so the draws are the same on
/// every platform.
pub fn shuffle<T, R: Rng + ?Sized>(items: &mut [T], rng: &mut R) {
    for i in (1..items.len()).rev() {
        let j = rng.gen_range(0..=i as u32) as usize;
        items.swap(i, j);
    }
}

#[derive(Debug, Clone)]
enum FactorSampler {
    A { perm: Vec<u32>, inv: Vec<u32> },
    Signed { even: bool, perm: Vec<i32>, inv: Vec<i32> },
    Dihedral { m: u32 },
    Exceptional(Arc<ExceptionalTable>),
}

impl FactorSampler {
    fn new(t: &IrreducibleType, tables: &TableSet) -> Result<Self> {
        let p = t.parameter() as usize;
        Ok(match t.family() {
            Family::A => FactorSampler::A {
                perm: vec![0; p + 1],
                inv: vec![0; p + 1],
            },
            Family::B | Family::D => FactorSampler::Signed {
                even: t.family() == Family::D,
                perm: vec![0; p],
                inv: vec![0; p],
            },
            Family::I2 => FactorSampler::Dihedral { m: t.parameter() },
            f => FactorSampler::Exceptional(
                tables
                    .get(f)
                    .cloned()
                    .ok_or_else(|| Error::TableMissing(t.to_string()))?,
            ),
        })
    }

    fn draw_signed<R: Rng + ?Sized>(perm: &mut [i32], even: bool, rng: &mut R) {
        for (i, x) in perm.iter_mut().enumerate() {
            *x = i as i32 + 1;
        }
        shuffle(perm, rng);
        let mut negatives = 0;
        for x in perm.iter_mut() {
            if rng.gen::<bool>() {
                *x = -*x;
                negatives += 1;
            }
        }
        // flipping one fixed sign is a bijection between odd and even sign
        // vectors, so the result stays uniform on D_p
        if even && negatives % 2 == 1 {
            perm[0] = -perm[0];
        }
    }

    /// Index draw shared by `draw` and `draw_t`.
    fn draw_index<R: Rng + ?Sized>(&mut self, rng: &mut R) -> u64 {
        match self {
            FactorSampler::A { perm, .. } => {
                for (i, x) in perm.iter_mut().enumerate() {
                    *x = i as u32;
                }
                shuffle(perm, rng);
                0
            }
            FactorSampler::Signed { even, perm, .. } => {
                Self::draw_signed(perm, *even, rng);
                0
            }
            FactorSampler::Dihedral { m } => rng.gen_range(0..2 * *m as u64),
            FactorSampler::Exceptional(table) => rng.gen_range(0..table.len() as u64),
        }
    }

    fn draw<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Component {
        let idx = self.draw_index(rng);
        match self {
            FactorSampler::A { perm, .. } => Component::A(perm.clone()),
            FactorSampler::Signed { even: false, perm, .. } => Component::B(perm.clone()),
            FactorSampler::Signed { even: true, perm, .. } => Component::D(perm.clone()),
            FactorSampler::Dihedral { m } => Component::Dihedral(Dihedral::from_index(*m, idx)),
            FactorSampler::Exceptional(table) => Component::Exceptional(table.element(idx as usize)),
        }
    }

    fn draw_t<R: Rng + ?Sized>(&mut self, rng: &mut R) -> u32 {
        let idx = self.draw_index(rng);
        match self {
            FactorSampler::A { perm, inv } => {
                for (i, &x) in perm.iter().enumerate() {
                    inv[x as usize] = i as u32;
                }
                (adjacent_descents(perm) + adjacent_descents(inv)) as u32
            }
            FactorSampler::Signed { even, perm, inv } => {
                for (i, &x) in perm.iter().enumerate() {
                    let pos = i as i32 + 1;
                    inv[(x.unsigned_abs() - 1) as usize] = if x < 0 { -pos } else { pos };
                }
                let des = |w: &[i32]| {
                    let first = if *even { w[0] + w[1] < 0 } else { w[0] < 0 };
                    first as usize + adjacent_descents(w)
                };
                (des(perm) + des(inv)) as u32
            }
            FactorSampler::Dihedral { m } => Dihedral::from_index(*m, idx).two_sided_descent() as u32,
            FactorSampler::Exceptional(table) => table.t_value(idx as usize) as u32,
        }
    }
}

fn adjacent_descents<T: PartialOrd>(w: &[T]) -> usize {
    w.windows(2).filter(|p| p[0] > p[1]).count()
}

/// Draws uniform elements of a fixed group.
#[derive(Debug, Clone)]
pub struct Sampler {
    factors: Vec<FactorSampler>,
}

impl Sampler {
    /// Fails with `TableMissing` if an exceptional factor has no table.
    pub fn new(group: &CoxeterGroup, tables: &TableSet) -> Result<Self> {
        let factors = group
            .factors()
            .iter()
            .map(|t| FactorSampler::new(t, tables))
            .collect::<Result<_>>()?;
        Ok(Sampler { factors })
    }

    pub fn sample<R: Rng + ?Sized>(&mut self, rng: &mut R) -> GroupElement {
        GroupElement::from_components_unchecked(self.factors.iter_mut().map(|f| f.draw(rng)).collect())
    }

    /// Same randomness as [`Sampler::sample`], returning only `t`.
    pub fn sample_t<R: Rng + ?Sized>(&mut self, rng: &mut R) -> u32 {
        self.factors.iter_mut().map(|f| f.draw_t(rng)).sum()
    }
}

/// One uniform element, drawn from the start of `rng`'s first chunk.
pub fn sample_uniform(group: &CoxeterGroup, rng: &SeededRng, tables: &TableSet) -> Result<GroupElement> {
    let mut sampler = Sampler::new(group, tables)?;
    Ok(sampler.sample(&mut rng.rng()))
}

/// `n` values of `t` for independent uniform elements; a deterministic
/// function of `(rng, group, n)` regardless of the rayon thread count.
pub fn sample_batch(group: &CoxeterGroup, n: usize, rng: &SeededRng, tables: &TableSet) -> Result<Vec<u32>> {
    let sampler = Sampler::new(group, tables)?;
    let chunks = n.div_ceil(CHUNK_SIZE);
    let parts: Vec<Vec<u32>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut local = sampler.clone();
            let mut r = rng.chunk_rng(c as u32);
            let len = CHUNK_SIZE.min(n - c * CHUNK_SIZE);
            (0..len).map(|_| local.sample_t(&mut r)).collect()
        })
        .collect();
    Ok(parts.concat())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{exceptional_table, DEFAULT_CAP};

    fn group(s: &str) -> CoxeterGroup {
        s.parse().unwrap()
    }

    #[test]
    fn trivial_group_samples_identity() {
        let g = CoxeterGroup::trivial();
        let w = sample_uniform(&g, &SeededRng::new(1), &TableSet::new()).unwrap();
        assert_eq!(w, GroupElement::identity(&g));
        assert_eq!(sample_batch(&g, 5, &SeededRng::new(1), &TableSet::new()).unwrap(), vec![0; 5]);
    }

    #[test]
    fn empty_batch() {
        let g = group("A3");
        assert!(sample_batch(&g, 0, &SeededRng::new(9), &TableSet::new()).unwrap().is_empty());
    }

    #[test]
    fn missing_table() {
        let g = group("A2xH3");
        assert!(matches!(
            sample_uniform(&g, &SeededRng::new(1), &TableSet::new()),
            Err(Error::TableMissing(_))
        ));
    }

    #[test]
    fn fast_t_matches_element_t() {
        let g = group("A5xB4xD5xI2(7)xH3");
        let mut tables = TableSet::new();
        tables.insert(exceptional_table(Family::H3, DEFAULT_CAP).unwrap());
        let mut sampler = Sampler::new(&g, &tables).unwrap();
        let mut r1 = SeededRng::new(42).rng();
        let mut r2 = SeededRng::new(42).rng();
        for _ in 0..500 {
            let w = sampler.sample(&mut r1);
            let t = sampler.sample_t(&mut r2);
            assert_eq!(w.two_sided_descent() as u32, t);
            assert!(GroupElement::new(&g, w.components().to_vec()).is_ok());
        }
    }

    #[test]
    fn deterministic_and_stream_sensitive() {
        let g = group("A6xI2(5)");
        let a = sample_batch(&g, 10_000, &SeededRng::new(3), &TableSet::new()).unwrap();
        let b = sample_batch(&g, 10_000, &SeededRng::new(3), &TableSet::new()).unwrap();
        let c = sample_batch(&g, 10_000, &SeededRng::with_stream(3, 1), &TableSet::new()).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        // a prefix of a longer batch is the shorter batch
        let d = sample_batch(&g, 5_000, &SeededRng::new(3), &TableSet::new()).unwrap();
        assert_eq!(&a[..5_000], &d[..]);
    }

    #[test]
    fn a1_is_fair() {
        let g = group("A1");
        let n = 100_000;
        let t = sample_batch(&g, n, &SeededRng::new(11), &TableSet::new()).unwrap();
        let ones = t.iter().filter(|&&x| x == 2).count() as f64;
        let sigma = (n as f64 * 0.25).sqrt();
        assert!((ones - n as f64 / 2.0).abs() < 3.0 * sigma, "{ones}");
    }
}
