//! Exhaustive element tables.
//!
//! Classical factors are generated combinatorially. Exceptional factors are
//! found by breadth-first search over the Cayley graph, acting on the left
//! with the simple reflections; elements are keyed by the root indices of the
//! columns of their exact reflection matrix, which is a normal form.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;

use crate::coxeter::perm;
use crate::coxeter::{root_system, Component, CoxeterGroup, Dihedral, Family, GroupElement, IrreducibleType, RootMatrix, Side};
use crate::error::{Error, Result};

pub const DEFAULT_CAP: u64 = 10_000_000;

/// Environment variable naming a directory for cached exceptional tables.
pub const TABLE_CACHE_ENV: &str = "COXDES_TABLE_CACHE";

const CACHE_MAGIC: &[u8; 8] = b"COXTBL\0\0";
const CACHE_VERSION: u32 = 1;

pub(crate) fn check_cap(what: impl std::fmt::Display, order: &BigUint, cap: u64) -> Result<()> {
    if *order > BigUint::from(cap) {
        return Err(Error::OrderExceedsCap {
            what: what.to_string(),
            order: order.to_string(),
            cap,
        });
    }
    Ok(())
}

fn pack(key: &[u8]) -> u64 {
    key.iter().enumerate().fold(0u64, |acc, (i, &b)| acc | (b as u64) << (8 * i))
}

/// All elements of one exceptional group in BFS (length) order, with their
/// lengths and two-sided descent values.
#[derive(Debug)]
pub struct ExceptionalTable {
    family: Family,
    rank: usize,
    keys: Vec<u8>,
    lengths: Vec<u8>,
    t_values: Vec<u8>,
    index: HashMap<u64, u32>,
}

impl ExceptionalTable {
    pub fn build(family: Family, cap: u64) -> Result<Self> {
        let t = IrreducibleType::exceptional(family)?;
        check_cap(t, &t.order(), cap)?;
        let sys = root_system(family);
        let rank = sys.rank();

        let identity: Vec<u8> = (0..rank as u8).collect();
        let mut keys = identity.clone();
        let mut lengths = vec![0u8];
        let mut left_des = vec![0u8];
        let mut index = HashMap::new();
        index.insert(pack(&identity), 0u32);

        let mut scratch = vec![0u8; rank];
        let mut head = 0usize;
        while head < lengths.len() {
            let len = lengths[head];
            for j in 0..rank {
                for (dst, &r) in scratch.iter_mut().zip(&keys[head * rank..(head + 1) * rank]) {
                    *dst = sys.reflect(j, r);
                }
                match index.get(&pack(&scratch)) {
                    // s_j·w is shorter: j is a left descent of w
                    Some(&k) if lengths[k as usize] < len => left_des[head] += 1,
                    Some(_) => {}
                    None => {
                        index.insert(pack(&scratch), lengths.len() as u32);
                        keys.extend_from_slice(&scratch);
                        lengths.push(len + 1);
                        left_des.push(0);
                    }
                }
            }
            head += 1;
        }

        let t_values = (0..lengths.len())
            .map(|i| {
                let right = keys[i * rank..(i + 1) * rank]
                    .iter()
                    .filter(|&&r| sys.is_negative_root(r))
                    .count() as u8;
                right + left_des[i]
            })
            .collect();
        Ok(ExceptionalTable {
            family,
            rank,
            keys,
            lengths,
            t_values,
            index,
        })
    }

    /// Reads `<dir>/<family>.v1.tbl` if present and valid, otherwise builds
    /// the table and writes it there.
    pub fn load_or_build(family: Family, cap: u64, dir: &Path) -> Result<Self> {
        let path = Self::cache_path(dir, family);
        if path.exists() {
            return Self::read_cache(family, &path);
        }
        let table = Self::build(family, cap)?;
        fs::create_dir_all(dir)?;
        table.write_cache(&path)?;
        Ok(table)
    }

    pub fn cache_path(dir: &Path, family: Family) -> PathBuf {
        dir.join(format!("{family:?}.v{CACHE_VERSION}.tbl"))
    }

    /// Layout: magic, version (u32 LE), family name (u8 length + bytes),
    /// rank (u8), element count (u64 LE), then per element its `rank` key
    /// bytes followed by its length and `t` value (one byte each).
    pub fn write_cache(&self, path: &Path) -> Result<()> {
        let mut w = BufWriter::new(fs::File::create(path)?);
        w.write_all(CACHE_MAGIC)?;
        w.write_all(&CACHE_VERSION.to_le_bytes())?;
        let name = format!("{:?}", self.family);
        w.write_all(&[name.len() as u8])?;
        w.write_all(name.as_bytes())?;
        w.write_all(&[self.rank as u8])?;
        w.write_all(&(self.len() as u64).to_le_bytes())?;
        for i in 0..self.len() {
            w.write_all(self.key(i))?;
            w.write_all(&[self.lengths[i], self.t_values[i]])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_cache(family: Family, path: &Path) -> Result<Self> {
        let bad = |message: &str| Error::BadCache {
            path: path.to_path_buf(),
            message: message.to_string(),
        };
        let mut r = BufReader::new(fs::File::open(path)?);
        let mut magic = [0u8; 8];
        r.read_exact(&mut magic)?;
        if &magic != CACHE_MAGIC {
            return Err(bad("bad magic"));
        }
        let mut word = [0u8; 4];
        r.read_exact(&mut word)?;
        if u32::from_le_bytes(word) != CACHE_VERSION {
            return Err(bad("unsupported version"));
        }
        let mut byte = [0u8; 1];
        r.read_exact(&mut byte)?;
        let mut name = vec![0u8; byte[0] as usize];
        r.read_exact(&mut name)?;
        if name != format!("{family:?}").as_bytes() {
            return Err(bad("family mismatch"));
        }
        let sys = root_system(family);
        let rank = sys.rank();
        r.read_exact(&mut byte)?;
        if byte[0] as usize != rank {
            return Err(bad("rank mismatch"));
        }
        let mut long = [0u8; 8];
        r.read_exact(&mut long)?;
        let count = u64::from_le_bytes(long);
        let order: u64 = IrreducibleType::exceptional(family)?
            .order()
            .try_into()
            .expect("exceptional order fits in u64");
        if count != order {
            return Err(bad("element count does not match the group order"));
        }
        let count = count as usize;
        let mut keys = Vec::with_capacity(count * rank);
        let mut lengths = Vec::with_capacity(count);
        let mut t_values = Vec::with_capacity(count);
        let mut index = HashMap::with_capacity(count);
        let mut record = vec![0u8; rank + 2];
        for i in 0..count {
            r.read_exact(&mut record)?;
            let key = &record[..rank];
            if key.iter().any(|&k| k as usize >= sys.roots().len()) {
                return Err(bad("root index out of range"));
            }
            if index.insert(pack(key), i as u32).is_some() {
                return Err(bad("duplicate element"));
            }
            keys.extend_from_slice(key);
            lengths.push(record[rank]);
            t_values.push(record[rank + 1]);
        }
        Ok(ExceptionalTable {
            family,
            rank,
            keys,
            lengths,
            t_values,
            index,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    pub fn key(&self, i: usize) -> &[u8] {
        &self.keys[i * self.rank..(i + 1) * self.rank]
    }

    pub fn element(&self, i: usize) -> RootMatrix {
        RootMatrix::from_key(self.family, self.key(i))
    }

    pub fn length_of(&self, i: usize) -> usize {
        self.lengths[i] as usize
    }

    pub fn t_value(&self, i: usize) -> usize {
        self.t_values[i] as usize
    }

    pub fn t_values(&self) -> &[u8] {
        &self.t_values
    }

    pub fn index_of(&self, m: &RootMatrix) -> Option<usize> {
        let key = m.try_key()?;
        self.index.get(&pack(&key)).map(|&i| i as usize)
    }

    /// Number of elements of each length (the Poincaré coefficients).
    pub fn level_sizes(&self) -> Vec<u64> {
        let max = self.lengths.iter().copied().max().unwrap_or(0) as usize;
        let mut sizes = vec![0u64; max + 1];
        for &l in &self.lengths {
            sizes[l as usize] += 1;
        }
        sizes
    }
}

/// Process-wide cache of exceptional tables. When [`TABLE_CACHE_ENV`] is set
/// the tables are also persisted there.
pub fn exceptional_table(family: Family, cap: u64) -> Result<Arc<ExceptionalTable>> {
    exceptional_table_in(family, cap, std::env::var_os(TABLE_CACHE_ENV).map(PathBuf::from).as_deref())
}

pub fn exceptional_table_in(family: Family, cap: u64, dir: Option<&Path>) -> Result<Arc<ExceptionalTable>> {
    static TABLES: OnceLock<Mutex<BTreeMap<Family, Arc<ExceptionalTable>>>> = OnceLock::new();
    let tables = TABLES.get_or_init(Default::default);
    if let Some(t) = tables.lock().expect("table cache poisoned").get(&family) {
        return Ok(t.clone());
    }
    let table = Arc::new(match dir {
        Some(dir) => ExceptionalTable::load_or_build(family, cap, dir)?,
        None => ExceptionalTable::build(family, cap)?,
    });
    let mut guard = tables.lock().expect("table cache poisoned");
    Ok(guard.entry(family).or_insert(table).clone())
}

/// Prebuilt exceptional tables handed to the samplers.
#[derive(Debug, Clone, Default)]
pub struct TableSet {
    tables: BTreeMap<Family, Arc<ExceptionalTable>>,
}

impl TableSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, table: Arc<ExceptionalTable>) {
        self.tables.insert(table.family(), table);
    }

    pub fn get(&self, family: Family) -> Option<&Arc<ExceptionalTable>> {
        self.tables.get(&family)
    }

    /// Tables for every exceptional factor of `group` whose order fits `cap`.
    /// Factors over the cap are skipped; sampling them reports `TableMissing`.
    pub fn for_group(group: &CoxeterGroup, cap: u64, dir: Option<&Path>) -> Result<Self> {
        let mut set = TableSet::new();
        for t in group.factors() {
            let f = t.family();
            if f.is_exceptional() && set.get(f).is_none() && t.order() <= BigUint::from(cap) {
                set.insert(exceptional_table_in(f, cap, dir)?);
            }
        }
        Ok(set)
    }
}

/// Every element of a group, stored as fixed-width canonical keys.
#[derive(Debug)]
pub struct ElementTable {
    group: CoxeterGroup,
    stride: usize,
    keys: Vec<u8>,
    sorted: Vec<u32>,
}

fn factor_key_width(t: &IrreducibleType) -> usize {
    match t.family() {
        Family::A => t.rank() + 1,
        Family::B | Family::D => t.rank(),
        Family::I2 => 5,
        _ => t.rank(),
    }
}

fn factor_keys(t: &IrreducibleType, cap: u64) -> Result<Vec<u8>> {
    let p = t.rank();
    let mut keys = Vec::new();
    match t.family() {
        Family::A => perm::for_each_permutation(p + 1, |w| keys.extend(w.iter().map(|&x| x as u8))),
        Family::B | Family::D => {
            perm::for_each_signed_permutation(p, t.family() == Family::D, |w| {
                keys.extend(w.iter().map(|&x| x as i8 as u8))
            })
        }
        Family::I2 => {
            let m = t.parameter();
            for i in 0..2 * m as u64 {
                Component::Dihedral(Dihedral::from_index(m, i)).canonical_key(&mut keys);
            }
        }
        f => {
            let table = exceptional_table(f, cap)?;
            for i in 0..table.len() {
                keys.extend_from_slice(table.key(i));
            }
        }
    }
    Ok(keys)
}

fn decode_factor(t: &IrreducibleType, key: &[u8]) -> Component {
    match t.family() {
        Family::A => Component::A(key.iter().map(|&b| b as u32).collect()),
        Family::B => Component::B(key.iter().map(|&b| b as i8 as i32).collect()),
        Family::D => Component::D(key.iter().map(|&b| b as i8 as i32).collect()),
        Family::I2 => {
            let length = u32::from_le_bytes(key[..4].try_into().expect("4 bytes"));
            let side = if key[4] == 1 { Side::T } else { Side::S };
            Component::Dihedral(Dihedral::new(t.parameter(), length, side).expect("valid dihedral key"))
        }
        f => Component::Exceptional(RootMatrix::from_key(f, key)),
    }
}

impl ElementTable {
    pub fn group(&self) -> &CoxeterGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn key(&self, i: usize) -> &[u8] {
        &self.keys[i * self.stride..(i + 1) * self.stride]
    }

    pub fn get(&self, i: usize) -> GroupElement {
        let key = self.key(i);
        let mut offset = 0;
        let components = self
            .group
            .factors()
            .iter()
            .map(|t| {
                let w = factor_key_width(t);
                let c = decode_factor(t, &key[offset..offset + w]);
                offset += w;
                c
            })
            .collect();
        GroupElement::from_components_unchecked(components)
    }

    pub fn iter(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.len()).map(|i| self.get(i))
    }

    pub fn index_of(&self, w: &GroupElement) -> Option<usize> {
        let key = w.canonical_key();
        if key.len() != self.stride {
            return None;
        }
        self.sorted
            .binary_search_by(|&i| self.key(i as usize).cmp(&key))
            .ok()
            .map(|pos| self.sorted[pos] as usize)
    }
}

/// Enumerates every element of `group`; fails with `OrderExceedsCap` when
/// `|W| > cap`. Elements are ordered lexicographically by factor, first
/// factor slowest.
pub fn enumerate(group: &CoxeterGroup, cap: u64) -> Result<ElementTable> {
    check_cap(group, &group.order(), cap)?;
    let widths: Vec<usize> = group.factors().iter().map(factor_key_width).collect();
    let stride: usize = widths.iter().sum();
    let per_factor: Vec<Vec<u8>> = group
        .factors()
        .iter()
        .map(|t| factor_keys(t, cap))
        .collect::<Result<_>>()?;
    let counts: Vec<usize> = per_factor.iter().zip(&widths).map(|(k, &w)| k.len() / w).collect();
    let total: usize = counts.iter().product();

    let mut keys = Vec::with_capacity(total * stride);
    let mut digits = vec![0usize; counts.len()];
    for _ in 0..total {
        for (f, &d) in digits.iter().enumerate() {
            let w = widths[f];
            keys.extend_from_slice(&per_factor[f][d * w..(d + 1) * w]);
        }
        for f in (0..digits.len()).rev() {
            digits[f] += 1;
            if digits[f] < counts[f] {
                break;
            }
            digits[f] = 0;
        }
    }
    let mut sorted: Vec<u32> = (0..total as u32).collect();
    sorted.sort_by(|&a, &b| {
        keys[a as usize * stride..(a as usize + 1) * stride].cmp(&keys[b as usize * stride..(b as usize + 1) * stride])
    });
    Ok(ElementTable {
        group: group.clone(),
        stride,
        keys,
        sorted,
    })
}
