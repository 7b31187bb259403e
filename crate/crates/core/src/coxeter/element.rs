use std::fmt;

use crate::coxeter::dihedral::{Dihedral, Side};
use crate::coxeter::perm;
use crate::coxeter::roots::RootMatrix;
use crate::coxeter::types::{CoxeterGroup, Family, IrreducibleType};
use crate::error::{Error, Result};

/// One factor's share of a [`GroupElement`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    /// Permutation of `0..=p` in one-line notation.
    A(Vec<u32>),
    /// Signed permutation of `±1..=±p`.
    B(Vec<i32>),
    /// Signed permutation with an even number of negative entries.
    D(Vec<i32>),
    Dihedral(Dihedral),
    Exceptional(RootMatrix),
}

impl Component {
    pub fn identity(t: &IrreducibleType) -> Component {
        let p = t.parameter() as usize;
        match t.family() {
            Family::A => Component::A((0..=p as u32).collect()),
            Family::B => Component::B((1..=p as i32).collect()),
            Family::D => Component::D((1..=p as i32).collect()),
            Family::I2 => Component::Dihedral(Dihedral::identity(t.parameter())),
            f => Component::Exceptional(RootMatrix::identity(f)),
        }
    }

    /// Local generator `j` in the ordering documented on
    /// [`IrreducibleType::coxeter_matrix`].
    pub fn generator(t: &IrreducibleType, j: usize) -> Component {
        assert!(j < t.rank(), "generator {j} out of range for {t}");
        let mut c = Component::identity(t);
        match &mut c {
            Component::A(w) => w.swap(j, j + 1),
            Component::B(w) if j == 0 => w[0] = -w[0],
            Component::D(w) if j == 0 => {
                w.swap(0, 1);
                w[0] = -w[0];
                w[1] = -w[1];
            }
            Component::B(w) | Component::D(w) => w.swap(j - 1, j),
            Component::Dihedral(_) => c = Component::Dihedral(Dihedral::generator(t.parameter(), j)),
            Component::Exceptional(m) => *m = RootMatrix::generator(m.family(), j),
        }
        c
    }

    pub fn rank(&self) -> usize {
        match self {
            Component::A(w) => w.len() - 1,
            Component::B(w) | Component::D(w) => w.len(),
            Component::Dihedral(_) => 2,
            Component::Exceptional(m) => m.rank(),
        }
    }

    /// True if this component is a valid member of factor `t`.
    pub fn belongs_to(&self, t: &IrreducibleType) -> bool {
        let p = t.parameter() as usize;
        match (self, t.family()) {
            (Component::A(w), Family::A) => w.len() == p + 1 && perm::is_permutation(w),
            (Component::B(w), Family::B) => w.len() == p && perm::is_signed_permutation(w),
            (Component::D(w), Family::D) => {
                w.len() == p && perm::is_signed_permutation(w) && perm::negative_count(w).is_multiple_of(2)
            }
            (Component::Dihedral(d), Family::I2) => d.m() == t.parameter(),
            (Component::Exceptional(m), f) => m.family() == f && m.try_key().is_some(),
            _ => false,
        }
    }

    fn same_shape(&self, other: &Component) -> bool {
        match (self, other) {
            (Component::A(a), Component::A(b)) => a.len() == b.len(),
            (Component::B(a), Component::B(b)) | (Component::D(a), Component::D(b)) => a.len() == b.len(),
            (Component::Dihedral(a), Component::Dihedral(b)) => a.m() == b.m(),
            (Component::Exceptional(a), Component::Exceptional(b)) => a.family() == b.family(),
            _ => false,
        }
    }

    fn multiply(&self, other: &Component) -> Component {
        match (self, other) {
            (Component::A(a), Component::A(b)) => Component::A(perm::compose(a, b)),
            (Component::B(a), Component::B(b)) => Component::B(perm::signed_compose(a, b)),
            (Component::D(a), Component::D(b)) => Component::D(perm::signed_compose(a, b)),
            (Component::Dihedral(a), Component::Dihedral(b)) => Component::Dihedral(a.multiply(b)),
            (Component::Exceptional(a), Component::Exceptional(b)) => Component::Exceptional(a.multiply(b)),
            _ => unreachable!("shapes checked by caller"),
        }
    }

    fn inverse(&self) -> Component {
        match self {
            Component::A(a) => Component::A(perm::invert(a)),
            Component::B(a) => Component::B(perm::signed_invert(a)),
            Component::D(a) => Component::D(perm::signed_invert(a)),
            Component::Dihedral(d) => Component::Dihedral(d.inverse()),
            Component::Exceptional(m) => Component::Exceptional(m.inverse()),
        }
    }

    pub fn length(&self) -> usize {
        match self {
            Component::A(a) => perm::inversions(a),
            Component::B(a) => perm::length_b(a),
            Component::D(a) => perm::length_d(a),
            Component::Dihedral(d) => d.length() as usize,
            Component::Exceptional(m) => m.length(),
        }
    }

    /// Family-specific right descent rules (local generator indices).
    pub fn descents(&self) -> Vec<usize> {
        match self {
            Component::A(a) => (0..a.len() - 1).filter(|&i| a[i] > a[i + 1]).collect(),
            Component::B(a) => perm::descents_b(a).collect(),
            Component::D(a) => perm::descents_d(a).collect(),
            Component::Dihedral(d) => d.descents(),
            Component::Exceptional(m) => m.descents(),
        }
    }

    pub fn des(&self) -> usize {
        match self {
            Component::A(a) => perm::adjacent_descents(a),
            Component::B(a) => perm::des_b(a),
            Component::D(a) => perm::des_d(a),
            Component::Dihedral(d) => d.des(),
            Component::Exceptional(m) => m.descents().len(),
        }
    }

    pub fn two_sided_descent(&self) -> usize {
        match self {
            Component::Dihedral(d) => d.two_sided_descent(),
            _ => self.des() + self.inverse().des(),
        }
    }

    fn local_generator(&self, j: usize) -> Component {
        match self {
            Component::A(w) => {
                let mut g: Vec<u32> = (0..w.len() as u32).collect();
                g.swap(j, j + 1);
                Component::A(g)
            }
            Component::B(w) | Component::D(w) => {
                let mut g: Vec<i32> = (1..=w.len() as i32).collect();
                match (self, j) {
                    (Component::B(_), 0) => g[0] = -1,
                    (Component::D(_), 0) => {
                        g[0] = -2;
                        g[1] = -1;
                    }
                    _ => g.swap(j - 1, j),
                }
                if matches!(self, Component::B(_)) {
                    Component::B(g)
                } else {
                    Component::D(g)
                }
            }
            Component::Dihedral(d) => Component::Dihedral(Dihedral::generator(d.m(), j)),
            Component::Exceptional(m) => Component::Exceptional(RootMatrix::generator(m.family(), j)),
        }
    }

    /// Canonical bytes: one-line values for A/B/D, `(k, side)` for I2, root
    /// indices of the columns for exceptional types.
    pub fn canonical_key(&self, out: &mut Vec<u8>) {
        match self {
            Component::A(a) => out.extend(a.iter().map(|&x| u8::try_from(x).expect("A key needs p < 256"))),
            Component::B(a) | Component::D(a) => {
                out.extend(a.iter().map(|&x| i8::try_from(x).expect("B/D key needs p < 128") as u8))
            }
            Component::Dihedral(d) => {
                out.extend(d.length().to_le_bytes());
                out.push((d.side() == Side::T) as u8);
            }
            Component::Exceptional(m) => out.extend(m.canonical_key()),
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, items: Vec<String>| write!(f, "[{}]", items.join(","));
        match self {
            Component::A(a) => list(f, a.iter().map(|x| (x + 1).to_string()).collect()),
            Component::B(a) | Component::D(a) => list(f, a.iter().map(|x| x.to_string()).collect()),
            Component::Dihedral(d) => write!(f, "({},{:?})", d.length(), d.side()),
            Component::Exceptional(m) => list(f, m.canonical_key().iter().map(|x| format!("r{x}")).collect()),
        }
    }
}

/// An element of a product group, one component per factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    components: Vec<Component>,
}

impl GroupElement {
    /// Checks every component against the corresponding factor of `group`.
    pub fn new(group: &CoxeterGroup, components: Vec<Component>) -> Result<Self> {
        if components.len() != group.factors().len() {
            return Err(Error::GroupMismatch(format!(
                "{} components for {} factors",
                components.len(),
                group.factors().len()
            )));
        }
        for (i, (c, t)) in components.iter().zip(group.factors()).enumerate() {
            if !c.belongs_to(t) {
                return Err(Error::GroupMismatch(format!("component {i} ({c}) is not an element of {t}")));
            }
        }
        Ok(GroupElement { components })
    }

    pub(crate) fn from_components_unchecked(components: Vec<Component>) -> Self {
        GroupElement { components }
    }

    pub fn identity(group: &CoxeterGroup) -> Self {
        GroupElement {
            components: group.factors().iter().map(Component::identity).collect(),
        }
    }

    /// Global generator `index` (factor generators are numbered consecutively).
    pub fn generator(group: &CoxeterGroup, index: usize) -> Self {
        let mut components: Vec<Component> = group.factors().iter().map(Component::identity).collect();
        let mut offset = 0;
        for (c, t) in components.iter_mut().zip(group.factors()) {
            if index < offset + t.rank() {
                *c = Component::generator(t, index - offset);
                return GroupElement { components };
            }
            offset += t.rank();
        }
        panic!("generator {index} out of range for rank {}", group.rank());
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(Component::rank).sum()
    }

    pub fn multiply(&self, other: &GroupElement) -> Result<GroupElement> {
        let compatible = self.components.len() == other.components.len()
            && self.components.iter().zip(&other.components).all(|(a, b)| a.same_shape(b));
        if !compatible {
            return Err(Error::GroupMismatch("elements belong to different groups".into()));
        }
        Ok(GroupElement {
            components: self.components.iter().zip(&other.components).map(|(a, b)| a.multiply(b)).collect(),
        })
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            components: self.components.iter().map(Component::inverse).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.length() == 0
    }

    pub fn length(&self) -> usize {
        self.components.iter().map(Component::length).sum()
    }

    /// Right descents (global generator indices), by the family rules.
    pub fn descent_set(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut offset = 0;
        for c in &self.components {
            out.extend(c.descents().into_iter().map(|j| j + offset));
            offset += c.rank();
        }
        out
    }

    /// Right descents straight from the definition `ℓ(ws) < ℓ(w)`.
    pub fn descent_set_by_length(&self) -> Vec<usize> {
        let base = self.length();
        let mut out = Vec::new();
        for s in 0..self.rank() {
            if self.multiply_generator(s).length() < base {
                out.push(s);
            }
        }
        out
    }

    /// `w·s` for a global generator index.
    pub fn multiply_generator(&self, index: usize) -> GroupElement {
        let mut components = self.components.clone();
        let mut offset = 0;
        for c in components.iter_mut() {
            if index < offset + c.rank() {
                let s = c.local_generator(index - offset);
                *c = c.multiply(&s);
                return GroupElement { components };
            }
            offset += c.rank();
        }
        panic!("generator {index} out of range for rank {}", self.rank());
    }

    pub fn des(&self) -> usize {
        self.components.iter().map(Component::des).sum()
    }

    /// `t(w) = des(w) + des(w⁻¹)`.
    pub fn two_sided_descent(&self) -> usize {
        self.components.iter().map(Component::two_sided_descent).sum()
    }

    pub fn canonical_key(&self) -> Vec<u8> {
        let mut out = Vec::new();
        for c in &self.components {
            c.canonical_key(&mut out);
        }
        out
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "e");
        }
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(s: &str) -> CoxeterGroup {
        s.parse().unwrap()
    }

    #[test]
    fn identity_laws() {
        let g = group("A2xB3xI2(5)xH3");
        let e = GroupElement::identity(&g);
        assert_eq!(e.inverse(), e);
        assert_eq!(e.length(), 0);
        assert_eq!(e.des(), 0);
        assert_eq!(e.two_sided_descent(), 0);
        for i in 0..g.rank() {
            let s = GroupElement::generator(&g, i);
            assert_eq!(s.length(), 1, "generator {i}");
            assert_eq!(s.descent_set(), vec![i]);
            assert_eq!(s.multiply(&s).unwrap(), e);
            assert_eq!(e.multiply_generator(i), s);
        }
    }

    #[test]
    fn a2_examples() {
        let g = group("A2");
        let w = GroupElement::new(&g, vec![Component::A(vec![1, 2, 0])]).unwrap();
        assert_eq!(w.inverse(), GroupElement::new(&g, vec![Component::A(vec![2, 0, 1])]).unwrap());
        let w0 = GroupElement::new(&g, vec![Component::A(vec![2, 1, 0])]).unwrap();
        assert_eq!(w0.length(), 3);
        assert_eq!(w0.two_sided_descent(), 4);
    }

    #[test]
    fn dihedral_longest_inverse() {
        let g = group("I2(5)");
        let w0 = GroupElement::new(&g, vec![Component::Dihedral(Dihedral::longest(5))]).unwrap();
        assert_eq!(w0.inverse(), w0);
    }

    #[test]
    fn validation() {
        let g = group("D4");
        assert!(GroupElement::new(&g, vec![Component::D(vec![-1, 2, 3, 4])]).is_err());
        assert!(GroupElement::new(&g, vec![Component::D(vec![-1, -2, 3, 4])]).is_ok());
        assert!(GroupElement::new(&g, vec![Component::B(vec![-1, -2, 3, 4])]).is_err());
        assert!(GroupElement::new(&g, vec![]).is_err());
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = GroupElement::identity(&group("A2"));
        let b = GroupElement::identity(&group("A3"));
        assert!(matches!(a.multiply(&b), Err(Error::GroupMismatch(_))));
        let c = GroupElement::identity(&group("B4"));
        let d = GroupElement::identity(&group("D4"));
        assert!(c.multiply(&d).is_err());
    }

    #[test]
    fn trivial_group_element() {
        let g = CoxeterGroup::trivial();
        let e = GroupElement::identity(&g);
        assert_eq!(e.two_sided_descent(), 0);
        assert_eq!(e.multiply(&e).unwrap(), e);
        assert!(e.canonical_key().is_empty());
    }
}
