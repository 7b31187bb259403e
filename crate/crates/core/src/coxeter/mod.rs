//! Finite Coxeter groups: classification data, element representations and
//! the descent statistics.

pub mod dihedral;
pub mod element;
pub mod perm;
pub mod roots;
pub mod types;

pub use dihedral::{Dihedral, Side};
pub use element::{Component, GroupElement};
pub use roots::{root_system, RootMatrix, RootSystem};
pub use types::{make_irreducible, parse_group, CoxeterGroup, CoxeterMatrix, Family, IrreducibleType};
