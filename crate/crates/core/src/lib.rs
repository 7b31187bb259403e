//! Two-sided descent statistics on finite Coxeter groups.
//!
//! The crate enumerates and samples finite Coxeter groups, computes the exact
//! law of `t(w) = des(w) + des(w⁻¹)` for a uniform random element, and
//! measures how close the standardized law is to the standard normal using
//! the Wasserstein-2 (Mallows) metric and the Kolmogorov–Smirnov distance.

pub mod charfn;
pub mod coxeter;
pub mod distribution;
pub mod enumerate;
pub mod error;
pub mod harness;
pub mod ks;
pub mod normal;
pub mod sampling;
pub mod wasserstein;
pub mod zphi;

pub use coxeter::{CoxeterGroup, Family, GroupElement, IrreducibleType};
pub use distribution::{DiscreteDistribution, Moments};
pub use error::{Error, Result};
