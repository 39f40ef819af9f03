//! Exact computational tools for induced subgraphs of Kneser graphs.
//!
//! The Kneser graph `K(n, k)` has the `k`-subsets of `[n]` as vertices, two
//! of them adjacent when disjoint. This crate builds the extremal families
//! that arise when minimising the maximum degree of an induced subgraph of
//! fixed order, measures them (degrees, eigencomponent norms, star
//! densities), evaluates the associated degree bounds in exact arithmetic,
//! and searches for true minimisers on small instances.
//!
//! All quantities that feed a verdict are exact: binomials are big integers,
//! densities are reduced rationals, and comparisons involving a single square
//! root are decided by sign analysis rather than floating point.

pub mod bounds;
pub mod combinat;
pub mod constructions;
mod error;
pub mod exact;
pub mod family;
pub mod search;
pub mod spectral;

pub use error::{Error, Result};

pub use combinat::{binom, Order, SizeParameter, SubsetCode};
pub use family::{DegreeProfile, DegreeStrategy, Family};

