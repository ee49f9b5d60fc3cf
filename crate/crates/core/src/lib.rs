//! Exact-arithmetic toolkit for F_q-linear sets in finite projective spaces.
//!
//! The crate builds the minimum-size linear sets obtained by evaluating
//! bounded-degree polynomial tuples at an element `alpha` of prescribed degree,
//! realizes them as projections of a canonical subgeometry, computes their
//! weight distributions and certifies the rank `h + 1` planar members as small
//! minimal blocking sets.
//!
//! Everything is exact: field elements are packed coefficient vectors over the
//! prime field, counts that feed closed formulas use arbitrary precision
//! integers, and no floating point is involved anywhere.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod blocking;
pub mod error;
pub mod field_tower;
pub mod linear_sets;
pub mod matrix;
pub mod polyring;
pub mod projective;

pub use error::{Error, Result};
pub use field_tower::{make_field, Field, FieldElement, FieldSpec};
pub use linear_sets::{ConstructionSpec, LinearSetReport};
pub use polyring::{Degree, PolyRing, PolyTuple, Polynomial};
pub use projective::{ProjectivePoint, Subspace};
