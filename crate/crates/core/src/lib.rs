//! Certified lower bounds for graphs avoiding a fixed induced tree.

pub mod graph;
pub mod tree;
pub mod certify;
pub mod counting;
pub mod io;
pub mod census;

/// Exact counts.
pub type BigCount = num_bigint::BigUint;
/// Floating-point evaluations of growth estimates.
pub type Real = f64;
