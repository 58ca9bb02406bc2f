//! Exact verification of the h/e determinant duality on skew Young diagrams.
//!
//! The crate builds the two weighted lattices attached to a skew shape,
//! counts non-intersecting path tuples by brute force, and checks the
//! resulting determinant identities symbolically.

pub mod cli;
pub mod connectors;
pub mod detring;
pub mod identity;
pub mod lattice;
pub mod poly;
pub mod shape;
