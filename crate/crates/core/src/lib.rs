#![allow(clippy::needless_range_loop, clippy::int_plus_one)]

//! Exact homology-level calculus of Gromov invariants of symplectic
//! 4-manifolds.
//!
//! The crate works entirely with integer lattices modelling `H₂(M; ℤ)`:
//! point-count formulas, adjunction genus, exceptional-sphere reductions,
//! decompositions of a class into orthogonal pieces, generating functions for
//! multiply covered tori, spherical invariants and fiber-sum bookkeeping.
//! Moduli spaces themselves are never constructed; counts of connected
//! curves enter as table data on a [`ManifoldModel`].

pub mod cli;
pub mod expr;
pub mod fibersum;
pub mod invariants;
pub mod lattice;
pub mod loader;
pub mod model;
pub mod presets;
pub mod report;
pub mod spherical;
pub mod structure;
pub mod torus;

pub use expr::{parse_class, ParseError};
pub use lattice::{HClass, IntersectionLattice, LatticeError};
pub use model::{ManifoldModel, ModelError};
pub use report::{Clause, Report};
pub use torus::{TorusEntry, TorusLabel, TruncSeries};
