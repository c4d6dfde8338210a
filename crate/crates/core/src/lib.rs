//! Exact lattice models of abelian varieties and their endomorphisms.
//!
//! A complex torus `C^g / L` is represented by its rank-`2g` lattice, an
//! endomorphism by the integer matrix of its action on the lattice plus a
//! rational translation. On top of that the crate counts and enumerates
//! periodic points, tracks polarizations through Riemann forms, checks
//! quotient bounds for free group actions and expands intersection products.
//!
//! See the `examples/` directory for one runnable program per capability and
//! the `isodyn` binary for the scenario-driven command line.

pub mod cli;
pub mod error;
pub mod exactlinalg;
pub mod fixpoint;
pub mod intersect_sym;
pub mod lattice_av;
pub mod quotient_dyn;

pub use error::{Error, Result};
