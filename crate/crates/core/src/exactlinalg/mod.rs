//! Exact integer and rational linear algebra: determinants, Smith normal
//! form with transforms, characteristic polynomials and Pfaffians.
//!
//! Everything here is arbitrary precision and allocation-heavy but small:
//! matrices in this crate rarely exceed dimension 12.

mod matrix;
mod pfaffian;
mod poly;
mod smith;

pub use matrix::{det, IntegerMatrix, RationalMatrix};
pub use pfaffian::pfaffian;
pub use poly::{charpoly, exterior_trace_sum, IntegerPolynomial};
pub use smith::{smith_normal_form, SmithDecomposition};
