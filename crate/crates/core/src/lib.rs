//! Exact determinants of weighted graphs, three independent ways.
//!
//! The crate computes `det A(G)` for undirected graphs with nonzero rational
//! edge weights, where `A(G)` is the symmetric adjacency matrix with zero
//! diagonal. Three routes to the same number are provided so they can
//! cross-check each other:
//!
//! * [`det::sachs_det`]: expansion over all spanning subgraphs whose
//!   components are single edges or cycles (basic figures),
//! * [`det::bareiss_det`]: fraction-free integer elimination after clearing
//!   denominators,
//! * [`hexgrid::reduce_det`]: determinant-preserving graph reductions that
//!   never form the matrix at all, specialised to hexagonal grids.
//!
//! The [`hexgrid`] module generates the brick-wall graphs `H(n, m)` together
//! with the first-row weighting `(x+i)/i` that makes their row-by-row
//! reduction close under a simple parameter shift, and evaluates the
//! closed-form determinant `(-1)^(nm+n+m) * C(x+n+m, n)^2`.
//!
//! Graph and reduction code is generic over the [`Scalar`] ring; the concrete
//! instantiation used by the grid generators, the text formats and the CLI is
//! [`Rational`] (arbitrary precision, always normalized), so every equality
//! in the test suite is exact.

pub mod det;
pub mod format;
pub mod graph;
pub mod hexgrid;
pub mod reduce;
pub mod scalar;

pub use graph::{GraphError, WeightedGraph};
pub use scalar::Scalar;

/// Arbitrary-precision integer used for counts and cleared-denominator work.
pub type Int = num_bigint::BigInt;

/// Arbitrary-precision rational, stored in lowest terms with positive
/// denominator. Every edge weight and determinant in the tools is one of
/// these.
pub type Rational = num_rational::BigRational;

/// The concrete graph type used by the grid generators, the text formats and
/// the CLI.
pub type Graph = WeightedGraph<Rational>;

/// Shorthand for an integer-valued [`Rational`].
pub fn rational(n: i64) -> Rational {
    Rational::from_integer(Int::from(n))
}

/// Shorthand for the [`Rational`] `n / d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(Int::from(n), Int::from(d))
}
