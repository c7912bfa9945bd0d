//! Two independent exact determinant computations for weighted graphs.
//!
//! [`sachs_det`] expands the determinant over all basic figures (spanning
//! subgraphs whose components are single edges or cycles); [`bareiss_det`]
//! clears denominators and runs fraction-free integer elimination. They share
//! no code beyond the graph type, which is what makes them useful as
//! cross-checking oracles.

mod bareiss;
mod sachs;

use std::fmt;

pub use bareiss::{bareiss_det, bareiss_det_int};
pub use sachs::{enumerate_basic_figures, enumerate_basic_figures_with_cap, sachs_det,
                sachs_det_with_cap, BasicFigure};

/// Default vertex cap for basic-figure enumeration. The number of figures
/// grows exponentially, so callers must opt in above this size.
pub const DEFAULT_ENUM_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DetError {
    /// The graph exceeds the enumeration cap and the caller did not override.
    TooLargeForEnumeration { vertex_count: usize, cap: usize },
    /// Row lengths do not match the row count.
    NonSquareMatrix { rows: usize, row_len: usize },
}

impl fmt::Display for DetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DetError::TooLargeForEnumeration { vertex_count, cap } => write!(
                f,
                "graph with {vertex_count} vertices exceeds the enumeration cap of {cap}"
            ),
            DetError::NonSquareMatrix { rows, row_len } => {
                write!(f, "non-square matrix: {rows} rows but a row of length {row_len}")
            }
        }
    }
}

impl std::error::Error for DetError {}
