//! Fraction-free exact determinants.
//!
//! Rational matrices are scaled row by row to integer matrices (each row
//! multiplied by the least common multiple of its denominators), eliminated
//! with Bareiss's fraction-free schema, and the integer result is divided by
//! the accumulated row scales. Every interior division in the elimination is
//! exact, which keeps entries at the size of minors instead of exploding the
//! way naive cross-multiplication does.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::{Int, Rational};

use super::DetError;

/// Exact determinant of a square matrix of rationals.
pub fn bareiss_det(matrix: &[Vec<Rational>]) -> Result<Rational, DetError> {
    let n = matrix.len();
    let mut scale = Int::one();
    let mut rows: Vec<Vec<Int>> = Vec::with_capacity(n);
    for row in matrix {
        if row.len() != n {
            return Err(DetError::NonSquareMatrix {
                rows: n,
                row_len: row.len(),
            });
        }
        let lcm = row
            .iter()
            .fold(Int::one(), |acc, entry| acc.lcm(entry.denom()));
        rows.push(
            row.iter()
                .map(|entry| entry.numer() * (&lcm / entry.denom()))
                .collect(),
        );
        scale *= lcm;
    }
    let det = bareiss_det_int(rows)?;
    Ok(Rational::new(det, scale))
}

/// Exact determinant of a square integer matrix by fraction-free elimination
/// with row-swap pivoting. An empty matrix has determinant one; a column with
/// no usable pivot makes the determinant zero.
pub fn bareiss_det_int(mut rows: Vec<Vec<Int>>) -> Result<Int, DetError> {
    let n = rows.len();
    for row in &rows {
        if row.len() != n {
            return Err(DetError::NonSquareMatrix {
                rows: n,
                row_len: row.len(),
            });
        }
    }
    if n == 0 {
        return Ok(Int::one());
    }
    let mut negated = false;
    let mut previous_pivot = Int::one();
    for k in 0..n - 1 {
        let Some(pivot_row) = (k..n).find(|&r| !rows[r][k].is_zero()) else {
            return Ok(Int::zero());
        };
        if pivot_row != k {
            rows.swap(pivot_row, k);
            negated = !negated;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let numerator = &rows[i][j] * &rows[k][k] - &rows[i][k] * &rows[k][j];
                debug_assert!(numerator.is_multiple_of(&previous_pivot));
                rows[i][j] = numerator / &previous_pivot;
            }
            rows[i][k] = Int::zero();
        }
        previous_pivot = rows[k][k].clone();
    }
    let mut det = rows[n - 1][n - 1].clone();
    if negated {
        det = -det;
    }
    Ok(det)
}
