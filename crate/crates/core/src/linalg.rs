//! Exact integer matrices and fraction-free rank.
//!
//! Rank runs Bareiss elimination: every intermediate entry is a minor of the
//! original matrix, every division is exact, and no rationals appear. Entries
//! still grow like minors do, so the scalar must be an arbitrary-precision
//! integer for matrices of any size; [`crate::ExactMatrix`] fixes the scalar
//! used throughout this crate.

use crate::error::{Error, Result};
use num_integer::Integer;

/// Dense row-major matrix over an exact integer scalar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Integer + Clone> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                got: bad.len(),
            });
        }
        let r = rows.len();
        Ok(Matrix {
            rows: r,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    /// Exact rank by fraction-free elimination with row pivoting and column
    /// skipping. Destroys nothing; works on a copy.
    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let at = |r: usize, c: usize| r * cols + c;
        let mut prev = T::one();
        let mut rank = 0usize;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(pivot) = (rank..rows).find(|&r| !m[at(r, col)].is_zero()) else {
                continue;
            };
            if pivot != rank {
                for c in 0..cols {
                    m.swap(at(pivot, c), at(rank, c));
                }
            }
            for r in rank + 1..rows {
                for c in col + 1..cols {
                    // Two-by-two minor over the previous pivot; the division
                    // is exact because the result is again a minor of the
                    // original matrix.
                    let num = m[at(rank, col)].clone() * m[at(r, c)].clone()
                        - m[at(r, col)].clone() * m[at(rank, c)].clone();
                    let (q, rem) = num.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "fraction-free division must be exact");
                    m[at(r, c)] = q;
                }
                m[at(r, col)] = T::zero();
            }
            prev = m[at(rank, col)].clone();
            rank += 1;
        }
        rank
    }
}
