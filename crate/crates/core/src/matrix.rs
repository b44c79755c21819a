//! Square matrices over the integer Laurent ring, with exact determinants.
//!
//! Two independent determinant algorithms are provided: fraction-free
//! Bareiss elimination (the workhorse, polynomial-time) and classical
//! cofactor expansion (exponential, kept as a cross-checking oracle).
//! Both stay inside `Z[t, t^-1]` at every step.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::laurent::{LaurentError, LaurentPoly};

#[derive(Debug, Error)]
pub enum MatrixError {
    #[error("matrix is not square: {rows} rows but row {row} has {cols} entries")]
    NotSquare {
        rows: usize,
        row: usize,
        cols: usize,
    },
    #[error("row {row}, column {col}: {source}")]
    Entry {
        row: usize,
        col: usize,
        source: LaurentError,
    },
    #[error("matrix text is empty")]
    Empty,
}

/// A square matrix with [`LaurentPoly`] entries, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<LaurentPoly>,
}

impl PolyMatrix {
    /// The `n x n` zero matrix.
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            entries: vec![LaurentPoly::zero(); n * n],
        }
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self, MatrixError> {
        let n = rows.len();
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(MatrixError::NotSquare {
                    rows: n,
                    row,
                    cols: r.len(),
                });
            }
        }
        Ok(Self {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> &LaurentPoly {
        &self.entries[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: LaurentPoly) {
        self.entries[row * self.n + col] = value;
    }

    /// Adds `value` into the entry at (`row`, `col`).
    pub fn accumulate(&mut self, row: usize, col: usize, value: &LaurentPoly) {
        let slot = &mut self.entries[row * self.n + col];
        *slot = &*slot + value;
    }

    /// The submatrix with `row` and `col` deleted.
    pub fn minor(&self, row: usize, col: usize) -> Self {
        assert!(row < self.n && col < self.n, "minor indices out of range");
        let mut out = Self::zeros(self.n - 1);
        let mut i = 0;
        for r in 0..self.n {
            if r == row {
                continue;
            }
            let mut j = 0;
            for c in 0..self.n {
                if c == col {
                    continue;
                }
                out.set(i, j, self.get(r, c).clone());
                j += 1;
            }
            i += 1;
        }
        out
    }

    /// Exact determinant by fraction-free Bareiss elimination with row
    /// pivoting. Every intermediate division is exact in the Laurent ring.
    pub fn determinant(&self) -> LaurentPoly {
        let n = self.n;
        if n == 0 {
            return LaurentPoly::one();
        }
        let mut m = self.clone();
        let mut negate = false;
        let mut previous_pivot = LaurentPoly::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                let Some(swap) = (k + 1..n).find(|&r| !m.get(r, k).is_zero()) else {
                    return LaurentPoly::zero();
                };
                for c in 0..n {
                    let upper = m.get(k, c).clone();
                    let lower = m.get(swap, c).clone();
                    m.set(k, c, lower);
                    m.set(swap, c, upper);
                }
                negate = !negate;
            }
            let pivot = m.get(k, k).clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let numer = &(&pivot * m.get(i, j)) - &(m.get(i, k) * m.get(k, j));
                    let reduced = numer
                        .div_exact(&previous_pivot)
                        .expect("Bareiss division is exact over an integral domain");
                    m.set(i, j, reduced);
                }
                m.set(i, k, LaurentPoly::zero());
            }
            previous_pivot = pivot;
        }
        let det = m.get(n - 1, n - 1).clone();
        if negate {
            -&det
        } else {
            det
        }
    }

    /// Exact determinant by cofactor expansion along the first row.
    /// Exponential in the size; retained as an independent oracle against
    /// which [`PolyMatrix::determinant`] is checked.
    pub fn cofactor_determinant(&self) -> LaurentPoly {
        if self.n == 0 {
            return LaurentPoly::one();
        }
        if self.n == 1 {
            return self.get(0, 0).clone();
        }
        let mut total = LaurentPoly::zero();
        for col in 0..self.n {
            let entry = self.get(0, col);
            if entry.is_zero() {
                continue;
            }
            let term = entry * &self.minor(0, col).cofactor_determinant();
            total = if col % 2 == 0 {
                &total + &term
            } else {
                &total - &term
            };
        }
        total
    }
}

impl fmt::Display for PolyMatrix {
    /// One row per line, entries comma-separated; inverse of [`FromStr`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in 0..self.n {
            let line: Vec<String> = (0..self.n).map(|c| self.get(row, c).to_string()).collect();
            writeln!(f, "{}", line.join(", "))?;
        }
        Ok(())
    }
}

impl FromStr for PolyMatrix {
    type Err = MatrixError;

    /// Parses one matrix row per non-blank line, entries separated by
    /// commas; `#` starts a comment line.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut row = Vec::new();
            for (col, cell) in line.split(',').enumerate() {
                let poly = cell.trim().parse().map_err(|source| MatrixError::Entry {
                    row: lineno,
                    col,
                    source,
                })?;
                row.push(poly);
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(MatrixError::Empty);
        }
        Self::from_rows(rows)
    }
}
