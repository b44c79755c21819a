//! The crossing/arc matrix of a knot diagram and the invariants read off
//! it: the Alexander polynomial and the knot determinant.
//!
//! Every crossing contributes one matrix row over the arcs it touches. At
//! a positive crossing with over-arc `o`, incoming under-arc `a` and
//! outgoing under-arc `b` the row receives `o: 1−t, a: t, b: −1`; at a
//! negative crossing it receives `o: 1−t, a: −1, b: t`. Contributions
//! accumulate when one arc plays several roles at a kink. Deleting any one
//! row and one column and taking the exact determinant yields the
//! Alexander polynomial up to a unit `±t^k`; [`LaurentPoly::normalize_units`]
//! removes the ambiguity. Evaluating at `t = −1` and taking the absolute
//! value gives the knot determinant.

use crate::diagram::{Diagram, Sign};
use crate::laurent::LaurentPoly;
use crate::matrix::PolyMatrix;
use num_traits::Signed;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlexanderError {
    #[error("the matrix method needs a one-component diagram, got {components} components")]
    NotAKnot { components: usize },
    #[error("the crossingless unknot has an empty matrix; its polynomial is 1 by convention")]
    EmptyMatrix,
    #[error("cannot delete row {row} and column {col} of a {size}x{size} matrix")]
    MinorOutOfRange { row: usize, col: usize, size: usize },
    #[error("determinant {value} does not fit in the reporting range")]
    DeterminantOverflow { value: String },
}

/// The full crossing/arc matrix: row `i` for crossing `i`, column `j` for
/// arc `j`. Square for knot diagrams, where arcs and crossings are in
/// bijection.
pub fn build_matrix(d: &Diagram) -> Result<PolyMatrix, AlexanderError> {
    if d.component_count() != 1 {
        return Err(AlexanderError::NotAKnot {
            components: d.component_count(),
        });
    }
    if d.crossing_count() == 0 {
        return Err(AlexanderError::EmptyMatrix);
    }
    let n = d.crossing_count();
    debug_assert_eq!(d.arc_count(), n);
    let one_minus_t = &LaurentPoly::one() - &LaurentPoly::t();
    let mut m = PolyMatrix::zeros(n);
    for (row, crossing) in d.crossings().iter().enumerate() {
        let (into, out_of) = match crossing.sign {
            Sign::Positive => (LaurentPoly::t(), -&LaurentPoly::one()),
            Sign::Negative => (-&LaurentPoly::one(), LaurentPoly::t()),
        };
        m.accumulate(row, crossing.over, &one_minus_t);
        m.accumulate(row, crossing.under_in, &into);
        m.accumulate(row, crossing.under_out, &out_of);
    }
    Ok(m)
}

/// The Alexander polynomial in canonical unit form, computed from the
/// minor that deletes `drop_row` and `drop_col`. The result is independent
/// of which row and column are deleted. The crossingless unknot returns 1
/// regardless of the indices.
pub fn alexander_polynomial(
    d: &Diagram,
    drop_row: usize,
    drop_col: usize,
) -> Result<LaurentPoly, AlexanderError> {
    if d.component_count() != 1 {
        return Err(AlexanderError::NotAKnot {
            components: d.component_count(),
        });
    }
    let n = d.crossing_count();
    if n == 0 {
        return Ok(LaurentPoly::one());
    }
    if drop_row >= n || drop_col >= n {
        return Err(AlexanderError::MinorOutOfRange {
            row: drop_row,
            col: drop_col,
            size: n,
        });
    }
    let det = build_matrix(d)?.minor(drop_row, drop_col).determinant();
    if det.is_zero() {
        return Ok(det);
    }
    Ok(det
        .normalize_units()
        .expect("a nonzero polynomial has a canonical unit form"))
}

/// [`alexander_polynomial`] with the conventional choice of deleting the
/// last row and column.
pub fn canonical_alexander(d: &Diagram) -> Result<LaurentPoly, AlexanderError> {
    let n = d.crossing_count();
    if n == 0 {
        return alexander_polynomial(d, 0, 0);
    }
    alexander_polynomial(d, n - 1, n - 1)
}

/// `|Δ(−1)|`, the knot determinant.
pub fn knot_determinant(d: &Diagram) -> Result<u64, AlexanderError> {
    let delta = canonical_alexander(d)?;
    let value = delta
        .eval_at_int(-1)
        .expect("evaluation away from zero is total");
    debug_assert!(value.is_integer());
    let magnitude = value.to_integer().abs();
    u64::try_from(magnitude.clone()).map_err(|_| AlexanderError::DeterminantOverflow {
        value: magnitude.to_string(),
    })
}
