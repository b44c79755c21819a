//! Exact combinatorial invariants of knot diagrams.
//!
//! The engine represents an oriented knot or link diagram purely
//! combinatorially (crossings, strands, and the order in which each strand
//! passes through its crossings) and computes classical invariants without
//! any floating-point arithmetic:
//!
//! * the Alexander polynomial, via an exact determinant of a labelled
//!   crossing matrix over `Z[t, t^-1]`,
//! * the Conway polynomial, via the skein recursion on crossing switches
//!   and smoothings,
//! * the knot determinant, by evaluating the Alexander polynomial at `-1`.
//!
//! Diagrams can be read from and written to planar-diagram (PD) and signed
//! Gauss notations, composed under connected sum, and perturbed by
//! Reidemeister moves, which the invariants must survive unchanged.

pub mod alexander;
pub mod compose;
pub mod conway;
pub mod diagram;
pub mod laurent;
pub mod matrix;
pub mod notation;
pub mod reidemeister;
pub mod report;
pub mod table;

pub use diagram::{Crossing, Diagram, DiagramData, PassKind, Passage, Sign, Violation};
pub use laurent::LaurentPoly;
