//! Connected sums of knot diagrams.
//!
//! A connected sum cuts one arc of each operand and cross-joins the four
//! ends. Cuts are placed at the undercrossing that terminates the chosen
//! arc, so splicing is pure strand surgery: rotate each strand to end at
//! its cut, then concatenate. The composite inherits both operands'
//! crossings (the second operand's relabelled after the first's) and no
//! new crossings are created.

use crate::diagram::{Diagram, DiagramData, Passage};
use thiserror::Error;

/// Where and how to splice: which arc of each operand to cut, and whether
/// the second operand keeps its orientation (when `false` it is reversed
/// before splicing, and `arc_b` refers to the reversed diagram's arcs).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpliceSpec {
    pub arc_a: usize,
    pub arc_b: usize,
    pub match_orientation: bool,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComposeError {
    #[error("connected sums take knot diagrams; this operand has {components} components")]
    NotAKnot { components: usize },
    #[error("splice arc {arc} out of range; the operand has {arc_count} arcs")]
    ArcOutOfRange { arc: usize, arc_count: usize },
}

/// Every arc of a diagram is a valid splice site.
pub fn splice_sites(d: &Diagram) -> Vec<usize> {
    (0..d.arc_count()).collect()
}

/// The conventional splice: the highest-numbered arc on each side, with
/// orientations kept.
pub fn default_splice(a: &Diagram, b: &Diagram) -> SpliceSpec {
    SpliceSpec {
        arc_a: a.arc_count().saturating_sub(1),
        arc_b: b.arc_count().saturating_sub(1),
        match_orientation: true,
    }
}

pub fn connected_sum(a: &Diagram, b: &Diagram, spec: &SpliceSpec) -> Result<Diagram, ComposeError> {
    for operand in [a, b] {
        if operand.component_count() != 1 {
            return Err(ComposeError::NotAKnot {
                components: operand.component_count(),
            });
        }
    }
    let second = if spec.match_orientation {
        b.clone()
    } else {
        b.reverse()
    };
    for (arc, operand) in [(spec.arc_a, a), (spec.arc_b, &second)] {
        if arc >= operand.arc_count() {
            return Err(ComposeError::ArcOutOfRange {
                arc,
                arc_count: operand.arc_count(),
            });
        }
    }
    // A crossingless operand is the identity of composition.
    if a.crossing_count() == 0 {
        return Ok(second);
    }
    if second.crossing_count() == 0 {
        return Ok(a.clone());
    }

    let shift = a.crossing_count();
    let first_half = rotate_to_cut(a, spec.arc_a, 0);
    let second_half = rotate_to_cut(&second, spec.arc_b, shift);
    let merged: Vec<Passage> = first_half.into_iter().chain(second_half).collect();
    let signs = a
        .data()
        .signs
        .iter()
        .chain(&second.data().signs)
        .copied()
        .collect();
    Ok(Diagram::new(DiagramData {
        signs,
        strands: vec![merged],
    })
    .expect("splicing two knots yields a valid diagram"))
}

/// The knot's strand rotated to end at the under-passage terminating
/// `arc`, with crossing labels shifted.
fn rotate_to_cut(d: &Diagram, arc: usize, shift: usize) -> Vec<Passage> {
    let (strand_idx, pos) = d
        .under_end(arc)
        .expect("every arc of a knot with crossings ends under one");
    let strand = &d.strands()[strand_idx];
    strand[pos + 1..]
        .iter()
        .chain(&strand[..=pos])
        .map(|p| Passage {
            crossing: p.crossing + shift,
            kind: p.kind,
        })
        .collect()
}
