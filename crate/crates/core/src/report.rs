//! Serializable invariant reports: the data behind every CLI command,
//! shared with the integration tests.

use crate::alexander::{self, AlexanderError};
use crate::compose::{self, ComposeError, SpliceSpec};
use crate::conway::{self, ConwayError};
use crate::diagram::Diagram;
use crate::laurent::LaurentPoly;
use crate::reidemeister;
use crate::table::{self, TableError};
use serde::Serialize;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Alexander(#[from] AlexanderError),
    #[error(transparent)]
    Compose(#[from] ComposeError),
    #[error(transparent)]
    Conway(#[from] ConwayError),
    #[error(transparent)]
    Table(#[from] TableError),
}

/// The invariants of one knot diagram, computed by the matrix method and
/// cross-checked against the skein oracle.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub source: String,
    pub crossing_count: usize,
    pub writhe: i64,
    pub alternating: bool,
    pub alexander: String,
    pub conway: String,
    pub determinant: u64,
    pub oracle_agreement: bool,
}

pub fn invariant_report(d: &Diagram, source: &str) -> Result<InvariantReport, ReportError> {
    let delta = alexander::canonical_alexander(d)?;
    let nabla = conway::conway_polynomial(d);
    let oracle = conway::conway_to_alexander(&nabla)?;
    Ok(InvariantReport {
        source: source.to_string(),
        crossing_count: d.crossing_count(),
        writhe: d.writhe(),
        alternating: d.is_alternating(),
        alexander: delta.to_string(),
        conway: nabla.to_string(),
        determinant: alexander::knot_determinant(d)?,
        oracle_agreement: delta.units_equal(&oracle),
    })
}

/// A connected sum alongside its factors, with the multiplicativity
/// check `Δ(a#b) ≐ Δ(a)·Δ(b)`.
#[derive(Clone, Debug, Serialize)]
pub struct ComposeReport {
    pub left: InvariantReport,
    pub right: InvariantReport,
    pub composite: InvariantReport,
    pub multiplicative: bool,
}

pub fn compose_report(
    a: &Diagram,
    b: &Diagram,
    a_source: &str,
    b_source: &str,
    spec: &SpliceSpec,
) -> Result<ComposeReport, ReportError> {
    let sum = compose::connected_sum(a, b, spec)?;
    let left = invariant_report(a, a_source)?;
    let right = invariant_report(b, b_source)?;
    let composite = invariant_report(&sum, &format!("{a_source} # {b_source}"))?;
    let product = &alexander::canonical_alexander(a)? * &alexander::canonical_alexander(b)?;
    let multiplicative = alexander::canonical_alexander(&sum)?.units_equal(&product);
    Ok(ComposeReport {
        left,
        right,
        composite,
        multiplicative,
    })
}

/// The worked reference example: determinant of the shipped fixture
/// matrix minor, its normalization, the engine's own polynomial for the
/// same composite, and the non-unit factor separating them.
#[derive(Clone, Debug, Serialize)]
pub struct FixtureReport {
    pub fixture_determinant: String,
    pub fixture_normalized: String,
    pub computed_alexander: String,
    pub divergence_factor: Option<String>,
    pub reproduced: bool,
}

pub fn fixture_report() -> Result<FixtureReport, ReportError> {
    let det = table::fixture_matrix().minor(3, 3).determinant();
    let normalized = det
        .normalize_units()
        .expect("the fixture determinant is nonzero");

    let trefoil = table::get("3_1")?;
    let kink = table::get("1_1")?;
    let spec = compose::default_splice(&trefoil, &kink);
    let sum = compose::connected_sum(&trefoil, &kink, &spec)?;
    let own = alexander::canonical_alexander(&sum)?;

    let reference = published_reference("3_1", "1_1");
    let divergence_factor = reference
        .and_then(|published| published.div_exact(&own).ok())
        .map(|factor| factor.to_string());
    let reproduced = reference.is_some_and(|published| normalized == *published);

    Ok(FixtureReport {
        fixture_determinant: det.to_string(),
        fixture_normalized: normalized.to_string(),
        computed_alexander: own.to_string(),
        divergence_factor,
        reproduced,
    })
}

/// One row of the divergence table: a composite of two catalogue knots,
/// the engine's polynomial and determinant, the internal product check,
/// and the comparison against the reference value.
#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub left: String,
    pub right: String,
    pub computed_alexander: String,
    pub computed_determinant: u64,
    pub product_check: bool,
    pub reference: String,
    pub matches_reference: bool,
}

pub fn divergence_table() -> Result<Vec<TableRow>, ReportError> {
    published_rows()
        .iter()
        .map(|(left, right, reference)| {
            let a = table::get(left)?;
            let b = table::get(right)?;
            let spec = compose::default_splice(&a, &b);
            let sum = compose::connected_sum(&a, &b, &spec)?;
            let computed = alexander::canonical_alexander(&sum)?;
            let product =
                &alexander::canonical_alexander(&a)? * &alexander::canonical_alexander(&b)?;
            Ok(TableRow {
                left: left.to_string(),
                right: right.to_string(),
                computed_alexander: computed.to_string(),
                computed_determinant: alexander::knot_determinant(&sum)?,
                product_check: computed.units_equal(&product),
                reference: reference.to_string(),
                matches_reference: computed.units_equal(reference),
            })
        })
        .collect()
}

/// One step of a random Reidemeister walk, with the polynomial recomputed
/// after the move.
#[derive(Clone, Debug, Serialize)]
pub struct InvarianceStep {
    pub applied: String,
    pub crossing_count: usize,
    pub writhe: i64,
    pub alexander: String,
    pub unchanged: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvarianceReport {
    pub source: String,
    pub moves: usize,
    pub seed: u64,
    pub steps: Vec<InvarianceStep>,
    pub invariant: bool,
}

pub fn invariance_report(
    d: &Diagram,
    source: &str,
    moves: usize,
    seed: u64,
) -> Result<InvarianceReport, ReportError> {
    let reference = alexander::canonical_alexander(d)?;
    let mut steps = Vec::new();
    for (site, diagram) in reidemeister::random_walk_trace(d, moves, seed) {
        let delta = alexander::canonical_alexander(&diagram)?;
        steps.push(InvarianceStep {
            applied: format!("{site:?}"),
            crossing_count: diagram.crossing_count(),
            writhe: diagram.writhe(),
            alexander: delta.to_string(),
            unchanged: delta.units_equal(&reference),
        });
    }
    let invariant = steps.iter().all(|s| s.unchanged);
    Ok(InvarianceReport {
        source: source.to_string(),
        moves,
        seed,
        steps,
        invariant,
    })
}

fn published_rows() -> &'static [(String, String, LaurentPoly)] {
    static ROWS: OnceLock<Vec<(String, String, LaurentPoly)>> = OnceLock::new();
    ROWS.get_or_init(|| {
        include_str!("../data/published_table.txt")
            .lines()
            .map(str::trim)
            .filter(|line| !line.is_empty() && !line.starts_with('#'))
            .map(|line| {
                let fields: Vec<&str> = line.split('|').map(str::trim).collect();
                assert_eq!(fields.len(), 3, "malformed reference line {line:?}");
                (
                    fields[0].to_string(),
                    fields[1].to_string(),
                    fields[2].parse().expect("reference polynomial parses"),
                )
            })
            .collect()
    })
}

fn published_reference(left: &str, right: &str) -> Option<&'static LaurentPoly> {
    published_rows()
        .iter()
        .find(|(l, r, _)| l == left && r == right)
        .map(|(_, _, p)| p)
}
