//! Built-in catalogue of small knot diagrams with frozen reference
//! invariants, plus the reference four-by-four matrix behind the
//! `paper-example` command.

use crate::diagram::Diagram;
use crate::matrix::PolyMatrix;
use crate::notation;
use std::sync::OnceLock;
use thiserror::Error;

/// One catalogue entry: a name, the diagram's canonical PD and Gauss
/// codes, and its expected invariants. The expectations are regenerated
/// from the codes by the test suite rather than trusted blindly.
#[derive(Clone, Copy, Debug)]
pub struct KnotEntry {
    pub name: &'static str,
    pub pd: &'static str,
    pub gauss: &'static str,
    pub alexander: &'static str,
    pub determinant: u64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TableError {
    #[error("unknown knot name {name:?}; available: {available}")]
    UnknownName { name: String, available: String },
}

static TABLE: &str = include_str!("../data/knot_table.txt");
static FIXTURE: &str = include_str!("../data/fixture_matrix.txt");

pub fn entries() -> &'static [KnotEntry] {
    static ENTRIES: OnceLock<Vec<KnotEntry>> = OnceLock::new();
    ENTRIES.get_or_init(|| {
        TABLE
            .lines()
            .map(str::trim)
            .filter(|line| !line.is_empty() && !line.starts_with('#'))
            .map(|line| {
                let fields: Vec<&str> = line.split('|').map(str::trim).collect();
                assert_eq!(fields.len(), 5, "malformed catalogue line {line:?}");
                KnotEntry {
                    name: fields[0],
                    pd: fields[1],
                    gauss: fields[2],
                    alexander: fields[3],
                    determinant: fields[4]
                        .parse()
                        .expect("catalogue determinant is an integer"),
                }
            })
            .collect()
    })
}

pub fn names() -> Vec<&'static str> {
    entries().iter().map(|e| e.name).collect()
}

pub fn entry(name: &str) -> Option<&'static KnotEntry> {
    entries().iter().find(|e| e.name == name)
}

/// A fresh diagram parsed from the named entry's PD code.
pub fn get(name: &str) -> Result<Diagram, TableError> {
    let entry = entry(name).ok_or_else(|| TableError::UnknownName {
        name: name.to_string(),
        available: names().join(", "),
    })?;
    Ok(notation::parse_pd(entry.pd).expect("catalogue codes parse"))
}

/// The reference crossing/arc matrix of the worked composite example,
/// shipped as literal data so its determinant arithmetic is reproduced
/// bit-exactly whatever conventions the rest of the engine uses.
pub fn fixture_matrix() -> PolyMatrix {
    static MATRIX: OnceLock<PolyMatrix> = OnceLock::new();
    MATRIX
        .get_or_init(|| FIXTURE.parse().expect("fixture matrix parses"))
        .clone()
}
