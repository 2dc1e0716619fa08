//! Embedded reference sequences and tables with their manifest.

use serde::Deserialize;
use thiserror::Error;

use crate::sumgraph::parse_beads;
use crate::targets::TargetSet;

const MANIFEST: &str = include_str!("../fixtures/manifest.json");

const FILES: &[(&str, &str)] = &[
    ("fig1-15.txt", include_str!("../fixtures/fig1-15.txt")),
    ("fig1-16.txt", include_str!("../fixtures/fig1-16.txt")),
    ("fig1-17.txt", include_str!("../fixtures/fig1-17.txt")),
    ("fig2.txt", include_str!("../fixtures/fig2.txt")),
    ("fig3.txt", include_str!("../fixtures/fig3.txt")),
    ("fig10-path.txt", include_str!("../fixtures/fig10-path.txt")),
    (
        "fig10-cycle.txt",
        include_str!("../fixtures/fig10-cycle.txt"),
    ),
    (
        "fig12-pairs.txt",
        include_str!("../fixtures/fig12-pairs.txt"),
    ),
    (
        "fig13-triples.txt",
        include_str!("../fixtures/fig13-triples.txt"),
    ),
    (
        "extension-198.txt",
        include_str!("../fixtures/extension-198.txt"),
    ),
    ("fig14-left.txt", include_str!("../fixtures/fig14-left.txt")),
    (
        "fig14-right.txt",
        include_str!("../fixtures/fig14-right.txt"),
    ),
    (
        "pentagonal-9.txt",
        include_str!("../fixtures/pentagonal-9.txt"),
    ),
    ("fig15.txt", include_str!("../fixtures/fig15.txt")),
    (
        "table-squares.txt",
        include_str!("../fixtures/table-squares.txt"),
    ),
    (
        "table-triangular.txt",
        include_str!("../fixtures/table-triangular.txt"),
    ),
    (
        "table-pentagonal.txt",
        include_str!("../fixtures/table-pentagonal.txt"),
    ),
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FixtureError {
    #[error("unknown fixture {0}")]
    Unknown(String),
    #[error("fixture {id} is {actual}, not {expected}")]
    WrongKind {
        id: String,
        expected: &'static str,
        actual: String,
    },
    #[error("fixture {id}: {message}")]
    Malformed { id: String, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureEntry {
    pub id: String,
    pub source: String,
    pub file: String,
    /// `beads`, `pairs`, `triples` or `table`.
    pub kind: String,
    /// A target-set name, or `explicit:` followed by comma-separated values.
    pub targets: String,
    pub closed: bool,
    pub reliable: bool,
    pub normalizations: Vec<String>,
}

impl FixtureEntry {
    pub fn text(&self) -> &'static str {
        FILES
            .iter()
            .find(|(name, _)| *name == self.file)
            .map(|(_, text)| *text)
            .expect("manifest file is embedded")
    }

    pub fn target_set(&self) -> TargetSet {
        match self.targets.as_str() {
            "squares" => TargetSet::squares(),
            "triangular" => TargetSet::triangular(),
            "pentagonal" => TargetSet::pentagonal(),
            other => {
                let values = other
                    .strip_prefix("explicit:")
                    .expect("manifest targets are validated by tests")
                    .split(',')
                    .map(|v| v.parse().expect("integer target"))
                    .collect();
                TargetSet::explicit(values).expect("valid explicit targets")
            }
        }
    }
}

pub fn manifest() -> Vec<FixtureEntry> {
    serde_json::from_str(MANIFEST).expect("embedded manifest parses")
}

pub fn entry(id: &str) -> Result<FixtureEntry, FixtureError> {
    manifest()
        .into_iter()
        .find(|e| e.id == id)
        .ok_or_else(|| FixtureError::Unknown(id.to_string()))
}

fn expect_kind(e: &FixtureEntry, kind: &'static str) -> Result<(), FixtureError> {
    if e.kind != kind {
        return Err(FixtureError::WrongKind {
            id: e.id.clone(),
            expected: kind,
            actual: e.kind.clone(),
        });
    }
    Ok(())
}

fn malformed(e: &FixtureEntry, message: impl Into<String>) -> FixtureError {
    FixtureError::Malformed {
        id: e.id.clone(),
        message: message.into(),
    }
}

fn rows<const K: usize>(e: &FixtureEntry) -> Result<Vec<[u64; K]>, FixtureError> {
    e.text()
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let vals: Vec<u64> = line
                .split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| malformed(e, format!("bad number {t:?}")))
                })
                .collect::<Result<_, _>>()?;
            vals.try_into().map_err(|v: Vec<u64>| {
                malformed(e, format!("expected {K} columns, got {}", v.len()))
            })
        })
        .collect()
}

/// The bead sequence of a `beads` fixture, without validation against its
/// targets.
pub fn beads(id: &str) -> Result<Vec<u32>, FixtureError> {
    let e = entry(id)?;
    expect_kind(&e, "beads")?;
    parse_beads(e.text()).map_err(|err| malformed(&e, err.to_string()))
}

pub fn pairs(id: &str) -> Result<Vec<(u32, u32)>, FixtureError> {
    let e = entry(id)?;
    expect_kind(&e, "pairs")?;
    Ok(rows::<2>(&e)?
        .into_iter()
        .map(|[a, b]| (a as u32, b as u32))
        .collect())
}

/// `(u, inserted, v)` triples.
pub fn triples(id: &str) -> Result<Vec<(u32, u32, u32)>, FixtureError> {
    let e = entry(id)?;
    expect_kind(&e, "triples")?;
    Ok(rows::<3>(&e)?
        .into_iter()
        .map(|[a, b, c]| (a as u32, b as u32, c as u32))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareTableRow {
    pub r: u64,
    pub s: u64,
    pub x: u64,
    pub y: u64,
    pub roots: [u64; 4],
    /// In printed order.
    pub double_sides: [u64; 2],
    pub perimeter: u64,
}

pub fn square_table() -> Vec<SquareTableRow> {
    let e = entry("table-squares").expect("embedded");
    rows::<11>(&e)
        .expect("embedded table parses")
        .into_iter()
        .map(|v| SquareTableRow {
            r: v[0],
            s: v[1],
            x: v[2],
            y: v[3],
            roots: [v[4], v[5], v[6], v[7]],
            double_sides: [v[8], v[9]],
            perimeter: v[10],
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FigurateTableRow {
    pub corners: [u64; 4],
    /// Half the double sides, in printed order.
    pub sides: [u64; 2],
    pub perimeter: u64,
}

fn figurate_table(id: &str) -> Vec<FigurateTableRow> {
    let e = entry(id).expect("embedded");
    rows::<7>(&e)
        .expect("embedded table parses")
        .into_iter()
        .map(|v| FigurateTableRow {
            corners: [v[0], v[1], v[2], v[3]],
            sides: [v[4], v[5]],
            perimeter: v[6],
        })
        .collect()
}

pub fn triangular_table() -> Vec<FigurateTableRow> {
    figurate_table("table-triangular")
}

pub fn pentagonal_table() -> Vec<FigurateTableRow> {
    figurate_table("table-pentagonal")
}
