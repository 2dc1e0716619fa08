//! Checks of the listed triangular and pentagonal necklace tables. Listed
//! sides are compared with the computed ones as unordered pairs.

use serde::Serialize;

use super::{build_necklace_from_corners, ConstructionError};
use crate::billiards::{decompose, gcd, merge_cycles, BilliardTable, DEFAULT_MERGE_BUDGET};
use crate::fixtures::{pentagonal_table, triangular_table, FigurateTableRow};
use crate::search::Necklace;
use crate::targets::TargetSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FigurateKind {
    Triangular,
    Pentagonal,
}

impl FigurateKind {
    pub fn target_set(self) -> TargetSet {
        match self {
            FigurateKind::Triangular => TargetSet::triangular(),
            FigurateKind::Pentagonal => TargetSet::pentagonal(),
        }
    }

    pub fn listed_rows(self) -> Vec<FigurateTableRow> {
        match self {
            FigurateKind::Triangular => triangular_table(),
            FigurateKind::Pentagonal => pentagonal_table(),
        }
    }
}

/// A disagreement between a listed row and what its corners give.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RowDiff {
    Sides {
        listed: [u64; 2],
        computed: [u64; 2],
    },
    Perimeter {
        listed: u64,
        computed: u64,
    },
    NonFigurateCorner {
        corner: u64,
    },
    SharedFactor {
        sides: [u64; 2],
        gcd: u64,
    },
    Coverage {
        a: u64,
        c_minus_b: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FigurateRowReport {
    /// 1-based row number in the listed table.
    pub index: usize,
    pub corners: [u64; 4],
    pub listed_sides: [u64; 2],
    pub listed_perimeter: u64,
    pub computed_sides: [u64; 2],
    pub computed_perimeter: u64,
    /// Components of the table before any merging.
    pub components: usize,
    /// The necklace needed cycle splicing.
    pub merged: bool,
    pub necklace_len: Option<usize>,
    #[serde(skip)]
    pub necklace: Option<Necklace>,
    pub failure: Option<String>,
    pub diffs: Vec<RowDiff>,
}

impl FigurateRowReport {
    pub fn verified(&self) -> bool {
        self.necklace.is_some()
    }
}

/// A necklace from the corners, splicing cycles when the table splits.
fn necklace_for(
    corners: [u64; 4],
    ts: &TargetSet,
) -> Result<(Necklace, usize, bool), ConstructionError> {
    match build_necklace_from_corners(corners, ts) {
        Ok(nk) => Ok((nk, 1, false)),
        Err(ConstructionError::Degenerate { components }) => {
            let (f, g) = BilliardTable::from_corners(corners)?.folds();
            let d = decompose(&f, &g)?;
            if !d.paths.is_empty() {
                return Err(ConstructionError::Degenerate { components });
            }
            let out = merge_cycles(d.cycles, ts, DEFAULT_MERGE_BUDGET)?;
            Ok((out.necklace, components, true))
        }
        Err(e) => Err(e),
    }
}

fn sorted(mut v: [u64; 2]) -> [u64; 2] {
    v.sort_unstable();
    v
}

fn check_row(index: usize, row: &FigurateTableRow, ts: &TargetSet) -> FigurateRowReport {
    let [a, b, c, _] = row.corners;
    let mut diffs: Vec<RowDiff> = row
        .corners
        .iter()
        .filter(|&&v| !ts.contains(v as i64))
        .map(|&corner| RowDiff::NonFigurateCorner { corner })
        .collect();
    let computed_sides = [b.saturating_sub(a) / 2, c.saturating_sub(b) / 2];
    let computed_perimeter = c.saturating_sub(a);
    if sorted(computed_sides) != sorted(row.sides) {
        diffs.push(RowDiff::Sides {
            listed: row.sides,
            computed: computed_sides,
        });
    }
    if computed_perimeter != row.perimeter {
        diffs.push(RowDiff::Perimeter {
            listed: row.perimeter,
            computed: computed_perimeter,
        });
    }
    let g = gcd(computed_sides[0], computed_sides[1]);
    if g != 1 {
        diffs.push(RowDiff::SharedFactor {
            sides: computed_sides,
            gcd: g,
        });
    }
    let c_minus_b = c.saturating_sub(b);
    if a >= c_minus_b {
        diffs.push(RowDiff::Coverage { a, c_minus_b });
    }
    let (necklace, components, merged, failure) = match necklace_for(row.corners, ts) {
        Ok((nk, comps, merged)) => (Some(nk), comps, merged, None),
        Err(e) => {
            let comps = match e {
                ConstructionError::Degenerate { components } => components,
                _ => 0,
            };
            (None, comps, false, Some(e.to_string()))
        }
    };
    FigurateRowReport {
        index,
        corners: row.corners,
        listed_sides: row.sides,
        listed_perimeter: row.perimeter,
        computed_sides,
        computed_perimeter,
        components,
        merged,
        necklace_len: necklace.as_ref().map(Necklace::len),
        necklace,
        failure,
        diffs,
    }
}

/// One report per listed row.
pub fn figurate_table_rows(kind: FigurateKind) -> Vec<FigurateRowReport> {
    let ts = kind.target_set();
    kind.listed_rows()
        .iter()
        .enumerate()
        .map(|(i, row)| check_row(i + 1, row, &ts))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pentagonal_rows_clean() {
        let reports = figurate_table_rows(FigurateKind::Pentagonal);
        assert_eq!(reports.len(), 10);
        for r in &reports {
            assert!(r.verified(), "row {}: {:?}", r.index, r.failure);
            assert!(r.diffs.is_empty(), "row {}: {:?}", r.index, r.diffs);
            assert_eq!(r.necklace_len, Some(r.computed_perimeter as usize));
        }
    }

    #[test]
    fn triangular_row_27_diff() {
        let ts = TargetSet::triangular();
        let row = &triangular_table()[26];
        let r = check_row(27, row, &ts);
        assert_eq!(
            r.diffs,
            vec![
                RowDiff::Sides {
                    listed: [41, 1584],
                    computed: [41, 1534]
                },
                RowDiff::Perimeter {
                    listed: 3250,
                    computed: 3150
                }
            ]
        );
        assert_eq!(r.necklace_len, Some(3150));
    }

    #[test]
    fn triangular_row_14_shares_seven() {
        let ts = TargetSet::triangular();
        let row = &triangular_table()[13];
        let r = check_row(14, row, &ts);
        assert!(r.diffs.contains(&RowDiff::SharedFactor {
            sides: [140, 553],
            gcd: 7
        }));
        assert_eq!(r.components, 7);
    }
}
