//! Parametric families of chains and necklaces built from billiard tables.

pub mod cubes;
pub mod extend;
pub mod fibonacci;
pub mod figurate;
pub mod squares;

use thiserror::Error;

use crate::billiards::{decompose, BilliardTable, DecomposeError, MergeError, TableError};
use crate::search::{Chain, Necklace, SearchError};
use crate::sumgraph::{verify_sequence, GraphError};
use crate::targets::TargetSet;

pub use cubes::{
    cubic_chain_387, cubic_fold_pair, cubic_necklace_candidates, factorize, CubicNecklaceCandidate,
    DEFAULT_CUBE_BOUND,
};
pub use extend::{extend_necklace, insert_bead_at};
pub use fibonacci::{
    convergent_tail, fibonacci_chain, lucas_chain, recurrence_chain_lengths, RecurrenceLengths,
};
pub use figurate::{figurate_table_rows, FigurateKind, FigurateRowReport, RowDiff};
pub use squares::{odd_square_family, square_necklace_rows, OddSquareNecklace, SquareNecklaceRow};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("no {family} chain exists on 1..{n}")]
    NoChain { family: &'static str, n: u32 },
    #[error("parameter violation: {0}")]
    ParameterViolation(String),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
    #[error(transparent)]
    Merge(#[from] MergeError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("pockets {left} and {right} sum to {sum}, which is not a target")]
    ClosureFailure { left: u32, right: u32, sum: i64 },
    #[error("table splits into {components} components")]
    Degenerate { components: usize },
    #[error("no adjacent pair admits bead {bead}")]
    NoInsertionPoint { bead: u32 },
    #[error("constructed sequence failed verification: {0}")]
    Unverified(String),
}

pub(crate) fn verified_chain(beads: Vec<u32>, ts: &TargetSet) -> Result<Chain, ConstructionError> {
    let report = verify_sequence(&beads, ts, false);
    if !report.valid {
        return Err(ConstructionError::Unverified(report.to_string()));
    }
    Ok(Chain::new(beads))
}

pub(crate) fn verified_necklace(
    beads: Vec<u32>,
    ts: &TargetSet,
) -> Result<Necklace, ConstructionError> {
    let report = verify_sequence(&beads, ts, true);
    if !report.valid || beads.len() < 3 {
        return Err(ConstructionError::Unverified(report.to_string()));
    }
    Ok(Necklace::new(beads))
}

/// A necklace from a table whose components reduce to one: a complete
/// pocket path closed by the pocket pair, or a single cycle.
pub fn build_necklace_from_corners(
    corners: [u64; 4],
    ts: &TargetSet,
) -> Result<Necklace, ConstructionError> {
    let t = BilliardTable::from_corners(corners)?;
    let (f, g) = t.folds();
    let d = decompose(&f, &g)?;
    if d.component_count() != 1 {
        return Err(ConstructionError::Degenerate {
            components: d.component_count(),
        });
    }
    if let Some(path) = d.paths.into_iter().next() {
        let (left, right) = (path[0], path[path.len() - 1]);
        let sum = i64::from(left) + i64::from(right);
        if !ts.contains(sum) {
            return Err(ConstructionError::ClosureFailure { left, right, sum });
        }
        return verified_necklace(path, ts);
    }
    let cycle = d.cycles.into_iter().next().expect("one component");
    verified_necklace(cycle, ts)
}
