//! The six-corner cubic chain and taxicab-based cubic necklace tables.

use std::collections::HashMap;

use serde::Serialize;

use super::{verified_chain, ConstructionError};
use crate::billiards::{decompose, gcd, BilliardTable, FoldSegment, FoldSystem, MAX_CORNER};
use crate::search::Chain;
use crate::targets::TargetSet;

pub const DEFAULT_CUBE_BOUND: u64 = 1 << 10;

/// Folds of the table with corners at halves of 125, 343, 512 and 729 plus
/// a reflex corner at 386.5 and a side pocket at 387.
pub fn cubic_fold_pair() -> (FoldSystem, FoldSystem) {
    let f = FoldSystem::new(
        387,
        vec![
            FoldSegment::new(1, 124, 125),
            FoldSegment::new(125, 387, 512),
        ],
    );
    let g = FoldSystem::new(
        387,
        vec![
            FoldSegment::new(1, 342, 343),
            FoldSegment::new(343, 386, 729),
            FoldSegment::new(387, 387, 774),
        ],
    );
    (f, g)
}

/// The cubic chain on `1..=387`; with `drop_max` the endpoint 387 is removed
/// to give a chain on `1..=386`.
pub fn cubic_chain_387(drop_max: bool) -> Result<Chain, ConstructionError> {
    let (f, g) = cubic_fold_pair();
    let d = decompose(&f, &g)?;
    if !d.is_complete_path() {
        return Err(ConstructionError::Degenerate {
            components: d.component_count(),
        });
    }
    let mut path = d.paths.into_iter().next().expect("complete path");
    if path[0] == 387 {
        path.reverse();
    }
    if drop_max {
        if path.last() != Some(&387) {
            return Err(ConstructionError::Unverified(
                "387 is not an endpoint".into(),
            ));
        }
        path.pop();
    }
    verified_chain(path, &TargetSet::cubes())
}

/// Odd roots `a < b < c < d` with `a³ + d³ = b³ + c³`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CubicNecklaceCandidate {
    pub roots: [u64; 4],
    pub corners: [u64; 4],
    /// `gcd(c³ - b³, b³ - a³)`.
    pub gcd_value: u64,
    /// `a³ < c³ - b³`.
    pub coverage_ok: bool,
    pub perimeter: u64,
    /// Half the gcd, the number of cycles the table splits into.
    pub predicted_components: u64,
}

impl CubicNecklaceCandidate {
    /// One cycle through every bead, within the accepted corner size.
    pub fn buildable(&self) -> bool {
        self.gcd_value == 2 && self.coverage_ok && self.corners[3] <= MAX_CORNER
    }

    pub fn table(&self) -> Result<BilliardTable, ConstructionError> {
        Ok(BilliardTable::from_corners(self.corners)?)
    }
}

/// All candidates with roots up to `bound`, ordered by the common sum.
pub fn cubic_necklace_candidates(
    bound: u64,
) -> Result<Vec<CubicNecklaceCandidate>, ConstructionError> {
    if bound < 3 {
        return Err(ConstructionError::ParameterViolation(format!(
            "cube bound must be at least 3, got {bound}"
        )));
    }
    if bound > 1 << 20 {
        return Err(ConstructionError::ParameterViolation(format!(
            "cube bound {bound} exceeds 2^20"
        )));
    }
    let mut by_sum: HashMap<u64, Vec<(u64, u64)>> = HashMap::new();
    for p in (1..=bound).step_by(2) {
        for q in (p + 2..=bound).step_by(2) {
            by_sum.entry(p.pow(3) + q.pow(3)).or_default().push((p, q));
        }
    }
    let mut sums: Vec<u64> = by_sum
        .iter()
        .filter(|(_, v)| v.len() >= 2)
        .map(|(&s, _)| s)
        .collect();
    sums.sort_unstable();
    let mut out = Vec::new();
    for s in sums {
        let pairs = &by_sum[&s];
        for (i, &(a, d)) in pairs.iter().enumerate() {
            for &(b, c) in &pairs[i + 1..] {
                let roots = [a, b, c, d];
                let corners = roots.map(|v| v.pow(3));
                let [ca, cb, cc, _] = corners;
                let g = gcd(cc - cb, cb - ca);
                out.push(CubicNecklaceCandidate {
                    roots,
                    corners,
                    gcd_value: g,
                    coverage_ok: ca < cc - cb,
                    perimeter: cc - ca,
                    predicted_components: g / 2,
                });
            }
        }
    }
    Ok(out)
}

/// Prime factorisation by trial division, as `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}
