//! Square necklaces from tables whose doubled corners are squares.

use serde::Serialize;

use super::ConstructionError;
use crate::billiards::{
    decompose, gcd, merge_cycles, BilliardTable, RingSplice, DEFAULT_MERGE_BUDGET,
};
use crate::search::Necklace;
use crate::targets::TargetSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SquareNecklaceRow {
    pub r: u64,
    pub s: u64,
    /// Primitive solution of `x² + y² = 2z²` with `x < y`.
    pub x: u64,
    pub y: u64,
    /// Corner roots, increasing; two are `6x` and `6y`, two are odd.
    pub roots: [u64; 4],
    /// Squares of the roots, the doubled corners.
    pub corners: [u64; 4],
    /// `(B - A, C - B)`.
    pub double_sides: [u64; 2],
    pub coprime: bool,
    pub perimeter: u64,
    /// `B <= P + 1`, so the table reaches bead 1.
    pub coverage_ok: bool,
}

impl SquareNecklaceRow {
    pub fn table(&self) -> Result<BilliardTable, ConstructionError> {
        Ok(BilliardTable::from_corners(self.corners)?)
    }
}

/// `(x, y)` from the parametrisation, halved while both are even.
fn primitive_pair(r: u64, s: u64) -> Result<(u64, u64), ConstructionError> {
    if r == 0 || s == 0 || r == s {
        return Err(ConstructionError::ParameterViolation(format!(
            "r and s must be distinct and positive, got {r},{s}"
        )));
    }
    if gcd(r, s) != 1 {
        return Err(ConstructionError::ParameterViolation(format!(
            "r and s must be coprime, got {r},{s}"
        )));
    }
    let sum2 = (r + s).pow(2) as i128;
    let mut x = (sum2 - 2 * (r * r) as i128).unsigned_abs() as u64;
    let mut y = (sum2 - 2 * (s * s) as i128).unsigned_abs() as u64;
    while x.is_multiple_of(2) && y.is_multiple_of(2) {
        x /= 2;
        y /= 2;
    }
    Ok((x.min(y), x.max(y)))
}

fn rows_for(r: u64, s: u64) -> Result<Vec<SquareNecklaceRow>, ConstructionError> {
    let (x, y) = primitive_pair(r, s)?;
    let overflow = || ConstructionError::ParameterViolation(format!("rows for {r},{s} overflow"));
    let n = 36u64
        .checked_mul(y.checked_mul(y).ok_or_else(overflow)? - x * x)
        .ok_or_else(overflow)?;
    let mut out = Vec::new();
    // n = e·f with e < f both even gives u = (f + e)/2, v = (f - e)/2.
    let mut e = 2u64;
    while e * e < n {
        if n % e == 0 && (n / e).is_multiple_of(2) {
            let f = n / e;
            let (u, v) = ((f + e) / 2, (f - e) / 2);
            if u % 2 == 1 && v % 2 == 1 && u % 3 != 0 && v % 3 != 0 {
                let mut roots = [6 * x, 6 * y, u, v];
                roots.sort_unstable();
                let mut corners = [0u64; 4];
                for (c, &root) in corners.iter_mut().zip(&roots) {
                    *c = root.checked_mul(root).ok_or_else(overflow)?;
                }
                let [a, b, c, _] = corners;
                let double_sides = [b - a, c - b];
                let perimeter = c - a;
                out.push(SquareNecklaceRow {
                    r,
                    s,
                    x,
                    y,
                    roots,
                    corners,
                    double_sides,
                    coprime: gcd(double_sides[0], double_sides[1]) == 1,
                    perimeter,
                    coverage_ok: b <= perimeter + 1,
                });
            }
        }
        e += 2;
    }
    Ok(out)
}

/// Every row from the given `(r, s)` pairs, sorted by perimeter then roots.
/// Rows with shared double-side factors or failed coverage are kept and
/// flagged.
pub fn square_necklace_rows(
    pairs: &[(u64, u64)],
) -> Result<Vec<SquareNecklaceRow>, ConstructionError> {
    let mut out = Vec::new();
    for &(r, s) in pairs {
        out.extend(rows_for(r, s)?);
    }
    out.sort_by_key(|row| (row.perimeter, row.roots));
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OddSquareNecklace {
    pub r: u64,
    pub s: u64,
    pub corners: [u64; 4],
    pub loops: Vec<Vec<u32>>,
    pub splices: Vec<RingSplice>,
    pub necklace: Necklace,
}

/// The table on the odd squares `(s-2r)², (s+2r)², (2s-r)², (2s+r)²`, whose
/// loops are then spliced into one square necklace.
pub fn odd_square_family(r: u64, s: u64) -> Result<OddSquareNecklace, ConstructionError> {
    let violation =
        |why: &str| ConstructionError::ParameterViolation(format!("(r,s)=({r},{s}): {why}"));
    if r == 0 || s <= 2 * r {
        return Err(violation("need s > 2r > 0"));
    }
    if r.is_multiple_of(2) || s.is_multiple_of(2) {
        return Err(violation("r and s must be odd for odd roots"));
    }
    let (ri, si) = (r as i128, s as i128);
    if 2 * si * si - 4 * ri * si - 7 * ri * ri + 1 < 0 {
        return Err(violation("need s >= r + sqrt((9r^2 - 1)/2)"));
    }
    let mut roots = [s - 2 * r, s + 2 * r, 2 * s - r, 2 * s + r];
    roots.sort_unstable();
    let corners = roots.map(|v| v * v);
    let t = BilliardTable::from_corners(corners).map_err(|e| violation(&e.to_string()))?;
    let (f, g) = t.folds();
    let d = decompose(&f, &g)?;
    let loops = d.cycles.clone();
    let merged = merge_cycles(d.cycles, &TargetSet::squares(), DEFAULT_MERGE_BUDGET)?;
    Ok(OddSquareNecklace {
        r,
        s,
        corners,
        loops,
        splices: merged.splices,
        necklace: merged.necklace,
    })
}
