//! Growing a necklace on `1..=n` by inserting `n + 1` between two neighbours.

use super::{verified_necklace, ConstructionError};
use crate::search::Necklace;
use crate::sumgraph::verify_sequence;
use crate::targets::TargetSet;

fn checked_len(nk: &Necklace, ts: &TargetSet) -> Result<u32, ConstructionError> {
    let report = verify_sequence(nk.beads(), ts, true);
    if !report.valid {
        return Err(ConstructionError::Unverified(report.to_string()));
    }
    Ok(nk.len() as u32)
}

fn admits(u: u32, bead: u32, v: u32, ts: &TargetSet) -> bool {
    ts.contains(i64::from(u) + i64::from(bead)) && ts.contains(i64::from(bead) + i64::from(v))
}

/// Inserts `n + 1` between the adjacent beads `u` and `v`.
pub fn insert_bead_at(
    nk: &Necklace,
    u: u32,
    v: u32,
    ts: &TargetSet,
) -> Result<Necklace, ConstructionError> {
    let n = checked_len(nk, ts)?;
    let bead = n + 1;
    let b = nk.beads();
    let len = b.len();
    let Some(i) = (0..len).find(|&i| {
        let (x, y) = (b[i], b[(i + 1) % len]);
        (x, y) == (u, v) || (x, y) == (v, u)
    }) else {
        return Err(ConstructionError::ParameterViolation(format!(
            "{u} and {v} are not adjacent"
        )));
    };
    if !admits(u, bead, v, ts) {
        return Err(ConstructionError::ParameterViolation(format!(
            "{u}+{bead} or {bead}+{v} is not a target"
        )));
    }
    let mut out = b.to_vec();
    out.insert(i + 1, bead);
    verified_necklace(out, ts)
}

/// Inserts `n + 1` at the least admissible adjacent pair, pairs ordered as
/// `(min, max)`.
pub fn extend_necklace(nk: &Necklace, ts: &TargetSet) -> Result<Necklace, ConstructionError> {
    let n = checked_len(nk, ts)?;
    let bead = n + 1;
    let b = nk.beads();
    let len = b.len();
    let best = (0..len)
        .map(|i| (b[i], b[(i + 1) % len]))
        .filter(|&(x, y)| admits(x, bead, y, ts))
        .map(|(x, y)| (x.min(y), x.max(y)))
        .min()
        .ok_or(ConstructionError::NoInsertionPoint { bead })?;
    insert_bead_at(nk, best.0, best.1, ts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::build_necklace_from_corners;

    #[test]
    fn triangular_90_to_93() {
        let tri = TargetSet::triangular();
        let mut nk = build_necklace_from_corners([1, 15, 91, 105], &tri).unwrap();
        for (u, bead, v) in [(29, 91, 62), (44, 92, 61), (27, 93, 78)] {
            let next = extend_necklace(&nk, &tri).unwrap();
            assert_eq!(next.len() as u32, bead);
            let b = next.beads();
            let i = b.iter().position(|&x| x == bead).unwrap();
            let mut around = [b[(i + b.len() - 1) % b.len()], b[(i + 1) % b.len()]];
            around.sort_unstable();
            assert_eq!(around, [u.min(v), u.max(v)]);
            nk = next;
        }
    }

    #[test]
    fn rejects_bad_insertions() {
        let tri = TargetSet::triangular();
        let nk = Necklace::new(vec![1, 2, 8, 7, 3, 12, 9, 6, 4, 11, 10, 5]);
        assert!(matches!(
            insert_bead_at(&nk, 1, 8, &tri),
            Err(ConstructionError::ParameterViolation(_))
        ));
        let sq = TargetSet::squares();
        let bad = Necklace::new(vec![1, 2, 3]);
        assert!(matches!(
            extend_necklace(&bad, &sq),
            Err(ConstructionError::Unverified(_))
        ));
    }
}
