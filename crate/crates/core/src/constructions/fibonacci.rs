//! Chains for Fibonacci-type target sets from tables on consecutive terms.

use serde::Serialize;

use super::{verified_chain, ConstructionError};
use crate::billiards::{decompose, BilliardTable};
use crate::search::{find_chain_with, Chain, SearchConfig};
use crate::sumgraph::SumGraph;
use crate::targets::{fibonacci, recurrence_terms, TargetSet};

const FIB_9: [u32; 9] = [9, 4, 1, 7, 6, 2, 3, 5, 8];
const FIB_11: [u32; 11] = [9, 4, 1, 7, 6, 2, 11, 10, 3, 5, 8];

/// The pocket path of the table with doubled corners `p, q, p + q, 2q` on
/// consecutive terms; it covers `1..=q` and ends at `q`.
fn consecutive_term_path(p: i64, q: i64) -> Option<Vec<u32>> {
    let t = BilliardTable::new(p as u64, q as u64, (p + q) as u64, 2 * q as u64).ok()?;
    let (f, g) = t.folds();
    let d = decompose(&f, &g).ok()?;
    if !d.is_complete_path() {
        return None;
    }
    let mut path = d.paths.into_iter().next()?;
    if path[0] == q as u32 {
        path.reverse();
    }
    (path.last() == Some(&(q as u32))).then_some(path)
}

/// A chain on `1..=n` from consecutive members `p < q < p + q`, for
/// `n = q` or `n = q - 1` (the pocket `q` is dropped).
fn term_table_chain(
    members: &[i64],
    n: u32,
    ts: &TargetSet,
) -> Option<Result<Chain, ConstructionError>> {
    let n64 = i64::from(n);
    for w in members.windows(3) {
        let (p, q, r) = (w[0], w[1], w[2]);
        if r != p + q || (q != n64 && q != n64 + 1) {
            continue;
        }
        let Some(mut path) = consecutive_term_path(p, q) else {
            continue;
        };
        if q == n64 + 1 {
            path.pop();
        }
        return Some(verified_chain(path, ts));
    }
    None
}

fn members_upto(ts: &TargetSet, n: u32) -> Vec<i64> {
    // Enough terms to include the one after the term that covers n + 1.
    ts.values_upto(4 * i64::from(n) + 8)
}

/// The chain on `1..=n` with Fibonacci sums, for `n` in `{9, 11}` or
/// `n = F_k`, `F_k - 1`.
pub fn fibonacci_chain(n: u32) -> Result<Chain, ConstructionError> {
    let ts = TargetSet::fibonacci();
    match n {
        0 => Err(ConstructionError::NoChain {
            family: "fibonacci",
            n,
        }),
        1 => Ok(Chain::new(vec![1])),
        9 => verified_chain(FIB_9.to_vec(), &ts),
        11 => verified_chain(FIB_11.to_vec(), &ts),
        _ => term_table_chain(&members_upto(&ts, n), n, &ts).unwrap_or(Err(
            ConstructionError::NoChain {
                family: "fibonacci",
                n,
            },
        )),
    }
}

/// The chain on `1..=n` with Lucas sums, for `n = 5` (found by search) or
/// `n = L_k`, `L_k - 1` with `k >= 2`.
pub fn lucas_chain(n: u32) -> Result<Chain, ConstructionError> {
    let ts = TargetSet::lucas();
    match n {
        0 => Err(ConstructionError::NoChain { family: "lucas", n }),
        1 => Ok(Chain::new(vec![1])),
        5 => {
            let g = SumGraph::build(5, &ts)?;
            find_chain_with(&g, SearchConfig::default())?
                .ok_or(ConstructionError::NoChain { family: "lucas", n })
        }
        _ => term_table_chain(&members_upto(&ts, n), n, &ts)
            .unwrap_or(Err(ConstructionError::NoChain { family: "lucas", n })),
    }
}

/// Chain lengths for the recurrence seeded by `x0, x1`, found by search,
/// against the candidate lengths `x_k` and `x_k - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecurrenceLengths {
    pub candidates: Vec<u32>,
    pub chains: Vec<u32>,
    /// Lengths with a chain that are not candidates.
    pub unexpected: Vec<u32>,
    /// Candidate lengths without a chain.
    pub missing: Vec<u32>,
}

pub fn recurrence_chain_lengths(
    x0: i64,
    x1: i64,
    bound: u32,
    cfg: SearchConfig,
) -> Result<RecurrenceLengths, ConstructionError> {
    let ts = TargetSet::recurrence(x0, x1)
        .map_err(|e| ConstructionError::ParameterViolation(e.to_string()))?;
    let mut candidates: Vec<u32> = recurrence_terms(x0, x1)
        .into_iter()
        .flat_map(|x| [x, x - 1])
        .filter(|&v| v >= 2 && v <= i64::from(bound))
        .map(|v| v as u32)
        .collect();
    candidates.sort_unstable();
    candidates.dedup();
    let mut chains = Vec::new();
    for n in 2..=bound {
        let g = SumGraph::build(n, &ts)?;
        if find_chain_with(&g, cfg)?.is_some() {
            chains.push(n);
        }
    }
    let unexpected = chains
        .iter()
        .copied()
        .filter(|n| !candidates.contains(n))
        .collect();
    let missing = candidates
        .iter()
        .copied()
        .filter(|n| !chains.contains(n))
        .collect();
    Ok(RecurrenceLengths {
        candidates,
        chains,
        unexpected,
        missing,
    })
}

/// `F_{3m+3} / 2`, the non-maximal endpoint of the chain on `1..=F_{3m+2}`.
pub fn convergent_tail(m: usize) -> i64 {
    fibonacci(3 * m + 3) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_chains() {
        assert_eq!(
            fibonacci_chain(9).unwrap().beads(),
            &[8, 5, 3, 2, 6, 7, 1, 4, 9]
        );
        assert_eq!(fibonacci_chain(11).unwrap().len(), 11);
    }

    #[test]
    fn table_chains() {
        assert_eq!(
            fibonacci_chain(13).unwrap().beads(),
            &[4, 9, 12, 1, 7, 6, 2, 11, 10, 3, 5, 8, 13]
        );
        assert_eq!(fibonacci_chain(5).unwrap().beads(), &[4, 1, 2, 3, 5]);
        assert_eq!(fibonacci_chain(2).unwrap().beads(), &[1, 2]);
        assert_eq!(fibonacci_chain(12).unwrap().len(), 12);
        assert!(matches!(
            fibonacci_chain(10),
            Err(ConstructionError::NoChain { n: 10, .. })
        ));
    }

    #[test]
    fn lucas_chains() {
        assert!(matches!(
            lucas_chain(8),
            Err(ConstructionError::NoChain { .. })
        ));
        assert_eq!(lucas_chain(7).unwrap().len(), 7);
        assert_eq!(lucas_chain(5).unwrap().len(), 5);
        assert_eq!(lucas_chain(2).unwrap().beads(), &[1, 2]);
    }

    #[test]
    fn tails() {
        assert_eq!(
            (0..4).map(convergent_tail).collect::<Vec<_>>(),
            vec![1, 4, 17, 72]
        );
    }

    #[test]
    fn small_bound() {
        let r = recurrence_chain_lengths(1, 2, 2, SearchConfig::default()).unwrap();
        assert_eq!(r.chains, vec![2]);
        let r = recurrence_chain_lengths(4, 5, 2, SearchConfig::default()).unwrap();
        assert!(r.chains.is_empty());
    }
}
