//! Joining the cycles of a pocketless table into one necklace.
//!
//! A ring splice picks, in each of `k` distinct cycles, an adjacent pair
//! `(enter, leave)`, cuts that edge, and reconnects the opened cycles so that
//! `leave` of one cycle meets `enter` of the next, cyclically. For `k = 2`
//! this is the exchange of one edge in each of two cycles for two cross
//! edges. Larger rings are tried only when no smaller ring exists.

use serde::Serialize;
use thiserror::Error;

use super::decompose::TableDecomposition;
use crate::search::Necklace;
use crate::sumgraph::verify_sequence;
use crate::targets::TargetSet;

pub const DEFAULT_MERGE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MergeError {
    #[error("decomposition has {0} pocket paths; only cycles can be merged")]
    HasPaths(usize),
    #[error("no cycles to merge")]
    Empty,
    #[error("cycles do not partition 1..{n}: bead {bead} {problem}")]
    NotPartition {
        n: u32,
        bead: u32,
        problem: &'static str,
    },
    #[error("cycle edge {left}-{right} does not sum to a target")]
    NotTargetEdge { left: u32, right: u32 },
    #[error("no ring splice joins the remaining {cycles} cycles")]
    NoSpliceFound { cycles: usize },
    #[error("splice search exceeded {nodes} nodes with {cycles} cycles left")]
    BudgetExhausted { nodes: u64, cycles: usize },
    #[error("invalid splice: {0}")]
    InvalidSplice(String),
    #[error("merged sequence of {0} beads is not a necklace")]
    TooShort(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpliceLink {
    pub enter: u32,
    pub leave: u32,
}

/// Links in ring order; `leave` of each link is joined to `enter` of the next.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RingSplice {
    pub links: Vec<SpliceLink>,
}

impl RingSplice {
    pub fn new(pairs: &[(u32, u32)]) -> Self {
        RingSplice {
            links: pairs
                .iter()
                .map(|&(enter, leave)| SpliceLink { enter, leave })
                .collect(),
        }
    }

    /// The new cross edges `(leave_i, enter_{i+1})`.
    pub fn cross_edges(&self) -> Vec<(u32, u32)> {
        let k = self.links.len();
        (0..k)
            .map(|i| (self.links[i].leave, self.links[(i + 1) % k].enter))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MergeOutcome {
    pub necklace: Necklace,
    pub splices: Vec<RingSplice>,
}

struct Index {
    n: u32,
    cycle_of: Vec<u32>,
    pos_of: Vec<u32>,
}

impl Index {
    fn build(cycles: &[Vec<u32>], n: u32) -> Self {
        let mut cycle_of = vec![u32::MAX; n as usize + 1];
        let mut pos_of = vec![0; n as usize + 1];
        for (ci, c) in cycles.iter().enumerate() {
            for (i, &b) in c.iter().enumerate() {
                cycle_of[b as usize] = ci as u32;
                pos_of[b as usize] = i as u32;
            }
        }
        Index {
            n,
            cycle_of,
            pos_of,
        }
    }

    /// Distinct cycle neighbours of `b`, increasing; a singleton cycle
    /// offers `b` itself.
    fn neighbours(&self, cycles: &[Vec<u32>], b: u32) -> ([u32; 2], usize) {
        let c = &cycles[self.cycle_of[b as usize] as usize];
        let k = c.len();
        if k == 1 {
            return ([b, b], 1);
        }
        let i = self.pos_of[b as usize] as usize;
        let (p, q) = (c[(i + k - 1) % k], c[(i + 1) % k]);
        match p.cmp(&q) {
            std::cmp::Ordering::Equal => ([p, p], 1),
            std::cmp::Ordering::Less => ([p, q], 2),
            std::cmp::Ordering::Greater => ([q, p], 2),
        }
    }
}

fn validate_cycles(cycles: &[Vec<u32>], ts: &TargetSet) -> Result<u32, MergeError> {
    let total: usize = cycles.iter().map(Vec::len).sum();
    if total == 0 {
        return Err(MergeError::Empty);
    }
    let n = u32::try_from(total).map_err(|_| MergeError::InvalidSplice("too many beads".into()))?;
    let mut seen = vec![false; total + 1];
    for c in cycles {
        for &b in c {
            if b == 0 || b > n {
                return Err(MergeError::NotPartition {
                    n,
                    bead: b,
                    problem: "is out of range",
                });
            }
            if std::mem::replace(&mut seen[b as usize], true) {
                return Err(MergeError::NotPartition {
                    n,
                    bead: b,
                    problem: "repeats",
                });
            }
        }
        let k = c.len();
        if k >= 2 {
            for i in 0..k {
                let (l, r) = (c[i], c[(i + 1) % k]);
                if !ts.contains(i64::from(l) + i64::from(r)) {
                    return Err(MergeError::NotTargetEdge { left: l, right: r });
                }
            }
        }
    }
    Ok(n)
}

/// Opens cycle `c` at the edge `enter`-`leave` and lists it from `enter`
/// to `leave`.
fn open_at(c: &[u32], enter_pos: usize, leave: u32) -> Option<Vec<u32>> {
    let k = c.len();
    if k == 1 {
        return (c[0] == leave).then(|| c.to_vec());
    }
    let fwd = c[(enter_pos + k - 1) % k] == leave;
    let back = c[(enter_pos + 1) % k] == leave;
    if !fwd && !back {
        return None;
    }
    Some(
        (0..k)
            .map(|j| {
                if fwd {
                    c[(enter_pos + j) % k]
                } else {
                    c[(enter_pos + k - j) % k]
                }
            })
            .collect(),
    )
}

/// Applies one ring splice. The cycles it touches are replaced by the joined
/// cycle, appended after the untouched ones.
pub fn apply_ring_splice(
    cycles: &[Vec<u32>],
    ring: &RingSplice,
    ts: &TargetSet,
) -> Result<Vec<Vec<u32>>, MergeError> {
    let n = validate_cycles(cycles, ts)?;
    let k = ring.links.len();
    if k < 2 {
        return Err(MergeError::InvalidSplice(
            "a ring needs two or more links".into(),
        ));
    }
    let idx = Index::build(cycles, n);
    let mut used = vec![false; cycles.len()];
    let mut joined = Vec::new();
    for link in &ring.links {
        let bead_ok = |b: u32| b >= 1 && b <= n;
        if !bead_ok(link.enter) || !bead_ok(link.leave) {
            return Err(MergeError::InvalidSplice(format!(
                "link {}-{} is out of range",
                link.enter, link.leave
            )));
        }
        let ci = idx.cycle_of[link.enter as usize] as usize;
        if idx.cycle_of[link.leave as usize] as usize != ci {
            return Err(MergeError::InvalidSplice(format!(
                "{} and {} lie on different cycles",
                link.enter, link.leave
            )));
        }
        if std::mem::replace(&mut used[ci], true) {
            return Err(MergeError::InvalidSplice(format!(
                "cycle of {} is entered twice",
                link.enter
            )));
        }
        let seg = open_at(
            &cycles[ci],
            idx.pos_of[link.enter as usize] as usize,
            link.leave,
        )
        .ok_or_else(|| {
            MergeError::InvalidSplice(format!(
                "{} and {} are not adjacent",
                link.enter, link.leave
            ))
        })?;
        joined.extend(seg);
    }
    for (l, e) in ring.cross_edges() {
        if !ts.contains(i64::from(l) + i64::from(e)) {
            return Err(MergeError::InvalidSplice(format!(
                "cross edge {l}-{e} does not sum to a target"
            )));
        }
    }
    let mut out: Vec<Vec<u32>> = cycles
        .iter()
        .zip(&used)
        .filter(|(_, &u)| !u)
        .map(|(c, _)| c.clone())
        .collect();
    out.push(joined);
    Ok(out)
}

struct RingSearch<'a> {
    cycles: &'a [Vec<u32>],
    idx: &'a Index,
    ts: &'a TargetSet,
    targets: &'a [i64],
    used: Vec<bool>,
    chain: Vec<(u32, u32)>,
    nodes: u64,
    budget: u64,
}

enum Step {
    Found,
    Exhausted,
    Continue,
}

impl RingSearch<'_> {
    /// Extends the chain of links until it has `k` links and closes.
    fn extend(&mut self, k: usize, lowest: usize) -> Step {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Step::Exhausted;
        }
        let (first_enter, _) = self.chain[0];
        let (_, leave) = *self.chain.last().expect("chain starts nonempty");
        let last_link = self.chain.len() + 1 == k;
        for ti in 0..self.targets.len() {
            let e = self.targets[ti] - i64::from(leave);
            if e < 1 {
                continue;
            }
            if e > i64::from(self.idx.n) {
                break;
            }
            let e = e as u32;
            let ce = self.idx.cycle_of[e as usize] as usize;
            if ce <= lowest || self.used[ce] {
                continue;
            }
            let (nb, cnt) = self.idx.neighbours(self.cycles, e);
            for &l in &nb[..cnt] {
                if last_link {
                    if self.ts.contains(i64::from(l) + i64::from(first_enter)) {
                        self.chain.push((e, l));
                        return Step::Found;
                    }
                    continue;
                }
                self.used[ce] = true;
                self.chain.push((e, l));
                match self.extend(k, lowest) {
                    Step::Continue => {}
                    done => return done,
                }
                self.chain.pop();
                self.used[ce] = false;
            }
        }
        Step::Continue
    }
}

/// The first ring in search order: fewest links, then the lowest cycle (by
/// least bead), its beads increasing, then targets increasing.
fn find_ring(
    cycles: &[Vec<u32>],
    idx: &Index,
    ts: &TargetSet,
    targets: &[i64],
    budget: &mut u64,
) -> Result<Option<RingSplice>, u64> {
    let mut s = RingSearch {
        cycles,
        idx,
        ts,
        targets,
        used: vec![false; cycles.len()],
        chain: Vec::new(),
        nodes: 0,
        budget: *budget,
    };
    for k in 2..=cycles.len() {
        for (ci, c) in cycles.iter().enumerate().take(cycles.len() - 1) {
            let mut beads = c.clone();
            beads.sort_unstable();
            s.used[ci] = true;
            for e in beads {
                let (nb, cnt) = idx.neighbours(cycles, e);
                for &l in &nb[..cnt] {
                    s.chain.clear();
                    s.chain.push((e, l));
                    match s.extend(k, ci) {
                        Step::Found => {
                            *budget -= s.nodes;
                            return Ok(Some(RingSplice::new(&s.chain)));
                        }
                        Step::Exhausted => return Err(s.nodes),
                        Step::Continue => {}
                    }
                }
            }
            s.used[ci] = false;
        }
    }
    *budget -= s.nodes;
    Ok(None)
}

/// Joins cycles by repeated ring splices until one remains.
pub fn merge_cycles(
    cycles: Vec<Vec<u32>>,
    ts: &TargetSet,
    node_budget: u64,
) -> Result<MergeOutcome, MergeError> {
    let n = validate_cycles(&cycles, ts)?;
    let targets = ts.values_upto(2 * i64::from(n));
    let mut cycles = cycles;
    let mut splices = Vec::new();
    let mut budget = node_budget;
    while cycles.len() > 1 {
        cycles.sort_by_key(|c| c.iter().copied().min());
        let idx = Index::build(&cycles, n);
        let ring = match find_ring(&cycles, &idx, ts, &targets, &mut budget) {
            Ok(Some(r)) => r,
            Ok(None) => {
                return Err(MergeError::NoSpliceFound {
                    cycles: cycles.len(),
                })
            }
            Err(_) => {
                return Err(MergeError::BudgetExhausted {
                    nodes: node_budget,
                    cycles: cycles.len(),
                })
            }
        };
        cycles = apply_ring_splice(&cycles, &ring, ts)?;
        splices.push(ring);
    }
    let beads = cycles.pop().expect("at least one cycle");
    if beads.len() < 3 {
        return Err(MergeError::TooShort(beads.len()));
    }
    let report = verify_sequence(&beads, ts, true);
    assert!(report.valid, "spliced cycle failed verification: {report}");
    Ok(MergeOutcome {
        necklace: Necklace::new(beads),
        splices,
    })
}

/// Merges the cycles of a pocketless decomposition into one necklace.
pub fn merge_components(d: &TableDecomposition, ts: &TargetSet) -> Result<Necklace, MergeError> {
    merge_components_traced(d, ts, DEFAULT_MERGE_BUDGET).map(|o| o.necklace)
}

pub fn merge_components_traced(
    d: &TableDecomposition,
    ts: &TargetSet,
    node_budget: u64,
) -> Result<MergeOutcome, MergeError> {
    if !d.paths.is_empty() {
        return Err(MergeError::HasPaths(d.paths.len()));
    }
    merge_cycles(d.cycles.clone(), ts, node_budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::billiards::decompose::decompose;
    use crate::billiards::table::rect_table;

    fn loops_72() -> Vec<Vec<u32>> {
        let (_, f, g) = rect_table(9, 49, 81, 121).unwrap();
        decompose(&f, &g).unwrap().cycles
    }

    #[test]
    fn single_cycle_unchanged() {
        let tri = TargetSet::triangular();
        let c = vec![1, 2, 8, 7, 3, 12, 9, 6, 4, 11, 10, 5];
        let out = merge_cycles(vec![c.clone()], &tri, 1000).unwrap();
        assert_eq!(out.necklace, Necklace::new(c));
        assert!(out.splices.is_empty());
    }

    #[test]
    fn no_cross_sums() {
        // Within-cycle sums are even targets; every cross sum is odd.
        let ts = TargetSet::explicit(vec![4, 6, 8, 10]).unwrap();
        let cycles = vec![vec![1, 3, 5], vec![2, 4, 6]];
        let r = merge_cycles(cycles, &ts, 1000);
        assert_eq!(r, Err(MergeError::NoSpliceFound { cycles: 2 }));
    }

    #[test]
    fn pairwise_splices_do_not_join_the_72_loops() {
        let sq = TargetSet::squares();
        let cycles = loops_72();
        let n = 72;
        let idx = Index::build(&cycles, n);
        let targets = sq.values_upto(144);
        let mut s = RingSearch {
            cycles: &cycles,
            idx: &idx,
            ts: &sq,
            targets: &targets,
            used: vec![false; 4],
            chain: Vec::new(),
            nodes: 0,
            budget: u64::MAX,
        };
        for (ci, c) in cycles.iter().enumerate() {
            s.used[ci] = true;
            for &e in c {
                let (nb, cnt) = idx.neighbours(&cycles, e);
                for &l in &nb[..cnt] {
                    s.chain = vec![(e, l)];
                    assert!(matches!(s.extend(2, ci), Step::Continue));
                }
            }
            s.used[ci] = false;
        }
    }

    #[test]
    fn merges_72_loops() {
        let sq = TargetSet::squares();
        let out = merge_cycles(loops_72(), &sq, DEFAULT_MERGE_BUDGET).unwrap();
        assert_eq!(out.necklace.len(), 72);
        assert!(verify_sequence(out.necklace.beads(), &sq, true).valid);
        assert_eq!(out.splices.len(), 1);
        assert_eq!(out.splices[0].links.len(), 4);
    }

    #[test]
    fn explicit_ring_joins_72_loops() {
        let sq = TargetSet::squares();
        let ring = RingSplice::new(&[(3, 6), (10, 71), (29, 52), (48, 1)]);
        assert_eq!(
            ring.cross_edges(),
            vec![(6, 10), (71, 29), (52, 48), (1, 3)]
        );
        let out = apply_ring_splice(&loops_72(), &ring, &sq).unwrap();
        assert_eq!(out.len(), 1);
        assert!(verify_sequence(&out[0], &sq, true).valid);
    }

    #[test]
    fn bad_splices_rejected() {
        let sq = TargetSet::squares();
        let cycles = loops_72();
        let not_adjacent = RingSplice::new(&[(3, 5), (10, 71)]);
        assert!(matches!(
            apply_ring_splice(&cycles, &not_adjacent, &sq),
            Err(MergeError::InvalidSplice(_))
        ));
        let twice = RingSplice::new(&[(3, 6), (3, 6)]);
        assert!(matches!(
            apply_ring_splice(&cycles, &twice, &sq),
            Err(MergeError::InvalidSplice(_))
        ));
    }

    #[test]
    fn input_validation() {
        let sq = TargetSet::squares();
        assert_eq!(merge_cycles(vec![], &sq, 10), Err(MergeError::Empty));
        assert!(matches!(
            merge_cycles(vec![vec![1, 3], vec![3, 6]], &sq, 10),
            Err(MergeError::NotPartition { bead: 3, .. })
        ));
        assert_eq!(
            merge_cycles(vec![vec![1, 2, 3]], &sq, 10),
            Err(MergeError::NotTargetEdge { left: 1, right: 2 })
        );
    }
}
