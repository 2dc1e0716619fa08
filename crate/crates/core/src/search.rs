//! Exact search for chains (Hamiltonian paths) and necklaces (Hamiltonian
//! cycles) on sum-graphs.
//!
//! Both problems are driven by one backtracking core that extends a path
//! from its head toward a terminal: for necklaces the terminal is the start
//! bead, for chains it is a virtual hub adjacent to every bead that is still
//! allowed to be the last one. Every unvisited bead `v` needs two path
//! neighbours among the unvisited beads, the head and the terminal; counting
//! them gives the pruning and forcing rules:
//!
//! * fewer than two options anywhere is a dead end;
//! * a bead whose two options include the head must be visited next;
//! * a bead whose two options include the terminal must be visited last;
//! * the unvisited beads together with the head must stay connected.
//!
//! No heuristic cut-offs are used, so an empty result is a proof of absence.
//! The only early exit is the node budget, reported as
//! [`SearchError::BudgetExhausted`].

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::sumgraph::{GraphError, SumGraph};
use crate::targets::TargetSet;

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("node budget exhausted after {nodes} backtracking nodes")]
    BudgetExhausted { nodes: u64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub node_budget: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

/// An open ordering of `1..=n`, stored as the lexicographically smaller of
/// the sequence and its reversal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Chain(Vec<u32>);

impl Chain {
    pub fn new(mut beads: Vec<u32>) -> Self {
        let rev: Vec<u32> = beads.iter().rev().copied().collect();
        if rev < beads {
            beads = rev;
        }
        Chain(beads)
    }

    pub fn beads(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_beads(self) -> Vec<u32> {
        self.0
    }
}

/// A cyclic ordering, rotated to start at the least bead and oriented so
/// that the second bead is the smaller of its two neighbours.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Necklace(Vec<u32>);

impl Necklace {
    pub fn new(beads: Vec<u32>) -> Self {
        let len = beads.len();
        if len < 3 {
            let mut b = beads;
            b.sort_unstable();
            return Necklace(b);
        }
        let (at, _) = beads
            .iter()
            .enumerate()
            .min_by_key(|&(_, b)| *b)
            .expect("nonempty");
        let next = beads[(at + 1) % len];
        let prev = beads[(at + len - 1) % len];
        let out = if next <= prev {
            (0..len).map(|i| beads[(at + i) % len]).collect()
        } else {
            (0..len).map(|i| beads[(at + len - i) % len]).collect()
        };
        Necklace(out)
    }

    pub fn beads(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_beads(self) -> Vec<u32> {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration<T> {
    pub items: Vec<T>,
    /// More solutions exist beyond the cap.
    pub truncated: bool,
}

#[derive(Debug, Clone, Copy)]
enum Terminal {
    Hub,
    Start,
}

struct Solver<'g> {
    g: &'g SumGraph,
    n: usize,
    visited: Vec<bool>,
    /// Number of unvisited neighbours, maintained for every bead.
    deg: Vec<u32>,
    /// May the path end here (adjacent to the terminal)?
    end_ok: Vec<bool>,
    head_mark: Vec<u32>,
    bfs_mark: Vec<u32>,
    epoch: u32,
    stack: Vec<u32>,
    path: Vec<u32>,
    terminal: Terminal,
    nodes: u64,
    budget: u64,
    cap: usize,
    found: Vec<Vec<u32>>,
}

impl<'g> Solver<'g> {
    fn new(g: &'g SumGraph, budget: u64, cap: usize) -> Self {
        let n = g.n() as usize;
        let deg = (0..=n as u32)
            .map(|v| if v == 0 { 0 } else { g.degree(v) as u32 })
            .collect();
        Solver {
            g,
            n,
            visited: vec![false; n + 1],
            deg,
            end_ok: vec![false; n + 1],
            head_mark: vec![0; n + 1],
            bfs_mark: vec![0; n + 1],
            epoch: 0,
            stack: Vec::new(),
            path: Vec::with_capacity(n),
            terminal: Terminal::Hub,
            nodes: 0,
            budget,
            cap,
            found: Vec::new(),
        }
    }

    fn visit(&mut self, v: u32) {
        self.visited[v as usize] = true;
        for &w in self.g.neighbors(v) {
            self.deg[w as usize] -= 1;
        }
        self.path.push(v);
    }

    fn unvisit(&mut self) {
        let v = self.path.pop().expect("nonempty path");
        self.visited[v as usize] = false;
        for &w in self.g.neighbors(v) {
            self.deg[w as usize] += 1;
        }
    }

    fn next_epoch(&mut self) -> u32 {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.head_mark.fill(0);
            self.bfs_mark.fill(0);
            self.epoch = 1;
        }
        self.epoch
    }

    /// Returns `Ok(true)` once enough solutions have been collected.
    fn dfs(&mut self) -> Result<bool, SearchError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(SearchError::BudgetExhausted { nodes: self.nodes });
        }
        let head = *self.path.last().expect("path starts nonempty");
        let remaining = self.n - self.path.len();
        if remaining == 0 {
            if self.end_ok[head as usize] && self.accept_orientation() {
                self.found.push(self.path.clone());
                return Ok(self.found.len() >= self.cap);
            }
            return Ok(false);
        }

        let epoch = self.next_epoch();
        for &w in self.g.neighbors(head) {
            self.head_mark[w as usize] = epoch;
        }

        let mut forced_next: Option<u32> = None;
        let mut forced_last: Option<u32> = None;
        let mut closable = false;
        for v in 1..=self.n {
            if self.visited[v] {
                continue;
            }
            let adj_head = self.head_mark[v] == epoch;
            let end = self.end_ok[v];
            closable |= end;
            let options = self.deg[v] + adj_head as u32 + end as u32;
            if options < 2 {
                return Ok(false);
            }
            if options == 2 {
                if adj_head && end {
                    // Next and last at once.
                    if remaining > 1 {
                        return Ok(false);
                    }
                } else if adj_head {
                    if forced_next.is_some() {
                        return Ok(false);
                    }
                    forced_next = Some(v as u32);
                } else if end {
                    if forced_last.is_some() {
                        return Ok(false);
                    }
                    forced_last = Some(v as u32);
                }
            }
        }
        if !closable {
            return Ok(false);
        }
        if !self.unvisited_connected_to(head, remaining) {
            return Ok(false);
        }

        let mut candidates: Vec<u32> = match forced_next {
            Some(v) => vec![v],
            None => self
                .g
                .neighbors(head)
                .iter()
                .copied()
                .filter(|&w| !self.visited[w as usize])
                .filter(|&w| remaining == 1 || Some(w) != forced_last)
                .collect(),
        };
        candidates.sort_by_key(|&w| (self.deg[w as usize], w));
        for c in candidates {
            self.visit(c);
            let done = self.dfs();
            self.unvisit();
            if done? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Every unvisited bead reachable from the head through unvisited beads.
    fn unvisited_connected_to(&mut self, head: u32, remaining: usize) -> bool {
        let epoch = self.next_epoch();
        self.stack.clear();
        self.stack.push(head);
        self.bfs_mark[head as usize] = epoch;
        let mut reached = 0usize;
        while let Some(v) = self.stack.pop() {
            for &w in self.g.neighbors(v) {
                let wi = w as usize;
                if !self.visited[wi] && self.bfs_mark[wi] != epoch {
                    self.bfs_mark[wi] = epoch;
                    reached += 1;
                    self.stack.push(w);
                }
            }
        }
        reached == remaining
    }

    /// Necklaces are traced in both directions; when enumerating keep one.
    fn accept_orientation(&self) -> bool {
        match self.terminal {
            Terminal::Hub => true,
            Terminal::Start => self.cap == 1 || self.path[1] < self.path[self.n - 1],
        }
    }

    fn run_chain(&mut self) -> Result<(), SearchError> {
        if self.n == 1 {
            self.found.push(vec![1]);
            return Ok(());
        }
        let anomalies = self.g.degree_anomalies();
        if !anomalies.isolated.is_empty() || anomalies.monovalent.len() > 2 {
            return Ok(());
        }
        // A monovalent bead ends every chain, so starting there is exhaustive.
        let starts: Vec<u32> = match anomalies.monovalent.first() {
            Some(&m) => vec![m],
            None => {
                let mut all: Vec<u32> = (1..=self.n as u32).collect();
                all.sort_by_key(|&v| (self.g.degree(v), v));
                all
            }
        };
        self.terminal = Terminal::Hub;
        self.end_ok.fill(true);
        self.end_ok[0] = false;
        for s in starts {
            // Chains ending at an earlier start were already found from it.
            self.end_ok[s as usize] = false;
            self.visit(s);
            let done = self.dfs();
            self.unvisit();
            if done? {
                break;
            }
        }
        Ok(())
    }

    fn run_necklace(&mut self) -> Result<(), SearchError> {
        if self.n < 3 {
            return Ok(());
        }
        let start = (1..=self.n as u32)
            .min_by_key(|&v| (self.g.degree(v), v))
            .expect("n >= 3");
        if self.g.degree(start) < 2 {
            return Ok(());
        }
        self.terminal = Terminal::Start;
        self.end_ok.fill(false);
        for &w in self.g.neighbors(start) {
            self.end_ok[w as usize] = true;
        }
        self.visit(start);
        let r = self.dfs();
        self.unvisit();
        r.map(|_| ())
    }
}

/// A canonical chain if one exists. `Ok(None)` is an exhaustive proof of absence.
pub fn find_chain(g: &SumGraph) -> Result<Option<Chain>, SearchError> {
    find_chain_with(g, SearchConfig::default())
}

pub fn find_chain_with(g: &SumGraph, cfg: SearchConfig) -> Result<Option<Chain>, SearchError> {
    let mut s = Solver::new(g, cfg.node_budget, 1);
    s.run_chain()?;
    Ok(s.found.pop().map(Chain::new))
}

/// A canonical necklace if one exists. `Ok(None)` is an exhaustive proof of absence.
pub fn find_necklace(g: &SumGraph) -> Result<Option<Necklace>, SearchError> {
    find_necklace_with(g, SearchConfig::default())
}

pub fn find_necklace_with(
    g: &SumGraph,
    cfg: SearchConfig,
) -> Result<Option<Necklace>, SearchError> {
    let mut s = Solver::new(g, cfg.node_budget, 1);
    s.run_necklace()?;
    Ok(s.found.pop().map(Necklace::new))
}

/// All chains up to reversal, sorted. When `truncated` is set the list holds
/// the first `cap` chains the search met, not the lexicographically least.
pub fn enumerate_chains(g: &SumGraph, cap: usize) -> Result<Enumeration<Chain>, SearchError> {
    enumerate_chains_with(g, cap, SearchConfig::default())
}

pub fn enumerate_chains_with(
    g: &SumGraph,
    cap: usize,
    cfg: SearchConfig,
) -> Result<Enumeration<Chain>, SearchError> {
    let cap = cap.max(1);
    let mut s = Solver::new(g, cfg.node_budget, cap.saturating_add(1));
    s.run_chain()?;
    collect(s.found.into_iter().map(Chain::new), cap)
}

/// All necklaces up to rotation and reflection, sorted; truncation as for chains.
pub fn enumerate_necklaces(g: &SumGraph, cap: usize) -> Result<Enumeration<Necklace>, SearchError> {
    enumerate_necklaces_with(g, cap, SearchConfig::default())
}

pub fn enumerate_necklaces_with(
    g: &SumGraph,
    cap: usize,
    cfg: SearchConfig,
) -> Result<Enumeration<Necklace>, SearchError> {
    let cap = cap.max(1);
    let mut s = Solver::new(g, cfg.node_budget, cap.saturating_add(1));
    s.run_necklace()?;
    collect(s.found.into_iter().map(Necklace::new), cap)
}

fn collect<T: Ord>(
    found: impl Iterator<Item = T>,
    cap: usize,
) -> Result<Enumeration<T>, SearchError> {
    let set: BTreeSet<T> = found.collect();
    let truncated = set.len() > cap;
    Ok(Enumeration {
        items: set.into_iter().take(cap).collect(),
        truncated,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumMode {
    Chain,
    Necklace,
    Both,
}

impl std::str::FromStr for SpectrumMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "chain" => Ok(SpectrumMode::Chain),
            "necklace" => Ok(SpectrumMode::Necklace),
            "both" => Ok(SpectrumMode::Both),
            other => Err(format!("unknown mode `{other}`")),
        }
    }
}

/// Existence answer for one range bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Presence {
    Exists,
    Absent,
    /// The node budget ran out before the search finished.
    Unknown,
}

impl Presence {
    fn of<T>(r: &Result<Option<T>, SearchError>) -> Self {
        match r {
            Ok(Some(_)) => Presence::Exists,
            Ok(None) => Presence::Absent,
            Err(_) => Presence::Unknown,
        }
    }

    pub fn exists(self) -> bool {
        self == Presence::Exists
    }
}

impl fmt::Display for Presence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Presence::Exists => "yes",
            Presence::Absent => "no",
            Presence::Unknown => "budget",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumRow {
    pub n: u32,
    pub chain: Option<Presence>,
    pub necklace: Option<Presence>,
    /// Chains up to reversal; `None` when not requested or not finished.
    pub chain_count: Option<usize>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl PartialEq for SpectrumRow {
    /// Timing is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.chain == other.chain
            && self.necklace == other.necklace
            && self.chain_count == other.chain_count
    }
}

/// Counting enumerates at most this many chains per row.
pub const SPECTRUM_COUNT_CAP: usize = 1_000_000;

fn spectrum_row(
    ts: &TargetSet,
    n: u32,
    mode: SpectrumMode,
    count: bool,
    cfg: SearchConfig,
) -> SpectrumRow {
    let t0 = Instant::now();
    let g = SumGraph::build(n, ts);
    let (chain, necklace, chain_count) = match g {
        Err(_) => (
            (mode != SpectrumMode::Necklace).then_some(Presence::Unknown),
            (mode != SpectrumMode::Chain).then_some(Presence::Unknown),
            None,
        ),
        Ok(g) => {
            let want_chain = mode != SpectrumMode::Necklace;
            let want_necklace = mode != SpectrumMode::Chain;
            let mut chain_count = None;
            let chain = if want_chain && count {
                let e = enumerate_chains_with(&g, SPECTRUM_COUNT_CAP, cfg);
                if let Ok(e) = &e {
                    if !e.truncated {
                        chain_count = Some(e.items.len());
                    }
                }
                Some(match e {
                    Ok(e) if e.items.is_empty() => Presence::Absent,
                    Ok(_) => Presence::Exists,
                    Err(_) => Presence::Unknown,
                })
            } else if want_chain {
                Some(Presence::of(&find_chain_with(&g, cfg)))
            } else {
                None
            };
            let necklace = want_necklace.then(|| Presence::of(&find_necklace_with(&g, cfg)));
            (chain, necklace, chain_count)
        }
    };
    SpectrumRow {
        n,
        chain,
        necklace,
        chain_count,
        elapsed: t0.elapsed(),
    }
}

/// One row per `n` in `lo..=hi`, evaluated in parallel and returned in order.
pub fn spectrum(
    ts: &TargetSet,
    lo: u32,
    hi: u32,
    mode: SpectrumMode,
    count: bool,
) -> Vec<SpectrumRow> {
    spectrum_with(ts, lo, hi, mode, count, SearchConfig::default())
}

pub fn spectrum_with(
    ts: &TargetSet,
    lo: u32,
    hi: u32,
    mode: SpectrumMode,
    count: bool,
    cfg: SearchConfig,
) -> Vec<SpectrumRow> {
    let lo = lo.max(1);
    (lo..=hi)
        .into_par_iter()
        .map(|n| spectrum_row(ts, n, mode, count, cfg))
        .collect()
}

/// Sequential reference for [`spectrum`].
pub fn spectrum_sequential(
    ts: &TargetSet,
    lo: u32,
    hi: u32,
    mode: SpectrumMode,
    count: bool,
) -> Vec<SpectrumRow> {
    (lo.max(1)..=hi)
        .map(|n| spectrum_row(ts, n, mode, count, SearchConfig::default()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sumgraph::verify_sequence;

    fn graph(n: u32, ts: &TargetSet) -> SumGraph {
        SumGraph::build(n, ts).unwrap()
    }

    #[test]
    fn canonical_forms() {
        let c = Chain::new(vec![5, 3, 2, 1, 4]);
        assert_eq!(c.beads(), &[4, 1, 2, 3, 5]);
        assert_eq!(Chain::new(c.beads().to_vec()), c);
        let nk = Necklace::new(vec![3, 6, 1, 8, 2]);
        assert_eq!(nk.beads(), &[1, 6, 3, 2, 8]);
        assert_eq!(Necklace::new(nk.beads().to_vec()), nk);
    }

    #[test]
    fn fibonacci_examples() {
        let fib = TargetSet::fibonacci();
        assert_eq!(find_chain(&graph(14, &fib)).unwrap(), None);
        assert_eq!(
            find_chain(&graph(5, &fib)).unwrap().unwrap().beads(),
            &[4, 1, 2, 3, 5]
        );
        assert_eq!(find_necklace(&graph(13, &fib)).unwrap(), None);
    }

    #[test]
    fn square_examples() {
        let sq = TargetSet::squares();
        assert_eq!(find_chain(&graph(24, &sq)).unwrap(), None);
        let nk = find_necklace(&graph(32, &sq)).unwrap().unwrap();
        assert!(verify_sequence(nk.beads(), &sq, true).valid);
        let all = enumerate_chains(&graph(15, &sq), 10).unwrap();
        assert_eq!(all.items.len(), 1);
        assert_eq!(
            all.items[0].beads(),
            Chain::new(vec![9, 7, 2, 14, 11, 5, 4, 12, 13, 3, 6, 10, 15, 1, 8]).beads()
        );
    }

    #[test]
    fn triangular_fourteen_has_no_necklace() {
        let tri = TargetSet::triangular();
        assert_eq!(find_necklace(&graph(14, &tri)).unwrap(), None);
    }

    #[test]
    fn enumeration_counts() {
        let fib = TargetSet::fibonacci();
        assert_eq!(
            enumerate_chains(&graph(13, &fib), 100).unwrap().items.len(),
            2
        );
        assert_eq!(
            enumerate_chains(&graph(21, &fib), 100).unwrap().items.len(),
            1
        );
    }

    #[test]
    fn degenerate_sizes() {
        let sq = TargetSet::squares();
        assert_eq!(find_chain(&graph(1, &sq)).unwrap().unwrap().beads(), &[1]);
        assert_eq!(find_necklace(&graph(1, &sq)).unwrap(), None);
        let fib = TargetSet::fibonacci();
        assert_eq!(
            find_chain(&graph(2, &fib)).unwrap().unwrap().beads(),
            &[1, 2]
        );
        assert_eq!(find_necklace(&graph(2, &fib)).unwrap(), None);
    }

    #[test]
    fn budget_is_not_absence() {
        let sq = TargetSet::squares();
        let r = find_necklace_with(&graph(40, &sq), SearchConfig { node_budget: 3 });
        assert!(matches!(r, Err(SearchError::BudgetExhausted { .. })));
    }

    #[test]
    fn truncation_flag() {
        let e = enumerate_chains(&graph(25, &TargetSet::triangular()), 3).unwrap();
        assert_eq!(e.items.len(), 3);
        assert!(e.truncated);
    }

    #[test]
    fn parallel_spectrum_matches_sequential() {
        let ts = TargetSet::pentagonal();
        let a = spectrum(&ts, 1, 20, SpectrumMode::Both, true);
        let b = spectrum_sequential(&ts, 1, 20, SpectrumMode::Both, true);
        assert_eq!(a, b);
        assert_eq!(a.len(), 20);
    }
}
