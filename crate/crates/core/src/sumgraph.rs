//! The sum-graph on beads `1..=n` and sequence verification.

use std::fmt;

use petgraph::unionfind::UnionFind;
use serde::Serialize;
use thiserror::Error;

use crate::targets::TargetSet;

/// Largest range for which adjacency is materialized.
pub const MAX_GRAPH_N: u32 = 1 << 25;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("range {n} is out of bounds (1..={max}); use fold systems for larger tables")]
    RangeTooLarge { n: u64, max: u32 },
}

/// Vertices `1..=n`, edges `{x, y}` with `x != y` and `x + y` a target.
///
/// Adjacency is stored compressed: the partners of `v` are
/// `adj[offsets[v]..offsets[v + 1]]`, increasing.
#[derive(Clone)]
pub struct SumGraph {
    n: u32,
    targets: TargetSet,
    offsets: Vec<u32>,
    adj: Vec<u32>,
}

impl fmt::Debug for SumGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SumGraph")
            .field("n", &self.n)
            .field("targets", &self.targets)
            .field("edges", &self.edge_count())
            .finish()
    }
}

impl SumGraph {
    pub fn build(n: u32, targets: &TargetSet) -> Result<Self, GraphError> {
        if n == 0 || n > MAX_GRAPH_N {
            return Err(GraphError::RangeTooLarge {
                n: u64::from(n),
                max: MAX_GRAPH_N,
            });
        }
        let members = targets.values_upto(2 * i64::from(n));
        let mut offsets = Vec::with_capacity(n as usize + 2);
        let mut adj = Vec::new();
        offsets.push(0);
        offsets.push(0);
        for x in 1..=i64::from(n) {
            let start = members.partition_point(|&m| m <= x);
            for &m in &members[start..] {
                let y = m - x;
                if y > i64::from(n) {
                    break;
                }
                if y != x {
                    adj.push(y as u32);
                }
            }
            offsets.push(adj.len() as u32);
        }
        Ok(SumGraph {
            n,
            targets: targets.clone(),
            offsets,
            adj,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn targets(&self) -> &TargetSet {
        &self.targets
    }

    /// Partners of `v`, increasing.
    pub fn neighbors(&self, v: u32) -> &[u32] {
        let v = v as usize;
        &self.adj[self.offsets[v] as usize..self.offsets[v + 1] as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.neighbors(v).len()
    }

    pub fn has_edge(&self, x: u32, y: u32) -> bool {
        x != y
            && (1..=self.n).contains(&x)
            && (1..=self.n).contains(&y)
            && self.targets.contains(i64::from(x) + i64::from(y))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.len() / 2
    }

    /// Degree-0 and degree-1 vertices.
    pub fn degree_anomalies(&self) -> DegreeAnomalies {
        let mut out = DegreeAnomalies::default();
        for v in 1..=self.n {
            match self.degree(v) {
                0 => out.isolated.push(v),
                1 => out.monovalent.push(v),
                _ => {}
            }
        }
        out
    }

    /// Connected components, each increasing, ordered by least element.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let mut uf = UnionFind::<u32>::new(self.n as usize + 1);
        for x in 1..=self.n {
            for &y in self.neighbors(x) {
                if y > x {
                    uf.union(x, y);
                }
            }
        }
        let mut slot_of_root = vec![usize::MAX; self.n as usize + 1];
        let mut comps: Vec<Vec<u32>> = Vec::new();
        for v in 1..=self.n {
            let r = uf.find(v) as usize;
            if slot_of_root[r] == usize::MAX {
                slot_of_root[r] = comps.len();
                comps.push(Vec::new());
            }
            comps[slot_of_root[r]].push(v);
        }
        comps
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DegreeAnomalies {
    pub isolated: Vec<u32>,
    pub monovalent: Vec<u32>,
}

/// First adjacency failure in a sequence. `position` is the 1-based index of
/// the left bead; the wraparound pair of a closed sequence has position `len`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub position: usize,
    pub left: u32,
    pub right: u32,
    pub sum: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoverageFailure {
    Empty,
    OutOfRange {
        position: usize,
        bead: u32,
    },
    Duplicate {
        position: usize,
        bead: u32,
    },
    /// Only reported when no out-of-range or duplicate bead was found.
    Missing {
        bead: u32,
    },
}

impl fmt::Display for CoverageFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverageFailure::Empty => f.write_str("empty sequence"),
            CoverageFailure::OutOfRange { position, bead } => {
                write!(f, "bead {bead} at position {position} is outside 1..n")
            }
            CoverageFailure::Duplicate { position, bead } => {
                write!(f, "bead {bead} repeats at position {position}")
            }
            CoverageFailure::Missing { bead } => write!(f, "bead {bead} is missing"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub valid: bool,
    pub violation: Option<Violation>,
    pub coverage_failure: Option<CoverageFailure>,
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valid {
            return f.write_str("valid");
        }
        f.write_str("invalid")?;
        if let Some(v) = &self.violation {
            write!(
                f,
                ": position {} beads {},{} sum {} not a target",
                v.position, v.left, v.right, v.sum
            )?;
        }
        if let Some(c) = &self.coverage_failure {
            write!(f, ": {c}")?;
        }
        Ok(())
    }
}

/// Checks that `seq` is a permutation of `1..=len` whose adjacent sums (and
/// the wraparound sum when `closed`) all lie in `targets`.
pub fn verify_sequence(seq: &[u32], targets: &TargetSet, closed: bool) -> VerificationReport {
    let coverage_failure = coverage(seq);
    let mut violation = None;
    let len = seq.len();
    let pairs = if closed && len >= 2 {
        len
    } else {
        len.saturating_sub(1)
    };
    for i in 0..pairs {
        let (l, r) = (seq[i], seq[(i + 1) % len]);
        let sum = i64::from(l) + i64::from(r);
        if !targets.contains(sum) {
            violation = Some(Violation {
                position: i + 1,
                left: l,
                right: r,
                sum,
            });
            break;
        }
    }
    VerificationReport {
        valid: violation.is_none() && coverage_failure.is_none(),
        violation,
        coverage_failure,
    }
}

fn coverage(seq: &[u32]) -> Option<CoverageFailure> {
    if seq.is_empty() {
        return Some(CoverageFailure::Empty);
    }
    let n = seq.len();
    let mut seen = vec![false; n + 1];
    for (i, &b) in seq.iter().enumerate() {
        if b == 0 || b as usize > n {
            return Some(CoverageFailure::OutOfRange {
                position: i + 1,
                bead: b,
            });
        }
        if std::mem::replace(&mut seen[b as usize], true) {
            return Some(CoverageFailure::Duplicate {
                position: i + 1,
                bead: b,
            });
        }
    }
    (1..=n)
        .find(|&b| !seen[b])
        .map(|b| CoverageFailure::Missing { bead: b as u32 })
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("malformed bead list: `{token}` is not a positive integer")]
pub struct ParseBeadsError {
    pub token: String,
}

/// Parses the whitespace-separated bead format.
pub fn parse_beads(text: &str) -> Result<Vec<u32>, ParseBeadsError> {
    text.split_whitespace()
        .map(|tok| match tok.parse::<u32>() {
            Ok(v) if v > 0 => Ok(v),
            _ => Err(ParseBeadsError {
                token: tok.to_string(),
            }),
        })
        .collect()
}

/// Single line, space separated, trailing newline.
pub fn format_beads(beads: &[u32]) -> String {
    let mut s = String::with_capacity(beads.len() * 4);
    for (i, b) in beads.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        s.push_str(&b.to_string());
    }
    s.push('\n');
    s
}
