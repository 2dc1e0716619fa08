//! Splitting `1..=n` into the orbits of two alternating fold involutions.

use serde::Serialize;
use thiserror::Error;

use super::fold::{FoldSystem, FoldViolation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecomposeError {
    #[error("fold systems cover different ranges ({f} and {g})")]
    RangeMismatch { f: u32, g: u32 },
    #[error("fold system {name} is invalid: {first} ({count} violations)")]
    InvalidFold {
        name: &'static str,
        first: FoldViolation,
        count: usize,
    },
}

/// Paths run pocket to pocket; cycles start at their least bead and take the
/// `f` step first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableDecomposition {
    pub n: u32,
    pub pockets: Vec<u32>,
    pub paths: Vec<Vec<u32>>,
    pub cycles: Vec<Vec<u32>>,
}

impl TableDecomposition {
    pub fn component_count(&self) -> usize {
        self.paths.len() + self.cycles.len()
    }

    /// One path through every bead.
    pub fn is_complete_path(&self) -> bool {
        self.cycles.is_empty() && self.paths.len() == 1 && self.paths[0].len() == self.n as usize
    }

    /// One cycle through every bead.
    pub fn is_single_cycle(&self) -> bool {
        self.paths.is_empty() && self.cycles.len() == 1
    }

    /// Adjacent pairs along every path and cycle (including cycle closures),
    /// tagged with whether they lie on a path.
    pub fn edges(&self) -> Vec<(u32, u32, bool)> {
        let mut out = Vec::new();
        for p in &self.paths {
            out.extend(p.windows(2).map(|w| (w[0], w[1], true)));
        }
        for c in &self.cycles {
            if c.len() >= 2 {
                out.extend(c.windows(2).map(|w| (w[0], w[1], false)));
                out.push((c[c.len() - 1], c[0], false));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PathSummary {
    pub start: u32,
    pub end: u32,
    pub len: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CycleSummary {
    pub least: u32,
    pub len: u32,
}

/// Component shapes without the bead lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionSummary {
    pub n: u32,
    pub pockets: Vec<u32>,
    pub paths: Vec<PathSummary>,
    pub cycles: Vec<CycleSummary>,
}

impl DecompositionSummary {
    pub fn component_count(&self) -> usize {
        self.paths.len() + self.cycles.len()
    }
}

trait Sink {
    fn begin(&mut self, is_path: bool);
    fn bead(&mut self, x: u32);
}

struct Bitmap(Vec<u64>);

impl Bitmap {
    fn new(n: u32) -> Self {
        Bitmap(vec![0; n as usize / 64 + 1])
    }

    fn get(&self, x: u32) -> bool {
        self.0[(x / 64) as usize] >> (x % 64) & 1 == 1
    }

    fn set(&mut self, x: u32) {
        self.0[(x / 64) as usize] |= 1 << (x % 64);
    }

    /// Least unset bit in `from..=n`.
    fn next_clear(&self, from: u32, n: u32) -> Option<u32> {
        let mut w = (from / 64) as usize;
        let mut word = !self.0[w] & (!0u64 << (from % 64));
        loop {
            if word != 0 {
                let x = w as u32 * 64 + word.trailing_zeros();
                return (x <= n).then_some(x);
            }
            w += 1;
            if w >= self.0.len() {
                return None;
            }
            word = !self.0[w];
        }
    }
}

fn check(f: &FoldSystem, g: &FoldSystem) -> Result<(), DecomposeError> {
    if f.n() != g.n() {
        return Err(DecomposeError::RangeMismatch { f: f.n(), g: g.n() });
    }
    for (name, fs) in [("f", f), ("g", g)] {
        let v = fs.validate();
        if let Some(first) = v.first() {
            return Err(DecomposeError::InvalidFold {
                name,
                first: first.clone(),
                count: v.len(),
            });
        }
    }
    Ok(())
}

/// Traces every component, memory beyond the sink limited to a bitmap.
fn walk(f: &FoldSystem, g: &FoldSystem, sink: &mut impl Sink) -> Vec<u32> {
    let n = f.n();
    let mut seen = Bitmap::new(n);
    let mut pockets = f.fixed_points();
    pockets.extend(g.fixed_points());
    pockets.sort_unstable();
    pockets.dedup();
    for &p in &pockets {
        if seen.get(p) {
            continue;
        }
        sink.begin(true);
        sink.bead(p);
        seen.set(p);
        let mut on_f = !f.is_fixed(p);
        let mut x = p;
        loop {
            let y = if on_f { f.apply(x) } else { g.apply(x) };
            if y == x {
                break;
            }
            sink.bead(y);
            seen.set(y);
            x = y;
            on_f = !on_f;
        }
    }
    let mut from = 1;
    while let Some(s) = seen.next_clear(from, n) {
        sink.begin(false);
        sink.bead(s);
        seen.set(s);
        let mut on_f = true;
        let mut x = s;
        loop {
            let y = if on_f { f.apply(x) } else { g.apply(x) };
            if y == s {
                break;
            }
            sink.bead(y);
            seen.set(y);
            x = y;
            on_f = !on_f;
        }
        from = s + 1;
    }
    pockets
}

struct Collect {
    paths: Vec<Vec<u32>>,
    cycles: Vec<Vec<u32>>,
    in_path: bool,
}

impl Sink for Collect {
    fn begin(&mut self, is_path: bool) {
        self.in_path = is_path;
        if is_path {
            self.paths.push(Vec::new());
        } else {
            self.cycles.push(Vec::new());
        }
    }

    fn bead(&mut self, x: u32) {
        let list = if self.in_path {
            &mut self.paths
        } else {
            &mut self.cycles
        };
        list.last_mut().expect("begin precedes beads").push(x);
    }
}

struct Summarize {
    paths: Vec<PathSummary>,
    cycles: Vec<CycleSummary>,
    in_path: bool,
}

impl Sink for Summarize {
    fn begin(&mut self, is_path: bool) {
        self.in_path = is_path;
        if is_path {
            self.paths.push(PathSummary {
                start: 0,
                end: 0,
                len: 0,
            });
        } else {
            self.cycles.push(CycleSummary { least: 0, len: 0 });
        }
    }

    fn bead(&mut self, x: u32) {
        if self.in_path {
            let p = self.paths.last_mut().expect("begin precedes beads");
            if p.len == 0 {
                p.start = x;
            }
            p.end = x;
            p.len += 1;
        } else {
            let c = self.cycles.last_mut().expect("begin precedes beads");
            if c.len == 0 {
                c.least = x;
            }
            c.len += 1;
        }
    }
}

/// Full decomposition with every bead listed.
pub fn decompose(f: &FoldSystem, g: &FoldSystem) -> Result<TableDecomposition, DecomposeError> {
    check(f, g)?;
    let mut sink = Collect {
        paths: Vec::new(),
        cycles: Vec::new(),
        in_path: false,
    };
    let pockets = walk(f, g, &mut sink);
    Ok(TableDecomposition {
        n: f.n(),
        pockets,
        paths: sink.paths,
        cycles: sink.cycles,
    })
}

/// Component endpoints and lengths only; auxiliary memory is one bit per bead.
pub fn summarize(f: &FoldSystem, g: &FoldSystem) -> Result<DecompositionSummary, DecomposeError> {
    check(f, g)?;
    let mut sink = Summarize {
        paths: Vec::new(),
        cycles: Vec::new(),
        in_path: false,
    };
    let pockets = walk(f, g, &mut sink);
    Ok(DecompositionSummary {
        n: f.n(),
        pockets,
        paths: sink.paths,
        cycles: sink.cycles,
    })
}
