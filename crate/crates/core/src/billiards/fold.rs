//! Piecewise fold involutions on `1..=n`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Beads `lo..=hi` map to `sum - x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldSegment {
    pub lo: u32,
    pub hi: u32,
    pub sum: u64,
}

impl FoldSegment {
    pub fn new(lo: u32, hi: u32, sum: u64) -> Self {
        FoldSegment { lo, hi, sum }
    }
}

/// Ordered segments that should tile `1..=n` and induce an involution.
/// Construction does not validate; see [`FoldSystem::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FoldSystem {
    n: u32,
    segments: Vec<FoldSegment>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FoldViolation {
    EmptyRange,
    EmptySegment {
        index: usize,
        lo: u32,
        hi: u32,
    },
    /// Segments are out of order or overlap at `bead`.
    Overlap {
        bead: u32,
    },
    /// Beads `lo..=hi` belong to no segment.
    Gap {
        lo: u32,
        hi: u32,
    },
    /// The image of `bead` falls outside `1..=n`.
    OutOfRange {
        bead: u32,
        image: i64,
    },
    /// `f(f(bead)) != bead`.
    NotInvolution {
        bead: u32,
        image: u32,
        back: u32,
    },
}

impl fmt::Display for FoldViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FoldViolation::EmptyRange => f.write_str("bead range is empty"),
            FoldViolation::EmptySegment { index, lo, hi } => {
                write!(f, "segment {index} [{lo},{hi}] is empty")
            }
            FoldViolation::Overlap { bead } => write!(f, "segments overlap at bead {bead}"),
            FoldViolation::Gap { lo, hi } => write!(f, "beads {lo}..{hi} are uncovered"),
            FoldViolation::OutOfRange { bead, image } => {
                write!(f, "bead {bead} maps to {image}, outside the range")
            }
            FoldViolation::NotInvolution { bead, image, back } => {
                write!(f, "bead {bead} maps to {image}, which maps to {back}")
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FoldInputError {
    #[error("malformed fold JSON: {0}")]
    Json(String),
    #[error("fold system {name} is invalid: {first} ({count} violations)")]
    Invalid {
        name: &'static str,
        first: FoldViolation,
        count: usize,
    },
}

impl FoldSystem {
    pub fn new(n: u32, segments: Vec<FoldSegment>) -> Self {
        FoldSystem { n, segments }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn segments(&self) -> &[FoldSegment] {
        &self.segments
    }

    /// Sum of the segment owning `x`, if any.
    pub fn sum_at(&self, x: u32) -> Option<u64> {
        let i = self.segments.partition_point(|s| s.hi < x);
        self.segments.get(i).filter(|s| s.lo <= x).map(|s| s.sum)
    }

    /// The partner of `x`. Only meaningful on a valid system.
    pub fn apply(&self, x: u32) -> u32 {
        let s = self.sum_at(x).expect("bead outside the fold system");
        (s - u64::from(x)) as u32
    }

    pub fn is_fixed(&self, x: u32) -> bool {
        self.sum_at(x) == Some(2 * u64::from(x))
    }

    /// Beads with `2x` equal to their segment sum, increasing.
    pub fn fixed_points(&self) -> Vec<u32> {
        self.segments
            .iter()
            .filter(|s| {
                s.sum % 2 == 0 && (u64::from(s.lo)..=u64::from(s.hi)).contains(&(s.sum / 2))
            })
            .map(|s| (s.sum / 2) as u32)
            .collect()
    }

    /// Every violated invariant; empty means the system is a valid involution
    /// tiling `1..=n`.
    pub fn validate(&self) -> Vec<FoldViolation> {
        let mut out = Vec::new();
        if self.n == 0 {
            out.push(FoldViolation::EmptyRange);
            return out;
        }
        let mut next = 1u64;
        for (index, s) in self.segments.iter().enumerate() {
            if s.lo == 0 || s.lo > s.hi {
                out.push(FoldViolation::EmptySegment {
                    index,
                    lo: s.lo,
                    hi: s.hi,
                });
                continue;
            }
            let lo = u64::from(s.lo);
            if lo < next {
                out.push(FoldViolation::Overlap { bead: s.lo });
            } else if lo > next {
                out.push(FoldViolation::Gap {
                    lo: next as u32,
                    hi: s.lo - 1,
                });
            }
            next = next.max(u64::from(s.hi) + 1);
        }
        if next <= u64::from(self.n) {
            out.push(FoldViolation::Gap {
                lo: next as u32,
                hi: self.n,
            });
        } else if next > u64::from(self.n) + 1 {
            out.push(FoldViolation::Gap {
                lo: self.n + 1,
                hi: (next - 1) as u32,
            });
        }
        if !out.is_empty() {
            return out;
        }
        for x in 1..=self.n {
            let image = self.sum_at(x).map_or(0, |s| s as i64 - i64::from(x));
            if image < 1 || image > i64::from(self.n) {
                out.push(FoldViolation::OutOfRange { bead: x, image });
                continue;
            }
            let y = image as u32;
            let back = self.sum_at(y).map_or(0, |s| s as i64 - i64::from(y));
            if back != i64::from(x) {
                out.push(FoldViolation::NotInvolution {
                    bead: x,
                    image: y,
                    back: back.max(0) as u32,
                });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FoldPairSpec {
    n: u32,
    f: Vec<[u64; 3]>,
    g: Vec<[u64; 3]>,
}

/// Parses `{"n": int, "f": [[lo, hi, sum], ...], "g": [...]}` and validates
/// both systems.
pub fn parse_fold_pair(text: &str) -> Result<(FoldSystem, FoldSystem), FoldInputError> {
    let spec: FoldPairSpec =
        serde_json::from_str(text).map_err(|e| FoldInputError::Json(e.to_string()))?;
    let build = |name: &'static str, raw: &[[u64; 3]]| {
        let mut segs = Vec::with_capacity(raw.len());
        for &[lo, hi, sum] in raw {
            let lo = u32::try_from(lo)
                .map_err(|_| FoldInputError::Json(format!("{name}: bound {lo} too large")))?;
            let hi = u32::try_from(hi)
                .map_err(|_| FoldInputError::Json(format!("{name}: bound {hi} too large")))?;
            segs.push(FoldSegment::new(lo, hi, sum));
        }
        let fs = FoldSystem::new(spec.n, segs);
        let v = fs.validate();
        match v.first() {
            None => Ok(fs),
            Some(first) => Err(FoldInputError::Invalid {
                name,
                first: first.clone(),
                count: v.len(),
            }),
        }
    };
    Ok((build("f", &spec.f)?, build("g", &spec.g)?))
}
