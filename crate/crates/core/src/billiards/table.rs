//! Rectangular tables given by doubled corners `A < B < C < D`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::fold::{FoldSegment, FoldSystem};

/// Largest accepted doubled corner.
pub const MAX_CORNER: u64 = 1 << 31;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("corners must satisfy 0 < A < B < C < D, got {a},{b},{c},{d}")]
    NotIncreasing { a: u64, b: u64, c: u64, d: u64 },
    #[error("corner {value} exceeds {max}")]
    TooLarge { value: u64, max: u64 },
    #[error("semiperimeter mismatch: C-A = {c_minus_a} but D-B = {d_minus_b}")]
    SemiperimeterViolation { c_minus_a: u64, d_minus_b: u64 },
    #[error("corner B = {b} exceeds P+1 = {}; beads 1..P would not be covered", p + 1)]
    CoverageViolation { b: u64, p: u64 },
    #[error("{evens} of the four corners are even; a table needs 0 or 2")]
    PocketCountViolation { evens: usize },
}

/// A rectangle with doubled corners `a < b < c < d` and perimeter `c - a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct BilliardTable {
    a: u64,
    b: u64,
    c: u64,
    d: u64,
}

impl BilliardTable {
    pub fn new(a: u64, b: u64, c: u64, d: u64) -> Result<Self, TableError> {
        if !(0 < a && a < b && b < c && c < d) {
            return Err(TableError::NotIncreasing { a, b, c, d });
        }
        if d > MAX_CORNER {
            return Err(TableError::TooLarge {
                value: d,
                max: MAX_CORNER,
            });
        }
        if c - a != d - b {
            return Err(TableError::SemiperimeterViolation {
                c_minus_a: c - a,
                d_minus_b: d - b,
            });
        }
        let p = c - a;
        if b > p + 1 {
            return Err(TableError::CoverageViolation { b, p });
        }
        let evens = [a, b, c, d].iter().filter(|&&v| v % 2 == 0).count();
        if evens != 0 && evens != 2 {
            return Err(TableError::PocketCountViolation { evens });
        }
        Ok(BilliardTable { a, b, c, d })
    }

    pub fn from_corners(corners: [u64; 4]) -> Result<Self, TableError> {
        let [a, b, c, d] = corners;
        Self::new(a, b, c, d)
    }

    pub fn corners(&self) -> [u64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Perimeter `C - A`, the number of beads.
    pub fn perimeter(&self) -> u32 {
        (self.c - self.a) as u32
    }

    /// `(B - A, C - B)`.
    pub fn double_sides(&self) -> (u64, u64) {
        (self.b - self.a, self.c - self.b)
    }

    /// Halved even corners, increasing.
    pub fn pockets(&self) -> Vec<u32> {
        self.corners()
            .iter()
            .filter(|&&v| v % 2 == 0)
            .map(|&v| (v / 2) as u32)
            .collect()
    }

    /// The two fold systems: `f` pairs sums `A` and `C`, `g` pairs `B` and `D`.
    pub fn folds(&self) -> (FoldSystem, FoldSystem) {
        let p = self.perimeter();
        let make = |low: u64, high: u64| {
            let split = low as u32;
            let segs = [
                FoldSegment::new(1, split - 1, low),
                FoldSegment::new(split, p, high),
            ]
            .into_iter()
            .filter(|s| s.lo <= s.hi)
            .collect();
            FoldSystem::new(p, segs)
        };
        (make(self.a, self.c), make(self.b, self.d))
    }
}

impl fmt::Display for BilliardTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.a, self.b, self.c, self.d)
    }
}

/// Validates the corners and returns the table with its two folds.
pub fn rect_table(
    a: u64,
    b: u64,
    c: u64,
    d: u64,
) -> Result<(BilliardTable, FoldSystem, FoldSystem), TableError> {
    let t = BilliardTable::new(a, b, c, d)?;
    let (f, g) = t.folds();
    Ok((t, f, g))
}

/// A value written as a half: `13` becomes `6½`, `12` becomes `6`.
pub fn halved_label(doubled: u64) -> String {
    if doubled.is_multiple_of(2) {
        (doubled / 2).to_string()
    } else {
        format!("{}\u{bd}", doubled / 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fig10_table() {
        let (t, f, g) = rect_table(4, 13, 25, 34).unwrap();
        assert_eq!(t.perimeter(), 21);
        assert_eq!(t.pockets(), vec![2, 17]);
        assert!(f.is_valid() && g.is_valid());
        let mut fixed = f.fixed_points();
        fixed.extend(g.fixed_points());
        fixed.sort_unstable();
        assert_eq!(fixed, vec![2, 17]);
    }

    #[test]
    fn fibonacci_table_pockets() {
        let (t, f, g) = rect_table(13, 21, 34, 42).unwrap();
        assert_eq!(t.perimeter(), 21);
        assert_eq!(t.pockets(), vec![17, 21]);
        assert!(f.is_valid() && g.is_valid());
    }

    #[test]
    fn rejections() {
        assert_eq!(
            BilliardTable::new(4, 13, 25, 33),
            Err(TableError::SemiperimeterViolation {
                c_minus_a: 21,
                d_minus_b: 20
            })
        );
        assert!(matches!(
            BilliardTable::new(2, 8, 6, 12),
            Err(TableError::NotIncreasing { .. })
        ));
        assert_eq!(
            BilliardTable::new(3, 6, 7, 10),
            Err(TableError::CoverageViolation { b: 6, p: 4 })
        );
        assert_eq!(
            BilliardTable::new(2, 4, 6, 8),
            Err(TableError::PocketCountViolation { evens: 4 })
        );
        assert!(matches!(
            BilliardTable::new(1, 3, 1 << 31, (1 << 31) + 2),
            Err(TableError::TooLarge { .. })
        ));
    }

    #[test]
    fn halves() {
        assert_eq!(halved_label(13), "6\u{bd}");
        assert_eq!(halved_label(34), "17");
    }
}
