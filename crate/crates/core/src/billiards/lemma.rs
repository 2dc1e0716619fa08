//! Completeness prediction from the double sides, and residue classes.

use serde::Serialize;
use thiserror::Error;

use super::decompose::TableDecomposition;
use super::table::BilliardTable;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LemmaError {
    #[error("table {0} has no pockets; completeness is predicted only for two-pocket tables")]
    NoPockets(BilliardTable),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LemmaPrediction {
    pub complete: bool,
    pub gcd: u64,
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A two-pocket table yields a single path through all beads exactly when
/// its double sides are coprime.
pub fn lemma_predict(t: &BilliardTable) -> Result<LemmaPrediction, LemmaError> {
    if t.pockets().is_empty() {
        return Err(LemmaError::NoPockets(*t));
    }
    let (s, r) = t.double_sides();
    let g = gcd(s, r);
    Ok(LemmaPrediction {
        complete: g == 1,
        gcd: g,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentKind {
    Path,
    Cycle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentResidues {
    pub kind: ComponentKind,
    pub index: usize,
    /// Distinct residues of the component's beads, increasing.
    pub classes: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueColoring {
    pub modulus: u64,
    pub components: Vec<ComponentResidues>,
}

/// Residue classes of each component (paths first) modulo `modulus`.
pub fn component_residues(d: &TableDecomposition, modulus: u64) -> ResidueColoring {
    let classes = |beads: &[u32]| {
        let mut c: Vec<u64> = beads.iter().map(|&x| u64::from(x) % modulus).collect();
        c.sort_unstable();
        c.dedup();
        c
    };
    let mut components = Vec::new();
    for (index, p) in d.paths.iter().enumerate() {
        components.push(ComponentResidues {
            kind: ComponentKind::Path,
            index,
            classes: classes(p),
        });
    }
    for (index, c) in d.cycles.iter().enumerate() {
        components.push(ComponentResidues {
            kind: ComponentKind::Cycle,
            index,
            classes: classes(c),
        });
    }
    ResidueColoring {
        modulus,
        components,
    }
}

/// Coloring modulo the gcd of the double sides. Every sum of partners is
/// congruent to `A`, so each component uses at most the classes `r` and
/// `A - r`.
pub fn residue_coloring(
    t: &BilliardTable,
    d: &TableDecomposition,
) -> Result<ResidueColoring, LemmaError> {
    let p = lemma_predict(t)?;
    Ok(component_residues(d, p.gcd))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::billiards::decompose::decompose;
    use crate::billiards::table::rect_table;

    #[test]
    fn predictions() {
        let t = BilliardTable::new(4, 13, 25, 34).unwrap();
        assert_eq!(
            lemma_predict(&t),
            Ok(LemmaPrediction {
                complete: false,
                gcd: 3
            })
        );
        let t = BilliardTable::new(36, 121, 1764, 1849).unwrap();
        assert_eq!(lemma_predict(&t).unwrap().gcd, 1);
        let t = BilliardTable::new(13, 21, 34, 42).unwrap();
        assert!(lemma_predict(&t).unwrap().complete);
        let t = BilliardTable::new(9, 49, 81, 121).unwrap();
        assert_eq!(lemma_predict(&t), Err(LemmaError::NoPockets(t)));
    }

    #[test]
    fn fig10_coloring() {
        let (t, f, g) = rect_table(4, 13, 25, 34).unwrap();
        let d = decompose(&f, &g).unwrap();
        let c = residue_coloring(&t, &d).unwrap();
        assert_eq!(c.modulus, 3);
        assert_eq!(c.components[0].kind, ComponentKind::Path);
        assert_eq!(c.components[0].classes, vec![2]);
        assert_eq!(c.components[1].classes, vec![0, 1]);
        for (x, y, _) in d.edges() {
            assert_eq!((x + y) % 3, 1);
        }
    }

    #[test]
    fn gcd_values() {
        assert_eq!(gcd(85, 1643), 1);
        assert_eq!(gcd(9, 12), 3);
        assert_eq!(gcd(0, 7), 7);
    }
}
