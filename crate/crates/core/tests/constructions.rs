use sumchain::billiards::{decompose, gcd, BilliardTable};
use sumchain::constructions::{
    build_necklace_from_corners, cubic_necklace_candidates, extend_necklace, fibonacci_chain,
    lucas_chain, recurrence_chain_lengths, square_necklace_rows, ConstructionError,
};
use sumchain::fixtures;
use sumchain::search::enumerate_chains;
use sumchain::targets::fibonacci;
use sumchain::{verify_sequence, SearchConfig, SumGraph, TargetSet};

/// `n = F_{3m+1}` or `F_{3m+1} - 1` with `m >= 2`, where the short tail can
/// attach in two ways.
fn two_tails(n: u32) -> bool {
    (2..10).any(|m| {
        let f = fibonacci(3 * m + 1);
        i64::from(n) == f || i64::from(n) == f - 1
    })
}

#[test]
fn fibonacci_constructions_agree_with_search() {
    let ts = TargetSet::fibonacci();
    for n in 2..=100u32 {
        let g = SumGraph::build(n, &ts).unwrap();
        let found = enumerate_chains(&g, 10).unwrap().items;
        match fibonacci_chain(n) {
            Ok(c) => {
                assert!(verify_sequence(c.beads(), &ts, false).valid, "n={n}");
                let expected = if two_tails(n) { 2 } else { 1 };
                assert_eq!(found.len(), expected, "n={n}");
                assert!(found.contains(&c), "n={n}");
            }
            Err(ConstructionError::NoChain { .. }) => assert!(found.is_empty(), "n={n}"),
            Err(e) => panic!("n={n}: {e}"),
        }
    }
}

#[test]
fn lucas_constructions_agree_with_search() {
    let ts = TargetSet::lucas();
    for n in 2..=200u32 {
        let g = SumGraph::build(n, &ts).unwrap();
        let found = enumerate_chains(&g, 10).unwrap().items;
        match lucas_chain(n) {
            Ok(c) => {
                assert!(verify_sequence(c.beads(), &ts, false).valid, "n={n}");
                assert!(found.contains(&c), "n={n}");
            }
            Err(ConstructionError::NoChain { .. }) => assert!(found.is_empty(), "n={n}"),
            Err(e) => panic!("n={n}: {e}"),
        }
    }
}

#[test]
fn recurrence_4_5_lengths() {
    let r = recurrence_chain_lengths(4, 5, 200, SearchConfig::default()).unwrap();
    assert!(r.unexpected.is_empty(), "{r:?}");
    assert!(!r.chains.is_empty());
}

#[test]
fn fig12_pairs_are_the_fold_pairs() {
    let t = BilliardTable::new(13, 21, 34, 42).unwrap();
    let (f, g) = t.folds();
    let d = decompose(&f, &g).unwrap();
    assert!(d.is_complete_path());
    let mut edges: Vec<(u32, u32)> = d
        .edges()
        .into_iter()
        .map(|(x, y, _)| (x.min(y), x.max(y)))
        .collect();
    edges.sort_unstable();
    assert_eq!(edges, fixtures::pairs("fig12-pairs").unwrap());
    assert_eq!(d.paths[0].len(), 21);
}

#[test]
fn square_rows_beyond_the_table_are_flagged() {
    let rows =
        square_necklace_rows(&[(2, 1), (3, 2), (4, 3), (7, 3), (7, 5), (5, 4), (5, 3)]).unwrap();
    assert_eq!(rows.iter().filter(|r| r.coprime).count(), 15);
    for row in rows.iter().filter(|r| !r.coprime) {
        assert!(gcd(row.double_sides[0], row.double_sides[1]) > 1);
    }
    let uncovered: Vec<_> = rows
        .iter()
        .filter(|r| r.coprime && !r.coverage_ok)
        .map(|r| r.roots)
        .collect();
    assert_eq!(uncovered, vec![[102, 186, 197, 251]]);
}

#[test]
fn buildable_cubic_candidates_give_necklaces() {
    let cubes = TargetSet::cubes();
    let cands = cubic_necklace_candidates(260).unwrap();
    let buildable: Vec<_> = cands.iter().filter(|c| c.buildable()).collect();
    assert!(buildable.iter().any(|c| c.roots == [21, 167, 231, 257]));
    let smallest = buildable.iter().min_by_key(|c| c.perimeter).unwrap();
    let nk = build_necklace_from_corners(smallest.corners, &cubes).unwrap();
    assert_eq!(nk.len() as u64, smallest.perimeter);
    for c in cands
        .iter()
        .filter(|c| c.perimeter < 3_000_000 && c.coverage_ok)
    {
        let t = c.table().unwrap();
        let (f, g) = t.folds();
        let d = decompose(&f, &g).unwrap();
        assert_eq!(
            d.cycles.len() as u64,
            c.predicted_components,
            "{:?}",
            c.roots
        );
    }
}

#[test]
fn triangular_extension_chain() {
    let tri = TargetSet::triangular();
    let mut nk = build_necklace_from_corners([1, 15, 91, 105], &tri).unwrap();
    for _ in 0..10 {
        match extend_necklace(&nk, &tri) {
            Ok(next) => nk = next,
            Err(ConstructionError::NoInsertionPoint { .. }) => break,
            Err(e) => panic!("{e}"),
        }
    }
    assert!(nk.len() >= 93);
    assert!(verify_sequence(nk.beads(), &tri, true).valid);
}
