use proptest::prelude::*;
use sumchain::billiards::{decompose, gcd, lemma_predict, rect_table, BilliardTable};

/// All valid tables with perimeter up to `max_p`, as `(A, B, P)`.
fn tables(max_p: u64) -> impl Iterator<Item = (u64, u64, u64)> {
    (1..=max_p).flat_map(|p| (1..=p).flat_map(move |a| (a + 1..=p + 1).map(move |b| (a, b, p))))
}

#[test]
fn coprime_double_sides_iff_complete_path() {
    let mut checked = 0u32;
    for (a, b, p) in tables(200) {
        let Ok((t, f, g)) = rect_table(a, b, a + p, b + p) else {
            continue;
        };
        if t.pockets().is_empty() {
            continue;
        }
        let d = decompose(&f, &g).unwrap();
        let pred = lemma_predict(&t).unwrap();
        assert_eq!(pred.complete, d.is_complete_path(), "table {t}");
        checked += 1;
    }
    // Tables with B = C are excluded by the strict corner order.
    assert_eq!(checked, 1_014_950);
}

/// Pocketless tables empirically split into half the gcd of the double
/// sides many cycles.
#[test]
fn pocketless_cycle_count_is_half_gcd() {
    let mut checked = 0u32;
    for p in (2..=500u64).step_by(2) {
        for a in (1..=p).step_by(2) {
            for b in (a + 2..=(p + 1).min(a + p - 1)).step_by(2) {
                let (t, f, g) = rect_table(a, b, a + p, b + p).unwrap();
                let d = decompose(&f, &g).unwrap();
                let (s, r) = t.double_sides();
                assert!(d.paths.is_empty());
                assert_eq!(d.cycles.len() as u64, gcd(s, r) / 2, "table {t}");
                checked += 1;
            }
        }
    }
    assert!(checked > 2_000_000);
}

fn check_alternate_bounce(t: &BilliardTable) {
    let (f, g) = t.folds();
    let d = decompose(&f, &g).unwrap();
    let p = i64::from(t.perimeter());
    let step = t.double_sides().0 as i64;
    let comps = d
        .paths
        .iter()
        .map(|c| (c, false))
        .chain(d.cycles.iter().map(|c| (c, true)));
    for (c, closed) in comps {
        let k = c.len();
        let pairs = if closed { k } else { k.saturating_sub(2) };
        for i in 0..pairs {
            if closed && k < 3 {
                break;
            }
            let (x, z) = (i64::from(c[i]), i64::from(c[(i + 2) % k]));
            let diff = (z - x).rem_euclid(p);
            assert!(
                diff == step.rem_euclid(p) || diff == (-step).rem_euclid(p),
                "table {t}: {x} and {z}"
            );
        }
    }
}

#[test]
fn alternate_bounces_differ_by_first_double_side() {
    for corners in [
        [4, 13, 25, 34],
        [13, 21, 34, 42],
        [9, 49, 81, 121],
        [36, 121, 1764, 1849],
        [1, 15, 91, 105],
        [15, 35, 57, 77],
        [45, 325, 1431, 1711],
    ] {
        check_alternate_bounce(&BilliardTable::from_corners(corners).unwrap());
    }
}

proptest! {
    #[test]
    fn decomposition_partitions_beads(p in 2u64..400, a_frac in 0.0f64..1.0, b_frac in 0.0f64..1.0) {
        let a = 1 + (a_frac * p as f64) as u64 % p;
        let b = a + 1 + (b_frac * (p + 1 - a) as f64) as u64 % (p + 1 - a);
        prop_assume!(b <= p + 1);
        if let Ok((t, f, g)) = rect_table(a, b, a + p, b + p) {
            let d = decompose(&f, &g).unwrap();
            let mut all: Vec<u32> = d.paths.iter().chain(&d.cycles).flatten().copied().collect();
            all.sort_unstable();
            prop_assert_eq!(all, (1..=t.perimeter()).collect::<Vec<_>>());
            prop_assert_eq!(d.paths.len() * 2, t.pockets().len());
            let sums = t.corners();
            for (x, y, _) in d.edges() {
                prop_assert!(sums.contains(&(u64::from(x) + u64::from(y))));
            }
            check_alternate_bounce(&t);
        }
    }
}
