//! Target-sum sequences: the sets that adjacent bead sums must land in.
//!
//! Closed-form families (squares, cubes, triangular and generalized
//! pentagonal numbers) are answered arithmetically. Recurrence families
//! (Fibonacci, Lucas, user seeds) and explicit lists are materialized once
//! up to [`MAX_MEMBER`]. Primes use a grow-only sieve guarded by a lock.

use std::fmt;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest value any membership query is required to answer.
pub const MAX_MEMBER: i64 = 1 << 62;

/// Sieve growth stops here; larger prime queries fall back to trial division.
const SIEVE_CEILING: u64 = 1 << 27;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TargetError {
    #[error("explicit target list is empty")]
    EmptyExplicit,
    #[error("explicit target list is not strictly increasing at index {index}")]
    NotIncreasing { index: usize },
    #[error("target values must be positive, got {value}")]
    NonPositive { value: i64 },
    #[error("target value {value} exceeds 2^62")]
    TooLarge { value: i64 },
    #[error("recurrence seeds must differ, got {x0} and {x1}")]
    EqualSeeds { x0: i64, x1: i64 },
    #[error("unknown target kind `{0}`")]
    UnknownKind(String),
}

/// Which family a [`TargetSet`] draws from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "params")]
pub enum TargetKind {
    Squares,
    Cubes,
    Triangular,
    /// Generalized pentagonal numbers k(3k-1)/2 and k(3k+1)/2 merged.
    Pentagonal,
    Fibonacci,
    Lucas,
    Primes,
    /// x_{k+1} = x_k + x_{k-1} from the two seeds.
    Recurrence {
        x0: i64,
        x1: i64,
    },
    Explicit(Vec<i64>),
}

impl TargetKind {
    pub fn name(&self) -> &'static str {
        match self {
            TargetKind::Squares => "squares",
            TargetKind::Cubes => "cubes",
            TargetKind::Triangular => "triangular",
            TargetKind::Pentagonal => "pentagonal",
            TargetKind::Fibonacci => "fibonacci",
            TargetKind::Lucas => "lucas",
            TargetKind::Primes => "primes",
            TargetKind::Recurrence { .. } => "recurrence",
            TargetKind::Explicit(_) => "explicit",
        }
    }
}

impl fmt::Display for TargetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetKind::Recurrence { x0, x1 } => write!(f, "recurrence:{x0},{x1}"),
            TargetKind::Explicit(v) => {
                f.write_str("explicit:")?;
                for (i, m) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{m}")?;
                }
                Ok(())
            }
            other => f.write_str(other.name()),
        }
    }
}

impl std::str::FromStr for TargetKind {
    type Err = TargetError;

    /// Accepts `squares`, `cubes`, `triangular`, `pentagonal`, `fibonacci`,
    /// `lucas`, `primes`, `recurrence:X0,X1` and `explicit:M1,M2,...`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || TargetError::UnknownKind(s.to_string());
        let (head, tail) = match s.split_once(':') {
            Some((h, t)) => (h, Some(t)),
            None => (s, None),
        };
        let kind = match (head, tail) {
            ("squares", None) => TargetKind::Squares,
            ("cubes", None) => TargetKind::Cubes,
            ("triangular", None) => TargetKind::Triangular,
            ("pentagonal", None) => TargetKind::Pentagonal,
            ("fibonacci", None) => TargetKind::Fibonacci,
            ("lucas", None) => TargetKind::Lucas,
            ("primes", None) => TargetKind::Primes,
            ("recurrence", Some(t)) => {
                let nums = parse_list(t).ok_or_else(bad)?;
                match nums[..] {
                    [x0, x1] => TargetKind::Recurrence { x0, x1 },
                    _ => return Err(bad()),
                }
            }
            ("explicit", Some(t)) => TargetKind::Explicit(parse_list(t).ok_or_else(bad)?),
            _ => return Err(bad()),
        };
        Ok(kind)
    }
}

fn parse_list(s: &str) -> Option<Vec<i64>> {
    s.split(',').map(|p| p.trim().parse().ok()).collect()
}

/// Membership oracle for allowed adjacent-pair sums. Cloning is cheap.
#[derive(Clone)]
pub struct TargetSet {
    inner: Arc<Inner>,
}

struct Inner {
    kind: TargetKind,
    /// Every member up to MAX_MEMBER, for recurrence-like and explicit kinds.
    listed: Option<Vec<i64>>,
    sieve: RwLock<Sieve>,
}

impl fmt::Debug for TargetSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("TargetSet").field(&self.inner.kind).finish()
    }
}

impl PartialEq for TargetSet {
    fn eq(&self, other: &Self) -> bool {
        self.inner.kind == other.inner.kind
    }
}

impl Eq for TargetSet {}

impl TargetSet {
    pub fn new(kind: TargetKind) -> Result<Self, TargetError> {
        let listed = match &kind {
            TargetKind::Fibonacci => Some(recurrence_members(0, 1)),
            // L_0 = 2 is not part of the set; membership starts at L_1 = 1.
            TargetKind::Lucas => Some(recurrence_members(1, 3)),
            TargetKind::Recurrence { x0, x1 } => {
                for &v in [x0, x1] {
                    if v <= 0 {
                        return Err(TargetError::NonPositive { value: v });
                    }
                    if v > MAX_MEMBER {
                        return Err(TargetError::TooLarge { value: v });
                    }
                }
                if x0 == x1 {
                    return Err(TargetError::EqualSeeds { x0: *x0, x1: *x1 });
                }
                Some(recurrence_members(*x0, *x1))
            }
            TargetKind::Explicit(values) => {
                if values.is_empty() {
                    return Err(TargetError::EmptyExplicit);
                }
                for (i, &v) in values.iter().enumerate() {
                    if v <= 0 {
                        return Err(TargetError::NonPositive { value: v });
                    }
                    if v > MAX_MEMBER {
                        return Err(TargetError::TooLarge { value: v });
                    }
                    if i > 0 && values[i - 1] >= v {
                        return Err(TargetError::NotIncreasing { index: i });
                    }
                }
                Some(values.clone())
            }
            _ => None,
        };
        Ok(TargetSet {
            inner: Arc::new(Inner {
                kind,
                listed,
                sieve: RwLock::new(Sieve::default()),
            }),
        })
    }

    pub fn squares() -> Self {
        Self::new(TargetKind::Squares).expect("closed-form kind")
    }

    pub fn cubes() -> Self {
        Self::new(TargetKind::Cubes).expect("closed-form kind")
    }

    pub fn triangular() -> Self {
        Self::new(TargetKind::Triangular).expect("closed-form kind")
    }

    pub fn pentagonal() -> Self {
        Self::new(TargetKind::Pentagonal).expect("closed-form kind")
    }

    pub fn fibonacci() -> Self {
        Self::new(TargetKind::Fibonacci).expect("closed-form kind")
    }

    pub fn lucas() -> Self {
        Self::new(TargetKind::Lucas).expect("closed-form kind")
    }

    pub fn primes() -> Self {
        Self::new(TargetKind::Primes).expect("closed-form kind")
    }

    pub fn recurrence(x0: i64, x1: i64) -> Result<Self, TargetError> {
        Self::new(TargetKind::Recurrence { x0, x1 })
    }

    pub fn explicit(values: Vec<i64>) -> Result<Self, TargetError> {
        Self::new(TargetKind::Explicit(values))
    }

    pub fn kind(&self) -> &TargetKind {
        &self.inner.kind
    }

    /// True iff `m` is a member. Values outside `1..=2^62` are never members.
    pub fn contains(&self, m: i64) -> bool {
        if !(1..=MAX_MEMBER).contains(&m) {
            return false;
        }
        if let Some(list) = &self.inner.listed {
            return list.binary_search(&m).is_ok();
        }
        let u = m as u64;
        match self.inner.kind {
            TargetKind::Squares => is_square(u as u128),
            TargetKind::Cubes => icbrt(u).pow(3) == u,
            TargetKind::Triangular => is_square(8 * u as u128 + 1),
            // 24m+1 = (6k -+ 1)^2 covers both pentagonal branches.
            TargetKind::Pentagonal => is_square(24 * u as u128 + 1),
            TargetKind::Primes => self.is_prime(u),
            _ => unreachable!("listed kinds handled above"),
        }
    }

    /// All members `<= bound`, increasing.
    pub fn values_upto(&self, bound: i64) -> Vec<i64> {
        if bound < 1 {
            return Vec::new();
        }
        let bound = bound.min(MAX_MEMBER);
        if let Some(list) = &self.inner.listed {
            let end = list.partition_point(|&v| v <= bound);
            return list[..end].to_vec();
        }
        let mut out = Vec::new();
        match self.inner.kind {
            TargetKind::Squares => push_while(&mut out, bound, |k| k.checked_mul(k)),
            TargetKind::Cubes => push_while(&mut out, bound, |k| k.checked_mul(k)?.checked_mul(k)),
            TargetKind::Triangular => {
                push_while(&mut out, bound, |k| Some(k.checked_mul(k + 1)? / 2))
            }
            TargetKind::Pentagonal => {
                let mut k: i64 = 1;
                loop {
                    let lo = k * (3 * k - 1) / 2;
                    if lo > bound {
                        break;
                    }
                    out.push(lo);
                    let hi = lo + k;
                    if hi > bound {
                        break;
                    }
                    out.push(hi);
                    k += 1;
                }
            }
            TargetKind::Primes => {
                let b = bound as u64;
                if b <= SIEVE_CEILING {
                    self.ensure_sieve(b);
                    let sieve = self.inner.sieve.read().expect("sieve lock");
                    out.extend((2..=b).filter(|&v| sieve.is_prime(v)).map(|v| v as i64));
                } else {
                    // Trial division above the sieve ceiling.
                    out.extend((2..=bound).filter(|&v| self.is_prime(v as u64)));
                }
            }
            _ => unreachable!("listed kinds handled above"),
        }
        out
    }

    /// Beads `y` in `1..=n`, `y != x`, with `x + y` a member.
    pub fn partners(&self, x: u32, n: u32) -> Vec<u32> {
        let x64 = i64::from(x);
        let hi = x64 + i64::from(n);
        self.values_upto(hi)
            .into_iter()
            .filter(|&m| m > x64)
            .map(|m| (m - x64) as u32)
            .filter(|&y| y != x)
            .collect()
    }

    fn ensure_sieve(&self, bound: u64) {
        if self.inner.sieve.read().expect("sieve lock").limit >= bound {
            return;
        }
        let mut guard = self.inner.sieve.write().expect("sieve lock");
        if guard.limit < bound {
            let target = bound.max(guard.limit.saturating_mul(2)).min(SIEVE_CEILING);
            *guard = Sieve::build(target.max(bound));
        }
    }

    fn is_prime(&self, m: u64) -> bool {
        if m <= SIEVE_CEILING {
            self.ensure_sieve(m.max(1024));
            return self.inner.sieve.read().expect("sieve lock").is_prime(m);
        }
        trial_division_is_prime(m)
    }
}

fn push_while(out: &mut Vec<i64>, bound: i64, term: impl Fn(i64) -> Option<i64>) {
    let mut k = 1;
    while let Some(v) = term(k) {
        if v > bound {
            break;
        }
        out.push(v);
        k += 1;
    }
}

/// Positive terms of x_{k+1} = x_k + x_{k-1}, sorted and deduplicated, up to 2^62.
fn recurrence_members(x0: i64, x1: i64) -> Vec<i64> {
    let mut terms = vec![x0, x1];
    let (mut a, mut b) = (x0, x1);
    while let Some(c) = a.checked_add(b) {
        if c > MAX_MEMBER {
            break;
        }
        terms.push(c);
        a = b;
        b = c;
    }
    terms.retain(|&v| v >= 1);
    terms.sort_unstable();
    terms.dedup();
    terms
}

/// Recurrence terms by index, not deduplicated: `x_0, x_1, x_2, ...` up to 2^62.
pub fn recurrence_terms(x0: i64, x1: i64) -> Vec<i64> {
    let mut terms = vec![x0, x1];
    let (mut a, mut b) = (x0, x1);
    while let Some(c) = a.checked_add(b) {
        if c > MAX_MEMBER {
            break;
        }
        terms.push(c);
        a = b;
        b = c;
    }
    terms
}

/// `F_k` with `F_0 = 0`, `F_1 = 1`. Valid for `k <= 91`.
pub fn fibonacci(k: usize) -> i64 {
    let (mut a, mut b) = (0i64, 1i64);
    for _ in 0..k {
        let c = a.checked_add(b).expect("Fibonacci index too large for i64");
        a = b;
        b = c;
    }
    a
}

/// `L_k` with `L_0 = 2`, `L_1 = 1`, so `L_2 = 3` and `L_3 = 4`.
pub fn lucas(k: usize) -> i64 {
    let (mut a, mut b) = (2i64, 1i64);
    for _ in 0..k {
        let c = a.checked_add(b).expect("Lucas index too large for i64");
        a = b;
        b = c;
    }
    a
}

pub fn isqrt(v: u128) -> u128 {
    if v < 2 {
        return v;
    }
    let mut x = (v as f64).sqrt() as u128;
    while x * x > v {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= v {
        x += 1;
    }
    x
}

pub fn is_square(v: u128) -> bool {
    let r = isqrt(v);
    r * r == v
}

pub fn icbrt(v: u64) -> u64 {
    let mut x = (v as f64).cbrt().round() as u64;
    while x > 0 && (x as u128).pow(3) > v as u128 {
        x -= 1;
    }
    while ((x + 1) as u128).pow(3) <= v as u128 {
        x += 1;
    }
    x
}

fn trial_division_is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    for p in [2u64, 3, 5] {
        if m.is_multiple_of(p) {
            return m == p;
        }
    }
    let mut d = 7u64;
    let mut step = [4u64, 2, 4, 2, 4, 6, 2, 6].iter().cycle();
    while (d as u128) * (d as u128) <= m as u128 {
        if m.is_multiple_of(d) {
            return false;
        }
        d += step.next().expect("cycle");
    }
    true
}

/// Odd-only bit sieve.
#[derive(Default)]
struct Sieve {
    limit: u64,
    composite_odd: Vec<u64>,
}

impl Sieve {
    fn build(limit: u64) -> Self {
        let slots = (limit / 2 + 1) as usize;
        let mut bits = vec![0u64; slots.div_ceil(64)];
        let mut i = 3u64;
        while i * i <= limit {
            let idx = (i / 2) as usize;
            if bits[idx / 64] >> (idx % 64) & 1 == 0 {
                let mut j = i * i;
                while j <= limit {
                    let jdx = (j / 2) as usize;
                    bits[jdx / 64] |= 1 << (jdx % 64);
                    j += 2 * i;
                }
            }
            i += 2;
        }
        Sieve {
            limit,
            composite_odd: bits,
        }
    }

    fn is_prime(&self, m: u64) -> bool {
        debug_assert!(m <= self.limit);
        if m < 2 {
            return false;
        }
        if m.is_multiple_of(2) {
            return m == 2;
        }
        let idx = (m / 2) as usize;
        self.composite_odd[idx / 64] >> (idx % 64) & 1 == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pentagonal_first_members() {
        let ts = TargetSet::pentagonal();
        assert_eq!(ts.values_upto(15), vec![1, 2, 5, 7, 12, 15]);
    }

    #[test]
    fn explicit_singleton() {
        let ts = TargetSet::explicit(vec![3]).unwrap();
        assert!(ts.contains(3));
        assert!(!ts.contains(4));
    }

    #[test]
    fn recurrence_four_five() {
        let ts = TargetSet::recurrence(4, 5).unwrap();
        assert_eq!(ts.values_upto(40), vec![4, 5, 9, 14, 23, 37]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            TargetSet::explicit(vec![]).unwrap_err(),
            TargetError::EmptyExplicit
        );
        assert_eq!(
            TargetSet::explicit(vec![3, 3]).unwrap_err(),
            TargetError::NotIncreasing { index: 1 }
        );
        assert_eq!(
            TargetSet::recurrence(0, 5).unwrap_err(),
            TargetError::NonPositive { value: 0 }
        );
        assert_eq!(
            TargetSet::recurrence(-2, 5).unwrap_err(),
            TargetError::NonPositive { value: -2 }
        );
        assert!(matches!(
            TargetSet::recurrence(7, 7),
            Err(TargetError::EqualSeeds { .. })
        ));
    }

    #[test]
    fn contains_examples() {
        assert!(TargetSet::fibonacci().contains(8));
        assert!(!TargetSet::squares().contains(24));
        assert!(TargetSet::triangular().contains(91));
        assert!(!TargetSet::squares().contains(0));
        assert!(!TargetSet::squares().contains(-4));
    }

    #[test]
    fn values_upto_examples() {
        assert_eq!(TargetSet::lucas().values_upto(12), vec![1, 3, 4, 7, 11]);
        assert_eq!(
            TargetSet::cubes().values_upto(1000),
            vec![1, 8, 27, 64, 125, 216, 343, 512, 729, 1000]
        );
        assert_eq!(TargetSet::squares().values_upto(4), vec![1, 4]);
    }

    #[test]
    fn partners_examples() {
        assert_eq!(TargetSet::fibonacci().partners(1, 11), vec![2, 4, 7]);
        assert_eq!(TargetSet::squares().partners(8, 16), vec![1]);
        assert_eq!(TargetSet::cubes().partners(256, 295), vec![87]);
    }

    #[test]
    fn lucas_indexing() {
        assert_eq!(lucas(2), 3);
        assert_eq!(lucas(3), 4);
        assert_eq!(fibonacci(0), 0);
        assert_eq!(fibonacci(1), 1);
        assert_eq!(fibonacci(8), 21);
    }

    #[test]
    fn recurrences_reach_two_pow_62_without_overflow() {
        for ts in [TargetSet::fibonacci(), TargetSet::lucas()] {
            let v = ts.values_upto(MAX_MEMBER);
            assert!(*v.last().unwrap() > MAX_MEMBER / 2);
            for w in v.windows(3) {
                assert_eq!(w[0] + w[1], w[2]);
            }
        }
    }

    #[test]
    fn primes_small_and_large() {
        let ts = TargetSet::primes();
        assert_eq!(ts.values_upto(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(ts.contains(1_000_000_007));
        assert!(!ts.contains(1_000_000_007 * 3));
        assert!(ts.contains(4_294_967_311)); // least prime above 2^32
    }

    #[test]
    fn kind_parses_and_displays() {
        for s in ["squares", "recurrence:4,5", "explicit:2,4,8,16", "lucas"] {
            let k: TargetKind = s.parse().unwrap();
            assert_eq!(k.to_string(), s);
        }
        assert!("hexagonal".parse::<TargetKind>().is_err());
        assert!("recurrence:1".parse::<TargetKind>().is_err());
    }
}
