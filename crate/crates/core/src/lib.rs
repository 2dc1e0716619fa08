//! Chains and necklaces: orderings of `1..=n` whose adjacent sums all lie in
//! a target set (squares, cubes, figurate numbers, Fibonacci or Lucas
//! numbers, primes, or a custom list), together with the billiard-table
//! constructions that produce arbitrarily long specimens.

pub mod billiards;
pub mod constructions;
pub mod fixtures;
pub mod search;
pub mod sumgraph;
pub mod targets;

pub use search::{Chain, Necklace, SearchConfig, SearchError};
pub use sumgraph::{verify_sequence, SumGraph, VerificationReport};
pub use targets::{TargetKind, TargetSet};
