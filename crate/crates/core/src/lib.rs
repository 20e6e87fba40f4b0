//! Exact computation and verification of the refined Lassalle sequence
//! `A_{k+1}(l)`.
//!
//! The fast path is [`engine`], a memoized recursion over gap multisets.
//! [`orient`] and [`stacksort`] are independent brute-force oracles, and
//! [`sequence`] holds the reference sequences and the property checks.

pub mod chord;
pub mod engine;
pub mod error;
pub mod orient;
pub mod selftest;
pub mod sequence;
pub mod stacksort;

pub use chord::{crosses, crossing_graph, enumerate_matchings, Block, CrossingGraph, RootedPartition};
pub use engine::{
    canonicalize, evaluate, gaps_of, refinement_row, CanonicalKey, GapMultiset, MemoCache,
    PivotRule,
};
pub use error::{Error, Result};
pub use num_bigint;
pub use orient::{brute_a, brute_refinement_row, count_root_connected, tutte_at_1_0, Count};
pub use sequence::{
    catalan, is_log_concave, is_symmetric, is_unimodal, lassalle, sweep_check, SequenceReport,
    SweepReport, Verdict, Witness,
};
pub use stacksort::{preimage_count, stack_sort, uniquely_sorted_counts, Permutation};
