//! Workloads shared by the criterion benches.

use lassalle_core::engine::{refinement_row, MemoCache};
use lassalle_core::num_bigint::BigUint;
use lassalle_core::orient::brute_refinement_row;
use lassalle_core::stacksort::uniquely_sorted_counts;

/// Row `k` from an empty cache.
pub fn cold_row(k: u32) -> Vec<BigUint> {
    refinement_row(k, &MemoCache::new())
}

/// Rows `0..=max_k` sharing one cache, as `verify` does.
pub fn warm_rows(max_k: u32) -> usize {
    let cache = MemoCache::new();
    for k in 0..=max_k {
        refinement_row(k, &cache);
    }
    cache.len()
}

pub fn matching_row(k: usize) -> Vec<BigUint> {
    brute_refinement_row(k)
}

pub fn stacksort_row(k: usize) -> Vec<u64> {
    uniquely_sorted_counts(2 * k + 1).expect("within the default bound")
}
