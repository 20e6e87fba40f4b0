//! West's stack-sorting map and exhaustive preimage counting.
//!
//! `s(L n R) = s(L) s(R) n` where `n` is the largest entry. A permutation is
//! uniquely sorted when exactly one permutation sorts to it.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Largest length swept exhaustively unless the caller raises the bound.
pub const DEFAULT_EXHAUSTIVE_BOUND: usize = 9;

/// Hard ceiling for exhaustive sweeps; permutations are packed 4 bits per
/// entry into a `u64`.
pub const MAX_EXHAUSTIVE_LEN: usize = 15;

/// A permutation of `1..=n` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn new(entries: impl Into<Vec<u8>>) -> Result<Self> {
        let entries = entries.into();
        let n = entries.len();
        let mut seen = vec![false; n + 1];
        for &x in &entries {
            let x = x as usize;
            if x == 0 || x > n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::rejected(format!(
                    "{entries:?} is not a permutation of 1..={n}"
                )));
            }
        }
        Ok(Permutation(entries))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u8).collect())
    }

    pub fn entries(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u8::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Applies the stack-sorting map.
pub fn stack_sort(p: &Permutation) -> Permutation {
    let mut out = Vec::with_capacity(p.len());
    sort_into(p.entries(), &mut out, &mut Vec::with_capacity(p.len()));
    Permutation(out)
}

// Single pass with a stack that stays increasing from top to bottom: pop every
// smaller entry before pushing.
fn sort_into(entries: &[u8], out: &mut Vec<u8>, stack: &mut Vec<u8>) {
    stack.clear();
    for &x in entries {
        while let Some(&top) = stack.last() {
            if top > x {
                break;
            }
            out.push(top);
            stack.pop();
        }
        stack.push(x);
    }
    while let Some(top) = stack.pop() {
        out.push(top);
    }
}

fn check_bound(n: usize, bound: usize) -> Result<()> {
    if bound > MAX_EXHAUSTIVE_LEN {
        return Err(Error::rejected(format!(
            "exhaustive bound {bound} exceeds the supported maximum {MAX_EXHAUSTIVE_LEN}"
        )));
    }
    if n > bound {
        return Err(Error::rejected(format!(
            "length {n} exceeds the exhaustive bound {bound}"
        )));
    }
    Ok(())
}

/// `|s^{-1}(p)|` by sorting every permutation of the same length.
pub fn preimage_count(p: &Permutation) -> Result<u64> {
    preimage_count_bounded(p, DEFAULT_EXHAUSTIVE_BOUND)
}

pub fn preimage_count_bounded(p: &Permutation, bound: usize) -> Result<u64> {
    check_bound(p.len(), bound)?;
    let target = pack(p.entries());
    let counts = image_counts(p.len());
    Ok(counts.get(&target).copied().unwrap_or(0) as u64)
}

/// Entry `l - 1` counts the uniquely sorted permutations of length `n` whose
/// first entry is `l`. `n` must be odd.
pub fn uniquely_sorted_counts(n: usize) -> Result<Vec<u64>> {
    uniquely_sorted_counts_bounded(n, DEFAULT_EXHAUSTIVE_BOUND)
}

pub fn uniquely_sorted_counts_bounded(n: usize, bound: usize) -> Result<Vec<u64>> {
    if n.is_multiple_of(2) {
        return Err(Error::rejected(format!(
            "uniquely sorted permutations are tabulated for odd lengths only, got {n}"
        )));
    }
    check_bound(n, bound)?;
    let mut row = vec![0u64; n];
    for (image, count) in image_counts(n) {
        if count == 1 {
            let first = (image & 0xf) as usize;
            row[first - 1] += 1;
        }
    }
    Ok(row)
}

/// Packed image -> number of preimages, over all `n!` permutations.
///
/// The sweep is split by first entry and the partial tallies are summed.
fn image_counts(n: usize) -> HashMap<u64, u32> {
    if n == 0 {
        return HashMap::from([(0, 1)]);
    }
    let partials: Vec<HashMap<u64, u32>> = (1..=n as u8)
        .into_par_iter()
        .map(|first| {
            let mut counts = HashMap::new();
            let mut perm: Vec<u8> = std::iter::once(first)
                .chain((1..=n as u8).filter(|&x| x != first))
                .collect();
            let mut out = Vec::with_capacity(n);
            let mut stack = Vec::with_capacity(n);
            loop {
                out.clear();
                sort_into(&perm, &mut out, &mut stack);
                *counts.entry(pack(&out)).or_insert(0) += 1;
                if !next_permutation(&mut perm[1..]) {
                    break;
                }
            }
            counts
        })
        .collect();
    let mut merged: HashMap<u64, u32> = HashMap::new();
    for part in partials {
        for (k, v) in part {
            *merged.entry(k).or_insert(0) += v;
        }
    }
    merged
}

fn pack(entries: &[u8]) -> u64 {
    entries
        .iter()
        .rev()
        .fold(0u64, |acc, &x| (acc << 4) | x as u64)
}

/// Lexicographic successor in place; false after the last permutation.
fn next_permutation(xs: &mut [u8]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let Some(i) = (0..xs.len() - 1).rev().find(|&i| xs[i] < xs[i + 1]) else {
        return false;
    };
    let j = (i + 1..xs.len()).rev().find(|&j| xs[j] > xs[i]).expect("pivot has a successor");
    xs.swap(i, j);
    xs[i + 1..].reverse();
    true
}

/// Every permutation of `1..=n` in lexicographic order.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    let mut current: Option<Vec<u8>> = Some((1..=n as u8).collect());
    std::iter::from_fn(move || {
        let perm = current.take()?;
        let mut next = perm.clone();
        if next_permutation(&mut next) {
            current = Some(next);
        }
        Some(Permutation(perm))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(xs: &[u8]) -> Permutation {
        Permutation::new(xs.to_vec()).unwrap()
    }

    /// `s(L n R) = s(L) s(R) n`, verbatim.
    fn sort_by_recursion(xs: &[u8]) -> Vec<u8> {
        let Some(pos) = xs.iter().enumerate().max_by_key(|(_, &x)| x).map(|(i, _)| i) else {
            return Vec::new();
        };
        let mut out = sort_by_recursion(&xs[..pos]);
        out.extend(sort_by_recursion(&xs[pos + 1..]));
        out.push(xs[pos]);
        out
    }

    #[test]
    fn stack_sort_examples() {
        assert_eq!(stack_sort(&p(&[2, 3, 1])), p(&[2, 1, 3]));
        assert_eq!(stack_sort(&p(&[3, 2, 1])), p(&[1, 2, 3]));
        for n in 0..6 {
            assert_eq!(stack_sort(&Permutation::identity(n)), Permutation::identity(n));
        }
    }

    #[test]
    fn stack_pass_matches_recursive_definition() {
        for n in 0..=7 {
            for perm in all_permutations(n) {
                assert_eq!(stack_sort(&perm).entries(), &sort_by_recursion(perm.entries())[..]);
            }
        }
    }

    #[test]
    fn repeated_sorting_reaches_identity() {
        for n in 1..=7 {
            for perm in all_permutations(n) {
                let mut q = perm.clone();
                for _ in 0..n - 1 {
                    q = stack_sort(&q);
                }
                assert_eq!(q, Permutation::identity(n), "{perm}");
            }
        }
    }

    #[test]
    fn preimage_examples() {
        assert_eq!(preimage_count(&p(&[2, 1, 3])).unwrap(), 1);
        assert_eq!(preimage_count(&p(&[1, 2, 3])).unwrap(), 5);
        assert_eq!(preimage_count(&p(&[1, 3, 2])).unwrap(), 0);
    }

    #[test]
    fn preimage_counts_partition_the_domain() {
        for n in 0..=6usize {
            let total: u64 = all_permutations(n)
                .map(|q| preimage_count(&q).unwrap())
                .sum();
            assert_eq!(total, (1..=n as u64).product::<u64>());
        }
    }

    #[test]
    fn counts_examples() {
        assert_eq!(uniquely_sorted_counts(1).unwrap(), vec![1]);
        assert_eq!(uniquely_sorted_counts(3).unwrap(), vec![0, 1, 0]);
        assert_eq!(uniquely_sorted_counts(5).unwrap(), vec![0, 1, 3, 1, 0]);
    }

    #[test]
    fn guardrails() {
        assert!(matches!(uniquely_sorted_counts(4), Err(Error::Rejected(_))));
        assert!(matches!(uniquely_sorted_counts(11), Err(Error::Rejected(_))));
        assert!(uniquely_sorted_counts_bounded(17, 17).is_err());
        let long = Permutation::identity(10);
        assert!(matches!(preimage_count(&long), Err(Error::Rejected(_))));
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
    }

    #[test]
    fn permutation_listing_is_complete_and_sorted() {
        let all: Vec<_> = all_permutations(5).map(|q| q.entries().to_vec()).collect();
        assert_eq!(all.len(), 120);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }
}
