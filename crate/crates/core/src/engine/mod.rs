//! The fast engine for `A_{k+1}(S)`.
//!
//! `A_{k+1}(S)` depends only on the unordered multiset of cyclic gaps between
//! consecutive elements of `S`. A unit gap can be merged away without changing
//! the value, which gives a [`CanonicalKey`]: gaps sorted descending, no unit
//! gap unless a single gap remains.
//!
//! Evaluation walks the smallest gap down towards 1 while its partner gap grows
//! by the same amount. Each unit step changes the value by two sums of
//! `A_k` terms over keys with one more gap and one fewer chord. When the pivot
//! reaches 1 it merges away, leaving a key with one fewer gap. Both moves
//! strictly decrease `(k, m)`, so the recursion terminates, and every key is
//! memoized in a shared [`MemoCache`].

mod cache;

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::chord::Block;
use crate::error::{Error, Result};

pub use cache::MemoCache;

/// Unordered multiset of cyclic gaps of a root block on `n` points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GapMultiset {
    // Kept sorted descending so that equality is multiset equality.
    gaps: Vec<u32>,
}

impl GapMultiset {
    pub fn new(gaps: impl Into<Vec<u32>>) -> Result<Self> {
        let mut gaps = gaps.into();
        if gaps.is_empty() {
            return Err(Error::rejected("gap multiset must be nonempty"));
        }
        if gaps.contains(&0) {
            return Err(Error::rejected("gaps must be positive"));
        }
        let n: u64 = gaps.iter().map(|&g| g as u64).sum();
        if !(n - gaps.len() as u64).is_multiple_of(2) {
            return Err(Error::rejected(format!(
                "n - m = {} - {} is odd",
                n,
                gaps.len()
            )));
        }
        gaps.sort_unstable_by(|a, b| b.cmp(a));
        Ok(GapMultiset { gaps })
    }

    /// Gaps sorted descending.
    pub fn gaps(&self) -> &[u32] {
        &self.gaps
    }

    pub fn n(&self) -> u32 {
        self.gaps.iter().sum()
    }

    pub fn m(&self) -> u32 {
        self.gaps.len() as u32
    }

    pub fn k(&self) -> u32 {
        (self.n() - self.m()) / 2
    }
}

/// Memoization key: merged gap multiset, sorted descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u32>);

impl CanonicalKey {
    /// Validates an already-canonical gap list (descending, parity, no unit
    /// gap when `m >= 2`).
    pub fn new(gaps: impl Into<Vec<u32>>) -> Result<Self> {
        let gaps = gaps.into();
        let d = GapMultiset::new(gaps.clone())?;
        if d.gaps != gaps {
            return Err(Error::rejected("canonical gaps must be sorted descending"));
        }
        if gaps.len() >= 2 && gaps.contains(&1) {
            return Err(Error::rejected(
                "canonical key may only contain a unit gap when it has one part",
            ));
        }
        Ok(CanonicalKey(gaps))
    }

    pub fn gaps(&self) -> &[u32] {
        &self.0
    }

    pub fn n(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn m(&self) -> u32 {
        self.0.len() as u32
    }

    pub fn k(&self) -> u32 {
        (self.n() - self.m()) / 2
    }

    /// Canonical key of an arbitrary valid gap list, in place.
    fn from_raw(mut gaps: Vec<u32>) -> Self {
        merge_unit_gaps(&mut gaps);
        gaps.sort_unstable_by(|a, b| b.cmp(a));
        CanonicalKey(gaps)
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

fn merge_unit_gaps(gaps: &mut Vec<u32>) {
    while gaps.len() >= 2 {
        match gaps.iter().position(|&g| g == 1) {
            Some(i) => {
                gaps.swap_remove(i);
            }
            None => break,
        }
    }
}

/// Cyclic consecutive differences of the sorted root; the last one wraps
/// around, `(a_1 + n) - a_m`.
pub fn gaps_of(root: &Block, n: usize) -> Result<GapMultiset> {
    if root.max() >= n {
        return Err(Error::rejected(format!(
            "root {root} does not fit in [0, {n})"
        )));
    }
    if !(n - root.len()).is_multiple_of(2) {
        return Err(Error::rejected(format!(
            "n - |root| = {} is odd",
            n - root.len()
        )));
    }
    let a = root.elements();
    let mut gaps: Vec<u32> = a.windows(2).map(|w| (w[1] - w[0]) as u32).collect();
    gaps.push((a[0] + n - a[a.len() - 1]) as u32);
    GapMultiset::new(gaps)
}

/// Removes unit gaps while at least two gaps remain, then sorts descending.
pub fn canonicalize(d: &GapMultiset) -> CanonicalKey {
    CanonicalKey::from_raw(d.gaps.clone())
}

/// Which pair of gaps the recursion walks.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PivotRule {
    /// Shrink the smallest gap, grow the largest.
    #[default]
    SmallestLargest,
    /// Shrink the smallest gap, grow the second smallest.
    SmallestSecondSmallest,
}

/// `A_{k+1}` of a canonical key, using the default pivot rule.
pub fn evaluate(key: &CanonicalKey, cache: &MemoCache) -> BigUint {
    evaluate_with(key, cache, PivotRule::default())
}

/// `A_{k+1}` of a canonical key under the given pivot rule.
///
/// A cache must only ever be used with one rule; values agree across rules
/// but intermediate keys differ.
pub fn evaluate_with(key: &CanonicalKey, cache: &MemoCache, rule: PivotRule) -> BigUint {
    Evaluator { cache, rule }.value(key)
}

/// `(A_{k+1}(l))_{l = 1..2k+1}` from the roots `{0, l}` on `2k + 2` points.
///
/// Entries are computed in parallel on the current rayon pool.
pub fn refinement_row(k: u32, cache: &MemoCache) -> Vec<BigUint> {
    let n = 2 * k + 2;
    (1..n)
        .into_par_iter()
        .map(|l| evaluate(&CanonicalKey::from_raw(vec![l, n - l]), cache))
        .collect()
}

struct Evaluator<'a> {
    cache: &'a MemoCache,
    rule: PivotRule,
}

impl Evaluator<'_> {
    fn value(&self, key: &CanonicalKey) -> BigUint {
        if let Some(v) = self.cache.get(key) {
            return v;
        }
        let signed = self.compute(key.gaps());
        let value = match signed.sign() {
            Sign::Minus => panic!("negative value {signed} for key [{key}]"),
            _ => signed.magnitude().clone(),
        };
        self.cache.insert(key.clone(), value.clone());
        value
    }

    fn raw(&self, gaps: Vec<u32>) -> BigInt {
        BigInt::from(self.value(&CanonicalKey::from_raw(gaps)))
    }

    fn compute(&self, gaps: &[u32]) -> BigInt {
        let m = gaps.len();
        let n: u32 = gaps.iter().sum();
        let k = (n - m as u32) / 2;
        if k == 0 {
            return BigInt::one();
        }
        if m == 1 {
            return BigInt::zero();
        }
        // gaps is descending: smallest at m-1.
        let (pivot_at, partner_at) = match self.rule {
            PivotRule::SmallestLargest => (m - 1, 0),
            PivotRule::SmallestSecondSmallest => (m - 1, m - 2),
        };
        let pivot = gaps[pivot_at];
        let partner = gaps[partner_at];
        let rest: Vec<u32> = gaps
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != pivot_at && i != partner_at)
            .map(|(_, &g)| g)
            .collect();
        let with = |extra: &[u32]| {
            let mut v = Vec::with_capacity(rest.len() + extra.len());
            v.extend_from_slice(&rest);
            v.extend_from_slice(extra);
            v
        };

        let mut total = BigInt::zero();
        // Step t moves from (grow, shrink) = (partner + t, pivot - t) to
        // (grow + 1, shrink - 1).
        for t in 0..pivot - 1 {
            let grow = partner + t;
            let shrink = pivot - t;
            // Split shrink - 1 as c + (shrink - 1 - c), c in [1, shrink - 2].
            total -= self.split_sum(shrink - 1, |c, d| with(&[grow, c, d]));
            // Split grow as c + (grow - c), c in [1, grow - 1].
            total += self.split_sum(grow, |c, d| with(&[c, d, shrink - 1]));
        }
        // The pivot is now 1 and merges into its neighbour.
        total += self.raw(with(&[partner + pivot - 1]));
        total
    }

    /// `sum_{c=1}^{w-1} A(make(c, w - c))`, folding the `c <-> w - c`
    /// symmetry of the multiset.
    fn split_sum(&self, w: u32, make: impl Fn(u32, u32) -> Vec<u32>) -> BigInt {
        let mut sum = BigInt::zero();
        for c in 1..=w / 2 {
            let d = w - c;
            let v = self.raw(make(c, d));
            if c == d {
                sum += v;
            } else {
                sum += v * 2u32;
            }
        }
        sum
    }
}

/// All partitions of `n` into positive parts, each listed descending.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=max.min(n)).rev() {
            cur.push(p);
            go(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}
