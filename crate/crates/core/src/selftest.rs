//! Cross-module invariant suite at small scale (at most 8 points).
//!
//! Every brute-force path is parameterized by the crossing predicate so that a
//! broken predicate can be injected and caught.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::chord::{
    crosses_by_quartets, crossing_graph_with, enumerate_matchings, matching_count, Block,
    CrossingPredicate,
};
use crate::engine::{
    canonicalize, evaluate, evaluate_with, gaps_of, partitions, refinement_row, GapMultiset,
    MemoCache, PivotRule,
};
use crate::orient::{brute_a_with, brute_refinement_row_with, count_root_connected, tutte_at_1_0};
use crate::sequence::{
    is_log_concave, is_symmetric, is_unimodal, lassalle, sweep_check, sweep_domain,
};
use crate::stacksort::uniquely_sorted_counts;

const MAX_N: usize = 8;

/// The first invariant that did not hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfTestFailure {
    pub invariant: &'static str,
    pub detail: String,
}

type Check = fn(CrossingPredicate) -> Result<(), String>;

const CHECKS: &[(&str, Check)] = &[
    ("crossing-definition", crossing_definition),
    ("matching-count", matching_counts),
    ("greene-zaslavsky", greene_zaslavsky),
    ("root-independence", root_independence),
    ("oracle-equivalence", oracle_equivalence),
    ("pivot-independence", pivot_independence),
    ("merging-invariance", merging_invariance),
    ("row-symmetry-brute-force", row_symmetry),
    ("endpoint-zeros", endpoint_zeros),
    ("lassalle-totals", lassalle_totals),
    ("stacksort-agreement", stacksort_agreement),
    ("generalized-sweep", generalized_sweep),
    ("row-verdicts", row_verdicts),
    ("cache-round-trip", cache_round_trip),
];

/// Names of all invariants, in the order they run.
pub fn invariant_names() -> Vec<&'static str> {
    CHECKS.iter().map(|(name, _)| *name).collect()
}

/// Runs every invariant with the real crossing predicate.
pub fn run() -> Result<Vec<&'static str>, SelfTestFailure> {
    run_with(crate::chord::crosses)
}

/// Runs every invariant with `pred` standing in for the crossing test.
/// Stops at the first failure.
pub fn run_with(pred: CrossingPredicate) -> Result<Vec<&'static str>, SelfTestFailure> {
    let mut passed = Vec::new();
    for &(name, check) in CHECKS {
        check(pred).map_err(|detail| SelfTestFailure {
            invariant: name,
            detail,
        })?;
        passed.push(name);
    }
    Ok(passed)
}

fn subsets_with_zero(n: usize, size: usize) -> Vec<Block> {
    (0u32..1 << n)
        .filter(|m| m & 1 == 1 && m.count_ones() as usize == size)
        .map(|m| Block::new((0..n).filter(|i| m >> i & 1 == 1).collect::<Vec<_>>()).unwrap())
        .collect()
}

fn small_roots() -> impl Iterator<Item = (Block, usize)> {
    (1..=4usize).flat_map(|size| {
        (0..)
            .map(move |k| (size, k))
            .take_while(|&(size, k)| size + 2 * k <= MAX_N)
            .flat_map(|(size, k)| {
                subsets_with_zero(size + 2 * k, size)
                    .into_iter()
                    .map(move |root| (root, k))
            })
    })
}

fn crossing_definition(pred: CrossingPredicate) -> Result<(), String> {
    let n = MAX_N;
    for m1 in 1u32..1 << n {
        let rest = !m1 & ((1 << n) - 1);
        let mut m2 = rest;
        while m2 > 0 {
            let x = Block::new((0..n).filter(|i| m1 >> i & 1 == 1).collect::<Vec<_>>()).unwrap();
            let y = Block::new((0..n).filter(|i| m2 >> i & 1 == 1).collect::<Vec<_>>()).unwrap();
            let got = pred(&x, &y);
            if got != pred(&y, &x) {
                return Err(format!("not symmetric on {x}, {y}"));
            }
            if got != crosses_by_quartets(&x, &y) {
                return Err(format!("disagrees with the quartet definition on {x}, {y}"));
            }
            m2 = (m2 - 1) & rest;
        }
    }
    Ok(())
}

fn matching_counts(_: CrossingPredicate) -> Result<(), String> {
    for (root, k) in small_roots() {
        let n = root.len() + 2 * k;
        let got = enumerate_matchings(n, &root).map_err(|e| e.to_string())?.count();
        if got as u128 != matching_count(2 * k) {
            return Err(format!("root {root} on {n} points: {got} matchings"));
        }
    }
    Ok(())
}

fn two_point_graphs(
    pred: CrossingPredicate,
) -> impl Iterator<Item = crate::chord::CrossingGraph> {
    (1..MAX_N / 2).flat_map(move |k| {
        let n = 2 * k + 2;
        (1..n).flat_map(move |l| {
            enumerate_matchings(n, &Block::pair(0, l))
                .expect("valid root")
                .map(move |p| crossing_graph_with(&p, pred))
        })
    })
}

fn greene_zaslavsky(pred: CrossingPredicate) -> Result<(), String> {
    for g in two_point_graphs(pred) {
        for r in 0..g.vertex_count() {
            let g = g.with_root(r);
            let direct = count_root_connected(&g);
            let agrees = match tutte_at_1_0(&g) {
                Ok(t) => t == direct,
                Err(_) => direct.is_zero(),
            };
            if !agrees {
                return Err(format!("graph {:?} rooted at {r}", g.edges()));
            }
        }
    }
    Ok(())
}

fn root_independence(pred: CrossingPredicate) -> Result<(), String> {
    for g in two_point_graphs(pred).filter(|g| g.is_connected()) {
        let base = count_root_connected(&g);
        if (1..g.vertex_count()).any(|r| count_root_connected(&g.with_root(r)) != base) {
            return Err(format!("graph {:?}", g.edges()));
        }
    }
    Ok(())
}

fn oracle_equivalence(pred: CrossingPredicate) -> Result<(), String> {
    let cache = MemoCache::new();
    for (root, k) in small_roots() {
        let n = root.len() + 2 * k;
        let key = canonicalize(&gaps_of(&root, n).map_err(|e| e.to_string())?);
        let fast = evaluate(&key, &cache);
        let slow = brute_a_with(&root, k, pred).map_err(|e| e.to_string())?;
        if fast != slow {
            return Err(format!("root {root}, k = {k}: engine {fast}, brute force {slow}"));
        }
    }
    Ok(())
}

fn all_keys(max_n: u32) -> Vec<GapMultiset> {
    (1..=max_n)
        .flat_map(partitions)
        .filter_map(|g| GapMultiset::new(g).ok())
        .collect()
}

fn pivot_independence(_: CrossingPredicate) -> Result<(), String> {
    let (a, b) = (MemoCache::new(), MemoCache::new());
    for d in all_keys(MAX_N as u32) {
        let key = canonicalize(&d);
        let x = evaluate_with(&key, &a, PivotRule::SmallestLargest);
        let y = evaluate_with(&key, &b, PivotRule::SmallestSecondSmallest);
        if x != y {
            return Err(format!("key [{key}]: {x} vs {y}"));
        }
    }
    Ok(())
}

/// Root `{0, d1, d1 + d2, ...}` realizing the gap list in the given order.
pub fn root_from_gaps(gaps: &[u32]) -> Block {
    let mut elements = vec![0usize];
    for &g in &gaps[..gaps.len() - 1] {
        elements.push(elements.last().unwrap() + g as usize);
    }
    Block::new(elements).expect("positive gaps give distinct points")
}

fn merging_invariance(pred: CrossingPredicate) -> Result<(), String> {
    let cache = MemoCache::new();
    for d in all_keys(MAX_N as u32 - 1) {
        let mut with_unit = d.gaps().to_vec();
        with_unit.push(1);
        let merged = GapMultiset::new(with_unit.clone()).expect("adds one to n and m");
        let (x, y) = (
            evaluate(&canonicalize(&d), &cache),
            evaluate(&canonicalize(&merged), &cache),
        );
        if x != y {
            return Err(format!("{:?} vs {:?}: {x} vs {y}", d.gaps(), with_unit));
        }
        let k = d.k() as usize;
        let bx = brute_a_with(&root_from_gaps(d.gaps()), k, pred).map_err(|e| e.to_string())?;
        let by = brute_a_with(&root_from_gaps(&with_unit), k, pred).map_err(|e| e.to_string())?;
        if bx != by {
            return Err(format!(
                "brute force {:?} vs {:?}: {bx} vs {by}",
                d.gaps(),
                with_unit
            ));
        }
    }
    Ok(())
}

fn row_symmetry(pred: CrossingPredicate) -> Result<(), String> {
    for k in 0..MAX_N / 2 {
        let row = brute_refinement_row_with(k, pred);
        if !is_symmetric(&row).holds() {
            return Err(format!("k = {k}: {row:?}"));
        }
    }
    Ok(())
}

fn endpoint_zeros(pred: CrossingPredicate) -> Result<(), String> {
    let cache = MemoCache::new();
    for k in 1..MAX_N / 2 {
        let row = refinement_row(k as u32, &cache);
        let brute = brute_refinement_row_with(k, pred);
        for r in [&row, &brute] {
            if !r[0].is_zero() || !r[2 * k].is_zero() {
                return Err(format!("k = {k}: {r:?}"));
            }
        }
    }
    Ok(())
}

fn lassalle_totals(pred: CrossingPredicate) -> Result<(), String> {
    let cache = MemoCache::new();
    for k in 0..MAX_N / 2 {
        let want = lassalle(k as u64 + 1);
        let fast: BigUint = refinement_row(k as u32, &cache).iter().sum();
        let slow: BigUint = brute_refinement_row_with(k, pred).iter().sum();
        if fast != want || slow != want {
            return Err(format!(
                "k = {k}: recurrence {want}, engine {fast}, brute force {slow}"
            ));
        }
    }
    Ok(())
}

fn stacksort_agreement(pred: CrossingPredicate) -> Result<(), String> {
    let cache = MemoCache::new();
    for k in 0..MAX_N / 2 {
        let perms: Vec<BigUint> = uniquely_sorted_counts(2 * k + 1)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(BigUint::from)
            .collect();
        let fast = refinement_row(k as u32, &cache);
        let slow = brute_refinement_row_with(k, pred);
        if perms != fast || perms != slow {
            return Err(format!(
                "k = {k}: stack-sorting {perms:?}, engine {fast:?}, brute force {slow:?}"
            ));
        }
    }
    Ok(())
}

fn generalized_sweep(_: CrossingPredicate) -> Result<(), String> {
    let cache = MemoCache::new();
    for (d0, w) in sweep_domain(MAX_N as u32) {
        let report = sweep_check(&d0, w, &cache).map_err(|e| e.to_string())?;
        if !report.holds() {
            return Err(format!("D0 = {d0:?}, w = {w}: {:?}", report.values));
        }
    }
    Ok(())
}

fn row_verdicts(_: CrossingPredicate) -> Result<(), String> {
    let cache = MemoCache::new();
    for k in 0..=(MAX_N as u32) {
        let row = refinement_row(k, &cache);
        for (name, v) in [
            ("symmetric", is_symmetric(&row)),
            ("unimodal", is_unimodal(&row)),
            ("log-concave", is_log_concave(&row)),
        ] {
            if !v.holds() {
                return Err(format!("k = {k} not {name}: {v:?}"));
            }
        }
    }
    Ok(())
}

fn cache_round_trip(_: CrossingPredicate) -> Result<(), String> {
    let cache = MemoCache::new();
    for k in 0..=(MAX_N as u32) {
        refinement_row(k, &cache);
    }
    let mut buf = Vec::new();
    cache.save(&mut buf).map_err(|e| e.to_string())?;
    let loaded = MemoCache::load(&buf[..]).map_err(|e| e.to_string())?;
    if loaded != cache {
        return Err(format!("{} entries saved, {} loaded", cache.len(), loaded.len()));
    }
    Ok(())
}
