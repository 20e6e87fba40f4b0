//! Root-connected orientations of crossing graphs.
//!
//! An orientation is root-connected when it is acyclic and the root is its
//! only source. Two independent counts are provided: a direct backtracking
//! search over edge directions, and the Tutte polynomial evaluated at
//! `(1, 0)` by deletion-contraction. They agree on connected graphs for any
//! choice of root.

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::chord::{crossing_graph_with, crosses, Block, CrossingGraph, CrossingPredicate, Matchings};
use crate::error::{Error, Result};

/// Arbitrary-precision count of combinatorial objects.
pub type Count = BigUint;

/// Number of acyclic orientations of `g` whose unique source is the root
/// vertex. Disconnected graphs give 0.
pub fn count_root_connected(g: &CrossingGraph) -> Count {
    Count::from(count_root_connected_u64(g))
}

pub(crate) fn count_root_connected_u64(g: &CrossingGraph) -> u64 {
    let n = g.vertex_count();
    assert!(n <= 64, "orientation search supports at most 64 vertices");
    if n == 1 {
        return 1;
    }
    let root = g.root_vertex();
    let mut remaining = vec![0u32; n];
    for &(u, v) in g.edges() {
        remaining[u] += 1;
        remaining[v] += 1;
    }
    if (0..n).any(|v| v != root && remaining[v] == 0) {
        return 0;
    }
    // Root edges first: their direction is forced, which seeds reachability
    // before the free choices start.
    let mut edges: Vec<(usize, usize)> = g.edges().to_vec();
    edges.sort_by_key(|&(u, v)| !(u == root || v == root));
    let mut search = OrientationSearch {
        root,
        edges,
        reach: vec![0u64; n],
        indegree: vec![0u32; n],
        remaining,
    };
    search.run(0)
}

struct OrientationSearch {
    root: usize,
    edges: Vec<(usize, usize)>,
    // reach[w] = bitset of vertices reachable from w by a nonempty directed path.
    reach: Vec<u64>,
    indegree: Vec<u32>,
    remaining: Vec<u32>,
}

impl OrientationSearch {
    fn run(&mut self, i: usize) -> u64 {
        if i == self.edges.len() {
            return 1;
        }
        let (u, v) = self.edges[i];
        self.remaining[u] -= 1;
        self.remaining[v] -= 1;
        let total = self.try_direct(i, u, v) + self.try_direct(i, v, u);
        self.remaining[u] += 1;
        self.remaining[v] += 1;
        total
    }

    fn try_direct(&mut self, i: usize, from: usize, to: usize) -> u64 {
        if to == self.root || self.reach[to] >> from & 1 == 1 {
            return 0;
        }
        // `from` is about to lose its last chance at an incoming edge.
        if from != self.root && self.remaining[from] == 0 && self.indegree[from] == 0 {
            return 0;
        }
        let saved = self.reach.clone();
        let gained = (1u64 << to) | self.reach[to];
        for w in 0..self.reach.len() {
            if w == from || self.reach[w] >> from & 1 == 1 {
                self.reach[w] |= gained;
            }
        }
        self.indegree[to] += 1;
        let count = self.run(i + 1);
        self.indegree[to] -= 1;
        self.reach = saved;
        count
    }
}

/// `T(g; 1, 0)` by deletion-contraction on the underlying multigraph.
///
/// Requires a connected graph.
pub fn tutte_at_1_0(g: &CrossingGraph) -> Result<Count> {
    if !g.is_connected() {
        return Err(Error::rejected(
            "Tutte evaluation at (1, 0) needs a connected graph",
        ));
    }
    let graph = MultiGraph {
        vertex_count: g.vertex_count(),
        edges: g.edges().to_vec(),
    };
    Ok(Count::from(graph.tutte_1_0()))
}

#[derive(Clone)]
struct MultiGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl MultiGraph {
    fn tutte_1_0(&self) -> u128 {
        // A loop contributes a factor y = 0.
        if self.edges.iter().any(|&(u, v)| u == v) {
            return 0;
        }
        if self.edges.is_empty() {
            return 1;
        }
        if let Some(bridge) = (0..self.edges.len()).find(|&e| self.is_bridge(e)) {
            // x = 1 times the contraction.
            return self.contract(bridge).tutte_1_0();
        }
        self.delete(0).tutte_1_0() + self.contract(0).tutte_1_0()
    }

    fn is_bridge(&self, e: usize) -> bool {
        let (s, t) = self.edges[e];
        let mut adj = vec![Vec::new(); self.vertex_count];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if i != e {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(u) = stack.pop() {
            if u == t {
                return false;
            }
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        true
    }

    fn delete(&self, e: usize) -> MultiGraph {
        let mut edges = self.edges.clone();
        edges.remove(e);
        MultiGraph {
            vertex_count: self.vertex_count,
            edges,
        }
    }

    /// Merges the endpoints of `e`; parallel copies of `e` become loops.
    fn contract(&self, e: usize) -> MultiGraph {
        let (keep, gone) = self.edges[e];
        let relabel = |x: usize| if x == gone { keep } else { x };
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e)
            .map(|(_, &(u, v))| (relabel(u), relabel(v)))
            .collect();
        MultiGraph {
            vertex_count: self.vertex_count,
            edges,
        }
    }
}

/// `A_{k+1}(root)` by brute force: the number of (matching, root-connected
/// orientation) pairs over all chord completions of `root` on
/// `|root| + 2k` points.
pub fn brute_a(root: &Block, k: usize) -> Result<Count> {
    brute_a_with(root, k, crosses)
}

/// [`brute_a`] under an arbitrary crossing predicate.
pub fn brute_a_with(root: &Block, k: usize, pred: CrossingPredicate) -> Result<Count> {
    let n = root.len() + 2 * k;
    if root.max() >= n {
        return Err(Error::rejected(format!(
            "root {root} does not fit in [0, {n})"
        )));
    }
    if k == 0 {
        return Ok(Count::from(1u32));
    }
    let chunks = Matchings::chunk(n, root, 0)?.first_choice_count();
    let total: u128 = (0..chunks)
        .into_par_iter()
        .map(|c| {
            Matchings::chunk(n, root, c)
                .expect("chunk index in range")
                .map(|p| count_root_connected_u64(&crossing_graph_with(&p, pred)) as u128)
                .sum::<u128>()
        })
        .sum();
    Ok(Count::from(total))
}

/// `(A_{k+1}(l))_{l = 1..2k+1}` by brute force over roots `{0, l}`.
pub fn brute_refinement_row(k: usize) -> Vec<Count> {
    brute_refinement_row_with(k, crosses)
}

pub fn brute_refinement_row_with(k: usize, pred: CrossingPredicate) -> Vec<Count> {
    if k == 0 {
        return vec![Count::from(1u32)];
    }
    (1..=2 * k + 1)
        .map(|l| {
            let root = Block::new(vec![0, l]).expect("distinct points");
            brute_a_with(&root, k, pred).expect("root fits by construction")
        })
        .collect()
}
