//! Points on a circle, rooted partitions, crossings and crossing graphs.
//!
//! A [`RootedPartition`] of `{0, .., n-1}` consists of one distinguished root
//! block plus chords (blocks of size two). Points are placed clockwise on a
//! circle; two blocks cross when their polygons intersect.

use std::fmt;

use crate::error::{Error, Result};

/// A nonempty, strictly increasing set of point indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block(Vec<usize>);

impl Block {
    /// Builds a block from arbitrary-order elements. Duplicates and empty
    /// input are rejected.
    pub fn new(elements: impl Into<Vec<usize>>) -> Result<Self> {
        let mut elements = elements.into();
        if elements.is_empty() {
            return Err(Error::rejected("block must be nonempty"));
        }
        elements.sort_unstable();
        if elements.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::rejected(format!(
                "block has repeated elements: {elements:?}"
            )));
        }
        Ok(Block(elements))
    }

    /// A chord `{a, b}`, `a != b`.
    pub fn pair(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "chord endpoints must differ");
        Block(vec![a.min(b), a.max(b)])
    }

    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn max(&self) -> usize {
        *self.0.last().expect("blocks are nonempty")
    }

    fn is_disjoint(&self, other: &Block) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

/// Predicate deciding whether two disjoint blocks cross.
pub type CrossingPredicate = fn(&Block, &Block) -> bool;

/// Decides whether two disjoint blocks cross.
///
/// Walks the merged clockwise order of both blocks and counts how often the
/// owning block changes, cyclically. The polygons intersect exactly when the
/// owner alternates more than twice around the circle.
pub fn crosses(b1: &Block, b2: &Block) -> bool {
    debug_assert!(b1.is_disjoint(b2), "crossing test needs disjoint blocks");
    let (a, b) = (b1.elements(), b2.elements());
    if a.len() < 2 || b.len() < 2 {
        return false;
    }
    let (mut i, mut j) = (0, 0);
    let mut first = None;
    let mut last = None;
    let mut changes = 0usize;
    while i < a.len() || j < b.len() {
        let owner = if j == b.len() || (i < a.len() && a[i] < b[j]) {
            i += 1;
            0u8
        } else {
            j += 1;
            1u8
        };
        if let Some(prev) = last {
            if prev != owner {
                changes += 1;
                if changes > 2 {
                    return true;
                }
            }
        } else {
            first = Some(owner);
        }
        last = Some(owner);
    }
    if first != last {
        changes += 1;
    }
    changes > 2
}

/// Reference crossing test straight from the definition: some `i < j < k < l`
/// with `i, k` in one block and `j, l` in the other.
pub fn crosses_by_quartets(b1: &Block, b2: &Block) -> bool {
    let interleaves = |x: &Block, y: &Block| {
        x.elements().iter().any(|&i| {
            x.elements().iter().any(|&k| {
                i < k
                    && y.elements().iter().any(|&j| i < j && j < k)
                    && y.elements().iter().any(|&l| l > k)
            })
        })
    };
    interleaves(b1, b2) || interleaves(b2, b1)
}

/// One root block plus chords covering `{0, .., n-1}` exactly once.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootedPartition {
    n: usize,
    root: Block,
    pairs: Vec<Block>,
}

impl RootedPartition {
    pub fn new(n: usize, root: Block, pairs: Vec<Block>) -> Result<Self> {
        if pairs.iter().any(|p| p.len() != 2) {
            return Err(Error::rejected("non-root blocks must have exactly 2 elements"));
        }
        if root.len() + 2 * pairs.len() != n {
            return Err(Error::rejected(format!(
                "blocks cover {} points, expected n = {n}",
                root.len() + 2 * pairs.len()
            )));
        }
        let mut seen = vec![false; n];
        for &x in std::iter::once(&root).chain(&pairs).flat_map(|b| b.elements()) {
            if x >= n {
                return Err(Error::rejected(format!("point {x} outside [0, {n})")));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::rejected(format!("point {x} covered twice")));
            }
        }
        Ok(RootedPartition { n, root, pairs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> &Block {
        &self.root
    }

    pub fn pairs(&self) -> &[Block] {
        &self.pairs
    }

    /// Number of chords.
    pub fn k(&self) -> usize {
        self.pairs.len()
    }

    /// Block for vertex `v` of the crossing graph (0 is the root).
    pub fn block(&self, v: usize) -> &Block {
        if v == 0 {
            &self.root
        } else {
            &self.pairs[v - 1]
        }
    }
}

/// Simple undirected graph on `vertex_count` vertices with a designated root.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CrossingGraph {
    vertex_count: usize,
    root_vertex: usize,
    edges: Vec<(usize, usize)>,
}

impl CrossingGraph {
    /// Builds a graph from an edge list. Edges are normalized to `(lo, hi)`,
    /// sorted and deduplicated; self-loops and out-of-range ids are rejected.
    pub fn new(
        vertex_count: usize,
        root_vertex: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        if root_vertex >= vertex_count {
            return Err(Error::rejected(format!(
                "root vertex {root_vertex} outside [0, {vertex_count})"
            )));
        }
        let mut list = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::rejected(format!("self-loop at vertex {u}")));
            }
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::rejected(format!("edge ({u}, {v}) out of range")));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        list.dedup();
        Ok(CrossingGraph {
            vertex_count,
            root_vertex,
            edges: list,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn root_vertex(&self) -> usize {
        self.root_vertex
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// The same graph with a different designated root.
    pub fn with_root(&self, root_vertex: usize) -> Self {
        assert!(root_vertex < self.vertex_count);
        CrossingGraph {
            root_vertex,
            ..self.clone()
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0];
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    reached += 1;
                    stack.push(v);
                }
            }
        }
        reached == self.vertex_count
    }
}

/// Crossing graph of `p`: vertex 0 is the root block, vertex `i >= 1` is
/// `pairs[i - 1]`.
pub fn crossing_graph(p: &RootedPartition) -> CrossingGraph {
    crossing_graph_with(p, crosses)
}

/// [`crossing_graph`] under an arbitrary crossing predicate.
pub fn crossing_graph_with(p: &RootedPartition, pred: CrossingPredicate) -> CrossingGraph {
    let vertex_count = p.k() + 1;
    let mut edges = Vec::new();
    for u in 0..vertex_count {
        for v in u + 1..vertex_count {
            if pred(p.block(u), p.block(v)) {
                edges.push((u, v));
            }
        }
    }
    CrossingGraph {
        vertex_count,
        root_vertex: 0,
        edges,
    }
}

/// All partitions of `{0, .., n-1}` made of `root` plus chords on the
/// remaining points.
///
/// The order is fixed: the smallest free point is matched to each larger free
/// point in increasing order, recursively. There are `(n - |root| - 1)!!`
/// items.
pub fn enumerate_matchings(n: usize, root: &Block) -> Result<Matchings> {
    Matchings::new(n, root, None)
}

/// Stream over the matchings extending a root block. See
/// [`enumerate_matchings`].
#[derive(Clone, Debug)]
pub struct Matchings {
    n: usize,
    root: Block,
    free: Vec<usize>,
    // digits[i] picks the partner of the smallest free point at level i among
    // the 2(k - i) - 1 candidates.
    digits: Vec<usize>,
    fixed_first: bool,
    done: bool,
}

impl Matchings {
    fn new(n: usize, root: &Block, first: Option<usize>) -> Result<Self> {
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
        let free: Vec<usize> = (0..n).filter(|&x| !root.contains(x)).collect();
        let k = free.len() / 2;
        let mut digits = vec![0; k];
        if let Some(first) = first {
            if k == 0 || first >= 2 * k - 1 {
                return Err(Error::rejected(format!(
                    "first choice {first} out of range for k = {k}"
                )));
            }
            digits[0] = first;
        }
        Ok(Matchings {
            n,
            root: root.clone(),
            free,
            digits,
            fixed_first: first.is_some(),
            done: false,
        })
    }

    /// Number of choices for the partner of the smallest free point; the
    /// stream splits into this many disjoint chunks.
    pub fn first_choice_count(&self) -> usize {
        self.free.len().saturating_sub(1)
    }

    /// The sub-stream whose smallest free point is matched to its
    /// `first`-th candidate partner.
    pub fn chunk(n: usize, root: &Block, first: usize) -> Result<Self> {
        Matchings::new(n, root, Some(first))
    }

    fn current(&self) -> RootedPartition {
        let mut remaining = self.free.clone();
        let mut pairs = Vec::with_capacity(self.digits.len());
        for &d in &self.digits {
            let a = remaining.remove(0);
            let b = remaining.remove(d);
            pairs.push(Block::pair(a, b));
        }
        RootedPartition {
            n: self.n,
            root: self.root.clone(),
            pairs,
        }
    }

    fn advance(&mut self) {
        let k = self.digits.len();
        let stop = usize::from(self.fixed_first);
        for i in (stop..k).rev() {
            let radix = 2 * (k - i) - 1;
            if self.digits[i] + 1 < radix {
                self.digits[i] += 1;
                return;
            }
            self.digits[i] = 0;
        }
        self.done = true;
    }
}

impl Iterator for Matchings {
    type Item = RootedPartition;

    fn next(&mut self) -> Option<RootedPartition> {
        if self.done {
            return None;
        }
        let item = self.current();
        self.advance();
        Some(item)
    }
}

/// `(2j - 1)!!` for the number of perfect matchings on `2j` points.
pub fn matching_count(points: usize) -> u128 {
    assert!(points.is_multiple_of(2), "odd point count");
    (1..points as u128).step_by(2).product()
}
