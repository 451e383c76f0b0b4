//! Finite simple undirected graphs on vertices `0..n`.

mod canon;
mod generators;
mod io;

pub use canon::{automorphisms, canonical_labelled_form, CanonicalKey, MAX_CANON_VERTICES};
pub(crate) use canon::{canonical_edge_code, edge_code, label_code, permuted_label_code};
pub use generators::{
    disjoint_union, make_complete, make_complete_bipartite, make_cycle, make_empty, make_path,
    make_petersen, make_prism, make_random_regular, RANDOM_REGULAR_MAX_ATTEMPTS,
};
pub use io::{parse_edge_list, serialize_edge_list};

use crate::error::{Error, Result};

/// Bitset over `0..n`. Bits at or beyond `n` are always clear.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSubset {
    n: usize,
    words: Vec<u64>,
}

impl VertexSubset {
    pub fn empty(n: usize) -> Self {
        VertexSubset {
            n,
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    /// Builds from the low `n` bits of `mask`; requires `n <= 64`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 64);
        let mut s = Self::empty(n);
        if n > 0 {
            s.words[0] = mask & low_bits(n);
        }
        s
    }

    pub fn from_vertices(n: usize, vs: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(n);
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < self.n, "vertex {v} out of range 0..{}", self.n);
        self.words[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        if v < self.n {
            self.words[v / 64] &= !(1 << (v % 64));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    /// Low word; meaningful only when `n <= 64`.
    pub fn mask(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }
}

impl std::fmt::Debug for VertexSubset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub(crate) fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Simple undirected graph stored as per-vertex neighbour bitsets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<VertexSubset>,
}

impl Graph {
    /// `n` isolated vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![VertexSubset::empty(n); n],
        }
    }

    /// Rejects self-loops, out-of-range endpoints and repeated edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    pub(crate) fn try_add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::Usage(format!("edge {u}-{v} out of range for n={n}")));
        }
        if u == v {
            return Err(Error::Usage(format!("self-loop at {u}")));
        }
        if self.has_edge(u, v) {
            return Err(Error::Usage(format!("duplicate edge {u}-{v}")));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VertexSubset::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].contains(v)
    }

    pub fn neighbours(&self, v: usize) -> &VertexSubset {
        &self.adj[v]
    }

    /// Neighbour mask of `v`; requires `n <= 64`.
    pub fn neighbour_mask(&self, v: usize) -> u64 {
        debug_assert!(self.n() <= 64);
        self.adj[v].mask()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// First vertex whose degree is not `d`, if any.
    pub fn irregular_vertex(&self, d: usize) -> Option<usize> {
        (0..self.n()).find(|&v| self.degree(v) != d)
    }

    pub fn is_d_regular(&self, d: usize) -> bool {
        self.irregular_vertex(d).is_none()
    }

    /// Vertex sets of the connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<VertexSubset> {
        let n = self.n();
        let mut seen = VertexSubset::empty(n);
        let mut out = Vec::new();
        for start in 0..n {
            if seen.contains(start) {
                continue;
            }
            let mut comp = VertexSubset::empty(n);
            let mut stack = vec![start];
            seen.insert(start);
            while let Some(u) = stack.pop() {
                comp.insert(u);
                for w in self.adj[u].iter() {
                    if !seen.contains(w) {
                        seen.insert(w);
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Number of connected components of the induced subgraph `G[S]`.
    pub fn component_count(&self, s: &VertexSubset) -> usize {
        if self.n() <= 64 {
            return component_count_mask(|v| self.neighbour_mask(v), s.mask());
        }
        let mut remaining = s.clone();
        let mut count = 0;
        loop {
            let Some(start) = remaining.iter().next() else {
                break;
            };
            count += 1;
            let mut stack = vec![start];
            remaining.remove(start);
            while let Some(u) = stack.pop() {
                for w in self.adj[u].iter() {
                    if remaining.contains(w) {
                        remaining.remove(w);
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    /// True iff every component is a complete graph on exactly `k` vertices.
    pub fn is_union_of_complete(&self, k: usize) -> bool {
        if k == 0 {
            return self.n() == 0;
        }
        self.components().iter().all(|c| {
            c.len() == k && c.iter().all(|v| self.degree(v) == k - 1)
        })
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n());
        let mut g = Graph::new(self.n());
        for (u, v) in self.edges() {
            g.adj[perm[u]].insert(perm[v]);
            g.adj[perm[v]].insert(perm[u]);
        }
        g
    }

    /// Structural invariant check: symmetric, loop-free, in range.
    pub fn is_well_formed(&self) -> bool {
        let n = self.n();
        (0..n).all(|u| {
            self.adj[u].universe() == n
                && !self.adj[u].contains(u)
                && self.adj[u].iter().all(|v| self.adj[v].contains(u))
        })
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges().collect::<Vec<_>>())
    }
}

/// Component count of the subgraph induced by `set`, given neighbour masks.
/// Allocation-free flood fill over a 64-bit vertex mask.
#[inline]
pub(crate) fn component_count_mask(nbr: impl Fn(usize) -> u64, set: u64) -> usize {
    let mut remaining = set;
    let mut count = 0;
    while remaining != 0 {
        count += 1;
        let mut frontier = remaining & remaining.wrapping_neg();
        remaining &= !frontier;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = nbr(v) & remaining;
            remaining &= !fresh;
            frontier |= fresh;
        }
    }
    count
}
