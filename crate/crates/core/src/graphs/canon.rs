//! Brute-force canonical forms for small vertex-labelled graphs.

use std::fmt;

use super::Graph;
use crate::error::{check_cap, Result};

pub const MAX_CANON_VERTICES: usize = 8;

/// Canonical representative of a vertex-labelled graph on at most
/// [`MAX_CANON_VERTICES`] vertices.
///
/// Two inputs get equal keys iff some permutation of the vertices maps one onto
/// the other, edges and labels both. Keys order by vertex count, then edge
/// code, then label code.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey {
    n: u8,
    edges: u64,
    labels: u32,
}

#[inline]
fn pair_bit(u: usize, v: usize) -> u64 {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    1u64 << (a * MAX_CANON_VERTICES + b)
}

pub(crate) fn edge_code(g: &Graph) -> u64 {
    g.edges().fold(0, |acc, (u, v)| acc | pair_bit(u, v))
}

pub(crate) fn label_code(labels: &[u8]) -> u32 {
    labels
        .iter()
        .enumerate()
        .fold(0, |acc, (v, &t)| acc | (u32::from(t & 3) << (2 * v)))
}

fn permuted_edge_code(edges: &[(usize, usize)], perm: &[usize]) -> u64 {
    edges.iter().fold(0, |acc, &(u, v)| acc | pair_bit(perm[u], perm[v]))
}

pub(crate) fn permuted_label_code(labels: &[u8], perm: &[usize]) -> u32 {
    labels
        .iter()
        .enumerate()
        .fold(0, |acc, (v, &t)| acc | (u32::from(t & 3) << (2 * perm[v])))
}

/// Calls `f` on every permutation of `0..n` (Heap's algorithm).
pub(crate) fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    f(&perm);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            f(&perm);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Canonical key of `(h, labels)`; each label is a 2-bit tag.
pub fn canonical_labelled_form(h: &Graph, labels: &[u8]) -> Result<CanonicalKey> {
    let n = h.n();
    check_cap("vertex count for canonical form", n, MAX_CANON_VERTICES)?;
    assert_eq!(labels.len(), n, "one label per vertex");
    let edges: Vec<_> = h.edges().collect();
    let mut best: Option<(u64, u32)> = None;
    for_each_permutation(n, |perm| {
        let code = (permuted_edge_code(&edges, perm), permuted_label_code(labels, perm));
        if best.is_none_or(|b| code < b) {
            best = Some(code);
        }
    });
    let (edges, labels) = best.unwrap_or((0, 0));
    Ok(CanonicalKey {
        n: n as u8,
        edges,
        labels,
    })
}

/// All vertex permutations mapping `h` onto itself, identity first.
pub fn automorphisms(h: &Graph) -> Result<Vec<Vec<usize>>> {
    check_cap("vertex count for automorphisms", h.n(), MAX_CANON_VERTICES)?;
    let edges: Vec<_> = h.edges().collect();
    let code = edge_code(h);
    let mut out = Vec::new();
    for_each_permutation(h.n(), |perm| {
        if permuted_edge_code(&edges, perm) == code {
            out.push(perm.to_vec());
        }
    });
    Ok(out)
}

/// Smallest edge code over all relabellings, used to pick graph-class
/// representatives without touching labels.
pub(crate) fn canonical_edge_code(h: &Graph) -> u64 {
    let edges: Vec<_> = h.edges().collect();
    let mut best = u64::MAX;
    for_each_permutation(h.n(), |perm| {
        best = best.min(permuted_edge_code(&edges, perm));
    });
    best
}

impl CanonicalKey {
    /// Assembles a key from a representative already known to be canonical.
    pub(crate) fn from_parts(n: usize, edges: u64, labels: u32) -> Self {
        CanonicalKey {
            n: n as u8,
            edges,
            labels,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n as usize
    }

    /// Canonical edges `(u, v)`, `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.vertex_count();
        (0..n).flat_map(move |u| {
            (u + 1..n)
                .filter(move |&v| self.edges & pair_bit(u, v) != 0)
                .map(move |v| (u, v))
        })
    }

    pub fn labels(&self) -> Vec<u8> {
        (0..self.vertex_count())
            .map(|v| ((self.labels >> (2 * v)) & 3) as u8)
            .collect()
    }

    /// The canonical representative as a graph.
    pub fn graph(&self) -> Graph {
        let edges: Vec<_> = self.edges().collect();
        Graph::from_edges(self.vertex_count(), &edges).expect("canonical edges are simple")
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self.edges().map(|(u, v)| format!("{u}-{v}")).collect();
        let labels: Vec<String> = self.labels().iter().map(|t| t.to_string()).collect();
        write!(
            f,
            "n{}[{}|{}]",
            self.n,
            if edges.is_empty() { "-".into() } else { edges.join(" ") },
            labels.join(",")
        )
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
