//! Nagamochi-Ibaraki sparse k-connectivity certificate.
//!
//! A single scan-first (maximum-adjacency) search partitions the edges into
//! forests `F_1, F_2, ...`; the union of the first `k` forests is a subgraph
//! `H` with at most `n * k` edges that preserves every vertex cut of size
//! less than `k`, so `min(kappa_H, k) = min(kappa_G, k)`.

use crate::graph::{UndirectedGraph, VertexId};
use crate::Result;
use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// A `k`-connectivity certificate: subgraph on the same vertex set.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub graph: UndirectedGraph,
    pub k: usize,
}

/// Assigns each edge its forest index via scan-first search: vertices are
/// scanned in order of how many scanned neighbors they already have (ties to
/// the lowest id), and the edge from scanned `u` to unscanned `w` lands in
/// forest `r(w) + 1`.
fn forest_indices(g: &UndirectedGraph) -> Vec<(VertexId, VertexId, usize)> {
    let n = g.n();
    let mut r = vec![0usize; n];
    let mut scanned = vec![false; n];
    let mut assigned = Vec::with_capacity(g.m());
    // Lazy max-heap keyed by (r, lowest id); stale entries are skipped.
    let mut heap: BinaryHeap<(usize, Reverse<VertexId>)> = (0..n).map(|v| (0, Reverse(v))).collect();
    while let Some((key, Reverse(u))) = heap.pop() {
        if scanned[u] || key != r[u] {
            continue;
        }
        scanned[u] = true;
        for &w in g.neighbors(u) {
            if !scanned[w] {
                assigned.push((u, w, r[w] + 1));
                r[w] += 1;
                heap.push((r[w], Reverse(w)));
            }
        }
    }
    assigned
}

/// Union of the first `k` scan-first forests of `g`.
pub fn k_certificate(g: &UndirectedGraph, k: usize) -> Result<Certificate> {
    assert!(k >= 1, "certificate parameter must be positive");
    let edges: Vec<(VertexId, VertexId)> = forest_indices(g)
        .into_iter()
        .filter(|&(_, _, f)| f <= k)
        .map(|(u, w, _)| (u, w))
        .collect();
    Ok(Certificate { graph: UndirectedGraph::from_edges(g.n(), &edges)?, k })
}
