//! Ground-truth vertex connectivity for tests and acceptance checks: an
//! all-pairs maxflow oracle and an independent exhaustive subset-enumeration
//! oracle for tiny graphs.

use crate::graph::{
    cut_from_separator, directed_cut_from_separator, ConnectivityResult, DirectedGraph,
    UndirectedGraph, VertexCut,
};
use crate::maxflow::{st_vertex_connectivity, st_vertex_connectivity_directed, FlowCtx, FlowTracker};
use crate::{Error, Result};
use rayon::prelude::*;

/// Exact connectivity result with a witness cut (or the complete sentinel).
pub type OracleResult = ConnectivityResult;

fn disconnected_cut(g: &UndirectedGraph) -> VertexCut {
    let (comp, _) = g.components();
    let left: Vec<_> = (0..g.n()).filter(|&v| comp[v] == comp[0]).collect();
    let right: Vec<_> = (0..g.n()).filter(|&v| comp[v] != comp[0]).collect();
    VertexCut::new(left, Vec::new(), right)
}

fn not_strongly_connected_cut(g: &DirectedGraph) -> VertexCut {
    directed_cut_from_separator(g, &[]).expect("not strongly connected")
}

/// Exact undirected vertex connectivity by maxflow. Fixes a minimum-degree
/// vertex `s0` and tries `s` over `{s0} u N(s0)` (some choice avoids the
/// minimum separator), minimizing over all non-neighbors `t`.
pub fn oracle_vertex_connectivity(g: &UndirectedGraph) -> Result<OracleResult> {
    let n = g.n();
    if n < 2 {
        return Err(Error::InvalidQuery("oracle needs n >= 2".into()));
    }
    if g.is_complete() {
        return Ok(ConnectivityResult::complete(n));
    }
    if !g.is_connected() {
        return Ok(ConnectivityResult::cut(disconnected_cut(g)));
    }
    let s0 = g.min_degree_vertex();
    let mut sources = vec![s0];
    sources.extend_from_slice(g.neighbors(s0));
    let results: Vec<(usize, Vec<usize>)> = sources
        .par_iter()
        .flat_map_iter(|&s| {
            let tracker = FlowTracker::new();
            let mut best: Option<(usize, Vec<usize>)> = None;
            for t in 0..n {
                if t == s || g.has_edge(s, t) {
                    continue;
                }
                let r = st_vertex_connectivity(g, s, t, FlowCtx::new(&tracker))
                    .expect("non-adjacent pair");
                if best.as_ref().is_none_or(|(v, _)| r.value < *v) {
                    best = Some((r.value, r.separator));
                }
            }
            best.into_iter()
        })
        .collect();
    let (_, separator) = results
        .into_iter()
        .min_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)))
        .expect("non-complete graph has a non-adjacent pair");
    let cut = cut_from_separator(g, &separator).expect("minimum separator disconnects");
    Ok(ConnectivityResult::cut(cut))
}

/// Exact directed vertex connectivity: minimum over all ordered non-adjacent
/// pairs of the s->t vertex connectivity.
pub fn oracle_directed(g: &DirectedGraph) -> Result<OracleResult> {
    let n = g.n();
    if n < 2 {
        return Err(Error::InvalidQuery("oracle needs n >= 2".into()));
    }
    if g.is_complete() {
        return Ok(ConnectivityResult::complete(n));
    }
    if !g.is_strongly_connected() {
        return Ok(ConnectivityResult::cut(not_strongly_connected_cut(g)));
    }
    let results: Vec<(usize, Vec<usize>)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|s| {
            let tracker = FlowTracker::new();
            let mut best: Option<(usize, Vec<usize>)> = None;
            for t in 0..n {
                if t == s || g.has_arc(s, t) {
                    continue;
                }
                let r = st_vertex_connectivity_directed(g, s, t, FlowCtx::new(&tracker))
                    .expect("non-adjacent pair");
                if best.as_ref().is_none_or(|(v, _)| r.value < *v) {
                    best = Some((r.value, r.separator));
                }
            }
            best.into_iter()
        })
        .collect();
    let (_, separator) = results
        .into_iter()
        .min_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)))
        .expect("non-complete digraph has a non-adjacent ordered pair");
    let cut = directed_cut_from_separator(g, &separator).expect("minimum separator splits");
    Ok(ConnectivityResult::cut(cut))
}

const EXHAUSTIVE_LIMIT: usize = 12;

fn undirected_disconnected_by(g: &UndirectedGraph, removed_mask: u32) -> bool {
    let n = g.n();
    let Some(first) = (0..n).find(|&v| removed_mask >> v & 1 == 0) else {
        return false;
    };
    let mut seen = 1u32 << first;
    let mut stack = vec![first];
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if removed_mask >> w & 1 == 0 && seen >> w & 1 == 0 {
                seen |= 1 << w;
                stack.push(w);
            }
        }
    }
    seen.count_ones() as usize + removed_mask.count_ones() as usize != n
}

fn directed_not_strong_by(g: &DirectedGraph, removed_mask: u32) -> bool {
    let n = g.n();
    let survivors: Vec<usize> = (0..n).filter(|&v| removed_mask >> v & 1 == 0).collect();
    if survivors.len() < 2 {
        return false;
    }
    // Reach from the first survivor forward and backward.
    for forward in [true, false] {
        let mut seen = 1u32 << survivors[0];
        let mut stack = vec![survivors[0]];
        while let Some(u) = stack.pop() {
            let nbrs = if forward { g.out_neighbors(u) } else { g.in_neighbors(u) };
            for &w in nbrs {
                if removed_mask >> w & 1 == 0 && seen >> w & 1 == 0 {
                    seen |= 1 << w;
                    stack.push(w);
                }
            }
        }
        if seen.count_ones() as usize != survivors.len() {
            return true;
        }
    }
    false
}

fn exhaustive_search<F>(n: usize, disconnects: F) -> Option<Vec<usize>>
where
    F: Fn(u32) -> bool,
{
    // Increasing-size subset enumeration; the first hit is a minimum separator.
    for size in 0..=n.saturating_sub(2) {
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize == size && disconnects(mask) {
                return Some((0..n).filter(|&v| mask >> v & 1 == 1).collect());
            }
        }
    }
    None
}

/// Independent second oracle: smallest vertex subset whose removal
/// disconnects the graph, by increasing-size subset enumeration. `n <= 12`.
pub fn oracle_exhaustive(g: &UndirectedGraph) -> Result<OracleResult> {
    let n = g.n();
    if n > EXHAUSTIVE_LIMIT {
        return Err(Error::TooLarge(n));
    }
    if n < 2 {
        return Err(Error::InvalidQuery("oracle needs n >= 2".into()));
    }
    match exhaustive_search(n, |mask| undirected_disconnected_by(g, mask)) {
        Some(sep) => {
            let cut = cut_from_separator(g, &sep).expect("separator verified");
            Ok(ConnectivityResult::cut(cut))
        }
        None => Ok(ConnectivityResult::complete(n)),
    }
}

/// Directed exhaustive oracle for `n <= 12`.
pub fn oracle_exhaustive_directed(g: &DirectedGraph) -> Result<OracleResult> {
    let n = g.n();
    if n > EXHAUSTIVE_LIMIT {
        return Err(Error::TooLarge(n));
    }
    if n < 2 {
        return Err(Error::InvalidQuery("oracle needs n >= 2".into()));
    }
    match exhaustive_search(n, |mask| directed_not_strong_by(g, mask)) {
        Some(sep) => {
            let cut = directed_cut_from_separator(g, &sep).expect("separator verified");
            Ok(ConnectivityResult::cut(cut))
        }
        None => Ok(ConnectivityResult::complete(n)),
    }
}
