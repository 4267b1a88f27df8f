//! Shared instance generators for the criterion benchmarks.

use vconn::families;
use vconn::{DirectedGraph, UndirectedGraph};

/// Seeded random graphs spanning the densities used by the benchmarks.
pub fn undirected_corpus(n: usize) -> Vec<(String, UndirectedGraph)> {
    [0.1, 0.3, 0.6]
        .iter()
        .enumerate()
        .map(|(i, &p)| (format!("gnp-{n}-{p}"), families::gnp(n, p, 1000 + i as u64)))
        .collect()
}

pub fn directed_corpus(n: usize) -> Vec<(String, DirectedGraph)> {
    [0.2, 0.4]
        .iter()
        .enumerate()
        .map(|(i, &p)| (format!("dgnp-{n}-{p}"), families::gnp_directed(n, p, 2000 + i as u64)))
        .collect()
}
