// Some helpers are used by only one of the test binaries that include this
// module.
#![allow(dead_code)]

//! Brute-force oracles shared by the integration suites. These stay
//! independent of the library's flow-based code paths: everything here is
//! subset enumeration plus breadth-first search.

use vconn::UndirectedGraph;

/// Size of the smallest vertex subset (excluding `s`, `t`) whose removal
/// disconnects `s` from `t`, by increasing-size subset enumeration.
pub fn min_st_separator_exhaustive(g: &UndirectedGraph, s: usize, t: usize) -> usize {
    let n = g.n();
    assert!(n <= 20, "exhaustive separator oracle is for tiny graphs");
    let others: Vec<usize> = (0..n).filter(|&v| v != s && v != t).collect();
    for size in 0..=others.len() {
        let mut found = None;
        subsets_of_size(others.len(), size, &mut |mask| {
            if found.is_none() && disconnects(g, s, t, &others, mask) {
                found = Some(());
            }
        });
        if found.is_some() {
            return size;
        }
    }
    unreachable!("adjacent terminals have no separator");
}

fn disconnects(g: &UndirectedGraph, s: usize, t: usize, others: &[usize], mask: u32) -> bool {
    let n = g.n();
    let mut removed = vec![false; n];
    for (i, &v) in others.iter().enumerate() {
        if mask >> i & 1 == 1 {
            removed[v] = true;
        }
    }
    let mut seen = vec![false; n];
    let mut stack = vec![s];
    seen[s] = true;
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if !removed[w] && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    !seen[t]
}

fn subsets_of_size(universe: usize, size: usize, visit: &mut impl FnMut(u32)) {
    if size == 0 {
        visit(0);
        return;
    }
    if size > universe {
        return;
    }
    // Gosper's hack over fixed-popcount masks.
    let mut mask: u32 = (1 << size) - 1;
    let limit: u32 = 1 << universe;
    while mask < limit {
        visit(mask);
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
        if c == 0 {
            break;
        }
    }
}

/// Every labeled graph on `n` vertices (one per edge-subset bitmask).
pub fn all_graphs(n: usize) -> impl Iterator<Item = UndirectedGraph> {
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
    let count = 1u32 << pairs.len();
    (0..count).map(move |mask| {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        UndirectedGraph::from_edges(n, &edges).expect("n >= 1")
    })
}
