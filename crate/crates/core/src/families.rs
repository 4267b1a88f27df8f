//! Graph generators used by tests, the acceptance corpus, and benchmarks:
//! structured families with known connectivity, seeded random graphs, and
//! planted-cut instances.

use crate::graph::{DirectedGraph, UndirectedGraph, VertexCut, VertexId};
use crate::rng::stream;
use rand::Rng;

pub fn path(n: usize) -> UndirectedGraph {
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    UndirectedGraph::from_edges(n, &edges).expect("n >= 1")
}

pub fn cycle(n: usize) -> UndirectedGraph {
    assert!(n >= 3);
    let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
    UndirectedGraph::from_edges(n, &edges).expect("n >= 3")
}

pub fn complete(n: usize) -> UndirectedGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    UndirectedGraph::from_edges(n, &edges).expect("n >= 1")
}

/// Complete bipartite graph with parts `{0..a}` and `{a..a+b}`.
pub fn complete_bipartite(a: usize, b: usize) -> UndirectedGraph {
    let mut edges = Vec::new();
    for u in 0..a {
        for v in 0..b {
            edges.push((u, a + v));
        }
    }
    UndirectedGraph::from_edges(a + b, &edges).expect("nonempty parts")
}

/// Star with center 0 and `leaves` leaves.
pub fn star(leaves: usize) -> UndirectedGraph {
    let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
    UndirectedGraph::from_edges(leaves + 1, &edges).expect("n >= 1")
}

/// Wheel: hub 0 joined to a cycle on `rim` vertices.
pub fn wheel(rim: usize) -> UndirectedGraph {
    assert!(rim >= 3);
    let mut edges: Vec<_> = (1..=rim).map(|v| (0, v)).collect();
    for i in 0..rim {
        edges.push((1 + i, 1 + (i + 1) % rim));
    }
    UndirectedGraph::from_edges(rim + 1, &edges).expect("n >= 4")
}

/// The Petersen graph: outer 5-cycle, inner pentagram, spokes.
pub fn petersen() -> UndirectedGraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, 5 + i));
    }
    UndirectedGraph::from_edges(10, &edges).expect("petersen")
}

/// `d`-dimensional hypercube on `2^d` vertices.
pub fn hypercube(d: u32) -> UndirectedGraph {
    let n = 1usize << d;
    let mut edges = Vec::new();
    for v in 0..n {
        for bit in 0..d {
            let w = v ^ (1 << bit);
            if v < w {
                edges.push((v, w));
            }
        }
    }
    UndirectedGraph::from_edges(n, &edges).expect("d >= 0")
}

/// Two cliques `K_a` sharing exactly one vertex, so the shared vertex is the
/// unique minimum separator.
pub fn barbell_through_vertex(a: usize) -> UndirectedGraph {
    assert!(a >= 2);
    let n = 2 * a - 1;
    let shared = a - 1;
    let mut edges = Vec::new();
    for u in 0..a {
        for v in (u + 1)..a {
            edges.push((u, v));
        }
    }
    for u in shared..n {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    UndirectedGraph::from_edges(n, &edges).expect("a >= 2")
}

pub fn directed_cycle(n: usize) -> DirectedGraph {
    assert!(n >= 2);
    let arcs: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
    DirectedGraph::from_edges(n, &arcs).expect("n >= 2")
}

pub fn complete_digraph(n: usize) -> DirectedGraph {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v {
                arcs.push((u, v));
            }
        }
    }
    DirectedGraph::from_edges(n, &arcs).expect("n >= 1")
}

/// Erdos-Renyi `G(n, p)`, seeded.
pub fn gnp(n: usize, p: f64, seed: u64) -> UndirectedGraph {
    let mut rng = stream(seed, &[0x67_6e_70]);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    UndirectedGraph::from_edges(n, &edges).expect("n >= 1")
}

/// Random digraph where each ordered pair is an arc with probability `p`.
pub fn gnp_directed(n: usize, p: f64, seed: u64) -> DirectedGraph {
    let mut rng = stream(seed, &[0x64_67_6e_70]);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                arcs.push((u, v));
            }
        }
    }
    DirectedGraph::from_edges(n, &arcs).expect("n >= 1")
}

/// Random tournament: exactly one arc per unordered pair.
pub fn tournament(n: usize, seed: u64) -> DirectedGraph {
    let mut rng = stream(seed, &[0x74_6f_75_72]);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(0.5) {
                arcs.push((u, v));
            } else {
                arcs.push((v, u));
            }
        }
    }
    DirectedGraph::from_edges(n, &arcs).expect("n >= 1")
}

/// A graph with a planted unbalanced vertex cut. Layout: `L = 0..l_size`,
/// `S = l_size..l_size+s_size`, `R` the rest. `L` and `L+S` are cliques, `S`
/// is a clique, each `S` vertex gets `s_r_edges` edges into `R`, and `R` is
/// internally dense. There is no `L`-`R` edge, so the planted separator has
/// size `s_size`, every vertex has degree at least `s_size + 1`, and all of
/// `S` stays low-degree relative to `8k`.
pub struct Planted {
    pub graph: UndirectedGraph,
    pub cut: VertexCut,
}

pub fn planted_unbalanced(l_size: usize, s_size: usize, r_size: usize, seed: u64) -> Planted {
    assert!(l_size >= 1 && s_size >= 1 && r_size >= 2);
    let n = l_size + s_size + r_size;
    let mut rng = stream(seed, &[0x70_6c_61_6e_74]);
    let mut edges = Vec::new();
    let left: Vec<VertexId> = (0..l_size).collect();
    let sep: Vec<VertexId> = (l_size..l_size + s_size).collect();
    let right: Vec<VertexId> = (l_size + s_size..n).collect();
    // L u S is a clique.
    for i in 0..l_size + s_size {
        for j in (i + 1)..l_size + s_size {
            edges.push((i, j));
        }
    }
    // Each separator vertex reaches a few R vertices.
    let s_r_edges = 4.min(r_size);
    for &s in &sep {
        for _ in 0..s_r_edges {
            edges.push((s, right[rng.gen_range(0..r_size)]));
        }
    }
    // R is dense enough that every R vertex has degree >= s_size + 4.
    let target = (s_size + 4).min(r_size - 1);
    for (i, &u) in right.iter().enumerate() {
        for d in 1..=target {
            edges.push((u, right[(i + d) % r_size]));
        }
    }
    let graph = UndirectedGraph::from_edges(n, &edges).expect("planted");
    Planted { graph, cut: VertexCut::new(left, sep, right) }
}

/// Directed planted cut: no arc from `L` to `R`, but `R` feeds back into `L`
/// so the digraph is strongly connected.
pub fn planted_unbalanced_directed(
    l_size: usize,
    s_size: usize,
    r_size: usize,
    seed: u64,
) -> (DirectedGraph, VertexCut) {
    assert!(l_size >= 1 && s_size >= 1 && r_size >= 2);
    let n = l_size + s_size + r_size;
    let mut rng = stream(seed, &[0x64_70_6c_61_6e_74]);
    let mut arcs = Vec::new();
    let left: Vec<VertexId> = (0..l_size).collect();
    let sep: Vec<VertexId> = (l_size..l_size + s_size).collect();
    let right: Vec<VertexId> = (l_size + s_size..n).collect();
    // L u S complete in both directions.
    for i in 0..l_size + s_size {
        for j in 0..l_size + s_size {
            if i != j {
                arcs.push((i, j));
            }
        }
    }
    // S -> R sparse, R -> S and R -> L for strong connectivity.
    let fan = 4.min(r_size);
    for &s in &sep {
        for _ in 0..fan {
            arcs.push((s, right[rng.gen_range(0..r_size)]));
        }
    }
    for &r in &right {
        arcs.push((r, sep[rng.gen_range(0..s_size)]));
        arcs.push((r, left[rng.gen_range(0..l_size)]));
    }
    // R internally dense in both directions.
    let target = (s_size + 4).min(r_size - 1);
    for (i, &u) in right.iter().enumerate() {
        for d in 1..=target {
            arcs.push((u, right[(i + d) % r_size]));
            arcs.push((right[(i + d) % r_size], u));
        }
    }
    let graph = DirectedGraph::from_edges(n, &arcs).expect("planted directed");
    (graph, VertexCut::new(left, sep, right))
}
