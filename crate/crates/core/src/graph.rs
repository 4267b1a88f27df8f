//! Immutable simple-graph representations, vertex cuts, and basic structure
//! queries (components, strong components, articulation vertices).
//!
//! Vertices are dense indices in `[0, n)`. Parsing ([`crate::io`]) remaps
//! arbitrary input labels onto this range and keeps the label table around
//! for output. Graphs are immutable after construction and safe to share
//! across threads.

use crate::{Error, Result};

/// Dense vertex index in `[0, n)`.
pub type VertexId = usize;

/// Simple undirected graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndirectedGraph {
    adj: Vec<Vec<VertexId>>,
    m: usize,
}

impl UndirectedGraph {
    /// Builds a graph on `n` vertices from an edge list. Self-loops and
    /// duplicate edges are dropped; endpoints out of range are an error.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidQuery(format!(
                    "edge ({u}, {v}) out of range for n = {n}"
                )));
            }
            if u == v {
                continue;
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut m = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            m += list.len();
        }
        Ok(Self { adj, m: m / 2 })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub(crate) fn adjacency(&self) -> &[Vec<VertexId>] {
        &self.adj
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn min_degree_vertex(&self) -> VertexId {
        (0..self.n()).min_by_key(|&v| self.degree(v)).expect("non-empty graph")
    }

    /// True iff `m = n(n-1)/2`.
    pub fn is_complete(&self) -> bool {
        self.m == self.n() * (self.n() - 1) / 2
    }

    /// Connected component labels and component count.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let n = self.n();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = count;
            stack.push(start);
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    pub fn is_connected(&self) -> bool {
        self.components().1 == 1
    }

    /// Contracts `T` into a single new vertex, dropping parallel edges and
    /// self-loops. Returns the contracted graph and the id of the merged
    /// vertex (always the last index). Surviving vertices keep their
    /// relative order.
    pub fn contract_set(&self, t: &[VertexId]) -> Result<(UndirectedGraph, VertexId)> {
        if t.is_empty() {
            return Err(Error::InvalidQuery("contract_set: empty vertex set".into()));
        }
        let n = self.n();
        let mut in_t = vec![false; n];
        for &v in t {
            if v >= n {
                return Err(Error::InvalidQuery(format!("contract_set: vertex {v} out of range")));
            }
            in_t[v] = true;
        }
        let survivors: Vec<VertexId> = (0..n).filter(|&v| !in_t[v]).collect();
        let new_n = survivors.len() + 1;
        let merged = new_n - 1;
        let mut remap = vec![merged; n];
        for (new_id, &v) in survivors.iter().enumerate() {
            remap[v] = new_id;
        }
        let mut edges = Vec::with_capacity(self.m);
        for (u, v) in self.edges() {
            let (a, b) = (remap[u], remap[v]);
            if a != b {
                edges.push((a, b));
            }
        }
        Ok((UndirectedGraph::from_edges(new_n, &edges)?, merged))
    }

    /// Smallest-id articulation vertex, if any. Linear-time lowlink search.
    pub fn articulation_vertex(&self) -> Option<VertexId> {
        let n = self.n();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut is_cut = vec![false; n];
        let mut timer = 0;
        // Iterative DFS keeping (vertex, parent, next-neighbor-index).
        let mut stack: Vec<(usize, usize, usize)> = Vec::new();
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            let mut root_children = 0;
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            stack.push((root, usize::MAX, 0));
            while let Some(&mut (u, parent, ref mut next)) = stack.last_mut() {
                if *next < self.adj[u].len() {
                    let w = self.adj[u][*next];
                    *next += 1;
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        if u == root {
                            root_children += 1;
                        }
                        stack.push((w, u, 0));
                    } else if w != parent {
                        low[u] = low[u].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&mut (p, _, _)) = stack.last_mut() {
                        low[p] = low[p].min(low[u]);
                        if p != root && low[u] >= disc[p] {
                            is_cut[p] = true;
                        }
                    }
                }
            }
            if root_children > 1 {
                is_cut[root] = true;
            }
        }
        (0..n).find(|&v| is_cut[v])
    }
}

/// Simple directed graph with sorted out- and in-adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedGraph {
    out_adj: Vec<Vec<VertexId>>,
    in_adj: Vec<Vec<VertexId>>,
    m: usize,
}

impl DirectedGraph {
    /// Builds a digraph on `n` vertices from an arc list, dropping self-loops
    /// and duplicate arcs.
    pub fn from_edges(n: usize, arcs: &[(VertexId, VertexId)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(u, v) in arcs {
            if u >= n || v >= n {
                return Err(Error::InvalidQuery(format!(
                    "arc ({u}, {v}) out of range for n = {n}"
                )));
            }
            if u == v {
                continue;
            }
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        let mut m = 0;
        for list in &mut out_adj {
            list.sort_unstable();
            list.dedup();
            m += list.len();
        }
        for list in &mut in_adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self { out_adj, in_adj, m })
    }

    pub fn n(&self) -> usize {
        self.out_adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn out_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.out_adj[v]
    }

    pub(crate) fn out_adjacency(&self) -> &[Vec<VertexId>] {
        &self.out_adj
    }

    pub fn in_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.in_adj[v]
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.in_adj[v].len()
    }

    pub fn has_arc(&self, u: VertexId, v: VertexId) -> bool {
        self.out_adj[u].binary_search(&v).is_ok()
    }

    /// Sorted arc list.
    pub fn arcs(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n() {
            for &v in &self.out_adj[u] {
                out.push((u, v));
            }
        }
        out
    }

    pub fn reverse(&self) -> DirectedGraph {
        DirectedGraph {
            out_adj: self.in_adj.clone(),
            in_adj: self.out_adj.clone(),
            m: self.m,
        }
    }

    /// True iff every ordered pair is an arc.
    pub fn is_complete(&self) -> bool {
        self.m == self.n() * (self.n() - 1)
    }

    /// Strongly connected component labels and component count.
    pub fn sccs(&self) -> (Vec<usize>, usize) {
        // Iterative Tarjan.
        let n = self.n();
        let mut index = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut on_stack = vec![false; n];
        let mut comp = vec![usize::MAX; n];
        let mut scc_stack: Vec<usize> = Vec::new();
        let mut count = 0;
        let mut timer = 0;
        let mut call: Vec<(usize, usize)> = Vec::new();
        for root in 0..n {
            if index[root] != usize::MAX {
                continue;
            }
            call.push((root, 0));
            index[root] = timer;
            low[root] = timer;
            timer += 1;
            scc_stack.push(root);
            on_stack[root] = true;
            while let Some(&mut (u, ref mut next)) = call.last_mut() {
                if *next < self.out_adj[u].len() {
                    let w = self.out_adj[u][*next];
                    *next += 1;
                    if index[w] == usize::MAX {
                        index[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        scc_stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[u] = low[u].min(index[w]);
                    }
                } else {
                    if low[u] == index[u] {
                        while let Some(w) = scc_stack.pop() {
                            on_stack[w] = false;
                            comp[w] = count;
                            if w == u {
                                break;
                            }
                        }
                        count += 1;
                    }
                    call.pop();
                    if let Some(&mut (p, _)) = call.last_mut() {
                        low[p] = low[p].min(low[u]);
                    }
                }
            }
        }
        (comp, count)
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.sccs().1 == 1
    }
}

/// A vertex cut `(L, S, R)`: a partition of the vertex set with `L, R`
/// nonempty and no edge (directed: no arc) from `L` to `R`. `S` is the
/// separator and may be empty for disconnected inputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexCut {
    pub left: Vec<VertexId>,
    pub separator: Vec<VertexId>,
    pub right: Vec<VertexId>,
}

impl VertexCut {
    pub fn new(mut left: Vec<VertexId>, mut separator: Vec<VertexId>, mut right: Vec<VertexId>) -> Self {
        left.sort_unstable();
        separator.sort_unstable();
        right.sort_unstable();
        Self { left, separator, right }
    }

    pub fn size(&self) -> usize {
        self.separator.len()
    }
}

/// Side assignment used when checking a cut against a graph.
fn cut_sides(n: usize, cut: &VertexCut) -> Option<Vec<u8>> {
    if cut.left.is_empty() || cut.right.is_empty() {
        return None;
    }
    if cut.left.len() + cut.separator.len() + cut.right.len() != n {
        return None;
    }
    let mut side = vec![0u8; n];
    for (vs, tag) in [(&cut.left, 1u8), (&cut.separator, 2), (&cut.right, 3)] {
        for &v in vs.iter() {
            if v >= n || side[v] != 0 {
                return None;
            }
            side[v] = tag;
        }
    }
    Some(side)
}

/// True iff `cut` is a valid vertex cut of `g`: `L, S, R` partition the
/// vertices, `L` and `R` are nonempty, and no edge joins `L` and `R`.
pub fn validate_vertex_cut(g: &UndirectedGraph, cut: &VertexCut) -> bool {
    let Some(side) = cut_sides(g.n(), cut) else {
        return false;
    };
    for &u in &cut.left {
        for &w in g.neighbors(u) {
            if side[w] == 3 {
                return false;
            }
        }
    }
    true
}

/// Directed variant: no arc may leave `L` into `R`.
pub fn validate_directed_cut(g: &DirectedGraph, cut: &VertexCut) -> bool {
    let Some(side) = cut_sides(g.n(), cut) else {
        return false;
    };
    for &u in &cut.left {
        for &w in g.out_neighbors(u) {
            if side[w] == 3 {
                return false;
            }
        }
    }
    true
}

/// Builds the cut induced by a separator candidate, or `None` when removing
/// `separator` leaves the rest of `g` connected (the set is not a separator).
/// `L` is the component of the smallest remaining vertex.
pub fn cut_from_separator(g: &UndirectedGraph, separator: &[VertexId]) -> Option<VertexCut> {
    let n = g.n();
    let mut removed = vec![false; n];
    for &v in separator {
        removed[v] = true;
    }
    let first = (0..n).find(|&v| !removed[v])?;
    let mut seen = vec![false; n];
    let mut stack = vec![first];
    seen[first] = true;
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if !removed[w] && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    let left: Vec<_> = (0..n).filter(|&v| seen[v]).collect();
    let right: Vec<_> = (0..n).filter(|&v| !removed[v] && !seen[v]).collect();
    if right.is_empty() {
        return None;
    }
    Some(VertexCut::new(left, separator.to_vec(), right))
}

/// Directed analogue: valid when `g` minus `separator` is not strongly
/// connected. `R` is taken as a source strong component, so no arc enters it
/// from the rest.
pub fn directed_cut_from_separator(g: &DirectedGraph, separator: &[VertexId]) -> Option<VertexCut> {
    let n = g.n();
    let mut removed = vec![false; n];
    for &v in separator {
        removed[v] = true;
    }
    let survivors: Vec<VertexId> = (0..n).filter(|&v| !removed[v]).collect();
    if survivors.len() < 2 {
        return None;
    }
    let mut local = vec![usize::MAX; n];
    for (i, &v) in survivors.iter().enumerate() {
        local[v] = i;
    }
    let arcs: Vec<(usize, usize)> = g
        .arcs()
        .into_iter()
        .filter(|&(u, v)| !removed[u] && !removed[v])
        .map(|(u, v)| (local[u], local[v]))
        .collect();
    let sub = DirectedGraph::from_edges(survivors.len(), &arcs).ok()?;
    let (comp, count) = sub.sccs();
    if count < 2 {
        return None;
    }
    // Components with no incoming arc from outside are sources; pick the one
    // containing the smallest vertex for determinism.
    let mut has_in = vec![false; count];
    for (u, v) in sub.arcs() {
        if comp[u] != comp[v] {
            has_in[comp[v]] = true;
        }
    }
    let source_comp = (0..survivors.len())
        .find(|&i| !has_in[comp[i]])
        .map(|i| comp[i])
        .expect("condensation has a source");
    let right: Vec<_> = survivors.iter().copied().filter(|&v| comp[local[v]] == source_comp).collect();
    let left: Vec<_> = survivors.iter().copied().filter(|&v| comp[local[v]] != source_comp).collect();
    if left.is_empty() {
        return None;
    }
    Some(VertexCut::new(left, separator.to_vec(), right))
}

/// Result of a connectivity computation: `kappa` plus either a witness cut
/// or the complete-graph sentinel (complete graphs admit no vertex cut and
/// have `kappa = n - 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectivityResult {
    pub kappa: usize,
    pub witness: Witness,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Cut(VertexCut),
    Complete,
}

impl ConnectivityResult {
    pub fn cut(cut: VertexCut) -> Self {
        Self { kappa: cut.size(), witness: Witness::Cut(cut) }
    }

    pub fn complete(n: usize) -> Self {
        Self { kappa: n - 1, witness: Witness::Complete }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn from_edges_dedupes_and_drops_loops() {
        let g = UndirectedGraph::from_edges(2, &[(0, 1), (0, 1), (0, 0)]).unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.m(), 1);
        assert_eq!(g.neighbors(0), &[1]);
    }

    #[test]
    fn empty_graph_rejected() {
        assert!(matches!(UndirectedGraph::from_edges(0, &[]), Err(Error::EmptyGraph)));
    }

    #[test]
    fn validate_cut_on_cycle() {
        let c4 = families::cycle(4);
        let cut = VertexCut::new(vec![0], vec![1, 3], vec![2]);
        assert!(validate_vertex_cut(&c4, &cut));
    }

    #[test]
    fn validate_rejects_crossing_edge() {
        let tri = families::complete(3);
        let cut = VertexCut::new(vec![0], vec![1], vec![2]);
        assert!(!validate_vertex_cut(&tri, &cut));
    }

    #[test]
    fn empty_separator_valid_when_disconnected() {
        let g = UndirectedGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let cut = VertexCut::new(vec![0, 1], vec![], vec![2, 3]);
        assert!(validate_vertex_cut(&g, &cut));
    }

    #[test]
    fn contract_path_interior() {
        let p4 = families::path(4);
        let (g, merged) = p4.contract_set(&[1, 2]).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 2);
        assert_eq!(merged, 2);
        assert_eq!(g.degree(merged), 2);
    }

    #[test]
    fn contract_triangle_to_edge() {
        let tri = families::complete(3);
        let (g, _) = tri.contract_set(&[0, 1]).unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));
    }

    #[test]
    fn contract_c6_antipodal() {
        let c6 = families::cycle(6);
        let (g, merged) = c6.contract_set(&[0, 3]).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.degree(merged), 4);
    }

    #[test]
    fn contract_empty_set_errors() {
        let p4 = families::path(4);
        assert!(p4.contract_set(&[]).is_err());
    }

    #[test]
    fn complete_detection() {
        assert!(families::complete(5).is_complete());
        let mut edges = families::complete(5).edges();
        edges.pop();
        assert!(!UndirectedGraph::from_edges(5, &edges).unwrap().is_complete());
        assert!(UndirectedGraph::from_edges(1, &[]).unwrap().is_complete());
    }

    #[test]
    fn articulation_on_path_and_cycle() {
        assert_eq!(families::path(4).articulation_vertex(), Some(1));
        assert_eq!(families::cycle(5).articulation_vertex(), None);
        assert_eq!(families::barbell_through_vertex(4).articulation_vertex(), Some(3));
    }

    #[test]
    fn scc_cycle_vs_path() {
        let cyc = families::directed_cycle(4);
        assert!(cyc.is_strongly_connected());
        let path = DirectedGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.sccs().1, 3);
        assert!(!path.is_strongly_connected());
    }

    #[test]
    fn directed_cut_from_separator_source_side() {
        // 0 -> 1 -> 2 -> 0 plus 2 -> 3 -> 0: removing {0, 2} strands 1 and 3.
        let g = DirectedGraph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 0)]).unwrap();
        let cut = directed_cut_from_separator(&g, &[0, 2]).unwrap();
        assert_eq!(cut.separator, vec![0, 2]);
        assert!(validate_directed_cut(&g, &cut));
    }
}
