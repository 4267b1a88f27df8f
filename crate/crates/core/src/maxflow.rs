//! Unit-vertex-capacity s-t maxflow via vertex splitting.
//!
//! Every query graph is turned into a split network: a non-terminal vertex
//! `v` becomes `v_in -> v_out` with capacity 1, terminals stay unsplit
//! (unbounded), and each edge becomes unbounded arcs between the split
//! halves. The maxflow value is then the maximum number of internally
//! vertex-disjoint paths (Menger), and the minimum separator falls out of
//! residual reachability: a vertex belongs to the separator exactly when its
//! in-node is reached but its out-node is not.
//!
//! The blocking-flow engine sits behind [`FlowEngine`] so an alternative
//! maxflow can be swapped in; [`FlowTracker`] accumulates the sizes of every
//! query graph for the instance-size accounting checks.

use crate::graph::{DirectedGraph, UndirectedGraph, VertexId};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

/// Totals over all maxflow invocations recorded by one tracker.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowStats {
    pub calls: u64,
    pub total_vertices: u64,
    pub total_edges: u64,
}

/// Accumulates query-graph sizes across maxflow calls. Safe to share between
/// worker threads; totals are order-independent.
#[derive(Debug, Default)]
pub struct FlowTracker {
    calls: AtomicU64,
    vertices: AtomicU64,
    edges: AtomicU64,
    log: Option<Mutex<Vec<(u64, u64)>>>,
}

impl FlowTracker {
    pub fn new() -> Self {
        Self::default()
    }

    /// Tracker that also keeps a per-call `(vertices, edges)` log, for the
    /// CSV accounting report.
    pub fn with_log() -> Self {
        Self { log: Some(Mutex::new(Vec::new())), ..Self::default() }
    }

    fn record(&self, n: usize, m: usize) {
        self.calls.fetch_add(1, Ordering::Relaxed);
        self.vertices.fetch_add(n as u64, Ordering::Relaxed);
        self.edges.fetch_add(m as u64, Ordering::Relaxed);
        if let Some(log) = &self.log {
            log.lock().expect("tracker log").push((n as u64, m as u64));
        }
    }

    pub fn snapshot(&self) -> FlowStats {
        FlowStats {
            calls: self.calls.load(Ordering::Relaxed),
            total_vertices: self.vertices.load(Ordering::Relaxed),
            total_edges: self.edges.load(Ordering::Relaxed),
        }
    }

    pub fn call_log(&self) -> Option<Vec<(u64, u64)>> {
        self.log.as_ref().map(|l| l.lock().expect("tracker log").clone())
    }
}

/// Selectable maxflow engine. Dinic blocking flow is the default; the
/// reduction is parametric in this choice.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FlowEngine {
    #[default]
    Dinic,
}

/// Engine selection plus the stats sink, passed to every flow query.
#[derive(Clone, Copy)]
pub struct FlowCtx<'a> {
    pub engine: FlowEngine,
    pub tracker: &'a FlowTracker,
}

impl<'a> FlowCtx<'a> {
    pub fn new(tracker: &'a FlowTracker) -> Self {
        Self { engine: FlowEngine::Dinic, tracker }
    }

    pub fn with_engine(engine: FlowEngine, tracker: &'a FlowTracker) -> Self {
        Self { engine, tracker }
    }
}

/// Outcome of a terminal connectivity query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatorResult {
    /// Maximum number of internally vertex-disjoint terminal-to-terminal paths.
    pub value: usize,
    /// A minimum separator realizing `value`, sorted.
    pub separator: Vec<VertexId>,
    /// Vertices on the source side of the cut (contains the source
    /// terminals); its neighborhood in the query graph is exactly `separator`.
    pub source_side: Vec<VertexId>,
}

const INF: u32 = 1 << 30;

/// Flat residual network for blocking-flow computations.
struct ResidualNet {
    to: Vec<u32>,
    cap: Vec<u32>,
    first: Vec<Vec<u32>>,
}

impl ResidualNet {
    fn new(n: usize) -> Self {
        Self { to: Vec::new(), cap: Vec::new(), first: vec![Vec::new(); n] }
    }

    fn add_arc(&mut self, u: usize, v: usize, cap: u32) {
        let id = self.to.len() as u32;
        self.to.push(v as u32);
        self.cap.push(cap);
        self.to.push(u as u32);
        self.cap.push(0);
        self.first[u].push(id);
        self.first[v].push(id + 1);
    }

    fn n(&self) -> usize {
        self.first.len()
    }
}

fn dinic(net: &mut ResidualNet, s: usize, t: usize) -> usize {
    let n = net.n();
    let mut level = vec![u32::MAX; n];
    let mut iter = vec![0usize; n];
    let mut queue = VecDeque::new();
    let mut flow = 0usize;
    loop {
        // BFS level graph on the residual network.
        level.iter_mut().for_each(|l| *l = u32::MAX);
        level[s] = 0;
        queue.clear();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &a in &net.first[u] {
                let v = net.to[a as usize] as usize;
                if net.cap[a as usize] > 0 && level[v] == u32::MAX {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        if level[t] == u32::MAX {
            return flow;
        }
        iter.iter_mut().for_each(|i| *i = 0);
        // Iterative DFS augmentation along the level graph.
        let mut path: Vec<u32> = Vec::new();
        'outer: loop {
            let u = path.last().map_or(s, |&a| net.to[a as usize] as usize);
            if u == t {
                let bottleneck = path.iter().map(|&a| net.cap[a as usize]).min().expect("path nonempty");
                for &a in &path {
                    net.cap[a as usize] -= bottleneck;
                    net.cap[(a ^ 1) as usize] += bottleneck;
                }
                flow += bottleneck as usize;
                // Retreat to the first saturated arc on the path.
                let cutoff = path
                    .iter()
                    .position(|&a| net.cap[a as usize] == 0)
                    .expect("bottleneck arc saturated");
                path.truncate(cutoff);
                continue;
            }
            while iter[u] < net.first[u].len() {
                let a = net.first[u][iter[u]];
                let v = net.to[a as usize] as usize;
                if net.cap[a as usize] > 0 && level[v] == level[u] + 1 {
                    path.push(a);
                    continue 'outer;
                }
                iter[u] += 1;
            }
            // Dead end: disable the vertex for this phase and backtrack.
            level[u] = u32::MAX;
            match path.pop() {
                Some(_) => continue,
                None => break,
            }
        }
    }
}

/// Split network plus the bookkeeping needed to map results back to the
/// query graph.
struct SplitNetwork {
    net: ResidualNet,
    terminal: Vec<u8>, // 0 plain, 1 source set, 2 sink set
    src: usize,
    dst: usize,
    n: usize,
}

impl SplitNetwork {
    /// `in`-node of a vertex; terminals are unsplit.
    fn in_node(&self, v: usize) -> usize {
        2 * v
    }

    fn out_node(&self, v: usize) -> usize {
        if self.terminal[v] == 0 {
            2 * v + 1
        } else {
            2 * v
        }
    }

    fn with_terminals(n: usize, a: &[VertexId], b: &[VertexId]) -> Result<Self> {
        let mut terminal = vec![0u8; n];
        for &v in a {
            if v >= n {
                return Err(Error::InvalidQuery(format!("terminal {v} out of range")));
            }
            terminal[v] = 1;
        }
        for &v in b {
            if v >= n {
                return Err(Error::InvalidQuery(format!("terminal {v} out of range")));
            }
            if terminal[v] == 1 {
                return Err(Error::InvalidQuery(format!("terminal {v} on both sides")));
            }
            terminal[v] = 2;
        }
        let src = 2 * n;
        let dst = 2 * n + 1;
        let mut split = Self { net: ResidualNet::new(2 * n + 2), terminal, src, dst, n };
        for v in 0..n {
            match split.terminal[v] {
                0 => {
                    let (i, o) = (split.in_node(v), split.out_node(v));
                    split.net.add_arc(i, o, 1);
                }
                1 => split.net.add_arc(src, 2 * v, INF),
                _ => split.net.add_arc(2 * v, dst, INF),
            }
        }
        Ok(split)
    }

    fn add_graph_arc(&mut self, u: usize, v: usize) {
        let (uo, vi) = (self.out_node(u), self.in_node(v));
        self.net.add_arc(uo, vi, INF);
    }

    /// Runs the selected engine and extracts the separator and source side
    /// from residual reachability.
    fn solve(mut self, engine: FlowEngine) -> SeparatorResult {
        let value = match engine {
            FlowEngine::Dinic => dinic(&mut self.net, self.src, self.dst),
        };
        let mut reached = vec![false; self.net.n()];
        let mut queue = VecDeque::new();
        reached[self.src] = true;
        queue.push_back(self.src);
        while let Some(u) = queue.pop_front() {
            for &a in &self.net.first[u] {
                let v = self.net.to[a as usize] as usize;
                if self.net.cap[a as usize] > 0 && !reached[v] {
                    reached[v] = true;
                    queue.push_back(v);
                }
            }
        }
        let mut separator = Vec::new();
        let mut source_side = Vec::new();
        for v in 0..self.n {
            if self.terminal[v] == 0 && reached[self.in_node(v)] && !reached[self.out_node(v)] {
                separator.push(v);
            } else if reached[self.out_node(v)] {
                source_side.push(v);
            }
        }
        debug_assert_eq!(separator.len(), value);
        SeparatorResult { value, separator, source_side }
    }
}

fn check_st(n: usize, s: VertexId, t: VertexId) -> Result<()> {
    if s >= n || t >= n {
        return Err(Error::InvalidQuery(format!("terminal out of range (n = {n})")));
    }
    if s == t {
        return Err(Error::InvalidQuery("source and sink coincide".into()));
    }
    Ok(())
}

/// Maximum number of internally vertex-disjoint s-t paths in an undirected
/// graph, with a minimum (s,t)-separator. `s` and `t` must be distinct and
/// non-adjacent.
pub fn st_vertex_connectivity(
    g: &UndirectedGraph,
    s: VertexId,
    t: VertexId,
    fc: FlowCtx,
) -> Result<SeparatorResult> {
    check_st(g.n(), s, t)?;
    if g.has_edge(s, t) {
        return Err(Error::AdjacentTerminals);
    }
    set_vertex_connectivity(g, &[s], &[t], fc)
}

/// Minimum (A,B)-separator of an undirected graph via super-terminal
/// augmentation. `A` and `B` must be nonempty, disjoint, and non-adjacent.
pub fn set_vertex_connectivity(
    g: &UndirectedGraph,
    a: &[VertexId],
    b: &[VertexId],
    fc: FlowCtx,
) -> Result<SeparatorResult> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidQuery("terminal sets must be nonempty".into()));
    }
    fc.tracker.record(g.n(), g.m());
    let mut split = SplitNetwork::with_terminals(g.n(), a, b)?;
    for (u, v) in g.edges() {
        if split.terminal[u] * split.terminal[v] == 2 {
            return Err(Error::AdjacentTerminals);
        }
        split.add_graph_arc(u, v);
        split.add_graph_arc(v, u);
    }
    Ok(split.solve(fc.engine))
}

/// Directed variant: maximum internally vertex-disjoint s->t paths and a
/// minimum separator. Requires the arc `(s, t)` to be absent.
pub fn st_vertex_connectivity_directed(
    g: &DirectedGraph,
    s: VertexId,
    t: VertexId,
    fc: FlowCtx,
) -> Result<SeparatorResult> {
    check_st(g.n(), s, t)?;
    if g.has_arc(s, t) {
        return Err(Error::AdjacentTerminals);
    }
    fc.tracker.record(g.n(), g.m());
    let mut split = SplitNetwork::with_terminals(g.n(), &[s], &[t])?;
    for (u, v) in g.arcs() {
        if split.terminal[u] == 1 && split.terminal[v] == 2 {
            return Err(Error::AdjacentTerminals);
        }
        split.add_graph_arc(u, v);
    }
    Ok(split.solve(fc.engine))
}
