//! Sublinear-time kernelization: a sketch-backed neighbor oracle, the
//! BFS-like sketchy search that assembles a small kernel graph, and the
//! detector for cuts with a tiny side and many low-degree separator
//! vertices.
//!
//! For a source `x` and sampled terminal set `T`, let `T_x = T \ N[x]`.
//! Contracting `T_x` to a sink and applying two reduction rules (remove the
//! common neighbors `Z` of source and sink; drop edges inside the source /
//! sink neighborhoods and unreachable remnants) leaves a kernel whose
//! `(x, t_x)`-min-separators, joined with `Z`, are exactly the
//! `(x, T_x)`-min-separators of the input graph. The search discovers the
//! kernel without ever materializing the contraction, by asking the oracle
//! for `N(v) \ N[x]` one vertex at a time.

use crate::graph::{cut_from_separator, UndirectedGraph, VertexCut, VertexId};
use crate::isolating::min_degree_cut;
use crate::maxflow::{st_vertex_connectivity, FlowCtx, FlowEngine, FlowTracker};
use crate::rng::stream;
use crate::sketch::{
    l2_combine, l2_estimate, l2_sketch, sr_combine, sr_decode, sr_sketch, CombineSign, Decoded,
    L2Sketch, RecoverySketch, SketchConfig, SketchContext, SparseVector,
};
use crate::{Error, Result};
use rand::seq::SliceRandom;
use rand::Rng;

/// Answer to an `N(v) \ N[x]` query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OutNeighbors {
    /// The exact set, sorted. Guaranteed when it has at most `40 l ln n`
    /// elements.
    Set(Vec<VertexId>),
    /// The set has more than `40 l ln n` elements (always reported above
    /// `100 l ln n`).
    TooBig,
}

/// Sketch families over a list of (out-)adjacency lists; shared by the
/// undirected and directed oracles.
pub(crate) struct SketchedAdjacency {
    k: usize,
    l_estimate: usize,
    /// Uncapped decision threshold `100 * l * ln n`.
    threshold: f64,
    ctx: SketchContext,
    open_sr: Vec<RecoverySketch>,
    closed_sr: Vec<RecoverySketch>,
    open_l2: Vec<L2Sketch>,
    closed_l2: Vec<L2Sketch>,
}

impl SketchedAdjacency {
    /// Recovery sparsity is `s = ceil(100 * l * ln n)` (capped at `n` inside
    /// the context, beyond which sparsity adds nothing); all four sketch
    /// families touch each adjacency entry a constant number of times.
    pub(crate) fn build(
        adjacency: &[Vec<VertexId>],
        k: usize,
        l_estimate: usize,
        seed: u64,
        config: SketchConfig,
    ) -> Self {
        assert!(l_estimate >= 1);
        let n = adjacency.len();
        let threshold = 100.0 * l_estimate as f64 * (n as f64).ln();
        let s = (threshold.ceil() as usize).max(1);
        let ctx = SketchContext::new(n, s, seed, config);
        let mut open_sr = Vec::with_capacity(n);
        let mut closed_sr = Vec::with_capacity(n);
        let mut open_l2 = Vec::with_capacity(n);
        let mut closed_l2 = Vec::with_capacity(n);
        for (v, nbrs) in adjacency.iter().enumerate() {
            let open = SparseVector::indicator(nbrs);
            let mut closed_ids = nbrs.clone();
            closed_ids.push(v);
            let closed = SparseVector::indicator(&closed_ids);
            open_sr.push(sr_sketch(&ctx, &open).expect("indicator in range"));
            closed_sr.push(sr_sketch(&ctx, &closed).expect("indicator in range"));
            open_l2.push(l2_sketch(&ctx, &open).expect("indicator in range"));
            closed_l2.push(l2_sketch(&ctx, &closed).expect("indicator in range"));
        }
        Self { k, l_estimate, threshold, ctx, open_sr, closed_sr, open_l2, closed_l2 }
    }

    /// Largest admissible closed source neighborhood, `k + 2 * l`.
    pub(crate) fn source_budget(&self) -> usize {
        self.k + 2 * self.l_estimate
    }

    /// `N(v) \ N[x]`, or `TooBig`. The difference vector of the two
    /// neighborhood indicators has nonzeros on the symmetric difference;
    /// its +1 entries are exactly the requested set. The norm estimate
    /// routes large differences to `TooBig` before any decoding.
    pub(crate) fn query(
        &self,
        x: VertexId,
        closed_degree_x: usize,
        v: VertexId,
    ) -> Result<OutNeighbors> {
        if x == v {
            return Err(Error::InvalidQuery("query vertex equals source".into()));
        }
        if closed_degree_x > self.source_budget() {
            return Err(Error::InvalidQuery(format!(
                "source {x} has |N[x]| = {closed_degree_x} above the budget {}",
                self.source_budget()
            )));
        }
        let diff_l2 = l2_combine(&self.open_l2[v], &self.closed_l2[x], CombineSign::Sub)?;
        let est = l2_estimate(&diff_l2);
        // For a {-1,0,1} difference vector the squared norm is the support
        // size, which is what the threshold bounds.
        if est * est > self.threshold {
            return Ok(OutNeighbors::TooBig);
        }
        let diff_sr = sr_combine(&self.open_sr[v], &self.closed_sr[x], CombineSign::Sub)?;
        match sr_decode(&self.ctx, &diff_sr)? {
            Decoded::Vector(w) => Ok(OutNeighbors::Set(
                w.entries().iter().filter(|&&(_, val)| val > 0).map(|&(i, _)| i).collect(),
            )),
            // Estimation said small but recovery disagreed; treat as the
            // conservative branch.
            Decoded::TooDense => Ok(OutNeighbors::TooBig),
        }
    }
}

/// Sketches of every vertex's open and closed neighborhood indicator,
/// supporting `N(v) \ N[x]` queries for sources with `|N[x]| <= k + 2 * l`.
pub struct NeighborOracle<'g> {
    graph: &'g UndirectedGraph,
    sketches: SketchedAdjacency,
}

/// Builds the neighbor oracle for sources with `|N[x]| <= k + 2 * l`.
pub fn build_neighbor_oracle<'g>(
    graph: &'g UndirectedGraph,
    k: usize,
    l_estimate: usize,
    seed: u64,
    config: SketchConfig,
) -> NeighborOracle<'g> {
    let sketches = SketchedAdjacency::build(graph.adjacency(), k, l_estimate, seed, config);
    NeighborOracle { graph, sketches }
}

impl NeighborOracle<'_> {
    pub fn graph(&self) -> &UndirectedGraph {
        self.graph
    }

    pub fn l_estimate(&self) -> usize {
        self.sketches.l_estimate
    }

    /// Recovery sparsity in use: `ceil(100 * l * ln n)`, capped at `n`.
    pub fn sparsity(&self) -> usize {
        self.sketches.ctx.sparsity()
    }

    /// Largest admissible closed source neighborhood, `k + 2 * l`.
    pub fn source_budget(&self) -> usize {
        self.sketches.source_budget()
    }

    /// `N(v) \ N[x]`, or `TooBig`.
    pub fn out_neighbor(&self, x: VertexId, v: VertexId) -> Result<OutNeighbors> {
        self.sketches.query(x, self.graph.degree(x) + 1, v)
    }
}

/// A sampled terminal set with the membership table and the set of vertices
/// whose closed neighborhood swallows all of `T` (for which `T_x` is empty).
pub struct TerminalSample {
    members: Vec<VertexId>,
    in_t: Vec<bool>,
    v_bad: Vec<bool>,
}

impl TerminalSample {
    /// `count[v]` must be `|N[v] n T|` (closed out-neighborhood for
    /// digraphs); `v` is bad iff that reaches `|T|`, i.e. `T_v` is empty.
    pub(crate) fn from_closed_counts(n: usize, members: Vec<VertexId>, count: &[usize]) -> Self {
        let mut in_t = vec![false; n];
        for &t in &members {
            in_t[t] = true;
        }
        let v_bad = count.iter().map(|&c| c == members.len()).collect();
        Self { members, in_t, v_bad }
    }

    pub fn new(g: &UndirectedGraph, members: Vec<VertexId>) -> Self {
        let n = g.n();
        let mut count = vec![0usize; n];
        for &t in &members {
            count[t] += 1;
            for &w in g.neighbors(t) {
                count[w] += 1;
            }
        }
        Self::from_closed_counts(n, members, &count)
    }

    pub fn members(&self) -> &[VertexId] {
        &self.members
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.in_t[v]
    }

    /// True when `T \ N[v]` is empty, so `v` can only yield bottom.
    pub(crate) fn swallows_sample(&self, v: VertexId) -> bool {
        self.v_bad[v]
    }

    /// `T_x = T \ N[x]` materialized, for tests and direct comparisons.
    pub fn residual_terminals(&self, g: &UndirectedGraph, x: VertexId) -> Vec<VertexId> {
        self.members
            .iter()
            .copied()
            .filter(|&t| t != x && !g.has_edge(x, t))
            .collect()
    }
}

/// Partition tag of a non-terminal kernel vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelTag {
    /// Neighbor of the source.
    SourceNeighbor,
    /// Neighbor of the contracted sink.
    SinkNeighbor,
    /// Reachable interior vertex.
    Far,
}

/// The kernel graph on local ids: vertex 0 is the source `x`, vertex 1 the
/// contracted sink `t_x`. A set `Y` is an `(x, t_x)`-min-separator of
/// `graph` iff `Y u identified` is an `(x, T_x)`-min-separator of the input.
pub struct Kernel {
    pub graph: UndirectedGraph,
    pub source: VertexId,
    pub sink: VertexId,
    /// Local id to original id; `None` for the sink.
    pub original: Vec<Option<VertexId>>,
    /// Tag per local vertex; `None` for the two terminals.
    pub tags: Vec<Option<KernelTag>>,
    /// The identified set `Z`: common neighbors of `x` and `t_x`, removed up
    /// front and re-added to every separator. Original ids, sorted.
    pub identified: Vec<VertexId>,
}

impl Kernel {
    /// Lifts a local kernel separator to an original-id separator by
    /// translating ids and joining `Z`.
    pub fn lift_separator(&self, local: &[VertexId]) -> Vec<VertexId> {
        let mut sep: Vec<VertexId> = local
            .iter()
            .map(|&v| self.original[v].expect("terminals never sit in a separator"))
            .collect();
        sep.extend_from_slice(&self.identified);
        sep.sort_unstable();
        sep
    }
}

/// The BFS-like kernel construction. Returns `None` (bottom) when `T_x` is
/// empty, the source neighborhood exceeds its budget, or the interior grows
/// past `16k` listings; any of these certifies that no target cut isolates
/// `x` against this sample at this scale.
pub fn sketchy_search(
    oracle: &NeighborOracle,
    x: VertexId,
    sample: &TerminalSample,
) -> Result<Option<Kernel>> {
    let g = oracle.graph;
    if sample.v_bad[x] || g.degree(x) + 1 > oracle.source_budget() {
        return Ok(None);
    }
    let n = g.n();
    let mut visited = vec![false; n];
    let mut identified = Vec::new();
    let mut source_nbrs = Vec::new();
    let mut sink_nbrs = Vec::new();
    let mut far = Vec::new();
    let mut edges_nx: Vec<(VertexId, VertexId)> = Vec::new();
    let mut edges_far: Vec<(VertexId, VertexId)> = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    let mut count_list = 0usize;

    for &v in g.neighbors(x) {
        visited[v] = true;
    }
    // First loop: classify N(x) into Z (sink-adjacent) and N_x.
    for &v in g.neighbors(x) {
        match oracle.out_neighbor(x, v)? {
            OutNeighbors::TooBig => identified.push(v),
            OutNeighbors::Set(d) => {
                if d.iter().any(|&w| sample.contains(w)) {
                    identified.push(v);
                } else {
                    source_nbrs.push(v);
                    for &w in &d {
                        edges_nx.push((v, w));
                        if !visited[w] {
                            queue.push_back(w);
                        }
                    }
                }
            }
        }
    }
    // Second loop: grow the reachable interior, stopping at sink neighbors.
    while let Some(v) = queue.pop_front() {
        if visited[v] {
            continue;
        }
        visited[v] = true;
        match oracle.out_neighbor(x, v)? {
            OutNeighbors::TooBig => sink_nbrs.push(v),
            OutNeighbors::Set(d) => {
                count_list += 1;
                if d.iter().any(|&w| sample.contains(w)) {
                    sink_nbrs.push(v);
                } else {
                    far.push(v);
                    for &w in &d {
                        edges_far.push((v, w));
                        if !visited[w] {
                            queue.push_back(w);
                        }
                    }
                }
            }
        }
        if count_list > 16 * oracle.sketches.k {
            return Ok(None);
        }
    }

    // Assemble the kernel on local ids: x -> 0, t_x -> 1, the rest in sorted
    // original order.
    let mut interior: Vec<VertexId> = source_nbrs
        .iter()
        .chain(sink_nbrs.iter())
        .chain(far.iter())
        .copied()
        .collect();
    interior.sort_unstable();
    let mut local = vec![usize::MAX; n];
    let mut original = vec![Some(x), None];
    let mut tags: Vec<Option<KernelTag>> = vec![None, None];
    for (i, &v) in interior.iter().enumerate() {
        local[v] = 2 + i;
        original.push(Some(v));
        tags.push(None);
    }
    for &v in &source_nbrs {
        tags[local[v]] = Some(KernelTag::SourceNeighbor);
    }
    for &v in &sink_nbrs {
        tags[local[v]] = Some(KernelTag::SinkNeighbor);
    }
    for &v in &far {
        tags[local[v]] = Some(KernelTag::Far);
    }
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for &v in &source_nbrs {
        edges.push((0, local[v]));
    }
    for &v in &sink_nbrs {
        edges.push((local[v], 1));
    }
    for (u, w) in edges_nx.into_iter().chain(edges_far) {
        edges.push((local[u], local[w]));
    }
    let graph = UndirectedGraph::from_edges(2 + interior.len(), &edges)?;
    identified.sort_unstable();
    Ok(Some(Kernel { graph, source: 0, sink: 1, original, tags, identified }))
}

/// Sampling grid and sketch knobs for [`detect_scratch`], filled from
/// [`crate::driver::RunConfig`].
#[derive(Clone, Copy, Debug)]
pub struct ScratchParams {
    pub seed: u64,
    /// Repetitions of the terminal sample per level.
    pub repetitions: usize,
    /// Level cap divisor `c`: levels run while `l <= k / (c * ln n)`.
    pub level_divisor: f64,
    /// Source-sample multiplier: `|X| = min(n, ceil(f * n * ln n / l))`.
    pub sample_factor: f64,
    pub sketch: SketchConfig,
    pub engine: FlowEngine,
}

/// Counters reported back to the driver.
#[derive(Clone, Copy, Debug, Default)]
pub struct ScratchReport {
    pub levels: usize,
    pub searches: u64,
    pub kernels: u64,
    pub bottoms: u64,
}

/// Returns a vertex cut of `g`; if `g` has a cut of size below `k` with a
/// very small side and many low-degree separator vertices, the returned
/// separator has size below `k` with high probability. Candidates are
/// re-validated against `g` before acceptance; the minimum-degree
/// neighborhood cut is the fallback.
pub fn detect_scratch(
    g: &UndirectedGraph,
    k: usize,
    params: &ScratchParams,
    tracker: &FlowTracker,
) -> (VertexCut, ScratchReport) {
    let n = g.n();
    let mut report = ScratchReport::default();
    let fallback = min_degree_cut(g).expect("non-complete graph");
    if g.degree(g.min_degree_vertex()) < k {
        return (fallback, report);
    }
    let l_max = k as f64 / (params.level_divisor * (n as f64).ln());
    let mut best: Option<VertexCut> = None;
    let mut l_estimate = 1usize;
    while (l_estimate as f64) <= l_max {
        report.levels += 1;
        let level_seed = crate::rng::derive_seed(params.seed, &[0x73_6372, k as u64, l_estimate as u64]);
        let oracle = build_neighbor_oracle(g, k, l_estimate, level_seed, params.sketch);
        let x_count = ((params.sample_factor * n as f64 * (n as f64).ln() / l_estimate as f64).ceil()
            as usize)
            .clamp(1, n);
        let mut pool: Vec<VertexId> = (0..n).collect();
        let mut rng = stream(level_seed, &[1]);
        let (sources, _) = pool.partial_shuffle(&mut rng, x_count);
        let sources = sources.to_vec();
        for rep in 0..params.repetitions {
            let mut rep_rng = stream(level_seed, &[2, rep as u64]);
            let rate = 1.0 / (8.0 * l_estimate as f64);
            let members: Vec<VertexId> = (0..n).filter(|_| rep_rng.gen_bool(rate)).collect();
            let sample = TerminalSample::new(g, members);
            for &x in &sources {
                report.searches += 1;
                let Some(kernel) = sketchy_search(&oracle, x, &sample).expect("query within budget")
                else {
                    report.bottoms += 1;
                    continue;
                };
                report.kernels += 1;
                let fc = FlowCtx::with_engine(params.engine, tracker);
                let flow = st_vertex_connectivity(&kernel.graph, kernel.source, kernel.sink, fc)
                    .expect("kernel terminals are non-adjacent");
                let separator = kernel.lift_separator(&flow.separator);
                if separator.len() < best.as_ref().map_or(fallback.size(), |c| c.size()) {
                    // Verify on the input graph before accepting; the sketch
                    // guarantees are only whp.
                    if let Some(cut) = cut_from_separator(g, &separator) {
                        best = Some(cut);
                    }
                }
            }
        }
        l_estimate *= 2;
    }
    (best.unwrap_or(fallback), report)
}
