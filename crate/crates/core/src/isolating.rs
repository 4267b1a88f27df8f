//! Isolating cuts for vertex connectivity, and the detector for cuts whose
//! smaller side is not tiny (or whose separator has few low-degree vertices).
//!
//! Given an independent terminal set `I`, `isolating_cuts` finds a minimum
//! `(v, I \ v)`-separator for every `v in I` simultaneously: one
//! `(A, B)`-maxflow per bit of the terminal labels splits the graph into
//! components containing one terminal each, then a local maxflow per
//! terminal extracts the separator. This is deterministic; submodularity of
//! vertex neighborhoods guarantees each component contains a minimal
//! optimal side in full.
//!
//! `detect_nonscratch` samples terminal sets at geometric rates (over all
//! vertices, and over the low-degree vertices `deg <= 8k`), takes maximal
//! independent sets, and runs the isolating-cuts routine, keeping the
//! smallest separator found.

use crate::graph::{cut_from_separator, UndirectedGraph, VertexCut, VertexId};
use crate::maxflow::{set_vertex_connectivity, st_vertex_connectivity, FlowCtx, FlowEngine, FlowTracker};
use crate::rng::stream;
use crate::{Error, Result};
use rand::Rng;
use rayon::prelude::*;

/// Per-terminal minimum isolating separator: `side` is the terminal's side
/// (contains it), `separator = N(side)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatingCut {
    pub side: Vec<VertexId>,
    pub separator: Vec<VertexId>,
}

/// Map from each terminal to its `(v, I \ v)`-min-separator, sorted by
/// terminal.
pub type IsolatingResult = Vec<(VertexId, IsolatingCut)>;

fn check_independent(g: &UndirectedGraph, terminals: &[VertexId]) -> Result<()> {
    let mut mark = vec![false; g.n()];
    for &v in terminals {
        if v >= g.n() {
            return Err(Error::InvalidQuery(format!("terminal {v} out of range")));
        }
        if mark[v] {
            return Err(Error::InvalidQuery(format!("terminal {v} repeated")));
        }
        mark[v] = true;
    }
    for &v in terminals {
        if g.neighbors(v).iter().any(|&w| mark[w]) {
            return Err(Error::InvalidQuery("terminal set is not independent".into()));
        }
    }
    Ok(())
}

/// Minimum `(v, I \ v)`-separator for every terminal `v` of an independent
/// set `I` with `|I| >= 2`, using `ceil(lg |I|)` set-maxflows on `g` plus one
/// small local maxflow per terminal.
pub fn isolating_cuts(
    g: &UndirectedGraph,
    terminals: &[VertexId],
    fc: FlowCtx,
) -> Result<IsolatingResult> {
    if terminals.len() < 2 {
        return Err(Error::InvalidQuery("need at least two terminals".into()));
    }
    check_independent(g, terminals)?;
    let n = g.n();
    let mut sorted = terminals.to_vec();
    sorted.sort_unstable();

    // Phase 1: one (A_i, B_i)-min-separator per label bit.
    let bits = usize::BITS - (sorted.len() - 1).leading_zeros();
    let mut blocked = vec![false; n];
    for bit in 0..bits {
        let (a, b): (Vec<_>, Vec<_>) = (0..sorted.len()).partition(|&label| label >> bit & 1 == 0);
        if a.is_empty() || b.is_empty() {
            continue;
        }
        let a: Vec<_> = a.into_iter().map(|i| sorted[i]).collect();
        let b: Vec<_> = b.into_iter().map(|i| sorted[i]).collect();
        let r = set_vertex_connectivity(g, &a, &b, fc)?;
        for v in r.separator {
            blocked[v] = true;
        }
    }

    // Phase 2: components of g minus all phase-1 separators.
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    let mut stack = Vec::new();
    for start in 0..n {
        if blocked[start] || comp[start] != usize::MAX {
            continue;
        }
        comp[start] = count;
        stack.push(start);
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if !blocked[w] && comp[w] == usize::MAX {
                    comp[w] = count;
                    stack.push(w);
                }
            }
        }
        count += 1;
    }

    // Phase 3: local maxflow inside each terminal's component plus its
    // boundary; each original edge joins at most one local graph.
    let mut result = Vec::with_capacity(sorted.len());
    for &v in &sorted {
        let cv = comp[v];
        debug_assert_ne!(cv, usize::MAX, "terminals avoid every separator");
        let mut members: Vec<usize> = (0..n).filter(|&u| comp[u] == cv).collect();
        let mut boundary: Vec<usize> = members
            .iter()
            .flat_map(|&u| g.neighbors(u).iter().copied())
            .filter(|&w| comp[w] != cv)
            .collect();
        boundary.sort_unstable();
        boundary.dedup();
        // Local ids: members, then boundary, then the sink. Edges inside the
        // boundary are dropped by construction.
        let mut local = vec![usize::MAX; n];
        members.sort_unstable();
        for (i, &u) in members.iter().enumerate() {
            local[u] = i;
        }
        for (i, &w) in boundary.iter().enumerate() {
            local[w] = members.len() + i;
        }
        let sink = members.len() + boundary.len();
        let mut edges = Vec::new();
        for &u in &members {
            for &w in g.neighbors(u) {
                if comp[w] == cv && u < w || comp[w] != cv {
                    edges.push((local[u], local[w]));
                }
            }
        }
        for i in 0..boundary.len() {
            edges.push((members.len() + i, sink));
        }
        let local_graph = UndirectedGraph::from_edges(sink + 1, &edges)?;
        let r = st_vertex_connectivity(&local_graph, local[v], sink, fc)?;
        let mut back = vec![0usize; sink];
        for &u in members.iter().chain(boundary.iter()) {
            back[local[u]] = u;
        }
        let mut side: Vec<usize> = r.source_side.iter().map(|&u| back[u]).collect();
        let mut separator: Vec<usize> = r.separator.iter().map(|&u| back[u]).collect();
        side.sort_unstable();
        separator.sort_unstable();
        result.push((v, IsolatingCut { side, separator }));
    }
    Ok(result)
}

/// Sampling-grid knobs; the driver fills these from
/// [`crate::driver::RunConfig`].
#[derive(Clone, Copy, Debug)]
pub struct NonScratchParams {
    pub seed: u64,
    pub repetitions: usize,
    pub engine: FlowEngine,
}

/// Greedy maximal independent set over ascending vertex id, restricted to
/// `sampled`.
pub(crate) fn greedy_mis(g: &UndirectedGraph, sampled: &[VertexId]) -> Vec<VertexId> {
    let mut chosen = vec![false; g.n()];
    let mut mis = Vec::new();
    for &v in sampled {
        if g.neighbors(v).iter().all(|&w| !chosen[w]) {
            chosen[v] = true;
            mis.push(v);
        }
    }
    mis
}

/// (level, repetition, grid) coordinates of one sampling cell.
type CellKey = (usize, usize, u64);

/// Best cut candidate from one sampling cell of the grid.
fn best_cell_cut(
    g: &UndirectedGraph,
    pool: &[VertexId],
    p: f64,
    seed: u64,
    engine: FlowEngine,
    tracker: &FlowTracker,
) -> Option<(usize, Vec<VertexId>)> {
    let mut rng = stream(seed, &[]);
    let sampled: Vec<VertexId> = pool.iter().copied().filter(|_| rng.gen_bool(p)).collect();
    let mis = greedy_mis(g, &sampled);
    if mis.len() < 2 {
        return None;
    }
    let fc = FlowCtx::with_engine(engine, tracker);
    let cuts = isolating_cuts(g, &mis, fc).expect("mis is independent");
    cuts.into_iter()
        .map(|(_, c)| (c.separator.len(), c.separator))
        .min_by(|a, b| a.0.cmp(&b.0))
}

/// Returns a vertex cut of `g`; if `g` has a cut of size below `k` whose
/// smaller side is large (or whose separator has few low-degree vertices),
/// the returned separator has size below `k` with high probability over the
/// seed schedule. Expects `m <= n * k` (apply a certificate first) and a
/// connected, non-complete graph.
pub fn detect_nonscratch(
    g: &UndirectedGraph,
    k: usize,
    params: &NonScratchParams,
    tracker: &FlowTracker,
) -> VertexCut {
    let n = g.n();
    let fallback = min_degree_cut(g).expect("non-complete graph has a min-degree cut");
    let v_low: Vec<VertexId> = (0..n).filter(|&v| g.degree(v) <= 8 * k).collect();
    let all: Vec<VertexId> = (0..n).collect();
    let levels = (usize::BITS - n.leading_zeros()) as usize;
    let mut cells = Vec::new();
    for level in 1..=levels {
        for rep in 0..params.repetitions {
            for grid in 0..2u64 {
                cells.push((level, rep, grid));
            }
        }
    }
    let candidates: Vec<(CellKey, (usize, Vec<VertexId>))> = cells
        .par_iter()
        .filter_map(|&(level, rep, grid)| {
            let pool = if grid == 0 { &all } else { &v_low };
            let p = 0.5f64.powi(level as i32);
            let seed = crate::rng::derive_seed(
                params.seed,
                &[0x69_736f, k as u64, level as u64, rep as u64, grid],
            );
            best_cell_cut(g, pool, p, seed, params.engine, tracker).map(|best| ((level, rep, grid), best))
        })
        .collect();
    // Deterministic merge: smallest separator, earliest cell on ties.
    let best = candidates
        .into_iter()
        .min_by(|a, b| (a.1 .0, &a.0).cmp(&(b.1 .0, &b.0)))
        .map(|(_, (_, sep))| sep);
    match best {
        Some(sep) if sep.len() < fallback.size() => {
            cut_from_separator(g, &sep).expect("isolating separator is real")
        }
        _ => fallback,
    }
}

/// The neighborhood cut of a minimum-degree vertex; `None` only for complete
/// graphs.
pub fn min_degree_cut(g: &UndirectedGraph) -> Option<VertexCut> {
    let v = g.min_degree_vertex();
    let sep = g.neighbors(v).to_vec();
    let right: Vec<usize> = (0..g.n()).filter(|&u| u != v && !g.has_edge(v, u)).collect();
    if right.is_empty() {
        return None;
    }
    Some(VertexCut::new(vec![v], sep, right))
}
