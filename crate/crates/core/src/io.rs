//! Graph parsing and canonical serialization.
//!
//! Two input formats:
//! - edge list: one edge per line, two whitespace-separated non-negative
//!   integers, `#` comment lines ignored, 0-based labels;
//! - DIMACS: `p edge <n> <m>` header, `e <u> <v>` lines, 1-based.
//!
//! Input labels may be arbitrary; they are remapped onto dense ids `[0, n)`
//! (sorted label order) and the label table is kept for output.

use crate::graph::{DirectedGraph, UndirectedGraph};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Dimacs,
}

#[derive(Clone, Debug)]
pub enum AnyGraph {
    Undirected(UndirectedGraph),
    Directed(DirectedGraph),
}

impl AnyGraph {
    pub fn n(&self) -> usize {
        match self {
            AnyGraph::Undirected(g) => g.n(),
            AnyGraph::Directed(g) => g.n(),
        }
    }

    pub fn m(&self) -> usize {
        match self {
            AnyGraph::Undirected(g) => g.m(),
            AnyGraph::Directed(g) => g.m(),
        }
    }
}

/// A parsed graph plus the original labels: `labels[id]` is the input label
/// of dense vertex `id`.
#[derive(Clone, Debug)]
pub struct LoadedGraph {
    pub graph: AnyGraph,
    pub labels: Vec<u64>,
}

impl LoadedGraph {
    pub fn undirected(&self) -> Result<&UndirectedGraph> {
        match &self.graph {
            AnyGraph::Undirected(g) => Ok(g),
            AnyGraph::Directed(_) => Err(Error::InvalidQuery("expected an undirected graph".into())),
        }
    }

    pub fn directed(&self) -> Result<&DirectedGraph> {
        match &self.graph {
            AnyGraph::Directed(g) => Ok(g),
            AnyGraph::Undirected(_) => Err(Error::InvalidQuery("expected a directed graph".into())),
        }
    }

    /// Dense id of an input label.
    pub fn id_of(&self, label: u64) -> Result<usize> {
        self.labels
            .binary_search(&label)
            .map_err(|_| Error::InvalidQuery(format!("unknown vertex label {label}")))
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_edge_list(text: &str) -> Result<Vec<(u64, u64)>> {
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        let u = it
            .next()
            .ok_or_else(|| parse_err(line_no, "expected two endpoints"))?
            .parse::<u64>()
            .map_err(|e| parse_err(line_no, format!("bad endpoint: {e}")))?;
        let v = it
            .next()
            .ok_or_else(|| parse_err(line_no, "expected two endpoints"))?
            .parse::<u64>()
            .map_err(|e| parse_err(line_no, format!("bad endpoint: {e}")))?;
        if it.next().is_some() {
            return Err(parse_err(line_no, "expected exactly two endpoints"));
        }
        pairs.push((u, v));
    }
    Ok(pairs)
}

fn parse_dimacs(text: &str) -> Result<(usize, Vec<(u64, u64)>)> {
    let mut n: Option<usize> = None;
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "p" => {
                if fields.len() < 4 || fields[1] != "edge" {
                    return Err(parse_err(line_no, "expected `p edge <n> <m>`"));
                }
                let count = fields[2]
                    .parse::<usize>()
                    .map_err(|e| parse_err(line_no, format!("bad vertex count: {e}")))?;
                n = Some(count);
            }
            "e" | "a" => {
                if fields.len() != 3 {
                    return Err(parse_err(line_no, "expected `e <u> <v>`"));
                }
                let n = n.ok_or_else(|| parse_err(line_no, "edge before `p edge` header"))?;
                let u = fields[1]
                    .parse::<u64>()
                    .map_err(|e| parse_err(line_no, format!("bad endpoint: {e}")))?;
                let v = fields[2]
                    .parse::<u64>()
                    .map_err(|e| parse_err(line_no, format!("bad endpoint: {e}")))?;
                if u == 0 || v == 0 || u > n as u64 || v > n as u64 {
                    return Err(parse_err(line_no, format!("endpoint out of range 1..={n}")));
                }
                pairs.push((u, v));
            }
            other => return Err(parse_err(line_no, format!("unknown record `{other}`"))),
        }
    }
    let n = n.ok_or_else(|| parse_err(1, "missing `p edge` header"))?;
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok((n, pairs))
}

/// Parses `text` into a graph. Duplicate edges and self-loops are silently
/// dropped; vertex labels are normalized to dense ids.
pub fn load_graph(text: &str, format: GraphFormat, directed: bool) -> Result<LoadedGraph> {
    let (labels, pairs) = match format {
        GraphFormat::EdgeList => {
            let raw = parse_edge_list(text)?;
            let mut labels: Vec<u64> = raw.iter().flat_map(|&(u, v)| [u, v]).collect();
            labels.sort_unstable();
            labels.dedup();
            (labels, raw)
        }
        GraphFormat::Dimacs => {
            let (n, raw) = parse_dimacs(text)?;
            // 1-based labels; isolated vertices are representable.
            ((1..=n as u64).collect(), raw)
        }
    };
    if labels.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let id = |label: u64| labels.binary_search(&label).expect("label collected above");
    let edges: Vec<(usize, usize)> = pairs.into_iter().map(|(u, v)| (id(u), id(v))).collect();
    let graph = if directed {
        AnyGraph::Directed(DirectedGraph::from_edges(labels.len(), &edges)?)
    } else {
        AnyGraph::Undirected(UndirectedGraph::from_edges(labels.len(), &edges)?)
    };
    Ok(LoadedGraph { graph, labels })
}

/// Canonical edge-list serialization using original labels: one edge per
/// line, sorted; undirected edges emitted with the smaller label first.
pub fn serialize_edge_list(loaded: &LoadedGraph) -> String {
    let mut lines: Vec<(u64, u64)> = match &loaded.graph {
        AnyGraph::Undirected(g) => g
            .edges()
            .into_iter()
            .map(|(u, v)| {
                let (a, b) = (loaded.labels[u], loaded.labels[v]);
                (a.min(b), a.max(b))
            })
            .collect(),
        AnyGraph::Directed(g) => g
            .arcs()
            .into_iter()
            .map(|(u, v)| (loaded.labels[u], loaded.labels[v]))
            .collect(),
    };
    lines.sort_unstable();
    let mut out = String::new();
    for (u, v) in lines {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
