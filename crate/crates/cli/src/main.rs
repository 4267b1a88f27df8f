//! Command-line front end: graph ingestion, algorithm selection, seeded
//! reproducible runs, JSON reports.
//!
//! Exit codes: 0 success, 2 malformed input (or usage errors), 3 invalid
//! query. Reports are byte-reproducible for a fixed (input, seed, config);
//! wall-clock timings appear only under `--stats` and are exempt from that
//! contract.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use vconn::certificate::k_certificate;
use vconn::directed::{default_ell, directed_vertex_connectivity};
use vconn::driver::{vertex_connectivity_tracked, RunConfig, RunStats};
use vconn::graph::Witness;
use vconn::io::{load_graph, serialize_edge_list, GraphFormat, LoadedGraph};
use vconn::isolating::isolating_cuts;
use vconn::kernel::detect_scratch;
use vconn::maxflow::{st_vertex_connectivity, st_vertex_connectivity_directed, FlowCtx, FlowTracker};
use vconn::oracle::{oracle_directed, oracle_vertex_connectivity};
use vconn::{ConnectivityResult, Error, VertexCut};

#[derive(Parser)]
#[command(name = "vconn", version, about = "Vertex connectivity and minimum vertex cuts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Undirected vertex connectivity with a witness cut.
    Vc(CommonArgs),
    /// Directed vertex connectivity with a witness cut.
    VcDirected {
        #[command(flatten)]
        common: CommonArgs,
        /// Side-size parameter (default: density heuristic).
        #[arg(long)]
        l: Option<usize>,
    },
    /// Minimum s-t vertex cut between two non-adjacent vertices.
    Stcut {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        s: u64,
        #[arg(long)]
        t: u64,
        #[arg(long)]
        directed: bool,
    },
    /// Minimum isolating separator for every terminal of an independent set.
    Isolating {
        #[command(flatten)]
        common: CommonArgs,
        /// File of whitespace-separated terminal labels.
        #[arg(long)]
        terminals: PathBuf,
    },
    /// Run the kernelization detector directly at parameter k.
    Scratch {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        k: usize,
    },
    /// Emit a sparse k-connectivity certificate as an edge list.
    Certificate {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        k: usize,
    },
    /// Exact connectivity by the all-pairs maxflow oracle (small graphs).
    Oracle {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        directed: bool,
    },
    /// Undirected run that logs every maxflow instance size as CSV.
    Bench(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Input file; stdin when omitted.
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = FormatArg::EdgeList)]
    format: FormatArg,
    /// Emit the report as JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Include wall-clock phase timings (not byte-reproducible).
    #[arg(long)]
    stats: bool,
    #[arg(long, value_enum, default_value_t = FlowArg::Dinic)]
    flow: FlowArg,
    /// Worker threads for the sampling grids (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    EdgeList,
    Dimacs,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlowArg {
    Dinic,
}

impl CommonArgs {
    fn config(&self) -> RunConfig {
        RunConfig {
            seed: self.seed,
            flow_engine: match self.flow {
                FlowArg::Dinic => vconn::maxflow::FlowEngine::Dinic,
            },
            ..RunConfig::default()
        }
    }

    fn format(&self) -> GraphFormat {
        match self.format {
            FormatArg::EdgeList => GraphFormat::EdgeList,
            FormatArg::Dimacs => GraphFormat::Dimacs,
        }
    }

    fn read_input(&self) -> std::io::Result<String> {
        match &self.input {
            Some(path) => std::fs::read_to_string(path),
            None => {
                let mut buf = String::new();
                std::io::stdin().read_to_string(&mut buf)?;
                Ok(buf)
            }
        }
    }
}

#[derive(Serialize)]
struct CutReport {
    l: Vec<u64>,
    s: Vec<u64>,
    r: Vec<u64>,
}

impl CutReport {
    fn from_cut(cut: &VertexCut, labels: &[u64]) -> Self {
        let map = |ids: &[usize]| ids.iter().map(|&v| labels[v]).collect();
        Self { l: map(&cut.left), s: map(&cut.separator), r: map(&cut.right) }
    }
}

#[derive(Serialize)]
struct StatsReport {
    flow_calls: u64,
    flow_vertices: u64,
    flow_edges: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    probes: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct Report {
    algorithm: &'static str,
    seed: u64,
    input_digest: String,
    kappa: usize,
    complete: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    cut: Option<CutReport>,
    stats: StatsReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    timings: Option<BTreeMap<String, f64>>,
}

impl Report {
    fn new(
        algorithm: &'static str,
        common: &CommonArgs,
        digest: String,
        result: &ConnectivityResult,
        loaded: &LoadedGraph,
        stats: &RunStats,
    ) -> Result<Self, Error> {
        let cut = match &result.witness {
            Witness::Cut(cut) => {
                let valid = match &loaded.graph {
                    vconn::io::AnyGraph::Undirected(g) => vconn::validate_vertex_cut(g, cut),
                    vconn::io::AnyGraph::Directed(g) => vconn::validate_directed_cut(g, cut),
                };
                if !valid {
                    return Err(Error::InvalidQuery("internal: witness failed validation".into()));
                }
                Some(CutReport::from_cut(cut, &loaded.labels))
            }
            Witness::Complete => None,
        };
        Ok(Self {
            algorithm,
            seed: common.seed,
            input_digest: digest,
            kappa: result.kappa,
            complete: matches!(result.witness, Witness::Complete),
            cut,
            stats: StatsReport {
                flow_calls: stats.flow.calls,
                flow_vertices: stats.flow.total_vertices,
                flow_edges: stats.flow.total_edges,
                probes: stats.probes.iter().map(|p| (p.k, p.best)).collect(),
            },
            timings: common.stats.then(|| stats.phase_seconds.clone()),
        })
    }

    fn print(&self, json: bool) {
        if json {
            println!("{}", serde_json::to_string_pretty(self).expect("report serializes"));
            return;
        }
        println!("kappa = {}", self.kappa);
        if self.complete {
            println!("complete graph: no vertex cut exists");
        }
        if let Some(cut) = &self.cut {
            println!("separator = {:?}", cut.s);
            println!("left = {:?}", cut.l);
            println!("right = {:?}", cut.r);
        }
        println!(
            "maxflow calls = {} (vertices {}, edges {})",
            self.stats.flow_calls, self.stats.flow_vertices, self.stats.flow_edges
        );
        if let Some(timings) = &self.timings {
            for (phase, secs) in timings {
                println!("time[{phase}] = {secs:.4}s");
            }
        }
    }
}

fn digest_of(text: &str) -> String {
    let hash = Sha256::digest(text.as_bytes());
    hash.iter().map(|b| format!("{b:02x}")).collect()
}

fn run_vc(common: &CommonArgs) -> Result<(), Error> {
    let text = common.read_input().map_err(io_error)?;
    let loaded = load_graph(&text, common.format(), false)?;
    let g = loaded.undirected()?;
    let cfg = common.config();
    let tracker = FlowTracker::new();
    let mut stats = RunStats::default();
    let result = vertex_connectivity_tracked(g, &cfg, &tracker, &mut stats)?;
    stats.flow = tracker.snapshot();
    Report::new("vc", common, digest_of(&text), &result, &loaded, &stats)?.print(common.json);
    Ok(())
}

fn run_vc_directed(common: &CommonArgs, l: Option<usize>) -> Result<(), Error> {
    let text = common.read_input().map_err(io_error)?;
    let loaded = load_graph(&text, common.format(), true)?;
    let g = loaded.directed()?;
    let ell = l.unwrap_or_else(|| default_ell(g.n(), g.m()));
    let (result, stats) = directed_vertex_connectivity(g, ell, &common.config())?;
    Report::new("vc-directed", common, digest_of(&text), &result, &loaded, &stats)?
        .print(common.json);
    Ok(())
}

fn run_stcut(common: &CommonArgs, s: u64, t: u64, directed: bool) -> Result<(), Error> {
    let text = common.read_input().map_err(io_error)?;
    let loaded = load_graph(&text, common.format(), directed)?;
    let (s, t) = (loaded.id_of(s)?, loaded.id_of(t)?);
    let tracker = FlowTracker::new();
    let fc = FlowCtx::new(&tracker);
    let sep = if directed {
        st_vertex_connectivity_directed(loaded.directed()?, s, t, fc)?
    } else {
        st_vertex_connectivity(loaded.undirected()?, s, t, fc)?
    };
    // Present the s-t cut as (source side, separator, rest).
    let n = loaded.graph.n();
    let mut rest: Vec<usize> = (0..n)
        .filter(|v| !sep.source_side.contains(v) && !sep.separator.contains(v))
        .collect();
    rest.sort_unstable();
    let cut = VertexCut::new(sep.source_side.clone(), sep.separator.clone(), rest);
    let result = ConnectivityResult { kappa: sep.value, witness: Witness::Cut(cut) };
    let stats = RunStats { flow: tracker.snapshot(), ..RunStats::default() };
    Report::new("stcut", common, digest_of(&text), &result, &loaded, &stats)?.print(common.json);
    Ok(())
}

#[derive(Serialize)]
struct IsolatingReport {
    algorithm: &'static str,
    seed: u64,
    input_digest: String,
    terminals: Vec<u64>,
    cuts: BTreeMap<u64, Vec<u64>>,
}

fn run_isolating(common: &CommonArgs, terminals_path: &PathBuf) -> Result<(), Error> {
    let text = common.read_input().map_err(io_error)?;
    let loaded = load_graph(&text, common.format(), false)?;
    let g = loaded.undirected()?;
    let terminal_text = std::fs::read_to_string(terminals_path).map_err(io_error)?;
    let mut terminals = Vec::new();
    for token in terminal_text.split_whitespace() {
        let label: u64 = token
            .parse()
            .map_err(|e| Error::InvalidQuery(format!("bad terminal `{token}`: {e}")))?;
        terminals.push(loaded.id_of(label)?);
    }
    let tracker = FlowTracker::new();
    let cuts = isolating_cuts(g, &terminals, FlowCtx::new(&tracker))?;
    let report = IsolatingReport {
        algorithm: "isolating",
        seed: common.seed,
        input_digest: digest_of(&text),
        terminals: terminals.iter().map(|&v| loaded.labels[v]).collect(),
        cuts: cuts
            .iter()
            .map(|(v, c)| {
                (loaded.labels[*v], c.separator.iter().map(|&u| loaded.labels[u]).collect())
            })
            .collect(),
    };
    if common.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        for (terminal, separator) in &report.cuts {
            println!("terminal {terminal}: separator {separator:?}");
        }
    }
    Ok(())
}

fn run_scratch(common: &CommonArgs, k: usize) -> Result<(), Error> {
    let text = common.read_input().map_err(io_error)?;
    let loaded = load_graph(&text, common.format(), false)?;
    let g = loaded.undirected()?;
    if g.is_complete() {
        return Err(Error::InvalidQuery("complete graphs have no vertex cut".into()));
    }
    if k == 0 || k >= g.n() {
        return Err(Error::InvalidQuery(format!("k = {k} outside [1, {})", g.n())));
    }
    let cfg = common.config();
    let params = cfg.scratch_params(g.n());
    let tracker = FlowTracker::new();
    let (cut, report) = detect_scratch(g, k, &params, &tracker);
    let stats = RunStats {
        flow: tracker.snapshot(),
        kernels_built: report.kernels,
        kernel_bottoms: report.bottoms,
        kernel_searches: report.searches,
        scratch_levels: report.levels as u64,
        ..RunStats::default()
    };
    let result = ConnectivityResult::cut(cut);
    let mut out = Report::new("scratch", common, digest_of(&text), &result, &loaded, &stats)?;
    out.timings = common.stats.then(BTreeMap::new);
    out.print(common.json);
    if common.stats {
        eprintln!(
            "levels = {}, searches = {}, kernels = {}, bottoms = {}",
            report.levels, report.searches, report.kernels, report.bottoms
        );
    }
    Ok(())
}

fn run_certificate(common: &CommonArgs, k: usize) -> Result<(), Error> {
    let text = common.read_input().map_err(io_error)?;
    let loaded = load_graph(&text, common.format(), false)?;
    let g = loaded.undirected()?;
    if k == 0 {
        return Err(Error::InvalidQuery("certificate parameter must be positive".into()));
    }
    let cert = k_certificate(g, k)?;
    let sparse = LoadedGraph {
        graph: vconn::io::AnyGraph::Undirected(cert.graph),
        labels: loaded.labels.clone(),
    };
    print!("{}", serialize_edge_list(&sparse));
    Ok(())
}

fn run_oracle(common: &CommonArgs, directed: bool) -> Result<(), Error> {
    let text = common.read_input().map_err(io_error)?;
    let loaded = load_graph(&text, common.format(), directed)?;
    let result = if directed {
        oracle_directed(loaded.directed()?)?
    } else {
        oracle_vertex_connectivity(loaded.undirected()?)?
    };
    let stats = RunStats::default();
    Report::new("oracle", common, digest_of(&text), &result, &loaded, &stats)?.print(common.json);
    Ok(())
}

fn run_bench(common: &CommonArgs) -> Result<(), Error> {
    let text = common.read_input().map_err(io_error)?;
    let loaded = load_graph(&text, common.format(), false)?;
    let g = loaded.undirected()?;
    let cfg = common.config();
    let tracker = FlowTracker::with_log();
    let mut stats = RunStats::default();
    let result = vertex_connectivity_tracked(g, &cfg, &tracker, &mut stats)?;
    stats.flow = tracker.snapshot();
    // Sorted per-call log keeps the CSV reproducible under parallelism.
    let mut log = tracker.call_log().expect("logging tracker");
    log.sort_unstable();
    println!("call,vertices,edges");
    for (i, (v, e)) in log.iter().enumerate() {
        println!("{i},{v},{e}");
    }
    let log2n = (usize::BITS - (g.n().saturating_sub(1)).leading_zeros()).max(1) as u64;
    let bound = (cfg.flow_edge_factor * g.m() as f64) as u64 * log2n.pow(5);
    eprintln!(
        "kappa={} m={} calls={} total_edges={} bound={} within_bound={}",
        result.kappa,
        g.m(),
        stats.flow.calls,
        stats.flow.total_edges,
        bound,
        stats.flow.total_edges <= bound
    );
    Ok(())
}

fn io_error(e: std::io::Error) -> Error {
    Error::InvalidQuery(format!("i/o: {e}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = match &cli.command {
        Command::Vc(c) | Command::Bench(c) => c,
        Command::VcDirected { common, .. }
        | Command::Stcut { common, .. }
        | Command::Isolating { common, .. }
        | Command::Scratch { common, .. }
        | Command::Certificate { common, .. }
        | Command::Oracle { common, .. } => common,
    };
    if let Some(threads) = common.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    let outcome = match &cli.command {
        Command::Vc(c) => run_vc(c),
        Command::VcDirected { common, l } => run_vc_directed(common, *l),
        Command::Stcut { common, s, t, directed } => run_stcut(common, *s, *t, *directed),
        Command::Isolating { common, terminals } => run_isolating(common, terminals),
        Command::Scratch { common, k } => run_scratch(common, *k),
        Command::Certificate { common, k } => run_certificate(common, *k),
        Command::Oracle { common, directed } => run_oracle(common, *directed),
        Command::Bench(c) => run_bench(c),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse { .. } | Error::EmptyGraph => ExitCode::from(2),
                _ => ExitCode::from(3),
            }
        }
    }
}
