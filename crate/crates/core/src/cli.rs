//! Command-line experiment runner and the JSON/CSV report formats.
//!
//! Subcommands: `run`, `sweep`, `oracle`, `reproduce-paper`. Exit codes are
//! 0 on success, 1 for I/O or internal failures, 2 for usage errors, 3 for an
//! infeasible initial state and 4 for instances over an enumeration bound.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NamedGraph, NodeSubset};
use crate::optimizer::{beta_grid, sweep_p1, vqe_optimize, Instance, VqeOutcome, VqeRunConfig};
use crate::oracle::{brute_force_optimum, OptimumReport};
use crate::problem::Problem;
use crate::simulator::{AnsatzParams, InitialState};

pub const TOOL_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

/// Environment variable capping the number of concurrent restarts.
pub const THREADS_ENV: &str = "QAOA_THREADS";

/// Depths covered by `reproduce-paper`.
pub const REPRO_DEPTHS: [usize; 3] = [1, 6, 15];

/// Initial states swept by `reproduce-paper` on the square ring.
pub const REPRO_SWEEP_INITS: [&str; 7] = ["0000", "0001", "0010", "0100", "1000", "0101", "1010"];

/// Square-ring MIS initial states whose depth dependence is recorded.
pub const REPRO_INIT_RUNS: [&str; 2] = ["0101", "1010"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionEntry {
    pub bitstring: String,
    pub probability: f64,
}

fn distribution_entries(n: usize, probs: &[f64]) -> Vec<DistributionEntry> {
    probs
        .iter()
        .enumerate()
        .map(|(x, &p)| DistributionEntry {
            bitstring: NodeSubset::from_index(n, x as u64).to_string(),
            probability: p,
        })
        .collect()
}

/// Result of one `run` invocation. Distributions are sorted by the integer
/// value of the bitstring.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub problem: Problem,
    pub graph: String,
    pub p: usize,
    pub restarts: usize,
    pub seed: u64,
    pub initial_state: String,
    pub best_params: AnsatzParams,
    pub best_expectation: f64,
    pub c_max: f64,
    pub approximation_ratio: f64,
    pub averaged_distribution: Vec<DistributionEntry>,
    /// Distribution of the single best restart.
    pub best_distribution: Vec<DistributionEntry>,
    pub feasibility_leakage: f64,
    /// Unix seconds from `SOURCE_DATE_EPOCH`; `null` when unset so that
    /// identical flags give identical bytes.
    pub timestamp: Option<u64>,
    pub tool_version: String,
}

impl RunReport {
    pub fn from_outcome(graph: &str, num_nodes: usize, outcome: &VqeOutcome) -> Self {
        let best = outcome.best();
        Self {
            problem: outcome.problem,
            graph: graph.to_string(),
            p: outcome.p,
            restarts: outcome.restarts.len(),
            seed: outcome.seed,
            initial_state: outcome.initial_state.to_string(),
            best_params: best.params.clone(),
            best_expectation: best.expectation,
            c_max: outcome.c_max,
            approximation_ratio: outcome.approximation_ratio(),
            averaged_distribution: distribution_entries(num_nodes, &outcome.averaged_distribution),
            best_distribution: distribution_entries(num_nodes, &best.distribution),
            feasibility_leakage: outcome.feasibility_leakage,
            timestamp: source_date_epoch(),
            tool_version: TOOL_VERSION.to_string(),
        }
    }

    /// Averaged probability of a bitstring, zero if absent.
    pub fn averaged_probability(&self, bitstring: &str) -> f64 {
        lookup(&self.averaged_distribution, bitstring)
    }

    pub fn best_probability(&self, bitstring: &str) -> f64 {
        lookup(&self.best_distribution, bitstring)
    }
}

fn lookup(dist: &[DistributionEntry], bitstring: &str) -> f64 {
    dist.iter().find(|e| e.bitstring == bitstring).map_or(0.0, |e| e.probability)
}

fn source_date_epoch() -> Option<u64> {
    std::env::var("SOURCE_DATE_EPOCH").ok()?.trim().parse().ok()
}

/// Summary written next to a sweep CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub problem: Problem,
    pub graph: String,
    pub initial_state: String,
    pub c_max: f64,
    pub beta_grid: Vec<f64>,
    pub values: Vec<f64>,
    pub max_value: f64,
    pub argmax_beta: f64,
    pub tool_version: String,
}

impl SweepReport {
    pub fn from_curve(problem: Problem, graph: &str, init: &InitialState, c_max: f64, curve: &[(f64, f64)]) -> Self {
        let mut argmax = 0;
        for (i, v) in curve.iter().enumerate() {
            if v.1 > curve[argmax].1 {
                argmax = i;
            }
        }
        Self {
            problem,
            graph: graph.to_string(),
            initial_state: init.to_string(),
            c_max,
            beta_grid: curve.iter().map(|v| v.0).collect(),
            values: curve.iter().map(|v| v.1).collect(),
            max_value: curve[argmax].1,
            argmax_beta: curve[argmax].0,
            tool_version: TOOL_VERSION.to_string(),
        }
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["beta", "ratio"])?;
        for (b, v) in self.beta_grid.iter().zip(&self.values) {
            w.write_record([b.to_string(), v.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// `--graph` value: a named instance or `@path` to an edge list.
#[derive(Debug, Clone, PartialEq)]
pub enum GraphSource {
    Named(NamedGraph),
    File(PathBuf),
}

impl GraphSource {
    pub fn parse(s: &str) -> Result<Self> {
        if let Ok(named) = s.parse::<NamedGraph>() {
            return Ok(GraphSource::Named(named));
        }
        match s.strip_prefix('@') {
            Some(path) => Ok(GraphSource::File(PathBuf::from(path))),
            None => Err(Error::UnknownGraph(s.to_string())),
        }
    }

    pub fn load(&self) -> Result<Graph> {
        match self {
            GraphSource::Named(n) => Ok(n.build()),
            GraphSource::File(p) => Graph::load_edge_list(p),
        }
    }

    pub fn label(&self) -> String {
        match self {
            GraphSource::Named(n) => n.to_string(),
            GraphSource::File(p) => format!("@{}", p.display()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "qaoa", version, about = "QAOA / alternating operator ansatz experiments for Max-Cut and MIS")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Optimise the ansatz angles over seeded restarts and write a JSON report.
    Run(RunArgs),
    /// Depth-one beta sweep of the normalised expectation, written as CSV plus JSON summary.
    Sweep(SweepArgs),
    /// Print the brute-force optimum as JSON.
    Oracle(OracleArgs),
    /// Regenerate every figure data set into a directory.
    ReproducePaper(ReproduceArgs),
}

#[derive(Debug, Args)]
pub struct ProblemArgs {
    #[arg(long, value_parser = parse_problem)]
    pub problem: Problem,
    /// square-ring, k23, k33 or @PATH to an edge list
    #[arg(long, value_parser = parse_graph)]
    pub graph: GraphSource,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub target: ProblemArgs,
    #[arg(long)]
    pub p: usize,
    #[arg(long, default_value_t = 50)]
    pub restarts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// plus or a bitstring (node n leftmost); defaults to plus for maxcut, all zeros for mis
    #[arg(long, value_parser = parse_init)]
    pub init: Option<InitialState>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_parser = parse_problem, default_value = "mis")]
    pub problem: Problem,
    #[arg(long, value_parser = parse_graph, default_value = "square-ring")]
    pub graph: GraphSource,
    #[arg(long, value_parser = parse_init)]
    pub init: Option<InitialState>,
    /// number of evenly spaced beta points on [0, pi]
    #[arg(long, default_value_t = 200)]
    pub beta_grid: usize,
    /// CSV path; the JSON summary goes to the same path with a .json extension
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub target: ProblemArgs,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 50)]
    pub restarts: usize,
    #[arg(long, default_value_t = 200)]
    pub beta_grid: usize,
    /// output directory
    #[arg(long)]
    pub out: PathBuf,
}

fn parse_problem(s: &str) -> std::result::Result<Problem, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_graph(s: &str) -> std::result::Result<GraphSource, String> {
    GraphSource::parse(s).map_err(|e| e.to_string())
}

fn parse_init(s: &str) -> std::result::Result<InitialState, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Maps an error to the process exit code.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Infeasible { .. } => 3,
        Error::TooLarge { .. } => 4,
        Error::UnknownGraph(_)
        | Error::LengthMismatch { .. }
        | Error::InvalidBitstring(_)
        | Error::InvalidParams(_)
        | Error::InvalidOptimizer(_) => 2,
        _ => 1,
    }
}

fn threads_from_env() -> Option<usize> {
    std::env::var(THREADS_ENV).ok()?.trim().parse().ok().filter(|&t: &usize| t > 0)
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

/// Executes `vqe_optimize` and builds the report.
pub fn run_report(
    problem: Problem,
    source: &GraphSource,
    p: usize,
    restarts: usize,
    seed: u64,
    init: Option<InitialState>,
) -> Result<RunReport> {
    let g = source.load()?;
    let mut cfg = VqeRunConfig::new(p, restarts, seed);
    cfg.initial_state = init;
    cfg.threads = threads_from_env();
    let outcome = vqe_optimize(problem, &g, &cfg)?;
    Ok(RunReport::from_outcome(&source.label(), g.num_nodes(), &outcome))
}

pub fn sweep_report(
    problem: Problem,
    source: &GraphSource,
    init: Option<InitialState>,
    points: usize,
) -> Result<SweepReport> {
    if points < 2 {
        return Err(Error::InvalidParams(format!("beta grid needs at least 2 points, got {points}")));
    }
    let g = source.load()?;
    let init = init.unwrap_or_else(|| problem.default_initial_state(g.num_nodes()));
    if init == InitialState::Plus {
        return Err(Error::InvalidParams("sweep requires a basis-state initial state".into()));
    }
    let inst = Instance::new(problem, &g, Some(init))?;
    let curve = sweep_p1(&inst.cost_diag, &inst.engine, &inst.initial, inst.c_max, &beta_grid(points))?;
    Ok(SweepReport::from_curve(problem, &source.label(), &init, inst.c_max, &curve))
}

fn write_sweep(report: &SweepReport, csv_path: &Path) -> Result<()> {
    report.write_csv(csv_path)?;
    write_json(&csv_path.with_extension("json"), report)
}

pub fn oracle_report(problem: Problem, source: &GraphSource) -> Result<OptimumReport> {
    brute_force_optimum(problem, &source.load()?)
}

/// Writes the full experiment grid into `dir`: one run report per
/// graph, problem and depth, plus the square-ring MIS sweeps.
pub fn reproduce_paper(dir: &Path, seed: u64, restarts: usize, points: usize) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for graph in NamedGraph::ALL {
        let source = GraphSource::Named(graph);
        for problem in Problem::ALL {
            let path = dir.join(format!("{problem}_{graph}.oracle.json"));
            write_json(&path, &oracle_report(problem, &source)?)?;
            written.push(path);
            for p in REPRO_DEPTHS {
                let report = run_report(problem, &source, p, restarts, seed, None)?;
                let path = dir.join(format!("{problem}_{graph}_p{p}.json"));
                write_json(&path, &report)?;
                written.push(path);
            }
        }
    }
    let ring = GraphSource::Named(NamedGraph::SquareRing);
    for bits in REPRO_INIT_RUNS {
        for p in REPRO_DEPTHS {
            let report = run_report(Problem::Mis, &ring, p, restarts, seed, Some(bits.parse()?))?;
            let path = dir.join(format!("mis_square-ring_init{bits}_p{p}.json"));
            write_json(&path, &report)?;
            written.push(path);
        }
    }
    for bits in REPRO_SWEEP_INITS {
        let sweep = sweep_report(Problem::Mis, &ring, Some(bits.parse()?), points)?;
        let path = dir.join(format!("sweep_square-ring_init{bits}.csv"));
        write_sweep(&sweep, &path)?;
        written.push(path.clone());
        written.push(path.with_extension("json"));
    }
    Ok(written)
}

fn execute(cmd: Command, stdout: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Run(a) => {
            let report =
                run_report(a.target.problem, &a.target.graph, a.p, a.restarts, a.seed, a.init)?;
            write_json(&a.out, &report)?;
            writeln!(
                stdout,
                "best <C> = {:.6} (ratio {:.4}) -> {}",
                report.best_expectation,
                report.approximation_ratio,
                a.out.display()
            )?;
        }
        Command::Sweep(a) => {
            let report = sweep_report(a.problem, &a.graph, a.init, a.beta_grid)?;
            write_sweep(&report, &a.out)?;
            writeln!(
                stdout,
                "max ratio {:.4} at beta {:.4} -> {}",
                report.max_value,
                report.argmax_beta,
                a.out.display()
            )?;
        }
        Command::Oracle(a) => {
            let report = oracle_report(a.target.problem, &a.target.graph)?;
            writeln!(stdout, "{}", serde_json::to_string_pretty(&report)?)?;
        }
        Command::ReproducePaper(a) => {
            let files = reproduce_paper(&a.out, a.seed, a.restarts, a.beta_grid)?;
            writeln!(stdout, "wrote {} files to {}", files.len(), a.out.display())?;
        }
    }
    Ok(())
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code. Diagnostics go to `stderr`.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return e.exit_code();
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}
