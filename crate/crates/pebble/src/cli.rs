//! Command-line interface.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use pebbling_core::catalog;
use pebbling_core::certificate::{verify_certificate, Certificate, VerifyMode};
use pebbling_core::class0::refute_class0;
use pebbling_core::generators as gen;
use pebbling_core::lp::{enumerate_tree_strategies, ilp_bound, lp_relaxation_bound, Limits, LpBound};
use pebbling_core::search::pebbling_number_rooted;
use pebbling_core::solver::is_solvable;
use pebbling_core::strategy::{covering_bound, cycle_tail_weights, WeightFunction};
use pebbling_core::{Graph, SolverBudget, Vertex};
use rayon::prelude::*;
use serde::Serialize;

use crate::formats::{
    certificate_to_json, edge_list_text, graph_to_json, parse_certificate, parse_configuration, parse_entries,
    parse_graph, resolve_vertex, to_json,
};
use crate::report::{AuditJson, Exit, LpReport, PiReport, SolveReport, VerifyReport};

/// Exit code for malformed arguments or input files.
pub const USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "pebble",
    version,
    about = "Exact graph pebbling numbers, weight-function certificates and Class 0 audits"
)]
pub struct Cli {
    /// Maximum search states per solver run.
    #[arg(long, global = true, env = "PEBBLE_BUDGET_STATES", default_value_t = 50_000_000)]
    pub budget_states: u64,
    /// Wall-clock limit per solver run, in seconds.
    #[arg(long, global = true, env = "PEBBLE_BUDGET_SECONDS")]
    pub budget_seconds: Option<f64>,
    #[arg(long, global = true, env = "PEBBLE_FORMAT", value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads for multi-root and multi-file runs; 0 picks one per core.
    #[arg(long, global = true, env = "PEBBLE_JOBS", default_value_t = 1)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Structural,
    Bruteforce,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a graph from a generator family.
    Generate(GenerateArgs),
    /// Exact pebbling number, or solvability of one configuration.
    Pi(PiArgs),
    /// Assemble a certificate and compute its bound.
    Certify(CertifyArgs),
    /// Check certificates.
    Verify(VerifyArgs),
    /// Tree-strategy linear program bound.
    Lp(LpArgs),
    /// Class 0 audit.
    Audit(AuditArgs),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// path, cycle, complete, hypercube, petersen, bruhat, lemke, familyF,
    /// familyG or cycle_tail.
    pub family: String,
    pub params: Vec<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the plain edge-list format instead of JSON.
    #[arg(long)]
    pub edge_list: bool,
}

#[derive(Debug, Args)]
pub struct PiArgs {
    pub graph: PathBuf,
    /// Target vertex, by id or label. Without it every root is searched.
    #[arg(long, env = "PEBBLE_ROOT")]
    pub root: Option<String>,
    /// Decide solvability of this configuration instead.
    #[arg(long, requires = "root")]
    pub config: Option<PathBuf>,
    /// Assert all vertices are equivalent, so only vertex 0 is searched.
    #[arg(long, conflicts_with = "root")]
    pub vertex_transitive: bool,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    /// Graph file; not needed with --bundled.
    pub graph: Option<PathBuf>,
    #[arg(long, env = "PEBBLE_ROOT")]
    pub root: Option<String>,
    /// A bundled certificate: c5, q3, lemke, g111_s1, g111_v, g111_a or b4.
    #[arg(long, conflicts_with_all = ["graph", "strategies", "from_lp"])]
    pub bundled: Option<String>,
    /// JSON list of certificate entries.
    #[arg(long, requires_all = ["graph", "root"])]
    pub strategies: Option<PathBuf>,
    /// Use the dual solution of the tree-strategy LP.
    #[arg(long, requires_all = ["graph", "root"], conflicts_with = "strategies")]
    pub from_lp: bool,
    #[arg(long, default_value_t = Limits::default().max_trees)]
    pub max_trees: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(required = true)]
    pub certificates: Vec<PathBuf>,
    #[arg(long, env = "PEBBLE_MODE", value_enum, default_value_t = Mode::Structural)]
    pub mode: Mode,
}

#[derive(Debug, Args)]
pub struct LpArgs {
    pub graph: PathBuf,
    /// Without it every root is solved.
    #[arg(long, env = "PEBBLE_ROOT")]
    pub root: Option<String>,
    #[arg(long, default_value_t = Limits::default().max_trees)]
    pub max_trees: usize,
    #[arg(long, default_value_t = Limits::default().max_depth)]
    pub max_depth: usize,
    /// Also solve the integer program.
    #[arg(long)]
    pub ilp: bool,
    /// Write the dual combination as a certificate (single root only).
    #[arg(long, requires = "root")]
    pub certificate_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[arg(required = true)]
    pub graphs: Vec<PathBuf>,
}

/// A failure that maps to the usage exit code.
#[derive(Debug)]
pub struct UsageError(pub String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type Run = Result<(String, Exit), UsageError>;

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match execute(&cli) {
        Ok((text, exit)) => {
            let _ = out.write_all(text.as_bytes());
            exit.code()
        }
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            USAGE
        }
    }
}

fn execute(cli: &Cli) -> Run {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build()?;
    pool.install(|| match &cli.command {
        Command::Generate(a) => generate(a),
        Command::Pi(a) => pi(cli, a),
        Command::Certify(a) => certify(a),
        Command::Verify(a) => verify(cli, a),
        Command::Lp(a) => lp(cli, a),
        Command::Audit(a) => audit(cli, a),
    })
}

fn budget(cli: &Cli) -> Result<SolverBudget, UsageError> {
    let b = SolverBudget::states(cli.budget_states);
    Ok(match cli.budget_seconds {
        None => b,
        Some(s) if s.is_finite() && s > 0.0 => {
            let start = Instant::now();
            b.with_time_limit(Duration::from_secs_f64(s), Arc::new(move || start.elapsed()))
        }
        Some(s) => return Err(UsageError(format!("--budget-seconds must be positive, got {s}"))),
    })
}

fn read(path: &Path) -> Result<String, UsageError> {
    std::fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

pub fn load_graph(path: &Path) -> Result<Graph, UsageError> {
    parse_graph(&read(path)?).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), UsageError> {
    std::fs::write(path, text).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

/// One object for a single item, an array otherwise.
fn render<T: Serialize>(cli: &Cli, items: &[T], text: impl Fn(&T) -> String) -> String {
    match cli.format {
        Format::Json if items.len() == 1 => to_json(&items[0]),
        Format::Json => to_json(&items),
        Format::Text => items.iter().map(text).collect::<Vec<_>>().join("\n"),
    }
}

pub fn generate_graph(family: &str, params: &[usize]) -> Result<Graph, UsageError> {
    let want = |k: usize| -> Result<(), UsageError> {
        if params.len() == k {
            Ok(())
        } else {
            Err(UsageError(format!("{family} takes {k} parameter(s), got {}", params.len())))
        }
    };
    let g = match family {
        "path" => want(1).and_then(|_| Ok(gen::path(params[0])?)),
        "cycle" => want(1).and_then(|_| Ok(gen::cycle(params[0])?)),
        "complete" => want(1).and_then(|_| Ok(gen::complete(params[0])?)),
        "hypercube" => want(1).and_then(|_| Ok(gen::hypercube(params[0])?)),
        "petersen" => want(2).and_then(|_| Ok(gen::petersen_generalized(params[0], params[1])?)),
        "bruhat" => want(1).and_then(|_| Ok(gen::bruhat(params[0])?)),
        "lemke" => want(0).map(|_| gen::lemke()),
        "familyF" => want(2).and_then(|_| Ok(gen::family_f(params[0], params[1])?)),
        "familyG" => want(3).and_then(|_| Ok(gen::family_g(params[0], params[1], params[2])?)),
        "cycle_tail" => want(2).and_then(|_| Ok(cycle_tail_weights(params[0], params[1])?.0)),
        other => Err(UsageError(format!("unknown family {other:?}"))),
    }?;
    Ok(g)
}

fn generate(a: &GenerateArgs) -> Run {
    let g = generate_graph(&a.family, &a.params)?;
    let text = if a.edge_list { edge_list_text(&g) } else { graph_to_json(&g) };
    match &a.out {
        Some(p) => {
            write_file(p, &text)?;
            Ok((String::new(), Exit::Success))
        }
        None => Ok((text, Exit::Success)),
    }
}

fn pi(cli: &Cli, a: &PiArgs) -> Run {
    let g = load_graph(&a.graph)?;
    let budget = budget(cli)?;
    let root = a.root.as_deref().map(|r| resolve_vertex(&g, r)).transpose()?;
    if let (Some(path), Some(r)) = (&a.config, root) {
        let p = parse_configuration(&g, &read(path)?)?;
        let s = is_solvable(&g, r, &p, &budget)?;
        let report = SolveReport::new(r, &p, &s);
        return Ok((render(cli, &[&report], |r| r.text()), report.exit()));
    }
    let report = match root {
        Some(r) => PiReport::rooted(&pebbling_number_rooted(&g, r, &budget)?),
        None => {
            let roots: Vec<Vertex> = if a.vertex_transitive { vec![0] } else { (0..g.n()).collect() };
            let per_root =
                roots.par_iter().map(|&r| pebbling_number_rooted(&g, r, &budget)).collect::<Result<Vec<_>, _>>()?;
            PiReport::global(&per_root)
        }
    };
    Ok((render(cli, &[&report], |r| r.text()), report.exit()))
}

pub fn bundled(name: &str) -> Option<Certificate> {
    catalog::all().into_iter().find(|(n, _)| *n == name).map(|(_, c)| c)
}

fn certify(a: &CertifyArgs) -> Run {
    let cert = if let Some(name) = &a.bundled {
        bundled(name).ok_or_else(|| UsageError(format!("no bundled certificate {name:?}")))?
    } else {
        let path = a.graph.as_ref().ok_or_else(|| UsageError("a graph or --bundled is required".into()))?;
        let g = load_graph(path)?;
        let root = resolve_vertex(&g, a.root.as_deref().ok_or_else(|| UsageError("--root is required".into()))?)?;
        let entries = if let Some(p) = &a.strategies {
            parse_entries(&read(p)?, g.n(), root)?
        } else if a.from_lp {
            let limits = Limits { max_trees: a.max_trees, ..Limits::default() };
            let set = enumerate_tree_strategies(&g, root, limits)?;
            match lp_relaxation_bound(&g, root, &set)? {
                LpBound::Bound(r) => r.to_certificate(&g).entries,
                LpBound::NoBound { uncovered } => {
                    return Err(UsageError(format!("LP has no bound: vertex {uncovered} is uncovered")))
                }
            }
        } else {
            return Err(UsageError("one of --bundled, --strategies or --from-lp is required".into()));
        };
        Certificate { graph: g, root, entries, claimed_bound: 0 }
    };
    // The claimed bound is recomputed from the weights.
    let pairs: Vec<(&WeightFunction, _)> =
        cert.entries.iter().map(|e| (&e.strategy.weight, e.coefficient.clone())).collect();
    let combined = pebbling_core::strategy::combine(&pairs)?;
    let cert = Certificate { claimed_bound: covering_bound(&combined)?.bound, ..cert };
    let text = certificate_to_json(&cert);
    match &a.out {
        Some(p) => {
            write_file(p, &text)?;
            Ok((String::new(), Exit::Success))
        }
        None => Ok((text, Exit::Success)),
    }
}

fn verify(cli: &Cli, a: &VerifyArgs) -> Run {
    let budget = budget(cli)?;
    let mode = match a.mode {
        Mode::Structural => VerifyMode::Structural,
        Mode::Bruteforce => VerifyMode::Bruteforce,
    };
    let certs = a
        .certificates
        .iter()
        .map(|p| {
            parse_certificate(&read(p)?)
                .map(|c| (p.display().to_string(), c))
                .map_err(|e| UsageError(format!("{}: {e}", p.display())))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let many = certs.len() > 1;
    let reports: Vec<VerifyReport> = certs
        .par_iter()
        .map(|(name, c)| VerifyReport::new(many.then(|| name.clone()), c.root, &verify_certificate(c, mode, &budget)))
        .collect();
    let exit = Exit::worst(reports.iter().map(|r| r.exit()));
    Ok((render(cli, &reports, |r| r.text()), exit))
}

fn lp(cli: &Cli, a: &LpArgs) -> Run {
    let g = load_graph(&a.graph)?;
    let budget = budget(cli)?;
    let limits = Limits { max_trees: a.max_trees, max_depth: a.max_depth };
    let roots: Vec<Vertex> = match &a.root {
        Some(r) => vec![resolve_vertex(&g, r)?],
        None => (0..g.n()).collect(),
    };
    let results = roots
        .par_iter()
        .map(|&root| -> Result<(LpReport, Option<Certificate>), pebbling_core::Error> {
            let set = enumerate_tree_strategies(&g, root, limits)?;
            let (report, cert) = match lp_relaxation_bound(&g, root, &set)? {
                LpBound::Bound(r) => {
                    (LpReport::bound(root, set.truncated, &r, r.certifies()?), Some(r.to_certificate(&g)))
                }
                LpBound::NoBound { uncovered } => {
                    (LpReport::no_bound(root, set.strategies.len(), set.truncated, uncovered), None)
                }
            };
            let report = if a.ilp { report.with_ilp(&ilp_bound(&g, root, &set, &budget)?) } else { report };
            Ok((report, cert))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(path) = &a.certificate_out {
        match &results[0].1 {
            Some(c) => write_file(path, &certificate_to_json(c))?,
            None => return Err(UsageError("no bound, so no certificate to write".into())),
        }
    }
    let reports: Vec<LpReport> = results.into_iter().map(|(r, _)| r).collect();
    let exit = Exit::worst(reports.iter().map(|r| r.exit()));
    Ok((render(cli, &reports, |r| r.text()), exit))
}

fn audit(cli: &Cli, a: &AuditArgs) -> Run {
    let budget = budget(cli)?;
    let graphs =
        a.graphs.iter().map(|p| load_graph(p).map(|g| (p.display().to_string(), g))).collect::<Result<Vec<_>, _>>()?;
    let many = graphs.len() > 1;
    let reports = graphs
        .par_iter()
        .map(|(name, g)| refute_class0(g, &budget).map(|r| AuditJson::new(many.then(|| name.clone()), &r)))
        .collect::<Result<Vec<_>, _>>()?;
    let exit = Exit::worst(reports.iter().map(|r| r.exit()));
    Ok((render(cli, &reports, |r| r.text()), exit))
}
