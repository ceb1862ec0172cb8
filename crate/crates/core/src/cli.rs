//! Command-line frontend. `main.rs` only parses arguments and maps errors to
//! exit codes; everything else lives here so it can be tested in process.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::digraph::{GraphClass, TemporalDigraph, Time};
use crate::error::{Error, Result};
use crate::io::{parse_cover, read_instance, write_dot, write_json, write_tg};
use crate::oracle::{dilworth_report, exact_tdpc, exact_tpc, DilworthReport, OracleConfig};
use crate::path::{verify_cover, CoverMode, PathCover};
use crate::{gen, treesolve, twdp};

pub const SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "tempocover", version, about = "Temporal path covers of temporal digraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Seed for random generators.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Output format for `generate` and `convert`.
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Tg)]
    pub format: OutFormat,

    /// Worker threads when several input files are given.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute a minimum cover and print a JSON report.
    Solve {
        files: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = Problem::Tpc)]
        problem: Problem,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Report antichain, TPC and TD-PC sizes and which min-max equalities hold.
    Gap { file: PathBuf },
    /// Write a generated instance.
    Generate {
        #[command(subcommand)]
        family: Family,
    },
    /// Exit 0 iff the cover (or the cover inside a solve report) is valid.
    Verify { instance: PathBuf, cover: PathBuf },
    /// Re-emit an instance in another format; `td` writes a nice tree
    /// decomposition of the underlying graph.
    Convert { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum Family {
    /// Transitive tournament on `n` vertices.
    Tournament { n: usize },
    /// `k` in-leaves and `k` out-leaves around a centre.
    Star { k: usize },
    /// Random instance of a class.
    Random {
        class: GraphClass,
        n: usize,
        #[arg(long, default_value_t = 2)]
        labels: usize,
        #[arg(long, default_value_t = 4)]
        t_max: Time,
    },
    /// Random digraph over a partial k-tree.
    Ktree {
        n: usize,
        width: usize,
        #[arg(long, default_value_t = 2)]
        labels: usize,
        #[arg(long, default_value_t = 3)]
        t_max: Time,
        #[arg(long, default_value_t = 0.8)]
        keep: f64,
        #[arg(long, default_value_t = 0.1)]
        both: f64,
    },
    /// Matching gadget; triples are written `a,b,c`.
    Dm { q: usize, triples: Vec<String> },
    /// Bin-packing gadget.
    Binpacking { bins: u32, capacity: u32, sizes: Vec<u32> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Problem {
    Tpc,
    Tdpc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Auto,
    Tree,
    Dp,
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Tg,
    Json,
    Dot,
    Td,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub schema: u32,
    pub class: GraphClass,
    pub problem: Problem,
    pub method_used: Method,
    pub cover_size: usize,
    pub cover: PathCover,
    pub runtime_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GapReport {
    pub schema: u32,
    pub class: GraphClass,
    #[serde(flatten)]
    pub report: DilworthReport,
}

/// Exit status for an error: 2 unreadable input, 3 wrong graph class,
/// 4 resource limit, 1 anything else.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Malformed(_) | Error::Json(_) => 2,
        Error::Class { .. } => 3,
        Error::Resource(_) => 4,
        Error::Domain(_) | Error::Io(_) => 1,
    }
}

fn tree_cover(d: &TemporalDigraph, problem: Problem) -> Result<PathCover> {
    let class = d.classify();
    let cover = match (class, problem) {
        (GraphClass::OrientedLine, _) => treesolve::solve_oriented_line(d)?,
        (GraphClass::RootedDirectedTree, _) => treesolve::solve_rooted_tree(d)?,
        (GraphClass::OrientedTree, Problem::Tpc) => treesolve::tpc_oriented_tree(d)?,
        (found, Problem::Tpc) => return Err(Error::Class { found, expected: "an oriented tree".into() }),
        (found, Problem::Tdpc) => {
            return Err(Error::Class { found, expected: "a rooted directed tree or an oriented line".into() })
        }
    };
    // a disjoint cover of minimum size is also a minimum plain cover here
    Ok(match problem {
        Problem::Tpc => cover.with_mode(CoverMode::Plain),
        Problem::Tdpc => cover,
    })
}

fn dp_cover(d: &TemporalDigraph, problem: Problem) -> Result<PathCover> {
    Ok(match problem {
        Problem::Tpc => twdp::tpc_dp(d, d.n())?.cover,
        Problem::Tdpc => twdp::tdpc_dp(d)?.cover,
    })
}

fn oracle_cover(d: &TemporalDigraph, problem: Problem, cfg: &OracleConfig) -> Result<PathCover> {
    match problem {
        Problem::Tpc => exact_tpc(d, cfg),
        Problem::Tdpc => exact_tdpc(d, cfg),
    }
}

/// Runs `method` on `d`. `Auto` tries the tree solvers where they apply,
/// then the decomposition DP, then the oracle.
pub fn solve(d: &TemporalDigraph, problem: Problem, method: Method, cfg: &OracleConfig) -> Result<(Method, PathCover)> {
    match method {
        Method::Tree => tree_cover(d, problem).map(|c| (Method::Tree, c)),
        Method::Dp => dp_cover(d, problem).map(|c| (Method::Dp, c)),
        Method::Oracle => oracle_cover(d, problem, cfg).map(|c| (Method::Oracle, c)),
        Method::Auto => {
            let class = d.classify();
            let tree_applies = matches!(class, GraphClass::OrientedLine | GraphClass::RootedDirectedTree)
                || (class == GraphClass::OrientedTree && problem == Problem::Tpc);
            if tree_applies {
                return tree_cover(d, problem).map(|c| (Method::Tree, c));
            }
            match dp_cover(d, problem) {
                Ok(c) => Ok((Method::Dp, c)),
                Err(Error::Resource(msg)) => oracle_cover(d, problem, cfg)
                    .map(|c| (Method::Oracle, c))
                    .map_err(|e| match e {
                        Error::Resource(o) => Error::Resource(format!("{msg}; {o}")),
                        other => other,
                    }),
                Err(e) => Err(e),
            }
        }
    }
}

pub fn cmd_solve(path: &Path, problem: Problem, method: Method, cfg: &OracleConfig) -> Result<SolveReport> {
    let d = read_instance(path)?;
    let start = Instant::now();
    let (method_used, cover) = solve(&d, problem, method, cfg)?;
    let runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(SolveReport {
        schema: SCHEMA,
        class: d.classify(),
        problem,
        method_used,
        cover_size: cover.len(),
        cover,
        runtime_ms,
    })
}

pub fn cmd_gap(path: &Path, cfg: &OracleConfig) -> Result<GapReport> {
    let d = read_instance(path)?;
    Ok(GapReport { schema: SCHEMA, class: d.classify(), report: dilworth_report(&d, cfg)? })
}

fn parse_triple(s: &str) -> Result<(usize, usize, usize)> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Malformed(format!("triple `{s}`: {e}")))?;
    match parts[..] {
        [a, b, c] => Ok((a, b, c)),
        _ => Err(Error::Malformed(format!("triple `{s}` needs three coordinates"))),
    }
}

pub fn cmd_generate(family: &Family, seed: u64) -> Result<TemporalDigraph> {
    match family {
        Family::Tournament { n } => gen::transitive_tournament(*n),
        Family::Star { k } => gen::star(*k),
        Family::Random { class, n, labels, t_max } => gen::random_instance(*class, *n, *labels, *t_max, seed),
        Family::Ktree { n, width, labels, t_max, keep, both } => {
            gen::random_partial_ktree(*n, *width, *labels, *t_max, seed, *keep, *both)
        }
        Family::Dm { q, triples } => {
            let triples = triples.iter().map(|s| parse_triple(s)).collect::<Result<Vec<_>>>()?;
            gen::gadget_3dm(&triples, *q)
        }
        Family::Binpacking { bins, capacity, sizes } => gen::gadget_binpacking(sizes, *bins, *capacity),
    }
}

/// Reads a cover file, or the `cover` field of a solve report.
pub fn read_cover(path: &Path) -> Result<PathCover> {
    let text = std::fs::read_to_string(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    match value.get("cover") {
        Some(inner) => Ok(serde_json::from_value(inner.clone())?),
        None => parse_cover(&text),
    }
}

pub fn cmd_verify(instance: &Path, cover: &Path) -> Result<bool> {
    let d = read_instance(instance)?;
    Ok(verify_cover(&d, &read_cover(cover)?))
}

pub fn render(d: &TemporalDigraph, format: OutFormat) -> String {
    match format {
        OutFormat::Tg => write_tg(d),
        OutFormat::Json => write_json(d),
        OutFormat::Dot => write_dot(d),
        OutFormat::Td => twdp::build_nice_decomposition(d).to_pace(),
    }
}

fn to_json<T: Serialize>(v: &T, pretty: bool) -> String {
    let s = if pretty { serde_json::to_string_pretty(v) } else { serde_json::to_string(v) };
    s.expect("reports serialize")
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    let text = if text.ends_with('\n') { text.to_string() } else { format!("{text}\n") };
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

/// Executes a parsed command line and returns the process exit status.
pub fn run(cli: Cli) -> i32 {
    match run_inner(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn run_inner(cli: &Cli) -> Result<i32> {
    let cfg = OracleConfig::from_env();
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Solve { files, problem, method } => {
            if files.is_empty() {
                return Err(Error::Malformed("no input files".into()));
            }
            let work = |p: &PathBuf| cmd_solve(p, *problem, *method, &cfg);
            let results: Vec<Result<SolveReport>> = match cli.jobs {
                Some(j) if files.len() > 1 => rayon::ThreadPoolBuilder::new()
                    .num_threads(j)
                    .build()
                    .map_err(|e| Error::Domain(e.to_string()))?
                    .install(|| files.par_iter().map(work).collect()),
                _ => files.iter().map(work).collect(),
            };
            if let [single] = &results[..] {
                return match single {
                    Ok(r) => emit(out, &to_json(r, true)).map(|_| 0),
                    Err(e) => Ok(report_error(&files[0], e)),
                };
            }
            let mut lines = String::new();
            let mut code = 0;
            for (path, r) in files.iter().zip(&results) {
                match r {
                    Ok(r) => {
                        lines.push_str(&to_json(r, false));
                        lines.push('\n');
                    }
                    Err(e) => {
                        let c = report_error(path, e);
                        if code == 0 {
                            code = c;
                        }
                    }
                }
            }
            emit(out, &lines)?;
            Ok(code)
        }
        Command::Gap { file } => {
            let r = cmd_gap(file, &cfg)?;
            emit(out, &to_json(&r, true)).map(|_| 0)
        }
        Command::Generate { family } => {
            let d = cmd_generate(family, cli.seed)?;
            emit(out, &render(&d, cli.format)).map(|_| 0)
        }
        Command::Verify { instance, cover } => {
            let ok = cmd_verify(instance, cover)?;
            emit(out, if ok { "valid" } else { "invalid" })?;
            Ok(if ok { 0 } else { 1 })
        }
        Command::Convert { file } => {
            let d = read_instance(file)?;
            emit(out, &render(&d, cli.format)).map(|_| 0)
        }
    }
}

fn report_error(path: &Path, e: &Error) -> i32 {
    eprintln!("error: {}: {e}", path.display());
    exit_code(e)
}
