//! Command-line front end. Exit status: 0 success or PASS, 1 FAIL or
//! infeasible, 2 usage or parse errors.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{ArgAction, Args, Parser, Subcommand};

use hopdomlab::geometry::{
    disks_to_csv, disks_to_dot, disks_to_svg, embed_orthogonal_scaled, parse_embedding, reduce_unit_disk,
    validate_embedding, DiskLayout, GridEmbedding, DEFAULT_SCALE,
};
use hopdomlab::reduction::{parse_kind, Family, Reduction, ReductionKind};
use hopdomlab::solver::{is_valid, solve_with, CancelToken, MethodChoice, Problem, SolveOptions};
use hopdomlab::verify::{
    default_plan, enumerate_corpus, run_plan, run_verification, CorpusMode, CorpusSpec, Filter, VerifyConfig,
};
use hopdomlab::{parse_graph, serialize_graph, Error, Graph, VertexSet};

#[derive(Parser)]
#[command(name = "hopdomlab", version, about = "Hop domination and 2-step domination: solvers, reductions, verification")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Minimum vc, hd or 2sd solution of a graph.
    Solve(SolveArgs),
    /// Checks a vertex set against a problem definition.
    Check(CheckArgs),
    /// Builds G2 from G1 for a reduction kind.
    Reduce(ReduceArgs),
    /// Orthogonal grid embedding of a planar graph of maximum degree 4.
    Embed(EmbedArgs),
    /// Unit-disk layout from a graph or an embedding.
    Layout(LayoutArgs),
    /// Runs reductions over a corpus against the exact solvers.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Io {
    /// input file; stdin when omitted or `-`
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// output file; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    problem: Problem,
    #[command(flatten)]
    io: Io,
    /// stop at the first solution of at most this size
    #[arg(long)]
    at_most: Option<usize>,
    /// lexicographically smallest witness among minimum ones
    #[arg(long, default_value_t = true, action = ArgAction::Set)]
    deterministic: bool,
    /// auto, brute or bnb
    #[arg(long, default_value = "auto")]
    method: String,
    /// wall-clock limit, e.g. 30s or 5m
    #[arg(long, value_parser = humantime::parse_duration)]
    timeout: Option<Duration>,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    problem: Problem,
    #[command(flatten)]
    io: Io,
    /// vertex ids, space- or comma-separated
    #[arg(long, allow_hyphen_values = true)]
    set: String,
}

#[derive(Args)]
struct ReduceArgs {
    /// hd-3reg, 2sd-3reg, hd-dreg, 2sd-dreg, hd-claw, 2sd-claw, hd-ud, 2sd-ud
    #[arg(long)]
    kind: String,
    #[arg(long)]
    d: Option<usize>,
    #[command(flatten)]
    io: Io,
    /// role map as id<TAB>role lines
    #[arg(long)]
    roles: Option<PathBuf>,
    /// full reduction document (graph, offset, roles)
    #[arg(long)]
    report: Option<PathBuf>,
    /// print the forward certificate of this vertex cover of G1
    #[arg(long)]
    cover: Option<String>,
    /// print the vertex cover extracted from this solution of G2
    #[arg(long)]
    extract: Option<String>,
    /// stretch factor for unit-disk kinds
    #[arg(long, default_value_t = DEFAULT_SCALE)]
    scale: u32,
    /// embedding file for unit-disk kinds (instead of embedding G1)
    #[arg(long)]
    embedding: Option<PathBuf>,
}

#[derive(Args)]
struct EmbedArgs {
    #[command(flatten)]
    io: Io,
    #[arg(long, default_value_t = DEFAULT_SCALE)]
    scale: u32,
}

#[derive(Args)]
struct LayoutArgs {
    /// hd or 2sd
    #[arg(long)]
    problem: Problem,
    /// graph file to embed first
    #[arg(long = "in", conflicts_with = "embedding")]
    input: Option<PathBuf>,
    /// embedding file
    #[arg(long)]
    embedding: Option<PathBuf>,
    /// CSV layout; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_SCALE)]
    scale: u32,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long)]
    dot: Option<PathBuf>,
    /// intersection graph as an edge list
    #[arg(long)]
    graph: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// default, named, named:K2,P3, exhaustive:N, random-regular:N,D,COUNT,SEED
    #[arg(long, default_value = "default")]
    corpus: String,
    /// comma-separated kinds, or `all`
    #[arg(long, default_value = "all")]
    kinds: String,
    /// d for hd-dreg / 2sd-dreg
    #[arg(long, default_value_t = 4)]
    d: usize,
    /// per-row wall-clock budget
    #[arg(long, default_value = "300s", value_parser = humantime::parse_duration)]
    budget: Duration,
    /// stretch factor for unit-disk rows
    #[arg(long, default_value_t = 2)]
    scale: u32,
    /// replaces the seed of a random-regular corpus
    #[arg(long)]
    seed: Option<u64>,
    /// connected, cubic, planar4 (comma-separated)
    #[arg(long)]
    filter: Option<String>,
    #[arg(long, default_value_t = true, action = ArgAction::Set)]
    deterministic: bool,
    /// report file; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// also print an aligned table to stdout
    #[arg(long)]
    table: bool,
}

/// Failure that maps to an exit status.
enum Fail {
    /// exit 1
    Negative,
    Lib(Error),
    Io(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

impl From<io::Error> for Fail {
    fn from(e: io::Error) -> Self {
        Fail::Io(e.to_string())
    }
}

type Res = Result<(), Fail>;

fn read_input(path: &Option<PathBuf>) -> Result<String, Fail> {
    match path {
        Some(p) if p != Path::new("-") => {
            fs::read_to_string(p).map_err(|e| Fail::Io(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn write_to(path: &Path, text: &str) -> Res {
    fs::write(path, text).map_err(|e| Fail::Io(format!("{}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Res {
    match out {
        Some(p) => write_to(p, text),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn read_graph(path: &Option<PathBuf>) -> Result<Graph, Fail> {
    Ok(parse_graph(&read_input(path)?)?)
}

fn solve(a: SolveArgs) -> Res {
    let g = read_graph(&a.io.input)?;
    let method = match a.method.as_str() {
        "auto" => MethodChoice::Auto,
        "brute" => MethodChoice::Brute,
        "bnb" => MethodChoice::BranchAndBound,
        m => return Err(Error::Input(format!("unknown method {m:?}")).into()),
    };
    let opts = SolveOptions {
        budget: a.at_most,
        deterministic: a.deterministic,
        method,
        cancel: a.timeout.map(CancelToken::with_timeout),
    };
    let r = solve_with(&g, a.problem, &opts)?;
    let text = match (&r.optimum, &r.witness) {
        (Some(k), Some(w)) => format!(
            "optimum {k}\nwitness {w}\nnodes {}\nmethod {}\nproven {}\n",
            r.nodes_explored, r.method, r.proven_optimal
        ),
        _ => format!("optimum infeasible\nnodes {}\nmethod {}\n", r.nodes_explored, r.method),
    };
    emit(&a.io.out, &text)?;
    if r.is_feasible() {
        Ok(())
    } else {
        Err(Fail::Negative)
    }
}

fn check(a: CheckArgs) -> Res {
    let g = read_graph(&a.io.input)?;
    let s: VertexSet = a.set.parse()?;
    s.check_range(g.n())?;
    let ok = is_valid(&g, a.problem, &s);
    emit(&a.io.out, if ok { "valid\n" } else { "invalid\n" })?;
    if ok {
        Ok(())
    } else {
        Err(Fail::Negative)
    }
}

fn embedding_for(g: &Graph, file: &Option<PathBuf>, scale: u32) -> Result<GridEmbedding, Fail> {
    match file {
        Some(p) => Ok(parse_embedding(&read_input(&Some(p.clone()))?)?),
        None => Ok(embed_orthogonal_scaled(g, scale)?),
    }
}

fn reduce(a: ReduceArgs) -> Res {
    let kind = parse_kind(&a.kind, a.d)?;
    let (red, layout): (Reduction, Option<DiskLayout>) = if kind.family() == Family::UnitDisk {
        let emb = match &a.embedding {
            Some(_) => embedding_for(&Graph::empty(0), &a.embedding, a.scale)?,
            None => embedding_for(&read_graph(&a.io.input)?, &None, a.scale)?,
        };
        let l = reduce_unit_disk(kind.problem(), &emb)?;
        (l.reduction()?, Some(l))
    } else {
        (hopdomlab::reduce(kind, &read_graph(&a.io.input)?)?, None)
    };
    let mut summary = format!("kind {}\noffset {}\nvertices {}\nedges {}\n", kind, red.offset, red.output.n(), red.output.m());
    if let Some(l) = &layout {
        summary.push_str(&format!("grid_lengths {:?}\nprinted_offset {}\n", l.grid_lengths(), l.printed_offset()));
    }
    if let Some(c) = &a.cover {
        let vc: VertexSet = c.parse()?;
        summary.push_str(&format!("certificate {}\n", red.forward_certificate(&vc)?));
    }
    if let Some(x) = &a.extract {
        let sol: VertexSet = x.parse()?;
        summary.push_str(&format!("cover {}\n", red.extract_vertex_cover(&sol)?));
    }
    if let Some(p) = &a.roles {
        write_to(p, &red.roles_tsv())?;
    }
    if let Some(p) = &a.report {
        write_to(p, &red.to_report())?;
    }
    match &a.io.out {
        Some(p) => {
            write_to(p, &serialize_graph(&red.output))?;
            io::stdout().write_all(summary.as_bytes())?;
        }
        // without --out the reduction document carries the graph
        None if a.report.is_none() => {
            io::stderr().write_all(summary.as_bytes())?;
            io::stdout().write_all(red.to_report().as_bytes())?;
        }
        None => io::stdout().write_all(summary.as_bytes())?,
    }
    Ok(())
}

fn embed(a: EmbedArgs) -> Res {
    let g = read_graph(&a.io.input)?;
    let e = embed_orthogonal_scaled(&g, a.scale)?;
    debug_assert!(validate_embedding(&e));
    emit(&a.io.out, &e.to_text())
}

fn layout(a: LayoutArgs) -> Res {
    if a.problem == Problem::VertexCover {
        return Err(Error::Input("layouts target hd or 2sd".into()).into());
    }
    let emb = match &a.embedding {
        Some(_) => embedding_for(&Graph::empty(0), &a.embedding, a.scale)?,
        None => embedding_for(&read_graph(&a.input)?, &None, a.scale)?,
    };
    let l = reduce_unit_disk(a.problem, &emb)?;
    emit(&a.out, &disks_to_csv(&l.disks))?;
    if let Some(p) = &a.svg {
        write_to(p, &disks_to_svg(&l.disks))?;
    }
    if let Some(p) = &a.dot {
        write_to(p, &disks_to_dot(&l.disks))?;
    }
    if let Some(p) = &a.graph {
        write_to(p, &serialize_graph(&l.intersection_graph()))?;
    }
    eprintln!(
        "disks {} offset {} printed_offset {} grid_lengths {:?}",
        l.disks.len(),
        l.offset,
        l.printed_offset(),
        l.grid_lengths()
    );
    Ok(())
}

fn verify(a: VerifyArgs) -> Res {
    let kinds: Vec<ReductionKind> = if a.kinds == "all" {
        let mut k = ReductionKind::all_graph_kinds(a.d)?;
        k.push(ReductionKind::new(Problem::HopDom, Family::UnitDisk)?);
        k.push(ReductionKind::new(Problem::TwoStepDom, Family::UnitDisk)?);
        k
    } else {
        a.kinds.split(',').map(|s| parse_kind(s.trim(), Some(a.d))).collect::<Result<_, _>>()?
    };
    let filters: Vec<Filter> = match &a.filter {
        Some(f) => f.split(',').map(str::parse).collect::<Result<_, _>>()?,
        None => Vec::new(),
    };
    let cfg = VerifyConfig { budget: a.budget, deterministic: a.deterministic, ud_scale: a.scale, threads: None };
    let report = if a.corpus == "default" {
        let mut plan = default_plan(&kinds)?;
        for (_, gs) in &mut plan {
            gs.retain(|g| filters.iter().all(|f| f.accepts(&g.graph)));
        }
        run_plan(&plan, &cfg)
    } else {
        let mut spec: CorpusSpec = a.corpus.parse()?;
        if let (Some(s), CorpusMode::RandomRegular { seed, .. }) = (a.seed, &mut spec.mode) {
            *seed = s;
        }
        spec.filters = filters;
        let corpus = enumerate_corpus(&spec)?;
        run_verification(&corpus, &kinds, &cfg)
    };
    match (&a.out, a.table) {
        (Some(p), true) => {
            write_to(p, &report.to_tsv())?;
            io::stdout().write_all(report.to_table().as_bytes())?;
        }
        (None, true) => io::stdout().write_all(report.to_table().as_bytes())?,
        _ => emit(&a.out, &report.to_tsv())?,
    }
    if report.overall_pass() {
        Ok(())
    } else {
        Err(Fail::Negative)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Solve(a) => solve(a),
        Cmd::Check(a) => check(a),
        Cmd::Reduce(a) => reduce(a),
        Cmd::Embed(a) => embed(a),
        Cmd::Layout(a) => layout(a),
        Cmd::Verify(a) => verify(a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Negative) => ExitCode::from(1),
        Err(Fail::Lib(e @ (Error::Parse { .. } | Error::Input(_)))) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Fail::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Fail::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
