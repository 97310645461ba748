//! Runs reductions against the exact solvers and records every outcome.

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::corpus::NamedGraph;
use crate::error::{Error, Result};
use crate::geometry::{
    embed_orthogonal_scaled, graph_is_planar, reduce_unit_disk, separation_violations,
    unit_disk_forward_certificate,
};
use crate::graph::{Graph, VertexSet};
use crate::reduction::{reduce, Family, Reduction, ReductionKind};
use crate::solver::{is_valid, solve_with, CancelToken, Problem, SolveOptions, SolveResult};

pub const THREADS_ENV: &str = "HOPDOMLAB_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RowStatus {
    Pass,
    Fail,
    Timeout,
    Skipped,
}

impl fmt::Display for RowStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RowStatus::Pass => "PASS",
            RowStatus::Fail => "FAIL",
            RowStatus::Timeout => "TIMEOUT",
            RowStatus::Skipped => "SKIPPED",
        })
    }
}

/// Outcome of an auxiliary check; `None` when it was not run.
pub type Check = Option<bool>;

#[derive(Clone, Debug)]
pub struct VerifyRow {
    pub graph_name: String,
    pub source: Graph,
    pub kind: ReductionKind,
    pub n1: usize,
    pub m1: usize,
    pub n2: Option<usize>,
    pub tau: Option<usize>,
    /// `None` if not computed or infeasible; see `gamma_infeasible`
    pub gamma: Option<usize>,
    pub gamma_infeasible: bool,
    pub offset: Option<usize>,
    pub status: RowStatus,
    /// forward certificates of every minimum cover, and their extraction
    pub certificate: Check,
    /// extraction applied to the solver's witness
    pub extraction: Check,
    /// regularity, claw-freeness or template fidelity, per family
    pub structure: Check,
    pub vc_witness: Option<VertexSet>,
    pub witness: Option<VertexSet>,
    pub nodes: u64,
    pub wall: Duration,
    pub note: String,
}

impl VerifyRow {
    fn new(g: &NamedGraph, kind: ReductionKind) -> Self {
        VerifyRow {
            graph_name: g.name.clone(),
            source: g.graph.clone(),
            kind,
            n1: g.graph.n(),
            m1: g.graph.m(),
            n2: None,
            tau: None,
            gamma: None,
            gamma_infeasible: false,
            offset: None,
            status: RowStatus::Skipped,
            certificate: None,
            extraction: None,
            structure: None,
            vc_witness: None,
            witness: None,
            nodes: 0,
            wall: Duration::ZERO,
            note: String::new(),
        }
    }

    pub fn expected(&self) -> Option<usize> {
        Some(self.tau? + self.offset?)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub timeout: usize,
    pub skipped: usize,
    /// rows whose auxiliary checks failed, whatever their status
    pub check_failures: usize,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub rows: Vec<VerifyRow>,
}

impl VerifyReport {
    pub fn summary(&self) -> Summary {
        let mut s = Summary::default();
        for r in &self.rows {
            match r.status {
                RowStatus::Pass => s.pass += 1,
                RowStatus::Fail => s.fail += 1,
                RowStatus::Timeout => s.timeout += 1,
                RowStatus::Skipped => s.skipped += 1,
            }
            if [r.certificate, r.extraction, r.structure].contains(&Some(false)) {
                s.check_failures += 1;
            }
        }
        s
    }

    /// Fails iff some row fails.
    pub fn overall_pass(&self) -> bool {
        self.rows.iter().all(|r| r.status != RowStatus::Fail)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub budget: Duration,
    pub deterministic: bool,
    /// stretch factor for unit-disk embeddings
    pub ud_scale: u32,
    /// worker cap; `None` reads `HOPDOMLAB_THREADS`, then uses all cores
    pub threads: Option<usize>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { budget: Duration::from_secs(300), deterministic: true, ud_scale: 2, threads: None }
    }
}

/// Worker count from the environment, if set to a positive integer.
pub fn env_threads() -> Option<usize> {
    std::env::var(THREADS_ENV).ok()?.trim().parse().ok().filter(|&t| t > 0)
}

/// One row per (graph, kind), graph-major, in input order.
pub fn run_verification(corpus: &[NamedGraph], kinds: &[ReductionKind], cfg: &VerifyConfig) -> VerifyReport {
    let jobs: Vec<(&NamedGraph, ReductionKind)> =
        corpus.iter().flat_map(|g| kinds.iter().map(move |&k| (g, k))).collect();
    run_jobs(&jobs, cfg)
}

/// Like [`run_verification`] but with a separate corpus per kind.
pub fn run_plan(plan: &[(ReductionKind, Vec<NamedGraph>)], cfg: &VerifyConfig) -> VerifyReport {
    let jobs: Vec<(&NamedGraph, ReductionKind)> =
        plan.iter().flat_map(|(k, gs)| gs.iter().map(move |g| (g, *k))).collect();
    run_jobs(&jobs, cfg)
}

fn run_jobs(jobs: &[(&NamedGraph, ReductionKind)], cfg: &VerifyConfig) -> VerifyReport {
    let threads = cfg.threads.or_else(env_threads).unwrap_or(0);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool");
    let rows = pool.install(|| jobs.par_iter().map(|&(g, k)| verify_row(g, k, cfg)).collect());
    VerifyReport { rows }
}

/// Builds, solves and checks a single (graph, kind) pair.
pub fn verify_row(g: &NamedGraph, kind: ReductionKind, cfg: &VerifyConfig) -> VerifyRow {
    let start = Instant::now();
    let mut row = VerifyRow::new(g, kind);
    let cancel = CancelToken::with_timeout(cfg.budget);
    let res = fill_row(&mut row, cfg, &cancel);
    match res {
        Ok(()) => {}
        Err(Error::Cancelled) => {
            row.status = RowStatus::Timeout;
            row.note = format!("exceeded {}s", cfg.budget.as_secs());
        }
        Err(e) => {
            row.status = RowStatus::Fail;
            row.note = e.to_string();
        }
    }
    row.wall = start.elapsed();
    row
}

fn solve(g: &Graph, p: Problem, cfg: &VerifyConfig, cancel: &CancelToken) -> Result<SolveResult> {
    let opts = SolveOptions { deterministic: cfg.deterministic, cancel: Some(cancel.clone()), ..Default::default() };
    solve_with(g, p, &opts)
}

fn fill_row(row: &mut VerifyRow, cfg: &VerifyConfig, cancel: &CancelToken) -> Result<()> {
    let g1 = row.source.clone();
    let red = if row.kind.family() == Family::UnitDisk {
        if g1.max_degree() > 4 || !graph_is_planar(&g1) {
            row.note = "source is not planar with maximum degree <= 4".into();
            return Ok(());
        }
        let emb = match embed_orthogonal_scaled(&g1, cfg.ud_scale) {
            Ok(e) => e,
            Err(e @ Error::Embedding(_)) => {
                row.note = e.to_string();
                return Ok(());
            }
            Err(e) => return Err(e),
        };
        let layout = reduce_unit_disk(row.kind.problem(), &emb)?;
        let template_ok = layout.template_mismatches().is_empty();
        row.structure = Some(template_ok && separation_violations(&layout.disks).is_empty());
        let red = layout.reduction()?;
        row.note = format!("grid lengths {:?}", layout.grid_lengths());
        // the layout builds certificates itself; check they agree
        let tau = solve(&g1, Problem::VertexCover, cfg, cancel)?;
        if let Some(vc) = &tau.witness {
            let a = unit_disk_forward_certificate(&layout, vc)?;
            let b = red.forward_certificate(vc)?;
            if a != b {
                row.certificate = Some(false);
            }
        }
        red
    } else {
        let red = reduce(row.kind, &g1)?;
        row.structure = Some(structure_ok(&red));
        red
    };
    row.n2 = Some(red.output.n());
    row.offset = Some(red.offset);

    let tau = solve(&g1, Problem::VertexCover, cfg, cancel)?;
    row.tau = tau.optimum;
    row.vc_witness = tau.witness.clone();
    row.nodes += tau.nodes_explored;
    let tau_v = tau.optimum.expect("every graph has a vertex cover");

    if row.certificate.is_none() {
        row.certificate = Some(certificates_ok(&red, tau_v, cancel)?);
    }

    let gamma = solve(&red.output, red.problem(), cfg, cancel)?;
    row.nodes += gamma.nodes_explored;
    row.gamma = gamma.optimum;
    row.gamma_infeasible = gamma.optimum.is_none();
    row.witness = gamma.witness.clone();
    if let Some(w) = &gamma.witness {
        row.extraction = Some(match red.extract_vertex_cover(w) {
            Ok(c) => c.len() + red.offset <= w.len(),
            Err(_) => false,
        });
    }
    row.status = if row.gamma == row.expected() { RowStatus::Pass } else { RowStatus::Fail };
    Ok(())
}

/// Every minimum cover of the source: its certificate must be valid with
/// size `tau + offset`, and extraction must give back a cover of size `<= tau`.
fn certificates_ok(red: &Reduction, tau: usize, cancel: &CancelToken) -> Result<bool> {
    for vc in minimum_covers(&red.source, tau, cancel)? {
        let cert = match red.forward_certificate(&vc) {
            Ok(c) => c,
            Err(_) => return Ok(false),
        };
        if cert.len() != tau + red.offset || !is_valid(&red.output, red.problem(), &cert) {
            return Ok(false);
        }
        match red.extract_vertex_cover(&cert) {
            Ok(back) if back.len() <= tau => {}
            _ => return Ok(false),
        }
    }
    Ok(true)
}

/// All vertex covers of size exactly `tau`, in lexicographic order.
pub fn minimum_covers(g: &Graph, tau: usize, cancel: &CancelToken) -> Result<Vec<VertexSet>> {
    let n = g.n();
    let edges = g.edges();
    let mut out = Vec::new();
    let mut pick: Vec<usize> = (0..tau).collect();
    if tau > n {
        return Ok(out);
    }
    loop {
        if cancel.is_cancelled() {
            return Err(Error::Cancelled);
        }
        let set = VertexSet::from_ids(pick.iter().copied());
        if edges.iter().all(|&(u, v)| set.contains(u) || set.contains(v)) {
            out.push(set);
        }
        // next combination
        let mut i = tau;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if pick[i] != i + n - tau {
                break;
            }
        }
        pick[i] += 1;
        for j in i + 1..tau {
            pick[j] = pick[j - 1] + 1;
        }
    }
}

/// Degree audit for the regular families (gadget vertices always; source
/// vertices too when the source itself is regular of the target degree),
/// claw scan for the claw-free ones.
pub fn structure_ok(red: &Reduction) -> bool {
    let d = match red.kind.family() {
        Family::ClawFree => return red.output.is_claw_free(),
        Family::UnitDisk => return true,
        Family::ThreeRegular => 3,
        Family::DRegular(d) => d,
    };
    let n1 = red.source.n();
    let gadget_ok = (n1..red.output.n()).all(|v| red.output.degree(v) == d);
    gadget_ok && (!red.source.is_regular(d) || red.output.is_regular(d))
}

/// Default plan: named list plus exhaustive(5) for claw-free and d-regular
/// kinds, K2 and P3 for 3-regular and unit-disk kinds.
pub fn default_plan(kinds: &[ReductionKind]) -> Result<Vec<(ReductionKind, Vec<NamedGraph>)>> {
    use super::corpus::{enumerate_corpus, CorpusMode, CorpusSpec, NAMED_DEFAULT};
    let small = enumerate_corpus(&CorpusSpec::named(&["K2", "P3"]))?;
    let mut wide = enumerate_corpus(&CorpusSpec::named(&NAMED_DEFAULT))?;
    wide.extend(enumerate_corpus(&CorpusSpec::new(CorpusMode::Exhaustive(5)))?);
    Ok(kinds
        .iter()
        .map(|&k| match k.family() {
            Family::ThreeRegular | Family::UnitDisk => (k, small.clone()),
            _ => (k, wide.clone()),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::super::corpus::{enumerate_corpus, CorpusSpec};
    use super::*;

    fn kind(p: Problem, f: Family) -> ReductionKind {
        ReductionKind::new(p, f).unwrap()
    }

    fn k2() -> Vec<NamedGraph> {
        enumerate_corpus(&CorpusSpec::named(&["K2"])).unwrap()
    }

    #[test]
    fn k2_d_regular_row() {
        let r = run_verification(&k2(), &[kind(Problem::HopDom, Family::DRegular(4))], &VerifyConfig::default());
        let row = &r.rows[0];
        assert_eq!((row.tau, row.gamma, row.offset), (Some(1), Some(2), Some(1)));
        assert_eq!(row.status, RowStatus::Pass);
        assert_eq!((row.certificate, row.extraction, row.structure), (Some(true), Some(true), Some(true)));
        assert!(r.overall_pass());
    }

    #[test]
    fn k2_three_regular_row() {
        let r = run_verification(&k2(), &[kind(Problem::HopDom, Family::ThreeRegular)], &VerifyConfig::default());
        let row = &r.rows[0];
        assert_eq!((row.tau, row.gamma, row.offset, row.n2), (Some(1), Some(7), Some(6), Some(32)));
        assert_eq!(row.status, RowStatus::Pass);
    }

    #[test]
    fn empty_corpus_passes() {
        let r = run_verification(&[], &ReductionKind::all_graph_kinds(4).unwrap(), &VerifyConfig::default());
        assert!(r.rows.is_empty());
        assert!(r.overall_pass());
    }

    #[test]
    fn unit_disk_rows_skip_non_planar_sources() {
        let g = enumerate_corpus(&CorpusSpec::named(&["K33", "K2"])).unwrap();
        let r = run_verification(&g, &[kind(Problem::HopDom, Family::UnitDisk)], &VerifyConfig::default());
        assert_eq!(r.rows[0].status, RowStatus::Skipped);
        assert_eq!(r.rows[1].status, RowStatus::Pass);
        assert_eq!(r.rows[1].gamma, Some(8));
        assert_eq!(r.summary(), Summary { pass: 1, skipped: 1, ..Default::default() });
    }

    #[test]
    fn tiny_budget_times_out() {
        let g = enumerate_corpus(&CorpusSpec::named(&["P3"])).unwrap();
        let cfg = VerifyConfig { budget: Duration::ZERO, ..Default::default() };
        let r = run_verification(&g, &[kind(Problem::HopDom, Family::ThreeRegular)], &cfg);
        assert_eq!(r.rows[0].status, RowStatus::Timeout);
        assert!(r.overall_pass());
    }

    #[test]
    fn covers_are_enumerated() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let all = minimum_covers(&c4, 2, &CancelToken::new()).unwrap();
        assert_eq!(all, vec![VertexSet::from_ids([0, 2]), VertexSet::from_ids([1, 3])]);
    }
}
