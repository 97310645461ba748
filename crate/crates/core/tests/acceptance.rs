//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::time::{Duration, Instant};

use hopdomlab::reduction::{build_regular_graph, Family, ReductionKind};
use hopdomlab::solver::{
    is_hop_dominating, is_valid, solve_with, MethodChoice, Problem, SolveOptions,
};
use hopdomlab::verify::{
    builtin, enumerate_corpus, verify_row, CorpusMode, CorpusSpec, NamedGraph, RowStatus, VerifyConfig, VerifyRow,
};
use hopdomlab::{reduce, VertexSet};

struct Outcome {
    pass: bool,
    detail: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { pass: true, detail: Vec::new() }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.pass = false;
            self.detail.push(what.into());
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.detail.push(what.into());
    }
}

fn kind(p: Problem, f: Family) -> ReductionKind {
    ReductionKind::new(p, f).unwrap()
}

fn named(names: &[&str]) -> Vec<NamedGraph> {
    enumerate_corpus(&CorpusSpec::named(names)).unwrap()
}

fn exhaustive(n: usize) -> Vec<NamedGraph> {
    enumerate_corpus(&CorpusSpec::new(CorpusMode::Exhaustive(n))).unwrap()
}

fn cfg(budget: Duration) -> VerifyConfig {
    VerifyConfig { budget, ..Default::default() }
}

fn show(r: &VerifyRow) -> String {
    let o = |v: Option<usize>| v.map_or("-".to_string(), |x| x.to_string());
    format!(
        "{} {}: gamma={} expected={} n2={} status={} cert={:?} extract={:?} structure={:?}",
        r.graph_name,
        r.kind,
        if r.gamma_infeasible { "inf".into() } else { o(r.gamma) },
        o(r.expected()),
        o(r.n2),
        r.status,
        r.certificate,
        r.extraction,
        r.structure
    )
}

/// Rows collected for the certificate criterion.
type Rows = Vec<VerifyRow>;

fn criterion_1() -> Outcome {
    let mut o = Outcome::new();
    let corpus = exhaustive(7);
    o.require(corpus.len() == 996, format!("corpus has {} graphs, expected 996", corpus.len()));
    for g in &corpus {
        for p in Problem::ALL {
            let run = |m| {
                let opts = SolveOptions { method: m, deterministic: false, ..Default::default() };
                solve_with(&g.graph, p, &opts).unwrap()
            };
            let (a, b) = (run(MethodChoice::Brute), run(MethodChoice::BranchAndBound));
            if a.optimum != b.optimum {
                o.require(false, format!("{} {p}: brute {:?} vs bnb {:?}", g.name, a.optimum, b.optimum));
            }
            for w in [&a.witness, &b.witness].into_iter().flatten() {
                if !is_valid(&g.graph, p, w) || Some(w.len()) != a.optimum {
                    o.require(false, format!("{} {p}: bad witness {{{w}}}", g.name));
                }
            }
        }
    }
    o.note(format!("{} graphs x 3 problems", corpus.len()));
    o
}

fn criterion_2(rows: &mut Rows) -> Outcome {
    let mut o = Outcome::new();
    let k = kind(Problem::HopDom, Family::ThreeRegular);
    for (g, want_n2, want_gamma, mandatory) in [("K2", 32, 7, true), ("P3", 63, 13, false)] {
        let r = verify_row(&named(&[g])[0], k, &cfg(Duration::from_secs(600)));
        o.require(r.n2 == Some(want_n2), format!("{g}: n2={:?}, expected {want_n2}", r.n2));
        match r.status {
            RowStatus::Timeout if !mandatory => o.note(format!("{g}: TIMEOUT (allowed)")),
            _ => o.require(
                r.status == RowStatus::Pass && r.gamma == Some(want_gamma),
                format!("{g}: gamma {:?}, expected {want_gamma}, status {}", r.gamma, r.status),
            ),
        }
        o.note(show(&r));
        rows.push(r);
    }
    o
}

fn criterion_3(rows: &mut Rows) -> Outcome {
    let mut o = Outcome::new();
    let k = kind(Problem::TwoStepDom, Family::ThreeRegular);
    let r = verify_row(&named(&["K2"])[0], k, &cfg(Duration::from_secs(1)));
    o.require(r.gamma == Some(4) && r.status == RowStatus::Pass, format!("K2: {}", show(&r)));
    o.require(r.n2 == Some(14), format!("K2: n2={:?}, expected 14", r.n2));
    o.note(show(&r));
    rows.push(r);
    let r = verify_row(&named(&["C3"])[0], k, &cfg(Duration::from_secs(300)));
    o.require(r.gamma == Some(11) && r.status == RowStatus::Pass, format!("C3: {}", show(&r)));
    o.note(show(&r));
    rows.push(r);
    o
}

fn regular_criterion(p: Problem, per_edge: usize, rows: &mut Rows) -> Outcome {
    let mut o = Outcome::new();
    for d in [4, 5] {
        let k = kind(p, Family::DRegular(d));
        for g in named(&["K2", "P3", "C3"]) {
            let r = verify_row(&g, k, &cfg(Duration::from_secs(60)));
            let want = r.tau.map(|t| t + per_edge * g.graph.m());
            let ok = r.status == RowStatus::Pass && r.gamma == want && r.offset == Some(per_edge * g.graph.m());
            o.require(ok, show(&r));
            o.require(r.structure == Some(true), format!("{} {k}: degree audit failed", g.name));
            rows.push(r);
        }
        let src = builtin(&format!("K{}", d + 1)).unwrap();
        let red = reduce(k, &src).unwrap();
        o.require(red.output.is_regular(d), format!("{k} on K{}: output not {d}-regular", d + 1));
    }
    o
}

fn criterion_6(rows: &mut Rows) -> Outcome {
    let mut o = Outcome::new();
    let corpus = exhaustive(4);
    o.require(corpus.len() == 10, format!("{} sources, expected 10", corpus.len()));
    for p in [Problem::HopDom, Problem::TwoStepDom] {
        let k = kind(p, Family::ClawFree);
        for g in &corpus {
            let r = verify_row(g, k, &cfg(Duration::from_secs(600)));
            let ok = r.status == RowStatus::Pass;
            o.require(ok, show(&r));
            o.require(r.structure == Some(true), format!("{} {k}: output has a claw", g.name));
            rows.push(r);
        }
    }
    o
}

fn criterion_7(rows: &mut Rows) -> Outcome {
    let mut o = Outcome::new();
    let r = verify_row(&named(&["K2"])[0], kind(Problem::HopDom, Family::UnitDisk), &cfg(Duration::from_secs(300)));
    o.require(r.n2 == Some(28), format!("disks {:?}, expected 28", r.n2));
    o.require(r.gamma == Some(8) && r.offset == Some(7) && r.status == RowStatus::Pass, show(&r));
    o.require(r.structure == Some(true), "template fidelity or separation failed");
    o.note(show(&r));
    rows.push(r);
    o
}

fn criterion_8(rows: &mut Rows) -> Outcome {
    use hopdomlab::geometry::{embed_orthogonal_scaled, reduce_unit_disk};
    let mut o = Outcome::new();
    let k2 = builtin("K2").unwrap();
    let r = verify_row(&named(&["K2"])[0], kind(Problem::TwoStepDom, Family::UnitDisk), &cfg(Duration::from_secs(300)));
    o.require(r.gamma == Some(16) && r.offset == Some(15) && r.status == RowStatus::Pass, show(&r));
    o.require(r.structure == Some(true), "template fidelity or separation failed");
    let l = reduce_unit_disk(Problem::TwoStepDom, &embed_orthogonal_scaled(&k2, 2).unwrap()).unwrap();
    o.note(format!(
        "structural offset {} (closed form {}), printed closed form {}, discrepancy {}",
        l.offset,
        l.closed_form_offset(),
        l.printed_offset(),
        l.printed_offset() as i64 - l.offset as i64
    ));
    o.note(show(&r));
    rows.push(r);
    o
}

fn criterion_9(rows: &Rows) -> Outcome {
    let mut o = Outcome::new();
    let mut checked = 0;
    for r in rows {
        if r.status == RowStatus::Skipped {
            continue;
        }
        checked += 1;
        o.require(r.certificate == Some(true), format!("{} {}: certificate round trip {:?}", r.graph_name, r.kind, r.certificate));
    }
    o.note(format!("{checked} (graph, kind) pairs"));
    o
}

fn criterion_10() -> Outcome {
    let mut o = Outcome::new();
    for n in 4..=12 {
        for d in 0..n {
            let res = build_regular_graph(n, d);
            if n * d % 2 == 0 {
                match res {
                    Ok(g) => o.require(g.n() == n && g.is_regular(d), format!("({n},{d}) not {d}-regular")),
                    Err(e) => o.require(false, format!("({n},{d}) failed: {e}")),
                }
            } else {
                o.require(res.is_err(), format!("({n},{d}) should fail on parity"));
            }
        }
    }
    o
}

fn criterion_11() -> Outcome {
    let mut o = Outcome::new();
    for g in exhaustive(7) {
        let n = g.graph.n();
        o.require(is_hop_dominating(&g.graph, &VertexSet::full(n)), format!("{}: V does not hop-dominate", g.name));
        let empty_n2 = g.graph.distance_two_lists().iter().any(Vec::is_empty);
        let r = solve_with(&g.graph, Problem::TwoStepDom, &SolveOptions::default()).unwrap();
        o.require(r.is_feasible() != empty_n2, format!("{}: feasibility {} vs empty N(v,2) {}", g.name, r.is_feasible(), empty_n2));
    }
    o
}

fn run(id: usize, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let t = Instant::now();
    let mut o = f();
    let took = t.elapsed();
    if took > limit {
        o.require(false, format!("took {took:.1?}, limit {limit:?}"));
    }
    println!("criterion {id}: {} [{took:.2?}]", if o.pass { "PASS" } else { "FAIL" });
    for d in &o.detail {
        println!("    {d}");
    }
    o.pass
}

fn main() {
    let mut rows = Rows::new();
    let min = |m: u64| Duration::from_secs(60 * m);
    let results = [
        run(1, min(5), criterion_1),
        run(2, min(20), || criterion_2(&mut rows)),
        run(3, min(5), || criterion_3(&mut rows)),
        run(4, min(6), || regular_criterion(Problem::HopDom, 1, &mut rows)),
        run(5, min(6), || regular_criterion(Problem::TwoStepDom, 2, &mut rows)),
        run(6, min(10), || criterion_6(&mut rows)),
        run(7, min(5), || criterion_7(&mut rows)),
        run(8, min(5), || criterion_8(&mut rows)),
        run(9, min(1), || criterion_9(&rows)),
        run(10, Duration::from_secs(1), criterion_10),
        run(11, min(5), criterion_11),
    ];
    let failed: Vec<usize> = (1..=11).filter(|i| !results[i - 1]).collect();
    if failed.is_empty() {
        println!("acceptance: all 11 criteria PASS");
    } else {
        println!("acceptance: FAIL on criteria {failed:?}");
        std::process::exit(1);
    }
}

