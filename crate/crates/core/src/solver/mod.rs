//! Validity checkers and exact minimum solvers for vertex cover, hop
//! domination and 2-step domination.

mod cover;

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use cover::{CoverInstance, Search};

/// The three optimization problems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Problem {
    VertexCover,
    HopDom,
    TwoStepDom,
}

impl Problem {
    pub const ALL: [Problem; 3] = [Problem::VertexCover, Problem::HopDom, Problem::TwoStepDom];

    pub fn short_name(self) -> &'static str {
        match self {
            Problem::VertexCover => "vc",
            Problem::HopDom => "hd",
            Problem::TwoStepDom => "2sd",
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for Problem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vc" => Ok(Problem::VertexCover),
            "hd" => Ok(Problem::HopDom),
            "2sd" => Ok(Problem::TwoStepDom),
            _ => Err(Error::Input(format!("unknown problem {s:?} (expected vc, hd or 2sd)"))),
        }
    }
}

/// Search strategy that produced a result.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Brute,
    BranchAndBound,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Brute => "brute",
            Method::BranchAndBound => "bnb",
        })
    }
}

/// Which strategy to run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MethodChoice {
    /// Brute force when the search space is small, branch and bound otherwise.
    #[default]
    Auto,
    Brute,
    BranchAndBound,
}

/// Outcome of a solve. `optimum == None` means infeasible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub optimum: Option<usize>,
    pub witness: Option<VertexSet>,
    pub nodes_explored: u64,
    pub method: Method,
    /// False only when a budget allowed an early, possibly non-minimum answer.
    pub proven_optimal: bool,
}

impl SolveResult {
    pub fn is_feasible(&self) -> bool {
        self.optimum.is_some()
    }
}

/// Cooperative cancellation: an explicit flag and an optional deadline.
#[derive(Clone, Debug, Default)]
pub struct CancelToken {
    flag: Arc<AtomicBool>,
    deadline: Option<Instant>,
}

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_timeout(timeout: Duration) -> Self {
        CancelToken { flag: Arc::default(), deadline: Some(Instant::now() + timeout) }
    }

    pub fn cancel(&self) {
        self.flag.store(true, Ordering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.flag.load(Ordering::Relaxed) || self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub budget: Option<usize>,
    pub deterministic: bool,
    pub method: MethodChoice,
    pub cancel: Option<CancelToken>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { budget: None, deterministic: true, method: MethodChoice::Auto, cancel: None }
    }
}

/// Every vertex outside `s` has a member of `s` at distance exactly 2.
pub fn is_hop_dominating(g: &Graph, s: &VertexSet) -> bool {
    let inside = s.mask(g.n());
    let n2 = g.distance_two_lists();
    (0..g.n()).all(|v| inside[v] || n2[v].iter().any(|&u| inside[u]))
}

/// Every vertex, members included, has a member of `s` at distance exactly 2.
pub fn is_two_step_dominating(g: &Graph, s: &VertexSet) -> bool {
    let inside = s.mask(g.n());
    let n2 = g.distance_two_lists();
    (0..g.n()).all(|v| n2[v].iter().any(|&u| inside[u]))
}

/// Every edge has an endpoint in `s`.
pub fn is_vertex_cover(g: &Graph, s: &VertexSet) -> bool {
    let inside = s.mask(g.n());
    g.edges().into_iter().all(|(u, v)| inside[u] || inside[v])
}

/// Dispatches to the checker for `p`. Out-of-range ids make the set invalid.
pub fn is_valid(g: &Graph, p: Problem, s: &VertexSet) -> bool {
    if s.check_range(g.n()).is_err() {
        return false;
    }
    match p {
        Problem::VertexCover => is_vertex_cover(g, s),
        Problem::HopDom => is_hop_dominating(g, s),
        Problem::TwoStepDom => is_two_step_dominating(g, s),
    }
}

fn instance(g: &Graph, p: Problem) -> CoverInstance {
    let cands = match p {
        Problem::VertexCover => g.edges().into_iter().map(|(u, v)| vec![u, v]).collect(),
        Problem::TwoStepDom => g.distance_two_lists(),
        Problem::HopDom => g
            .distance_two_lists()
            .into_iter()
            .enumerate()
            .map(|(v, mut l)| {
                let at = l.binary_search(&v).unwrap_err();
                l.insert(at, v);
                l
            })
            .collect(),
    };
    CoverInstance::new(g.n(), cands)
}

/// Minimum solution of `p` on `g`, without cancellation.
pub fn solve_minimum(g: &Graph, p: Problem, budget: Option<usize>, deterministic: bool) -> SolveResult {
    let opts = SolveOptions { budget, deterministic, ..Default::default() };
    solve_with(g, p, &opts).expect("no cancellation token was supplied")
}

/// Minimum solution with full control over method and cancellation.
pub fn solve_with(g: &Graph, p: Problem, opts: &SolveOptions) -> Result<SolveResult> {
    let inst = instance(g, p);
    let cancel = opts.cancel.as_ref();
    let greedy = match inst.greedy() {
        Some(gr) => gr,
        None => {
            return Ok(SolveResult {
                optimum: None,
                witness: None,
                nodes_explored: 0,
                method: Method::Brute,
                proven_optimal: true,
            })
        }
    };
    let method = match opts.method {
        MethodChoice::Brute => Method::Brute,
        MethodChoice::BranchAndBound => Method::BranchAndBound,
        MethodChoice::Auto => {
            if subsets_up_to(inst.nv, greedy.len()) <= 1 << 24 {
                Method::Brute
            } else {
                Method::BranchAndBound
            }
        }
    };
    if let Some(b) = opts.budget {
        if greedy.len() <= b && method == Method::BranchAndBound {
            return Ok(finish(greedy, 0, method, false));
        }
    }
    match method {
        Method::Brute => {
            let (sol, nodes) = brute(&inst, cancel)?;
            Ok(finish(sol, nodes, method, true))
        }
        Method::BranchAndBound => {
            let mut nodes = 0;
            if let Some(b) = opts.budget {
                let mut s = Search::new(&inst, cancel);
                s.run(b + 1, b)?;
                nodes += s.nodes;
                if let Some(sol) = s.best {
                    return Ok(finish(sol, nodes, method, false));
                }
            }
            let mut s = Search::new(&inst, cancel);
            s.run(greedy.len(), 0)?;
            nodes += s.nodes;
            let opt = s.best.unwrap_or(greedy);
            let sol = if opts.deterministic {
                let (sol, extra) = lex_smallest(&inst, opt, cancel)?;
                nodes += extra;
                sol
            } else {
                opt
            };
            Ok(finish(sol, nodes, method, true))
        }
    }
}

fn finish(sol: Vec<usize>, nodes: u64, method: Method, proven: bool) -> SolveResult {
    SolveResult {
        optimum: Some(sol.len()),
        witness: Some(VertexSet::from_ids(sol)),
        nodes_explored: nodes,
        method,
        proven_optimal: proven,
    }
}

/// `sum_{k <= ub} C(n, k)`, saturating.
fn subsets_up_to(n: usize, ub: usize) -> u64 {
    let mut total: u64 = 0;
    let mut c: u64 = 1;
    for k in 0..=ub.min(n) {
        total = total.saturating_add(c);
        c = c.saturating_mul((n - k) as u64) / (k as u64 + 1);
        if total > 1 << 40 {
            return u64::MAX;
        }
    }
    total
}

/// Subsets by increasing size, each size in lexicographic order.
fn brute(inst: &CoverInstance, cancel: Option<&CancelToken>) -> Result<(Vec<usize>, u64)> {
    struct St<'a> {
        inst: &'a CoverInstance,
        cnt: Vec<u32>,
        uncovered: usize,
        chosen: Vec<usize>,
        nodes: u64,
        cancel: Option<&'a CancelToken>,
    }
    impl St<'_> {
        fn go(&mut self, start: usize, left: usize) -> Result<bool> {
            self.nodes += 1;
            if self.nodes.is_multiple_of(4096) && self.cancel.is_some_and(CancelToken::is_cancelled) {
                return Err(Error::Cancelled);
            }
            if left == 0 {
                return Ok(self.uncovered == 0);
            }
            for v in start..=self.inst.nv - left {
                for &e in &self.inst.covers[v] {
                    if self.cnt[e] == 0 {
                        self.uncovered -= 1;
                    }
                    self.cnt[e] += 1;
                }
                self.chosen.push(v);
                if self.go(v + 1, left - 1)? {
                    return Ok(true);
                }
                self.chosen.pop();
                for &e in &self.inst.covers[v] {
                    self.cnt[e] -= 1;
                    if self.cnt[e] == 0 {
                        self.uncovered += 1;
                    }
                }
            }
            Ok(false)
        }
    }
    let mut st = St {
        inst,
        cnt: vec![0; inst.ne()],
        uncovered: inst.ne(),
        chosen: Vec::new(),
        nodes: 0,
        cancel,
    };
    for k in 0..=inst.nv {
        if st.go(0, k)? {
            return Ok((st.chosen, st.nodes));
        }
    }
    unreachable!("the full vertex set is feasible once no element is empty")
}

/// Lexicographically smallest cover of the same size as `opt`, fixed one
/// position at a time with bounded feasibility searches.
fn lex_smallest(
    inst: &CoverInstance,
    opt: Vec<usize>,
    cancel: Option<&CancelToken>,
) -> Result<(Vec<usize>, u64)> {
    let k = opt.len();
    let mut known = opt;
    let mut prefix: Vec<usize> = Vec::with_capacity(k);
    let mut nodes = 0;
    let mut next = 0;
    while prefix.len() < k {
        let pos = prefix.len();
        let mut c = next;
        loop {
            if known[pos] == c {
                break;
            }
            let mut s = Search::new(inst, cancel);
            let mut pi = 0;
            for v in 0..c {
                if pi < prefix.len() && prefix[pi] == v {
                    s.force(v);
                    pi += 1;
                } else {
                    s.exclude(v);
                }
            }
            s.force(c);
            s.run(k + 1, k)?;
            nodes += s.nodes;
            if let Some(sol) = s.best {
                known = sol;
                break;
            }
            c += 1;
        }
        debug_assert_eq!(known[..pos], prefix[..]);
        prefix.push(c);
        next = c + 1;
    }
    Ok((prefix, nodes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    fn path(n: usize) -> Graph {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                e.push((i, j));
            }
        }
        Graph::from_edges(n, &e).unwrap()
    }

    fn both(g: &Graph, p: Problem) -> (SolveResult, SolveResult) {
        let mk = |m| SolveOptions { method: m, ..Default::default() };
        (
            solve_with(g, p, &mk(MethodChoice::Brute)).unwrap(),
            solve_with(g, p, &mk(MethodChoice::BranchAndBound)).unwrap(),
        )
    }

    #[test]
    fn checker_examples() {
        let c4 = cycle(4);
        assert!(is_hop_dominating(&c4, &VertexSet::full(4)));
        assert!(is_hop_dominating(&c4, &VertexSet::from_ids([0, 1])));
        assert!(!is_hop_dominating(&path(4), &VertexSet::from_ids([1])));
        for n in 1..6 {
            assert!(!is_two_step_dominating(&complete(n), &VertexSet::full(n)));
        }
        assert!(is_two_step_dominating(&c4, &VertexSet::full(4)));
        // consecutive in the distance-2 cycle 0-2-4-1-3, not in C5 itself
        assert!(is_two_step_dominating(&cycle(5), &VertexSet::from_ids([0, 2, 4])));
        assert!(!is_two_step_dominating(&cycle(5), &VertexSet::from_ids([0, 1, 2])));
        let k2 = complete(2);
        assert!(is_vertex_cover(&k2, &VertexSet::from_ids([0])));
        assert!(is_vertex_cover(&c4, &VertexSet::from_ids([0, 2])));
        assert!(!is_vertex_cover(&complete(4), &VertexSet::from_ids([0, 1])));
    }

    #[test]
    fn solver_examples() {
        for n in 1..6 {
            let r = solve_minimum(&complete(n), Problem::HopDom, None, true);
            assert_eq!(r.optimum, Some(n));
            assert_eq!(r.witness.unwrap(), VertexSet::full(n));
        }
        assert_eq!(solve_minimum(&cycle(4), Problem::HopDom, None, true).optimum, Some(2));
        assert_eq!(solve_minimum(&cycle(4), Problem::TwoStepDom, None, true).optimum, Some(4));
        let p4 = solve_minimum(&path(4), Problem::HopDom, None, true);
        assert_eq!(p4.optimum, Some(2));
        // {0,1} is optimal and lexicographically smaller than {0,3}
        assert_eq!(p4.witness.unwrap().as_slice(), &[0, 1]);
        assert_eq!(solve_minimum(&cycle(5), Problem::TwoStepDom, None, true).optimum, Some(3));
        assert_eq!(solve_minimum(&complete(4), Problem::VertexCover, None, true).optimum, Some(3));
        assert_eq!(solve_minimum(&complete(3), Problem::TwoStepDom, None, true).optimum, None);
        assert_eq!(solve_minimum(&Graph::empty(3), Problem::VertexCover, None, true).optimum, Some(0));
    }

    #[test]
    fn methods_agree_including_witness() {
        let graphs = [cycle(5), cycle(6), path(6), complete(4), cycle(7), path(7)];
        for g in &graphs {
            for p in Problem::ALL {
                let (a, b) = both(g, p);
                assert_eq!(a.optimum, b.optimum, "{g:?} {p}");
                assert_eq!(a.witness, b.witness, "{g:?} {p}");
                if a.is_feasible() {
                    assert_eq!(a.method, Method::Brute);
                    assert_eq!(b.method, Method::BranchAndBound);
                }
            }
        }
    }

    #[test]
    fn budget_mode_returns_feasible_witness() {
        let g = cycle(12);
        let r = solve_minimum(&g, Problem::HopDom, Some(11), false);
        let w = r.witness.unwrap();
        assert!(w.len() <= 11 && is_hop_dominating(&g, &w));
        assert_eq!(r.optimum, Some(w.len()));
        let exact = solve_minimum(&g, Problem::HopDom, None, true);
        let tight = solve_minimum(&g, Problem::HopDom, Some(exact.optimum.unwrap() - 1), true);
        assert_eq!(tight.optimum, exact.optimum);
        assert!(tight.proven_optimal);
    }

    #[test]
    fn cancellation_is_reported() {
        let g = cycle(40);
        let tok = CancelToken::new();
        tok.cancel();
        let opts = SolveOptions {
            cancel: Some(tok),
            method: MethodChoice::BranchAndBound,
            ..Default::default()
        };
        assert_eq!(solve_with(&g, Problem::TwoStepDom, &opts), Err(Error::Cancelled));
    }

    #[test]
    fn problem_names_round_trip() {
        for p in Problem::ALL {
            assert_eq!(p.short_name().parse::<Problem>().unwrap(), p);
        }
        assert!("x".parse::<Problem>().is_err());
    }
}
