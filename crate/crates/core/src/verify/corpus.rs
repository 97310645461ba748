//! Source-graph corpora for the harness.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::canon::{canonical_code, from_code, from_graph6, to_graph6};
use crate::error::{Error, Result};
use crate::geometry::graph_is_planar;
use crate::graph::Graph;
use crate::reduction::build_regular_graph;

pub const MAX_EXHAUSTIVE: usize = 8;

pub const NAMED_DEFAULT: [&str; 10] = ["K2", "P3", "P4", "C3", "C4", "C5", "K4", "K3_3", "Petersen", "Q3"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CorpusMode {
    /// all connected graphs on 1..=n_max vertices
    Exhaustive(usize),
    Named(Vec<String>),
    RandomRegular { n: usize, d: usize, count: usize, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Filter {
    Connected,
    Cubic,
    /// planar with maximum degree at most 4
    PlanarDeg4,
}

impl Filter {
    pub fn accepts(self, g: &Graph) -> bool {
        match self {
            Filter::Connected => g.is_connected(),
            Filter::Cubic => g.is_regular(3),
            Filter::PlanarDeg4 => g.max_degree() <= 4 && graph_is_planar(g),
        }
    }
}

impl FromStr for Filter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "connected" => Ok(Filter::Connected),
            "cubic" | "3-regular" | "3reg" => Ok(Filter::Cubic),
            "planar4" | "planar-deg4" => Ok(Filter::PlanarDeg4),
            other => Err(Error::Input(format!("unknown filter {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusSpec {
    pub mode: CorpusMode,
    pub filters: Vec<Filter>,
}

impl CorpusSpec {
    pub fn new(mode: CorpusMode) -> Self {
        CorpusSpec { mode, filters: Vec::new() }
    }

    pub fn named<S: AsRef<str>>(names: &[S]) -> Self {
        Self::new(CorpusMode::Named(names.iter().map(|s| s.as_ref().to_string()).collect()))
    }

    pub fn with_filter(mut self, f: Filter) -> Self {
        self.filters.push(f);
        self
    }
}

/// Text form used on the command line: `exhaustive:N`, `named:K2,P3`,
/// `named` (the builtin list), `random-regular:N,D,COUNT,SEED`.
impl FromStr for CorpusSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h.trim(), Some(a.trim())),
            None => (s.trim(), None),
        };
        let num = |t: &str| -> Result<u64> {
            t.trim().parse().map_err(|_| Error::Input(format!("bad number {t:?} in corpus {s:?}")))
        };
        let mode = match (head, arg) {
            ("exhaustive", Some(a)) => CorpusMode::Exhaustive(num(a)? as usize),
            ("named", None) => CorpusMode::Named(NAMED_DEFAULT.iter().map(|x| x.to_string()).collect()),
            ("named", Some(a)) => CorpusMode::Named(a.split(',').map(|x| x.trim().to_string()).collect()),
            ("random-regular", Some(a)) => {
                let v: Vec<u64> = a.split(',').map(num).collect::<Result<_>>()?;
                if v.len() != 4 {
                    return Err(Error::Input("random-regular needs N,D,COUNT,SEED".into()));
                }
                CorpusMode::RandomRegular { n: v[0] as usize, d: v[1] as usize, count: v[2] as usize, seed: v[3] }
            }
            _ => return Err(Error::Input(format!("unknown corpus {s:?}"))),
        };
        Ok(CorpusSpec::new(mode))
    }
}

/// A corpus member with a stable, replayable name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedGraph {
    pub name: String,
    pub graph: Graph,
}

impl fmt::Display for NamedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (n={}, m={})", self.name, self.graph.n(), self.graph.m())
    }
}

pub fn enumerate_corpus(spec: &CorpusSpec) -> Result<Vec<NamedGraph>> {
    let all = match &spec.mode {
        CorpusMode::Exhaustive(n_max) => exhaustive(*n_max)?,
        CorpusMode::Named(names) => names
            .iter()
            .map(|n| Ok(NamedGraph { name: n.clone(), graph: builtin(n)? }))
            .collect::<Result<_>>()?,
        CorpusMode::RandomRegular { n, d, count, seed } => random_regular(*n, *d, *count, *seed)?,
    };
    Ok(all.into_iter().filter(|g| spec.filters.iter().all(|f| f.accepts(&g.graph))).collect())
}

/// Connected graphs up to isomorphism, by adding one vertex at a time to
/// connected graphs (every connected graph has a non-cut vertex). Ordered
/// by size, then canonical code; names are graph6 of the canonical form.
fn exhaustive(n_max: usize) -> Result<Vec<NamedGraph>> {
    if n_max > MAX_EXHAUSTIVE {
        return Err(Error::Input(format!("exhaustive corpus supports n <= {MAX_EXHAUSTIVE}, got {n_max}")));
    }
    let mut out = Vec::new();
    let mut level: BTreeSet<u64> = BTreeSet::new();
    for n in 1..=n_max {
        level = if n == 1 {
            BTreeSet::from([0])
        } else {
            let mut next = BTreeSet::new();
            for &c in &level {
                let g = from_code(n - 1, c);
                let base = g.edges();
                for mask in 1u32..(1 << (n - 1)) {
                    let mut edges = base.clone();
                    edges.extend((0..n - 1).filter(|&i| mask >> i & 1 == 1).map(|i| (i, n - 1)));
                    next.insert(canonical_code(&Graph::from_edges(n, &edges)?)?);
                }
            }
            next
        };
        for &c in &level {
            let g = from_code(n, c);
            out.push(NamedGraph { name: format!("g6:{}", to_graph6(&g)), graph: g });
        }
    }
    Ok(out)
}

fn path(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|i| (i - 1, i)).collect()
}

fn cycle(n: usize) -> Vec<(usize, usize)> {
    let mut e = path(n);
    e.push((0, n - 1));
    e
}

fn complete(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// Builtin graphs by name: `Kn`, `Pn`, `Cn`, `Ka_b` (complete bipartite),
/// `K33`, `claw`, `paw`, `diamond`, `Petersen`, `Q3`, or `g6:<graph6>`.
pub fn builtin(name: &str) -> Result<Graph> {
    let unknown = || Error::Input(format!("unknown graph {name:?}"));
    if let Some(s) = name.strip_prefix("g6:") {
        return from_graph6(s);
    }
    let (n, edges) = match name {
        "Petersen" | "petersen" => {
            let mut e = cycle(5);
            for i in 0..5 {
                e.push((i, i + 5));
                e.push((5 + i, 5 + (i + 2) % 5));
            }
            (10, e)
        }
        "Q3" | "cube" => {
            let e = (0..8usize)
                .flat_map(|v| (0..3).map(move |b| (v, v ^ (1 << b))))
                .filter(|&(a, b)| a < b)
                .collect();
            (8, e)
        }
        "K33" => (6, bipartite(3, 3)),
        "claw" => (4, bipartite(1, 3)),
        "paw" => (4, vec![(0, 1), (0, 2), (1, 2), (2, 3)]),
        "diamond" => (4, vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]),
        _ => {
            let (head, rest) = name.split_at(1.min(name.len()));
            let num = |s: &str| s.parse::<usize>().ok().filter(|&k| k >= 1);
            match head {
                "K" => match rest.split_once('_') {
                    Some((a, b)) => {
                        let (a, b) = (num(a).ok_or_else(unknown)?, num(b).ok_or_else(unknown)?);
                        (a + b, bipartite(a, b))
                    }
                    None => {
                        let k = num(rest).ok_or_else(unknown)?;
                        (k, complete(k))
                    }
                },
                "P" => {
                    let k = num(rest).ok_or_else(unknown)?;
                    (k, path(k))
                }
                "C" => {
                    let k = num(rest).filter(|&k| k >= 3).ok_or_else(unknown)?;
                    (k, cycle(k))
                }
                _ => return Err(unknown()),
            }
        }
    };
    Graph::from_edges(n, &edges)
}

fn bipartite(a: usize, b: usize) -> Vec<(usize, usize)> {
    (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))).collect()
}

/// Havel-Hakimi realizations mixed by seeded double-edge swaps; each graph
/// starts from the same realization and uses the next stretch of the stream.
fn random_regular(n: usize, d: usize, count: usize, seed: u64) -> Result<Vec<NamedGraph>> {
    let base = build_regular_graph(n, d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for idx in 0..count {
        let mut edges = base.edges();
        let mut present: BTreeSet<(usize, usize)> = edges.iter().copied().collect();
        let tries = 10 * edges.len().max(1);
        for _ in 0..tries {
            if edges.len() < 2 {
                break;
            }
            let (x, y) = (rng.gen_range(0..edges.len()), rng.gen_range(0..edges.len()));
            if x == y {
                continue;
            }
            let (a, b) = edges[x];
            let (c, d2) = if rng.gen_bool(0.5) { edges[y] } else { (edges[y].1, edges[y].0) };
            let e1 = (a.min(d2), a.max(d2));
            let e2 = (c.min(b), c.max(b));
            if a == d2 || c == b || e1 == e2 || present.contains(&e1) || present.contains(&e2) {
                continue;
            }
            present.remove(&edges[x]);
            present.remove(&edges[y]);
            present.insert(e1);
            present.insert(e2);
            edges[x] = e1;
            edges[y] = e2;
        }
        let g = Graph::from_edges(n, &present.into_iter().collect::<Vec<_>>())?;
        out.push(NamedGraph { name: format!("rr{n}_{d}_s{seed}#{idx}"), graph: g });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connected_graph_counts() {
        let all = enumerate_corpus(&CorpusSpec::new(CorpusMode::Exhaustive(6))).unwrap();
        let mut by_n = [0usize; 7];
        for g in &all {
            assert!(g.graph.is_connected());
            by_n[g.graph.n()] += 1;
        }
        assert_eq!(&by_n[1..], &[1, 1, 2, 6, 21, 112]);
        assert_eq!(enumerate_corpus(&CorpusSpec::new(CorpusMode::Exhaustive(4))).unwrap().len(), 10);
        assert!(enumerate_corpus(&CorpusSpec::new(CorpusMode::Exhaustive(9))).is_err());
    }

    #[test]
    fn builtins() {
        let named = enumerate_corpus(&CorpusSpec::named(&NAMED_DEFAULT)).unwrap();
        let sizes: Vec<(usize, usize)> = named.iter().map(|g| (g.graph.n(), g.graph.m())).collect();
        assert_eq!(sizes, [(2, 1), (3, 2), (4, 3), (3, 3), (4, 4), (5, 5), (4, 6), (6, 9), (10, 15), (8, 12)]);
        assert!(builtin("Petersen").unwrap().is_regular(3));
        assert!(builtin("Q3").unwrap().is_regular(3));
        assert_eq!(builtin("K1_3").unwrap(), builtin("claw").unwrap());
        assert!(builtin("C2").is_err());
        assert!(builtin("X7").is_err());
        assert_eq!(enumerate_corpus(&CorpusSpec::named(&["K4"])).unwrap()[0].graph.m(), 6);
    }

    #[test]
    fn random_regular_is_seeded() {
        let spec = CorpusSpec::new(CorpusMode::RandomRegular { n: 8, d: 3, count: 5, seed: 7 });
        let a = enumerate_corpus(&spec).unwrap();
        assert_eq!(a.len(), 5);
        assert!(a.iter().all(|g| g.graph.is_regular(3)));
        assert_eq!(a, enumerate_corpus(&spec).unwrap());
        let odd = CorpusSpec::new(CorpusMode::RandomRegular { n: 5, d: 3, count: 1, seed: 1 });
        assert!(matches!(enumerate_corpus(&odd), Err(Error::Realization(_))));
    }

    #[test]
    fn filters_and_text_form() {
        let s: CorpusSpec = "exhaustive:4".parse().unwrap();
        let cubic = enumerate_corpus(&s.with_filter(Filter::Cubic)).unwrap();
        assert_eq!(cubic.len(), 1);
        assert_eq!(cubic[0].graph.m(), 6);
        let s: CorpusSpec = "named:K2,P3".parse().unwrap();
        assert_eq!(s.mode, CorpusMode::Named(vec!["K2".into(), "P3".into()]));
        assert!("random-regular:8,3,5".parse::<CorpusSpec>().is_err());
        assert!("nonsense".parse::<CorpusSpec>().is_err());
        let named = enumerate_corpus(&"named".parse().unwrap()).unwrap();
        let planar = named.iter().filter(|g| Filter::PlanarDeg4.accepts(&g.graph)).count();
        assert_eq!(planar, 8);
    }
}
