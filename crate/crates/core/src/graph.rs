//! Simple undirected graphs, vertex sets and distance queries.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Immutable simple graph on vertices `0..n`.
///
/// Neighbor lists are sorted. Build one with [`GraphBuilder`] or [`Graph::from_edges`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges())
    }
}

/// Mutable staging area for a [`Graph`]. Invariants are checked on insertion.
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    labels: Vec<Option<String>>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder { n, edges: BTreeSet::new(), labels: vec![None; n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Appends a vertex and returns its id.
    pub fn add_vertex(&mut self, label: impl Into<String>) -> usize {
        self.labels.push(Some(label.into()));
        self.n += 1;
        self.n - 1
    }

    pub fn set_label(&mut self, v: usize, label: impl Into<String>) {
        self.labels[v] = Some(label.into());
    }

    fn key(&self, u: usize, v: usize) -> Result<(usize, usize)> {
        if u == v {
            return Err(Error::Input(format!("self-loop at vertex {u}")));
        }
        if u >= self.n || v >= self.n {
            return Err(Error::Input(format!("edge ({u},{v}) out of range for n={}", self.n)));
        }
        Ok((u.min(v), u.max(v)))
    }

    /// Adds an edge; a repeated edge is an error.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let k = self.key(u, v)?;
        if !self.edges.insert(k) {
            return Err(Error::Input(format!("duplicate edge ({},{})", k.0, k.1)));
        }
        Ok(())
    }

    /// Adds an edge unless it is already present.
    pub fn ensure_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let k = self.key(u, v)?;
        self.edges.insert(k);
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Current neighbors of `v` (linear scan; builders are small-scale).
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| if a == v { Some(b) } else if b == v { Some(a) } else { None })
            .collect()
    }

    pub fn build(self) -> Graph {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let labels = if self.labels.iter().any(Option::is_some) {
            Some(
                self.labels
                    .into_iter()
                    .enumerate()
                    .map(|(i, l)| l.unwrap_or_else(|| i.to_string()))
                    .collect(),
            )
        } else {
            None
        };
        Graph { adj, m: self.edges.len(), labels }
    }
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Graph {
        Graph { adj: vec![Vec::new(); n], m: 0, labels: None }
    }

    /// Builds a graph from an edge list, rejecting loops and duplicates.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut b = GraphBuilder::new(n);
        for &(u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Same graph carrying the given labels.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Graph> {
        if labels.len() != self.n() {
            return Err(Error::Input(format!("{} labels for {} vertices", labels.len(), self.n())));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// BFS distances from `v`; `None` for unreachable vertices.
    pub fn distances_from(&self, v: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        let mut queue = VecDeque::new();
        dist[v] = Some(0);
        queue.push_back(v);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x].unwrap();
            for &y in &self.adj[x] {
                if dist[y].is_none() {
                    dist[y] = Some(dx + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Vertices at shortest-path distance exactly `r` from `v`.
    pub fn exact_distance_neighborhood(&self, v: usize, r: usize) -> Result<VertexSet> {
        if v >= self.n() {
            return Err(Error::Input(format!("vertex {v} out of range for n={}", self.n())));
        }
        if r == 0 {
            return Err(Error::Input("radius must be positive".into()));
        }
        let dist = self.distances_from(v);
        Ok(VertexSet::from_sorted_unchecked(
            (0..self.n()).filter(|&u| dist[u] == Some(r)).collect(),
        ))
    }

    /// `N(v,2)` for every vertex, as sorted lists.
    pub fn distance_two_lists(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut mark = vec![usize::MAX; n];
        let mut out = Vec::with_capacity(n);
        for v in 0..n {
            mark[v] = v;
            for &w in &self.adj[v] {
                mark[w] = v;
            }
            let mut list = Vec::new();
            for &w in &self.adj[v] {
                for &x in &self.adj[w] {
                    if mark[x] != v {
                        mark[x] = v;
                        list.push(x);
                    }
                }
            }
            list.sort_unstable();
            out.push(list);
        }
        out
    }

    pub fn is_regular(&self, d: usize) -> bool {
        self.adj.iter().all(|l| l.len() == d)
    }

    /// True iff no induced `K_{1,3}` exists.
    pub fn is_claw_free(&self) -> bool {
        self.find_claw().is_none()
    }

    /// A claw `(center, [leaves])` if one exists.
    pub fn find_claw(&self) -> Option<(usize, [usize; 3])> {
        for v in 0..self.n() {
            let nb = &self.adj[v];
            for i in 0..nb.len() {
                for j in i + 1..nb.len() {
                    if self.has_edge(nb[i], nb[j]) {
                        continue;
                    }
                    for k in j + 1..nb.len() {
                        if !self.has_edge(nb[i], nb[k]) && !self.has_edge(nb[j], nb[k]) {
                            return Some((v, [nb[i], nb[j], nb[k]]));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.distances_from(0).iter().all(Option::is_some)
    }

    /// Vertices with no neighbors.
    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.adj[v].is_empty()).collect()
    }

    /// Line graph; vertex `i` is the `i`-th edge of [`Graph::edges`].
    pub fn line_graph(&self) -> Graph {
        let edges = self.edges();
        let mut b = GraphBuilder::new(edges.len());
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                let (a, c) = edges[i];
                let (x, y) = edges[j];
                if a == x || a == y || c == x || c == y {
                    b.add_edge(i, j).expect("line graph edges are simple");
                }
            }
        }
        b.build()
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut b = GraphBuilder::new(self.n());
        for (u, v) in self.edges() {
            b.add_edge(perm[u], perm[v]).expect("permutation keeps the graph simple");
        }
        b.build()
    }

    /// Canonical edge-list text; see [`parse_graph`].
    pub fn to_edge_list(&self) -> String {
        serialize_graph(self)
    }
}

/// Parses the edge-list format: header `n m`, then `m` lines `u v` with `u < v`.
/// Lines starting with `#` and blank lines are ignored.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
    let nums = parse_ints(hline, header, 2)?;
    let (n, m) = (nums[0], nums[1]);
    let mut b = GraphBuilder::new(n);
    let mut count = 0;
    for (ln, line) in lines {
        let uv = parse_ints(ln, line, 2)?;
        let (u, v) = (uv[0], uv[1]);
        if u >= v {
            return Err(Error::parse(ln, format!("edge must satisfy u < v, got {u} {v}")));
        }
        if v >= n {
            return Err(Error::parse(ln, format!("vertex {v} out of range for n={n}")));
        }
        if b.has_edge(u, v) {
            return Err(Error::parse(ln, format!("duplicate edge {u} {v}")));
        }
        b.add_edge(u, v).map_err(|e| Error::parse(ln, e.to_string()))?;
        count += 1;
    }
    if count != m {
        return Err(Error::parse(hline, format!("header declares {m} edges, found {count}")));
    }
    Ok(b.build())
}

fn parse_ints(ln: usize, line: &str, want: usize) -> Result<Vec<usize>> {
    let parts: Vec<&str> = line.split_whitespace().collect();
    if parts.len() != want {
        return Err(Error::parse(ln, format!("expected {want} integers, got {:?}", line)));
    }
    parts
        .iter()
        .map(|p| p.parse::<usize>().map_err(|_| Error::parse(ln, format!("bad integer {p:?}"))))
        .collect()
}

/// Canonical edge-list text: header then edges in lexicographic order.
pub fn serialize_graph(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

/// Sorted set of distinct vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    /// Sorts and deduplicates.
    pub fn from_ids<I: IntoIterator<Item = usize>>(ids: I) -> Self {
        let mut v: Vec<usize> = ids.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    pub(crate) fn from_sorted_unchecked(v: Vec<usize>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        VertexSet(v)
    }

    /// All of `0..n`.
    pub fn full(n: usize) -> Self {
        VertexSet((0..n).collect())
    }

    /// Errors if any id is `>= n`.
    pub fn check_range(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&v) if v >= n => Err(Error::Input(format!("vertex {v} out of range for n={n}"))),
            _ => Ok(()),
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = &usize> {
        self.0.iter()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// Membership mask over `0..n`.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &v in &self.0 {
            m[v] = true;
        }
        m
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(usize::to_string).collect();
        f.write_str(&s.join(" "))
    }
}

/// Ids separated by whitespace or commas; duplicates collapse.
impl std::str::FromStr for VertexSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| Error::Input(format!("bad vertex id {t:?}"))))
            .collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_ids(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, &e).unwrap()
    }

    #[test]
    fn distance_two_examples() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3.exact_distance_neighborhood(0, 2).unwrap().as_slice(), &[2]);
        let c4 = cycle(4);
        for v in 0..4 {
            assert_eq!(c4.exact_distance_neighborhood(v, 2).unwrap().as_slice(), &[(v + 2) % 4]);
        }
        let p = petersen();
        for v in 0..10 {
            assert_eq!(p.exact_distance_neighborhood(v, 2).unwrap().len(), 6);
        }
        assert!(p3.exact_distance_neighborhood(3, 2).is_err());
        assert!(p3.exact_distance_neighborhood(0, 0).is_err());
    }

    #[test]
    fn distance_two_lists_match_bfs() {
        let p = petersen();
        let lists = p.distance_two_lists();
        for v in 0..10 {
            assert_eq!(lists[v], p.exact_distance_neighborhood(v, 2).unwrap().into_vec());
        }
    }

    #[test]
    fn regular_and_claw() {
        assert!(cycle(4).is_regular(2));
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(k4.is_regular(3));
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(!p3.is_regular(2));
        let claw = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(!claw.is_claw_free());
        assert!(cycle(5).is_claw_free());
        assert!(petersen().line_graph().is_claw_free());
        assert!(!petersen().is_claw_free());
    }

    #[test]
    fn parse_examples() {
        let k2 = parse_graph("2 1\n0 1").unwrap();
        assert_eq!(k2.edges(), vec![(0, 1)]);
        let e3 = parse_graph("3 0\n").unwrap();
        assert_eq!((e3.n(), e3.m()), (3, 0));
        let k4 = parse_graph("4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3").unwrap();
        assert!(k4.is_regular(3));
        let commented = parse_graph("# K2\n2 1\n# edge\n0 1\n").unwrap();
        assert_eq!(commented, k2);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            ("2 1\n1 0", 2),
            ("2 1\n0 2", 2),
            ("3 2\n0 1\n0 1", 3),
            ("3 2\n0 1", 1),
            ("3 1\n0 x", 2),
            ("3 1\n0 1 2", 2),
            ("", 1),
        ];
        for (text, line) in cases {
            match parse_graph(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn builder_rejects_bad_edges() {
        let mut b = GraphBuilder::new(3);
        assert!(b.add_edge(0, 0).is_err());
        assert!(b.add_edge(0, 3).is_err());
        b.add_edge(0, 1).unwrap();
        assert!(b.add_edge(1, 0).is_err());
        b.ensure_edge(1, 0).unwrap();
        assert_eq!(b.build().m(), 1);
    }

    #[test]
    fn vertex_set_canonical() {
        let s = VertexSet::from_ids([3, 1, 3, 0]);
        assert_eq!(s.as_slice(), &[0, 1, 3]);
        assert!(s.check_range(4).is_ok());
        assert!(s.check_range(3).is_err());
        assert_eq!(s.to_string(), "0 1 3");
    }
}
