//! Search-based orthogonal embedder for small planar graphs of maximum degree 4.

use std::collections::{HashMap, VecDeque};

use rustworkx_core::petgraph::graph::UnGraph;
use rustworkx_core::planar::is_planar;

use super::embedding::{EdgePath, GridEmbedding, Lattice};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_SCALE: u32 = 4;

const SEARCH_LIMIT: u64 = 200_000;
const RADIUS: i64 = 3;
const MAX_CANDIDATES: usize = 32;
const STEPS: [Lattice; 4] = [(1, 0), (0, 1), (-1, 0), (0, -1)];

/// Planarity test (left-right criterion).
pub fn graph_is_planar(g: &Graph) -> bool {
    let mut pg = UnGraph::<(), ()>::with_capacity(g.n(), g.m());
    let nodes: Vec<_> = (0..g.n()).map(|_| pg.add_node(())).collect();
    for (u, v) in g.edges() {
        pg.add_edge(nodes[u], nodes[v], ());
    }
    is_planar(&pg)
}

/// Embeds with the default stretch factor.
pub fn embed_orthogonal(g: &Graph) -> Result<GridEmbedding> {
    embed_orthogonal_scaled(g, DEFAULT_SCALE)
}

/// Places vertices on lattice points and routes every edge as a lattice
/// path, then stretches each unit segment into `scale` segments.
pub fn embed_orthogonal_scaled(g: &Graph, scale: u32) -> Result<GridEmbedding> {
    if scale < 2 {
        return Err(Error::Input("scale must be at least 2 so every edge has a grid vertex".into()));
    }
    if g.max_degree() > 4 {
        return Err(Error::Embedding(format!("maximum degree {} exceeds 4", g.max_degree())));
    }
    if !graph_is_planar(g) {
        return Err(Error::Embedding("graph is not planar".into()));
    }
    let mut s = Search::new(g);
    if !s.place(0)? {
        return Err(Error::Embedding("no drawing found within the search area".into()));
    }
    Ok(s.finish().scaled(scale))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Occ {
    Vertex,
    Path,
}

struct Search<'g> {
    g: &'g Graph,
    order: Vec<usize>,
    pos: Vec<Option<Lattice>>,
    occ: HashMap<Lattice, Occ>,
    routes: HashMap<(usize, usize), Vec<Lattice>>,
    steps: u64,
}

impl<'g> Search<'g> {
    fn new(g: &'g Graph) -> Self {
        Search {
            g,
            order: placement_order(g),
            pos: vec![None; g.n()],
            occ: HashMap::new(),
            routes: HashMap::new(),
            steps: 0,
        }
    }

    fn bbox(&self) -> (i64, i64, i64, i64) {
        let mut b = (i64::MAX, i64::MAX, i64::MIN, i64::MIN);
        for &(x, y) in self.occ.keys() {
            b = (b.0.min(x), b.1.min(y), b.2.max(x), b.3.max(y));
        }
        b
    }

    fn candidates(&self, v: usize) -> Vec<Lattice> {
        let placed: Vec<Lattice> = self.g.neighbors(v).iter().filter_map(|&w| self.pos[w]).collect();
        if placed.is_empty() {
            if self.occ.is_empty() {
                return vec![(0, 0)];
            }
            let b = self.bbox();
            return vec![(b.2 + 3, b.1)];
        }
        let mut seen = HashMap::new();
        for &(px, py) in &placed {
            for x in px - RADIUS..=px + RADIUS {
                for y in py - RADIUS..=py + RADIUS {
                    if !self.occ.contains_key(&(x, y)) {
                        let score: i64 = placed.iter().map(|&(a, b)| (a - x).abs() + (b - y).abs()).sum();
                        seen.insert((x, y), score);
                    }
                }
            }
        }
        let mut c: Vec<(i64, Lattice)> = seen.into_iter().map(|(p, s)| (s, p)).collect();
        c.sort_by_key(|&(s, (x, y))| (s, -x, y));
        c.into_iter().take(MAX_CANDIDATES).map(|(_, p)| p).collect()
    }

    fn route(&self, from: Lattice, to: Lattice) -> Option<Vec<Lattice>> {
        let b = self.bbox();
        let (x0, y0) = (b.0.min(from.0) - 2, b.1.min(from.1) - 2);
        let (x1, y1) = (b.2.max(from.0) + 2, b.3.max(from.1) + 2);
        let mut prev: HashMap<Lattice, Lattice> = HashMap::new();
        let mut queue = VecDeque::from([from]);
        prev.insert(from, from);
        while let Some(c) = queue.pop_front() {
            for (dx, dy) in STEPS {
                let nx = (c.0 + dx, c.1 + dy);
                if nx.0 < x0 || nx.0 > x1 || nx.1 < y0 || nx.1 > y1 || prev.contains_key(&nx) {
                    continue;
                }
                if nx == to {
                    let mut path = vec![to, c];
                    let mut cur = c;
                    while cur != from {
                        cur = prev[&cur];
                        path.push(cur);
                    }
                    path.reverse();
                    return Some(path);
                }
                if !self.occ.contains_key(&nx) {
                    prev.insert(nx, c);
                    queue.push_back(nx);
                }
            }
        }
        None
    }

    fn ports_ok(&self) -> bool {
        (0..self.g.n()).all(|w| match self.pos[w] {
            None => true,
            Some((x, y)) => {
                let pending = self.g.neighbors(w).iter().filter(|&&z| self.pos[z].is_none()).count();
                let free = STEPS.iter().filter(|&&(dx, dy)| !self.occ.contains_key(&(x + dx, y + dy))).count();
                free >= pending
            }
        })
    }

    fn unplace(&mut self, v: usize, routed: &[(usize, usize)]) {
        for key in routed {
            let path = self.routes.remove(key).unwrap();
            for q in &path[1..path.len() - 1] {
                self.occ.remove(q);
            }
        }
        let c = self.pos[v].take().unwrap();
        self.occ.remove(&c);
    }

    fn place(&mut self, idx: usize) -> Result<bool> {
        if idx == self.order.len() {
            return Ok(true);
        }
        let v = self.order[idx];
        let nbrs: Vec<usize> = self.g.neighbors(v).iter().copied().filter(|&w| self.pos[w].is_some()).collect();
        for c in self.candidates(v) {
            self.steps += 1;
            if self.steps > SEARCH_LIMIT {
                return Err(Error::Embedding("search limit reached".into()));
            }
            self.pos[v] = Some(c);
            self.occ.insert(c, Occ::Vertex);
            let mut routed = Vec::new();
            let mut ok = true;
            for &w in &nbrs {
                match self.route(c, self.pos[w].unwrap()) {
                    Some(path) => {
                        for q in &path[1..path.len() - 1] {
                            self.occ.insert(*q, Occ::Path);
                        }
                        self.routes.insert((v, w), path);
                        routed.push((v, w));
                    }
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok && self.ports_ok() && self.place(idx + 1)? {
                return Ok(true);
            }
            self.unplace(v, &routed);
        }
        Ok(false)
    }

    fn finish(self) -> GridEmbedding {
        let (mut mx, mut my) = (i64::MAX, i64::MAX);
        for &(x, y) in self.occ.keys() {
            mx = mx.min(x);
            my = my.min(y);
        }
        let shift = |(x, y): Lattice| (x - mx, y - my);
        let coords = self.pos.iter().map(|p| shift(p.unwrap())).collect();
        let mut paths: Vec<EdgePath> = self
            .routes
            .into_iter()
            .map(|((a, b), pts)| {
                let mut points: Vec<Lattice> = pts.into_iter().map(shift).collect();
                if a > b {
                    points.reverse();
                }
                EdgePath { u: a.min(b), v: a.max(b), points }
            })
            .collect();
        paths.sort_by_key(|p| (p.u, p.v));
        GridEmbedding { coords, paths, scale: 1 }
    }
}

/// Components by lowest vertex; inside each, BFS from a maximum-degree vertex.
fn placement_order(g: &Graph) -> Vec<usize> {
    let mut seen = vec![false; g.n()];
    let mut order = Vec::with_capacity(g.n());
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        let comp: Vec<usize> = {
            let d = g.distances_from(s);
            (0..g.n()).filter(|&v| d[v].is_some()).collect()
        };
        let root = *comp.iter().max_by_key(|&&v| (g.degree(v), std::cmp::Reverse(v))).unwrap();
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for &y in g.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::super::embedding::{embedding_diagnostics, validate_embedding};
    use super::*;

    fn g(n: usize, e: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, e).unwrap()
    }

    #[test]
    fn k2_and_c4_are_unit_drawings() {
        let e = embed_orthogonal(&g(2, &[(0, 1)])).unwrap();
        assert!(validate_embedding(&e));
        assert_eq!(e.paths[0].len(), 4);
        assert_eq!(e.coords[0].1, e.coords[1].1);
        let e = embed_orthogonal(&g(4, &[(0, 1), (1, 2), (2, 3), (0, 3)])).unwrap();
        assert!(validate_embedding(&e), "{:?}", embedding_diagnostics(&e));
        assert!(e.paths.iter().all(|p| p.len() == 4 && !p.has_bend()));
    }

    #[test]
    fn k4_needs_a_bend() {
        let k4 = g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let e = embed_orthogonal(&k4).unwrap();
        assert!(validate_embedding(&e), "{:?}", embedding_diagnostics(&e));
        assert!(e.paths.iter().any(EdgePath::has_bend));
        assert_eq!(e.graph().unwrap(), k4);
    }

    #[test]
    fn rejects_bad_inputs() {
        let k5: Vec<_> = (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect();
        assert!(matches!(embed_orthogonal(&g(5, &k5)), Err(Error::Embedding(_))));
        let star: Vec<_> = (1..6).map(|i| (0, i)).collect();
        assert!(matches!(embed_orthogonal(&g(6, &star)), Err(Error::Embedding(_))));
        let k33: Vec<_> = (0..3).flat_map(|i| (3..6).map(move |j| (i, j))).collect();
        assert!(!graph_is_planar(&g(6, &k33)));
        assert!(embed_orthogonal_scaled(&g(2, &[(0, 1)]), 1).is_err());
    }

    #[test]
    fn disconnected_and_degree_four() {
        let e = embed_orthogonal(&g(5, &[(0, 1), (2, 3)])).unwrap();
        assert!(validate_embedding(&e));
        // octahedron: planar, 4-regular
        let oct = g(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (4, 1), (5, 1), (5, 2), (5, 3), (5, 4)]);
        let e = embed_orthogonal_scaled(&oct, 2).unwrap();
        assert!(validate_embedding(&e), "{:?}", embedding_diagnostics(&e));
    }
}
