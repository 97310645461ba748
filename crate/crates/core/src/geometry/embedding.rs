use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub type Lattice = (i64, i64);

/// Lattice path of one edge, from `u` to `v` with `u < v`, endpoints included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgePath {
    pub u: usize,
    pub v: usize,
    pub points: Vec<Lattice>,
}

impl EdgePath {
    /// Grid length: number of unit segments.
    pub fn len(&self) -> usize {
        self.points.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.points.len() < 2
    }

    /// Interior lattice points (the grid vertices of the edge).
    pub fn interior(&self) -> &[Lattice] {
        if self.points.len() < 2 {
            &[]
        } else {
            &self.points[1..self.points.len() - 1]
        }
    }

    /// True when the path changes direction somewhere.
    pub fn has_bend(&self) -> bool {
        self.points.windows(3).any(|w| {
            (w[1].0 - w[0].0, w[1].1 - w[0].1) != (w[2].0 - w[1].0, w[2].1 - w[1].1)
        })
    }
}

/// Orthogonal drawing of a graph on the integer lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridEmbedding {
    pub coords: Vec<Lattice>,
    /// sorted by `(u, v)`
    pub paths: Vec<EdgePath>,
    /// stretch factor already applied to the paths
    pub scale: u32,
}

impl GridEmbedding {
    pub fn n(&self) -> usize {
        self.coords.len()
    }

    /// The embedded graph.
    pub fn graph(&self) -> Result<Graph> {
        let edges: Vec<_> = self.paths.iter().map(|p| (p.u, p.v)).collect();
        Graph::from_edges(self.n(), &edges)
    }

    /// Every unit segment stretched into `factor` segments.
    pub fn scaled(&self, factor: u32) -> GridEmbedding {
        let f = factor as i64;
        let coords = self.coords.iter().map(|&(x, y)| (x * f, y * f)).collect();
        let paths = self
            .paths
            .iter()
            .map(|p| {
                let mut pts = vec![(p.points[0].0 * f, p.points[0].1 * f)];
                for w in p.points.windows(2) {
                    let (dx, dy) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
                    let (sx, sy) = (dx.signum(), dy.signum());
                    let steps = (dx.abs() + dy.abs()) * f;
                    let mut cur = *pts.last().unwrap();
                    for _ in 0..steps {
                        cur = (cur.0 + sx, cur.1 + sy);
                        pts.push(cur);
                    }
                }
                EdgePath { u: p.u, v: p.v, points: pts }
            })
            .collect();
        GridEmbedding { coords, paths, scale: self.scale * factor }
    }

    /// File form: header, `V id x y` lines, `E u v x1 y1 ...` lines.
    pub fn to_text(&self) -> String {
        let mut s = String::from("hopdomlab-embedding v1\n");
        s.push_str(&format!("# scale {}\n", self.scale));
        for (i, &(x, y)) in self.coords.iter().enumerate() {
            s.push_str(&format!("V {i} {x} {y}\n"));
        }
        for p in &self.paths {
            s.push_str(&format!("E {} {}", p.u, p.v));
            for &(x, y) in &p.points {
                s.push_str(&format!(" {x} {y}"));
            }
            s.push('\n');
        }
        s
    }
}

/// Parses the embedding file format. Structural validity is checked
/// separately by [`validate_embedding`].
pub fn parse_embedding(text: &str) -> Result<GridEmbedding> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    match lines.next() {
        Some((_, "hopdomlab-embedding v1")) => {}
        _ => return Err(Error::parse(1, "missing header \"hopdomlab-embedding v1\"")),
    }
    let mut verts: Vec<Option<Lattice>> = Vec::new();
    let mut paths = Vec::new();
    let mut scale = 1;
    for (ln, line) in lines {
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if let Some(s) = rest.trim().strip_prefix("scale ") {
                scale = s.trim().parse().map_err(|_| Error::parse(ln, "bad scale comment"))?;
            }
            continue;
        }
        let mut parts = line.split_whitespace();
        let tag = parts.next().unwrap();
        let nums: Vec<i64> = parts
            .map(|p| p.parse::<i64>().map_err(|_| Error::parse(ln, format!("bad integer {p:?}"))))
            .collect::<Result<_>>()?;
        match tag {
            "V" => {
                if nums.len() != 3 || nums[0] < 0 {
                    return Err(Error::parse(ln, "expected V id x y"));
                }
                let id = nums[0] as usize;
                if verts.len() <= id {
                    verts.resize(id + 1, None);
                }
                if verts[id].replace((nums[1], nums[2])).is_some() {
                    return Err(Error::parse(ln, format!("vertex {id} declared twice")));
                }
            }
            "E" => {
                if nums.len() < 6 || !nums.len().is_multiple_of(2) || nums[0] < 0 || nums[1] < 0 {
                    return Err(Error::parse(ln, "expected E u v x1 y1 x2 y2 ..."));
                }
                let (u, v) = (nums[0] as usize, nums[1] as usize);
                let mut points: Vec<Lattice> = nums[2..].chunks(2).map(|c| (c[0], c[1])).collect();
                let (u, v) = if u > v {
                    points.reverse();
                    (v, u)
                } else {
                    (u, v)
                };
                paths.push(EdgePath { u, v, points });
            }
            _ => return Err(Error::parse(ln, format!("unknown record {tag:?}"))),
        }
    }
    let coords = verts
        .into_iter()
        .enumerate()
        .map(|(i, c)| c.ok_or_else(|| Error::Input(format!("vertex {i} has no coordinates"))))
        .collect::<Result<Vec<_>>>()?;
    paths.sort_by_key(|p| (p.u, p.v));
    Ok(GridEmbedding { coords, paths, scale })
}

/// True iff the embedding satisfies every structural requirement.
pub fn validate_embedding(e: &GridEmbedding) -> bool {
    embedding_diagnostics(e).is_empty()
}

/// Human-readable list of violated requirements; empty when valid.
pub fn embedding_diagnostics(e: &GridEmbedding) -> Vec<String> {
    let mut out = Vec::new();
    let mut at_vertex: HashMap<Lattice, usize> = HashMap::new();
    for (i, &c) in e.coords.iter().enumerate() {
        if let Some(j) = at_vertex.insert(c, i) {
            out.push(format!("vertices {j} and {i} share point {c:?}"));
        }
    }
    let mut seen_edges = HashSet::new();
    let mut owner: HashMap<Lattice, (usize, usize)> = HashMap::new();
    for p in &e.paths {
        let tag = format!("edge ({},{})", p.u, p.v);
        if p.u >= p.v || p.v >= e.n() {
            out.push(format!("{tag}: endpoints must satisfy u < v < n"));
            continue;
        }
        if !seen_edges.insert((p.u, p.v)) {
            out.push(format!("{tag}: listed twice"));
        }
        if p.points.first() != Some(&e.coords[p.u]) || p.points.last() != Some(&e.coords[p.v]) {
            out.push(format!("{tag}: path does not join its endpoints"));
        }
        if p.len() < 2 {
            out.push(format!("{tag}: grid length {} is below 2", p.len()));
        }
        for w in p.points.windows(2) {
            if (w[1].0 - w[0].0).abs() + (w[1].1 - w[0].1).abs() != 1 {
                out.push(format!("{tag}: step {:?} -> {:?} is not a unit axis step", w[0], w[1]));
            }
        }
        let mut own = HashSet::new();
        for &q in &p.points {
            if !own.insert(q) {
                out.push(format!("{tag}: revisits {q:?}"));
            }
        }
        for &q in p.interior() {
            if let Some(&v) = at_vertex.get(&q) {
                out.push(format!("{tag}: passes through vertex {v} at {q:?}"));
            }
            if let Some(&(a, b)) = owner.get(&q) {
                if (a, b) != (p.u, p.v) {
                    out.push(format!("{tag}: meets edge ({a},{b}) at {q:?}"));
                }
            } else {
                owner.insert(q, (p.u, p.v));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn square(scale: u32) -> GridEmbedding {
        let coords = vec![(0, 0), (1, 0), (1, 1), (0, 1)];
        let paths = vec![
            EdgePath { u: 0, v: 1, points: vec![(0, 0), (1, 0)] },
            EdgePath { u: 0, v: 3, points: vec![(0, 0), (0, 1)] },
            EdgePath { u: 1, v: 2, points: vec![(1, 0), (1, 1)] },
            EdgePath { u: 2, v: 3, points: vec![(1, 1), (0, 1)] },
        ];
        GridEmbedding { coords, paths, scale: 1 }.scaled(scale)
    }

    #[test]
    fn square_is_valid_after_scaling() {
        let e = square(4);
        assert!(validate_embedding(&e), "{:?}", embedding_diagnostics(&e));
        assert!(e.paths.iter().all(|p| p.len() == 4));
        // unit lengths are below the minimum grid length
        let raw = square(1);
        assert!(!validate_embedding(&raw));
    }

    #[test]
    fn crossing_paths_are_rejected() {
        let coords = vec![(0, 1), (2, 1), (1, 0), (1, 2)];
        let paths = vec![
            EdgePath { u: 0, v: 1, points: vec![(0, 1), (1, 1), (2, 1)] },
            EdgePath { u: 2, v: 3, points: vec![(1, 0), (1, 1), (1, 2)] },
        ];
        let e = GridEmbedding { coords, paths, scale: 1 };
        let d = embedding_diagnostics(&e);
        assert!(d.iter().any(|m| m.contains("meets")), "{d:?}");
    }

    #[test]
    fn other_violations() {
        let coords = vec![(0, 0), (2, 0), (1, 0)];
        let paths = vec![EdgePath { u: 0, v: 1, points: vec![(0, 0), (1, 0), (2, 0)] }];
        let e = GridEmbedding { coords, paths, scale: 1 };
        assert!(embedding_diagnostics(&e).iter().any(|m| m.contains("passes through vertex 2")));
        let coords = vec![(0, 0), (2, 1)];
        let paths = vec![EdgePath { u: 0, v: 1, points: vec![(0, 0), (2, 1)] }];
        let e = GridEmbedding { coords, paths, scale: 1 };
        assert!(!validate_embedding(&e));
    }

    #[test]
    fn text_round_trip() {
        let e = square(2);
        let back = parse_embedding(&e.to_text()).unwrap();
        assert_eq!(back, e);
        assert!(parse_embedding("V 0 0 0").is_err());
        assert!(parse_embedding("hopdomlab-embedding v1\nV 0 0 0\nE 0 1 0 0\n").is_err());
        assert!(parse_embedding("hopdomlab-embedding v1\nV 1 0 0\n").is_err());
    }

    #[test]
    fn reversed_edge_records_are_normalized() {
        let text = "hopdomlab-embedding v1\nV 0 0 0\nV 1 2 0\nE 1 0 2 0 1 0 0 0\n";
        let e = parse_embedding(text).unwrap();
        assert_eq!(e.paths[0].points, vec![(0, 0), (1, 0), (2, 0)]);
        assert!(validate_embedding(&e));
    }
}
