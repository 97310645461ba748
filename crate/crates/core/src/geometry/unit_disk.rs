//! Unit-disk reductions: gadget chains along an orthogonal embedding.
//!
//! Internal coordinates are integers in units of 1/16.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::disks::{intersection_graph, separation_violations, Disk, Rational};
use super::embedding::{embedding_diagnostics, GridEmbedding, Lattice};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, VertexSet};
use crate::reduction::{EdgeGadget, Family, Reduction, ReductionKind};
use crate::solver::{is_vertex_cover, Problem};

const UNIT: i64 = 16;
const REPAIR_ROUNDS: usize = 64;

/// (path index, run) owning each pendant disk.
type Owners = Vec<Option<(usize, usize)>>;

/// Certificate chain indices when the lower endpoint is covered.
pub const HD_U_SIDE: [usize; 3] = [1, 6, 7];
pub const HD_V_SIDE: [usize; 3] = [1, 2, 7];
pub const TSD_U_SIDE: [usize; 7] = [1, 2, 5, 6, 7, 9, 14];
pub const TSD_V_SIDE: [usize; 7] = [1, 2, 4, 6, 7, 9, 14];

/// Disks realizing a unit-disk reduction, with the declared gadget template.
#[derive(Clone, Debug)]
pub struct DiskLayout {
    pub problem: Problem,
    pub embedding: GridEmbedding,
    pub disks: Vec<Disk>,
    pub offset: usize,
    /// declared adjacency, by construction rather than geometry
    pub template: Graph,
    pub gadgets: Vec<EdgeGadget>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Mark {
    Vertex,
    Straight,
    Corner,
}

type V2 = (i64, i64);

fn add(a: V2, b: V2) -> V2 {
    (a.0 + b.0, a.1 + b.1)
}

fn mul(a: V2, k: i64) -> V2 {
    (a.0 * k, a.1 * k)
}

fn rot(a: V2) -> V2 {
    (-a.1, a.0)
}

fn dot(a: V2, b: V2) -> i64 {
    a.0 * b.0 + a.1 * b.1
}

fn sub(a: Lattice, b: Lattice) -> V2 {
    (a.0 - b.0, a.1 - b.1)
}

struct Builder {
    disks: Vec<(V2, String)>,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    fn disk(&mut self, at: V2, role: String) -> usize {
        self.disks.push((at, role));
        self.disks.len() - 1
    }

    fn link(&mut self, a: usize, b: usize) {
        self.edges.push((a, b));
    }

    fn chain(&mut self, ids: &[usize]) {
        for w in ids.windows(2) {
            self.link(w[0], w[1]);
        }
    }
}

/// Gap lengths (1/16 units) for `count` chain gaps filling `span`: 3/4 each,
/// plus 1/8 on some gaps, first next to graph vertices, then alternating
/// from the ends inward.
fn gaps(span: i64, count: usize, near_start: bool, near_end: bool) -> Result<Vec<i64>> {
    let base = 12 * count as i64;
    let extra = span - base;
    if extra < 0 || extra % 2 != 0 || extra / 2 > count as i64 {
        return Err(Error::Placement(format!("run span {span}/16 cannot hold {count} gaps")));
    }
    let mut order = Vec::new();
    if near_start {
        order.push(0);
    }
    if near_end {
        order.push(count - 1);
    }
    let (mut lo, mut hi) = (1, count - 2);
    while lo <= hi {
        order.push(lo);
        if hi != lo {
            order.push(hi);
        }
        lo += 1;
        hi -= 1;
    }
    let mut out = vec![12; count];
    for &i in order.iter().filter(|&&i| i < count).take((extra / 2) as usize) {
        out[i] += 2;
    }
    Ok(out)
}

/// Lays out disks for `problem` along the embedding and checks the result.
pub fn reduce_unit_disk(problem: Problem, e: &GridEmbedding) -> Result<DiskLayout> {
    if problem == Problem::VertexCover {
        return Err(Error::Input("unit-disk reductions target hd or 2sd".into()));
    }
    let diag = embedding_diagnostics(e);
    if !diag.is_empty() {
        return Err(Error::Precondition(format!("invalid embedding: {}", diag.join("; "))));
    }
    let mut flips = HashMap::new();
    let (mut layout, mut owner) = place(problem, e, &flips)?;
    let mut score = defects(&layout);
    // 2sd pendants may sit on either side of their run; flip sides of runs
    // involved in conflicts while that lowers the number of bad pairs
    for _ in 0..REPAIR_ROUNDS {
        if score.is_empty() || problem == Problem::HopDom {
            break;
        }
        let runs: BTreeSet<(usize, usize)> =
            score.iter().flat_map(|&(i, j)| [owner[i], owner[j]]).flatten().collect();
        let mut improved = false;
        'runs: for run in runs {
            let cur = flips.get(&run).copied().unwrap_or(0);
            for mask in (0..8u8).filter(|&m| m != cur) {
                let mut trial = flips.clone();
                trial.insert(run, mask);
                let (l, o) = place(problem, e, &trial)?;
                let sc = defects(&l);
                if sc.len() < score.len() {
                    (flips, layout, owner, score) = (trial, l, o, sc);
                    improved = true;
                    break 'runs;
                }
            }
        }
        if !improved {
            break;
        }
    }
    let bad = separation_violations(&layout.disks);
    if let Some(&(i, j)) = bad.first() {
        return Err(Error::Placement(format!(
            "{} disk pairs violate the separation band, first {} / {}",
            bad.len(),
            layout.disks[i].role,
            layout.disks[j].role
        )));
    }
    let diff = layout.template_mismatches();
    if let Some(&(i, j)) = diff.first() {
        return Err(Error::Placement(format!(
            "intersection graph differs from the template in {} pairs, first {} / {}",
            diff.len(),
            layout.disks[i].role,
            layout.disks[j].role
        )));
    }
    Ok(layout)
}

fn defects(l: &DiskLayout) -> Vec<(usize, usize)> {
    let mut v = separation_violations(&l.disks);
    v.extend(l.template_mismatches());
    v
}

/// Places every disk; `flips[(path, run)]` negates the 2sd pendant sides
/// (bit 0 start, bit 1 middle, bit 2 end). Also returns the owning run of
/// each pendant disk.
fn place(
    problem: Problem,
    e: &GridEmbedding,
    flips: &HashMap<(usize, usize), u8>,
) -> Result<(DiskLayout, Owners)> {
    let hd = problem == Problem::HopDom;
    let lambda: i64 = if hd { 7 * UNIT } else { 15 * UNIT / 2 };
    let chain_len = if hd { 7 } else { 8 };
    let phys = |p: Lattice| (p.0 * lambda, p.1 * lambda);

    let mut b = Builder { disks: Vec::new(), edges: Vec::new() };
    for (i, &c) in e.coords.iter().enumerate() {
        b.disk(phys(c), format!("u_{i}"));
    }
    let mut gadgets = Vec::new();
    let mut owner = Vec::new();
    for (pi, path) in e.paths.iter().enumerate() {
        let (eu, ev) = (path.u, path.v);
        let pts = &path.points;
        let k = pts.len() - 1;
        let dirs: Vec<V2> = pts.windows(2).map(|w| sub(w[1], w[0])).collect();
        let mark = |t: usize| {
            if t == 0 || t == k {
                Mark::Vertex
            } else if dirs[t - 1] == dirs[t] {
                Mark::Straight
            } else {
                Mark::Corner
            }
        };
        let mut named: BTreeMap<String, usize> = BTreeMap::new();
        let mut groups: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        let mut u_side = Vec::new();
        let mut v_side = Vec::new();
        // disk that the next run's first chain disk must touch
        let mut entry = eu;
        for r in 0..k {
            let d = dirs[r];
            let l = rot(d);
            let x = phys(pts[r]);
            let (mx, my) = (mark(r), mark(r + 1));
            let s0 = if mx == Mark::Vertex { 0 } else { 6 };
            let s1 = if my == Mark::Vertex { lambda } else { lambda - 6 };
            let g = gaps(s1 - s0, chain_len + 1, mx == Mark::Vertex, my == Mark::Vertex)?;
            let tag = |p: usize| format!("C^{{{p}}}_{{{eu},{ev}}}[{r}]");
            let mut c = vec![usize::MAX];
            let mut at = s0;
            for p in 1..=chain_len {
                at += g[p - 1];
                c.push(b.disk(add(x, mul(d, at)), tag(p)));
            }
            b.link(entry, c[1]);
            b.chain(&c[1..]);
            let pos = |b: &Builder, id: usize| b.disks[id].0;
            if hd {
                let end = if my == Mark::Straight {
                    7
                } else if mx == Mark::Straight {
                    1
                } else {
                    return Err(Error::Placement(format!(
                        "edge ({eu},{ev}) run {r} has no straight grid vertex at either end"
                    )));
                };
                let base = pos(&b, c[end]);
                let c8 = b.disk(add(base, mul(l, 14)), tag(8));
                let c9 = b.disk(add(base, mul(l, 28)), tag(9));
                let c10 = b.disk(add(base, mul(l, -14)), tag(10));
                let c11 = b.disk(add(base, mul(l, -28)), tag(11));
                b.chain(&[c9, c8, c[end], c10, c11]);
                c.extend([c8, c9, c10, c11]);
            } else {
                let flip = flips.get(&(pi, r)).copied().unwrap_or(0);
                let sign = |bit: u8| if flip & (1 << bit) != 0 { -1 } else { 1 };
                let start_side = sign(0) * match mx {
                    Mark::Vertex => 1,
                    Mark::Straight => -1,
                    Mark::Corner => dot(dirs[r - 1], l).signum(),
                };
                let mid_side = sign(1);
                let end_side = sign(2) * match my {
                    Mark::Vertex | Mark::Straight => -1,
                    Mark::Corner => -dot(dirs[r + 1], l).signum(),
                };
                let c2 = pos(&b, c[2]);
                let c9 = b.disk(add(c2, mul(l, 14 * start_side)), tag(9));
                let c10 = b.disk(add(c2, mul(l, 28 * start_side)), tag(10));
                let c11 = b.disk(add(c2, mul(l, 42 * start_side)), tag(11));
                let mid = {
                    let (a, z) = (pos(&b, c[4]), pos(&b, c[5]));
                    ((a.0 + z.0) / 2, (a.1 + z.1) / 2)
                };
                let c12 = b.disk(add(mid, mul(l, 10 * mid_side)), tag(12));
                let c13 = b.disk(add(mid, mul(l, 24 * mid_side)), tag(13));
                let c7 = pos(&b, c[7]);
                let c14 = b.disk(add(c7, mul(l, 14 * end_side)), tag(14));
                let c15 = b.disk(add(c7, mul(l, 28 * end_side)), tag(15));
                let c16 = b.disk(add(c7, mul(l, 42 * end_side)), tag(16));
                b.chain(&[c[2], c9, c10, c11]);
                b.chain(&[c[4], c12, c[5]]);
                b.link(c12, c13);
                b.chain(&[c[7], c14, c15, c16]);
                c.extend([c9, c10, c11, c12, c13, c14, c15, c16]);
            }
            owner.resize(b.disks.len(), None);
            for &id in &c[chain_len + 1..] {
                owner[id] = Some((pi, r));
            }
            let (us, vs): (&[usize], &[usize]) =
                if hd { (&HD_U_SIDE, &HD_V_SIDE) } else { (&TSD_U_SIDE, &TSD_V_SIDE) };
            u_side.extend(us.iter().map(|&p| c[p]));
            v_side.extend(vs.iter().map(|&p| c[p]));
            for (p, &id) in c.iter().enumerate().skip(1) {
                named.insert(format!("C^{{{p}}}[{r}]"), id);
            }
            groups.insert(format!("run{r}"), c[1..].to_vec());
            if my == Mark::Vertex {
                b.link(c[chain_len], ev);
                continue;
            }
            // grid gadget at pts[r + 1]
            let t = r + 1;
            let p = phys(pts[t]);
            let (a, bb) = (dirs[r], dirs[t]);
            let (d1, d2, d3, d4) = if my == Mark::Straight {
                let l = rot(a);
                (add(p, mul(a, -6)), add(p, mul(a, 6)), add(p, mul(l, 12)), add(p, mul(l, 24)))
            } else {
                let out = sub((a.0, a.1), (bb.0, bb.1));
                (add(p, mul(a, -6)), add(p, mul(bb, 6)), add(p, mul(out, 6)), add(p, mul(out, 14)))
            };
            let gtag = |q: usize| format!("C^{{{q}}}_{{d[{eu},{ev},{t}]}}");
            let ids: Vec<usize> =
                [d1, d2, d3, d4].iter().enumerate().map(|(q, &at)| b.disk(at, gtag(q + 1))).collect();
            b.link(c[chain_len], ids[0]);
            b.link(ids[0], ids[1]);
            b.link(ids[0], ids[2]);
            b.link(ids[1], ids[2]);
            b.link(ids[2], ids[3]);
            u_side.push(ids[1]);
            v_side.push(ids[0]);
            for (q, &id) in ids.iter().enumerate() {
                named.insert(format!("C^{{{}}}_d[{t}]", q + 1), id);
            }
            groups.insert(format!("grid{t}"), ids.clone());
            entry = ids[1];
        }
        let vertices = groups.values().flatten().copied().collect::<VertexSet>().into_vec();
        gadgets.push(EdgeGadget { edge: (eu, ev), vertices, named, groups, u_side, v_side });
    }

    let disks: Vec<Disk> = b
        .disks
        .into_iter()
        .map(|((x, y), role)| Disk { x: Rational::new(x, UNIT), y: Rational::new(y, UNIT), role })
        .collect();
    let mut tb = GraphBuilder::new(disks.len());
    for &(x, y) in &b.edges {
        tb.add_edge(x, y)?;
    }
    let template = tb.build();
    let offset = gadgets.iter().map(|g| g.u_side.len()).sum();
    owner.resize(disks.len(), None);
    let layout = DiskLayout { problem, embedding: e.clone(), disks, offset, template, gadgets };
    Ok((layout, owner))
}

impl DiskLayout {
    pub fn intersection_graph(&self) -> Graph {
        intersection_graph(&self.disks)
    }

    /// Pairs adjacent in exactly one of template and intersection graph.
    pub fn template_mismatches(&self) -> Vec<(usize, usize)> {
        let g = self.intersection_graph();
        let a = g.edges();
        let b = self.template.edges();
        let mut out: Vec<(usize, usize)> = a
            .iter()
            .filter(|e| b.binary_search(e).is_err())
            .chain(b.iter().filter(|e| a.binary_search(e).is_err()))
            .copied()
            .collect();
        out.sort_unstable();
        out
    }

    /// Grid length of each edge, in embedding order.
    pub fn grid_lengths(&self) -> Vec<usize> {
        self.embedding.paths.iter().map(|p| p.len()).collect()
    }

    /// Reference closed-form offset, which the 2sd layout does not reach:
    /// `sum(3k + k - 1)` for hd, `sum(7(k + 1) + k)` for 2sd.
    pub fn printed_offset(&self) -> usize {
        self.grid_lengths()
            .into_iter()
            .map(|k| if self.problem == Problem::HopDom { 3 * k + k - 1 } else { 7 * (k + 1) + k })
            .sum()
    }

    /// Closed form of the structural count: `sum(4k - 1)` or `sum(8k - 1)`.
    pub fn closed_form_offset(&self) -> usize {
        let per_run = if self.problem == Problem::HopDom { 4 } else { 8 };
        self.grid_lengths().into_iter().map(|k| per_run * k - 1).sum()
    }

    /// Generic reduction view; disk `i < n` is the vertex disk of `u_i`.
    pub fn reduction(&self) -> Result<Reduction> {
        let kind = ReductionKind::new(self.problem, Family::UnitDisk)?;
        let roles = self.disks.iter().map(|d| d.role.clone()).collect();
        Reduction::from_parts(
            kind,
            self.embedding.graph()?,
            self.intersection_graph(),
            roles,
            self.gadgets.clone(),
        )
    }
}

/// Certificate from a vertex cover of the embedded graph: per edge the
/// u-side picks if its lower endpoint is covered, else the v-side picks.
pub fn unit_disk_forward_certificate(l: &DiskLayout, vc: &VertexSet) -> Result<VertexSet> {
    let g = l.embedding.graph()?;
    if vc.check_range(g.n()).is_err() || !is_vertex_cover(&g, vc) {
        return Err(Error::Precondition(format!("{{{vc}}} is not a vertex cover of the source")));
    }
    let mut out = vc.as_slice().to_vec();
    for gd in &l.gadgets {
        out.extend(if vc.contains(gd.edge.0) { &gd.u_side } else { &gd.v_side });
    }
    Ok(VertexSet::from_ids(out))
}

#[cfg(test)]
mod tests {
    use super::super::embedding::EdgePath;
    use super::*;
    use crate::solver::{is_hop_dominating, is_two_step_dominating};

    fn k2(k: i64) -> GridEmbedding {
        GridEmbedding {
            coords: vec![(0, 0), (k, 0)],
            paths: vec![EdgePath { u: 0, v: 1, points: (0..=k).map(|x| (x, 0)).collect() }],
            scale: 1,
        }
    }

    #[test]
    fn gap_distribution() {
        assert_eq!(gaps(106, 8, true, false).unwrap(), vec![14, 14, 14, 12, 12, 14, 14, 12]);
        assert_eq!(gaps(108, 9, false, false).unwrap(), vec![12; 9]);
        assert!(gaps(90, 8, false, false).is_err());
    }

    #[test]
    fn hd_k2_counts() {
        let l = reduce_unit_disk(Problem::HopDom, &k2(2)).unwrap();
        assert_eq!(l.disks.len(), 28);
        assert_eq!(l.offset, 7);
        assert_eq!(l.closed_form_offset(), 7);
        assert_eq!(l.printed_offset(), 7);
        assert!(l.template_mismatches().is_empty());
        let s = unit_disk_forward_certificate(&l, &VertexSet::from_ids([0])).unwrap();
        assert_eq!(s.len(), 8);
        assert!(is_hop_dominating(&l.intersection_graph(), &s));
        let s = unit_disk_forward_certificate(&l, &VertexSet::from_ids([0, 1])).unwrap();
        assert_eq!(s.len(), 9);
        assert!(is_hop_dominating(&l.intersection_graph(), &s));
        assert!(unit_disk_forward_certificate(&l, &VertexSet::new()).is_err());
    }

    #[test]
    fn two_step_k2_counts() {
        let l = reduce_unit_disk(Problem::TwoStepDom, &k2(2)).unwrap();
        assert_eq!(l.disks.len(), 38);
        assert_eq!(l.offset, 15);
        assert_eq!(l.printed_offset(), 23);
        let s = unit_disk_forward_certificate(&l, &VertexSet::from_ids([0])).unwrap();
        assert_eq!(s.len(), 16);
        assert!(is_two_step_dominating(&l.intersection_graph(), &s));
        let s = unit_disk_forward_certificate(&l, &VertexSet::from_ids([1])).unwrap();
        assert!(is_two_step_dominating(&l.intersection_graph(), &s));
    }

    #[test]
    fn chain_disks_have_small_degree() {
        let l = reduce_unit_disk(Problem::HopDom, &k2(3)).unwrap();
        let g = l.intersection_graph();
        for (i, d) in l.disks.iter().enumerate() {
            if d.role.starts_with("C^") {
                assert!(g.degree(i) <= 4, "{}", d.role);
            }
        }
        assert!(l.disks.iter().all(|d| (*d.x.denom() as u64).is_power_of_two()));
    }

    #[test]
    fn invalid_embedding_is_a_precondition_error() {
        assert!(matches!(reduce_unit_disk(Problem::HopDom, &k2(1)), Err(Error::Precondition(_))));
        assert!(reduce_unit_disk(Problem::VertexCover, &k2(2)).is_err());
    }

    #[test]
    fn hd_run_between_corners_is_rejected() {
        // 0 -> (0,1) corner -> (1,1) corner -> 1 at (1,0)... both inner points are corners
        let e = GridEmbedding {
            coords: vec![(0, 0), (1, 0)],
            paths: vec![EdgePath { u: 0, v: 1, points: vec![(0, 0), (0, 1), (1, 1), (1, 0)] }],
            scale: 1,
        };
        assert!(matches!(reduce_unit_disk(Problem::HopDom, &e), Err(Error::Placement(_))));
        assert!(reduce_unit_disk(Problem::TwoStepDom, &e).is_ok());
    }

    #[test]
    fn two_step_pendants_avoid_neighbouring_runs() {
        use crate::geometry::embed_orthogonal_scaled;
        use crate::solver::solve_minimum;
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let e = embed_orthogonal_scaled(&p3, 2).unwrap();
        let l = reduce_unit_disk(Problem::TwoStepDom, &e).unwrap();
        assert!(separation_violations(&l.disks).is_empty());
        let g = l.intersection_graph();
        let r = solve_minimum(&g, Problem::TwoStepDom, None, false);
        assert_eq!(r.optimum, Some(1 + l.offset));
    }
}
