//! Gadget reductions from vertex cover to hop domination and 2-step
//! domination, with both proof directions as procedures.

mod gadgets;
mod regular;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

pub use regular::build_regular_graph;

use crate::error::{Error, Result};
use crate::graph::{parse_graph, serialize_graph, Graph, VertexSet};
use crate::solver::{is_valid, is_vertex_cover, Problem};
use gadgets::Assembly;

/// Source graph class targeted by a construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    ThreeRegular,
    DRegular(usize),
    ClawFree,
    UnitDisk,
}

/// Target problem plus family; `d` lives inside [`Family::DRegular`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReductionKind {
    problem: Problem,
    family: Family,
}

impl ReductionKind {
    pub fn new(problem: Problem, family: Family) -> Result<Self> {
        if problem == Problem::VertexCover {
            return Err(Error::Input("reductions target hd or 2sd, not vc".into()));
        }
        if let Family::DRegular(d) = family {
            if d < 4 {
                return Err(Error::Input(format!("d-regular constructions need d >= 4, got {d}")));
            }
        }
        Ok(ReductionKind { problem, family })
    }

    pub fn problem(&self) -> Problem {
        self.problem
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Every non-geometric kind, with the given `d` for the d-regular ones.
    pub fn all_graph_kinds(d: usize) -> Result<Vec<ReductionKind>> {
        let mut out = Vec::new();
        for fam in [Family::ThreeRegular, Family::DRegular(d), Family::ClawFree] {
            for p in [Problem::HopDom, Problem::TwoStepDom] {
                out.push(ReductionKind::new(p, fam)?);
            }
        }
        Ok(out)
    }

    /// Gadget picks per source edge; the offset is this times `m`.
    /// `None` for unit-disk kinds, whose offset depends on the embedding.
    pub fn offset_per_edge(&self) -> Option<usize> {
        use Family::*;
        use Problem::*;
        match (self.problem, self.family) {
            (HopDom, ThreeRegular) => Some(6),
            (TwoStepDom, ThreeRegular) => Some(3),
            (HopDom, DRegular(_)) => Some(1),
            (TwoStepDom, DRegular(_)) => Some(2),
            (HopDom, ClawFree) => Some(2),
            (TwoStepDom, ClawFree) => Some(4),
            _ => None,
        }
    }

    /// Gadget vertices per source edge.
    pub fn vertices_per_edge(&self) -> Option<usize> {
        use Family::*;
        use Problem::*;
        match (self.problem, self.family) {
            (HopDom, ThreeRegular) => Some(30),
            (TwoStepDom, ThreeRegular) => Some(12),
            (HopDom, DRegular(d)) => Some(1 + (d - 2) * d),
            (TwoStepDom, DRegular(d)) => Some(2 * d),
            (HopDom, ClawFree) => Some(7),
            (TwoStepDom, ClawFree) => Some(11),
            _ => None,
        }
    }

    /// Edges contributed per source edge before any neighborhood closure.
    pub fn edges_per_edge(&self) -> Option<usize> {
        use Family::*;
        use Problem::*;
        match (self.problem, self.family) {
            (HopDom, ThreeRegular) => Some(46),
            (TwoStepDom, ThreeRegular) => Some(19),
            (HopDom, DRegular(d)) => {
                let leaves = (d - 2) * (d - 1);
                Some(2 + (d - 2) + leaves + leaves * (d - 1) / 2)
            }
            (TwoStepDom, DRegular(d)) => Some(2 + (d - 2) + (d - 2) * (d - 1) + 2 * (d - 1) + 1),
            (HopDom, ClawFree) => Some(12),
            (TwoStepDom, ClawFree) => Some(13),
            _ => None,
        }
    }
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fam = match self.family {
            Family::ThreeRegular => "3reg".to_string(),
            Family::DRegular(d) => format!("dreg:{d}"),
            Family::ClawFree => "claw".to_string(),
            Family::UnitDisk => "ud".to_string(),
        };
        write!(f, "{}-{}", self.problem, fam)
    }
}

impl FromStr for ReductionKind {
    type Err = Error;

    /// Accepts `hd-3reg`, `2sd-claw`, `hd-ud`, `hd-dreg:4`, ...
    fn from_str(s: &str) -> Result<Self> {
        parse_kind(s, None)
    }
}

/// Parses a kind name; `hd-dreg`/`2sd-dreg` take `d` from the name
/// (`hd-dreg:5`) or from `default_d`.
pub fn parse_kind(s: &str, default_d: Option<usize>) -> Result<ReductionKind> {
    let bad = || Error::Input(format!("unknown kind {s:?}"));
    let (p, rest) = s.split_once('-').ok_or_else(bad)?;
    let problem = match p {
        "hd" => Problem::HopDom,
        "2sd" => Problem::TwoStepDom,
        _ => return Err(bad()),
    };
    let family = match rest {
        "3reg" => Family::ThreeRegular,
        "claw" => Family::ClawFree,
        "ud" => Family::UnitDisk,
        "dreg" => Family::DRegular(
            default_d.ok_or_else(|| Error::Input(format!("kind {s:?} needs --d")))?,
        ),
        _ => match rest.strip_prefix("dreg:") {
            Some(d) => Family::DRegular(d.parse().map_err(|_| bad())?),
            None => return Err(bad()),
        },
    };
    ReductionKind::new(problem, family)
}

/// Registry entry for the gadget of one source edge `(i, j)`, `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeGadget {
    pub edge: (usize, usize),
    /// all gadget vertices in construction order
    pub vertices: Vec<usize>,
    /// symbol (without the edge suffix) to vertex id
    pub named: BTreeMap<String, usize>,
    /// level or branch name to its vertices
    pub groups: BTreeMap<String, Vec<usize>>,
    /// certificate picks when `i` is in the cover
    pub u_side: Vec<usize>,
    /// certificate picks when only `j` is in the cover
    pub v_side: Vec<usize>,
}

/// A transformed instance. Output vertex `i < source.n()` is `u_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub kind: ReductionKind,
    pub source: Graph,
    pub output: Graph,
    pub offset: usize,
    pub roles: Vec<String>,
    pub gadgets: Vec<EdgeGadget>,
}

/// Builds `G2` from `g1` for a non-geometric kind.
pub fn reduce(kind: ReductionKind, g1: &Graph) -> Result<Reduction> {
    let mut asm = Assembly::new(g1);
    for e in g1.edges() {
        match (kind.problem, kind.family) {
            (_, Family::UnitDisk) => {
                return Err(Error::Dispatch(
                    "unit-disk reductions are built from an embedding by the geometry module".into(),
                ))
            }
            (Problem::HopDom, Family::ThreeRegular) => gadgets::hd_three_regular(&mut asm, e)?,
            (Problem::TwoStepDom, Family::ThreeRegular) => gadgets::two_step_three_regular(&mut asm, e)?,
            (Problem::HopDom, Family::DRegular(d)) => gadgets::hd_d_regular(&mut asm, e, d)?,
            (Problem::TwoStepDom, Family::DRegular(d)) => gadgets::two_step_d_regular(&mut asm, e, d)?,
            (Problem::HopDom, Family::ClawFree) => gadgets::hd_claw_free(&mut asm, e)?,
            (Problem::TwoStepDom, Family::ClawFree) => gadgets::two_step_claw_free(&mut asm, e)?,
            (Problem::VertexCover, _) => unreachable!("rejected by ReductionKind::new"),
        }
    }
    if kind.family == Family::UnitDisk {
        return Err(Error::Dispatch(
            "unit-disk reductions are built from an embedding by the geometry module".into(),
        ));
    }
    if kind.family == Family::ClawFree {
        gadgets::close_source_neighborhoods(&mut asm, g1.n())?;
    }
    let output = asm.b.build();
    let roles = output.labels().map(<[String]>::to_vec).unwrap_or_default();
    let offset = asm.gadgets.iter().map(|g| g.u_side.len()).sum();
    Ok(Reduction { kind, source: g1.clone(), output, offset, roles, gadgets: asm.gadgets })
}

impl Reduction {
    /// Assembles a reduction from parts built elsewhere (the unit-disk layouts).
    pub fn from_parts(
        kind: ReductionKind,
        source: Graph,
        output: Graph,
        roles: Vec<String>,
        gadgets: Vec<EdgeGadget>,
    ) -> Result<Reduction> {
        if roles.len() != output.n() || output.n() < source.n() {
            return Err(Error::Input("role map does not match the output graph".into()));
        }
        for g in &gadgets {
            if g.u_side.len() != g.v_side.len() {
                return Err(Error::Input(format!("gadget {:?} has unbalanced picks", g.edge)));
            }
        }
        let offset = gadgets.iter().map(|g| g.u_side.len()).sum();
        Ok(Reduction { kind, source, output, offset, roles, gadgets })
    }

    pub fn problem(&self) -> Problem {
        self.kind.problem
    }

    /// Solution of `G2` built from a vertex cover of `G1`, as in the proofs.
    pub fn forward_certificate(&self, vc: &VertexSet) -> Result<VertexSet> {
        if vc.check_range(self.source.n()).is_err() || !is_vertex_cover(&self.source, vc) {
            return Err(Error::Precondition(format!("{{{vc}}} is not a vertex cover of the source")));
        }
        let mut out: Vec<usize> = vc.as_slice().to_vec();
        for g in &self.gadgets {
            if vc.contains(g.edge.0) {
                out.extend(&g.u_side);
            } else {
                out.extend(&g.v_side);
            }
        }
        Ok(VertexSet::from_ids(out))
    }

    /// Vertex cover of `G1` read off a valid solution of `G2`.
    ///
    /// Only the selected `u_i` carry over; every source edge left uncovered
    /// gets its lower endpoint. The size bound `|sol| - offset` is then
    /// checked, and a violation is reported rather than repaired.
    pub fn extract_vertex_cover(&self, sol: &VertexSet) -> Result<VertexSet> {
        if !is_valid(&self.output, self.kind.problem, sol) {
            return Err(Error::Precondition(format!(
                "set of size {} is not a valid {} solution of the output graph",
                sol.len(),
                self.kind.problem
            )));
        }
        let n1 = self.source.n();
        let mut chosen: Vec<bool> = (0..n1).map(|i| sol.contains(i)).collect();
        // claw-free: a picked gadget vertex next to exactly one u_i stands in for u_i
        let by_neighbour = self.kind.family == Family::ClawFree;
        for x in sol.iter().copied().filter(|&x| by_neighbour && x >= n1) {
            let mut src = self.output.neighbors(x).iter().copied().filter(|&y| y < n1);
            if let (Some(i), None) = (src.next(), src.next()) {
                chosen[i] = true;
            }
        }
        for (i, j) in self.source.edges() {
            if !chosen[i] && !chosen[j] {
                chosen[i] = true;
            }
        }
        let cover = VertexSet::from_ids((0..n1).filter(|&i| chosen[i]));
        if cover.len() + self.offset > sol.len() {
            return Err(Error::Extraction(format!(
                "cover of size {} exceeds |sol| - offset = {} - {}",
                cover.len(),
                sol.len(),
                self.offset
            )));
        }
        Ok(cover)
    }

    /// Report document: header, kind, offset, the edge list of `G2`, roles.
    pub fn to_report(&self) -> String {
        let mut s = String::from("hopdomlab-reduction v1\n");
        s.push_str(&format!("kind {}\n", self.kind));
        s.push_str(&format!("offset {}\n", self.offset));
        s.push_str("graph\n");
        s.push_str(&serialize_graph(&self.output));
        s.push_str("roles\n");
        s.push_str(&self.roles_tsv());
        s
    }

    /// `id<TAB>role` lines.
    pub fn roles_tsv(&self) -> String {
        self.roles.iter().enumerate().map(|(i, r)| format!("{i}\t{r}\n")).collect()
    }
}

/// Contents of a reduction report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionReport {
    pub kind: ReductionKind,
    pub offset: usize,
    pub output: Graph,
    pub roles: Vec<String>,
}

/// Parses a document written by [`Reduction::to_report`].
pub fn parse_reduction_report(text: &str) -> Result<ReductionReport> {
    let lines: Vec<&str> = text.lines().collect();
    let at = |i: usize| lines.get(i).copied().ok_or_else(|| Error::parse(i + 1, "unexpected end"));
    if at(0)? != "hopdomlab-reduction v1" {
        return Err(Error::parse(1, "missing header \"hopdomlab-reduction v1\""));
    }
    let kind = at(1)?
        .strip_prefix("kind ")
        .ok_or_else(|| Error::parse(2, "expected kind line"))?
        .parse::<ReductionKind>()
        .map_err(|e| Error::parse(2, e.to_string()))?;
    let offset = at(2)?
        .strip_prefix("offset ")
        .and_then(|o| o.parse().ok())
        .ok_or_else(|| Error::parse(3, "expected offset line"))?;
    if at(3)? != "graph" {
        return Err(Error::parse(4, "expected graph section"));
    }
    let roles_at = lines
        .iter()
        .position(|&l| l == "roles")
        .ok_or_else(|| Error::parse(lines.len(), "missing roles section"))?;
    let output = parse_graph(&lines[4..roles_at].join("\n")).map_err(|e| match e {
        Error::Parse { line, msg } => Error::parse(line + 4, msg),
        other => other,
    })?;
    let mut roles = Vec::new();
    for (k, l) in lines[roles_at + 1..].iter().enumerate() {
        let ln = roles_at + 2 + k;
        let (id, role) = l.split_once('\t').ok_or_else(|| Error::parse(ln, "expected id<TAB>role"))?;
        if id.parse::<usize>().ok() != Some(roles.len()) {
            return Err(Error::parse(ln, format!("expected id {}", roles.len())));
        }
        roles.push(role.to_string());
    }
    if roles.len() != output.n() {
        return Err(Error::parse(lines.len(), "role count does not match vertex count"));
    }
    Ok(ReductionReport { kind, offset, output, roles })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{is_hop_dominating, is_two_step_dominating, solve_minimum};

    fn k2() -> Graph {
        Graph::from_edges(2, &[(0, 1)]).unwrap()
    }

    fn kind(p: Problem, f: Family) -> ReductionKind {
        ReductionKind::new(p, f).unwrap()
    }

    #[test]
    fn construction_counts() {
        let r = reduce(kind(Problem::HopDom, Family::ThreeRegular), &k2()).unwrap();
        assert_eq!((r.output.n(), r.offset), (32, 6));
        let r = reduce(kind(Problem::HopDom, Family::DRegular(4)), &k2()).unwrap();
        assert_eq!((r.output.n(), r.offset), (11, 1));
        assert!(r.output.is_regular(4) || r.output.degree(0) == 1);
        assert!((2..11).all(|v| r.output.degree(v) == 4));
        let r = reduce(kind(Problem::TwoStepDom, Family::DRegular(5)), &k2()).unwrap();
        assert_eq!((r.output.n(), r.offset), (12, 2));
        assert!((2..12).all(|v| r.output.degree(v) == 5));
        let r = reduce(kind(Problem::HopDom, Family::ClawFree), &k2()).unwrap();
        assert_eq!((r.output.n(), r.offset), (9, 2));
        assert!(r.output.is_claw_free());
    }

    #[test]
    fn size_formulas_match_builder() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        for k in ReductionKind::all_graph_kinds(5).unwrap() {
            for g in [k2(), p3.clone()] {
                let r = reduce(k, &g).unwrap();
                let m = g.m();
                assert_eq!(r.output.n(), g.n() + m * k.vertices_per_edge().unwrap(), "{k}");
                assert_eq!(r.offset, m * k.offset_per_edge().unwrap(), "{k}");
                if k.family() != Family::ClawFree {
                    assert_eq!(r.output.m(), m * k.edges_per_edge().unwrap(), "{k}");
                }
            }
        }
        // K2: the closure adds nothing since each u_i has one neighbor
        for p in [Problem::HopDom, Problem::TwoStepDom] {
            let k = kind(p, Family::ClawFree);
            assert_eq!(reduce(k, &k2()).unwrap().output.m(), k.edges_per_edge().unwrap());
        }
    }

    #[test]
    fn roles_and_registry() {
        let r = reduce(kind(Problem::HopDom, Family::ThreeRegular), &k2()).unwrap();
        assert_eq!(r.roles[0], "u_0");
        assert_eq!(r.roles[2], "u_{0,1}");
        let g = &r.gadgets[0];
        assert_eq!(r.roles[g.named["d^{23}"]], "d^{23}_{0,1}");
        assert_eq!(g.groups["d"].len(), 12);
        let r = reduce(kind(Problem::HopDom, Family::DRegular(4)), &k2()).unwrap();
        let g = &r.gadgets[0];
        assert_eq!(g.groups["H1"].len(), 2);
        assert_eq!(g.groups["H2"].len(), 6);
    }

    #[test]
    fn forward_certificates_on_k2() {
        let vc = VertexSet::from_ids([0]);
        let r = reduce(kind(Problem::HopDom, Family::ThreeRegular), &k2()).unwrap();
        let s = r.forward_certificate(&vc).unwrap();
        assert_eq!(s.len(), 7);
        assert!(is_hop_dominating(&r.output, &s));
        let r = reduce(kind(Problem::HopDom, Family::DRegular(4)), &k2()).unwrap();
        let s = r.forward_certificate(&vc).unwrap();
        assert_eq!(s.as_slice(), &[0, 2]);
        assert!(is_hop_dominating(&r.output, &s));
        assert_eq!(r.extract_vertex_cover(&s).unwrap(), vc);
        let r = reduce(kind(Problem::TwoStepDom, Family::ClawFree), &k2()).unwrap();
        let s = r.forward_certificate(&vc).unwrap();
        assert_eq!(s.len(), 5);
        assert!(is_two_step_dominating(&r.output, &s));
        assert!(r.forward_certificate(&VertexSet::new()).is_err());
    }

    #[test]
    fn extraction_examples() {
        let r = reduce(kind(Problem::HopDom, Family::ThreeRegular), &k2()).unwrap();
        let sol = solve_minimum(&r.output, Problem::HopDom, None, true).witness.unwrap();
        assert_eq!(r.extract_vertex_cover(&sol).unwrap().len(), 1);
        let r = reduce(kind(Problem::TwoStepDom, Family::ThreeRegular), &k2()).unwrap();
        let all = VertexSet::full(r.output.n());
        let vc = r.extract_vertex_cover(&all).unwrap();
        assert!(vc.len() <= r.output.n() - 3);
        assert!(r.extract_vertex_cover(&VertexSet::new()).is_err());
    }

    #[test]
    fn kinds_parse_and_reject() {
        assert_eq!("hd-3reg".parse::<ReductionKind>().unwrap(), kind(Problem::HopDom, Family::ThreeRegular));
        assert_eq!(parse_kind("2sd-dreg", Some(5)).unwrap(), kind(Problem::TwoStepDom, Family::DRegular(5)));
        assert_eq!("hd-dreg:4".parse::<ReductionKind>().unwrap().to_string(), "hd-dreg:4");
        assert!("hd-dreg".parse::<ReductionKind>().is_err());
        assert!(parse_kind("hd-dreg", Some(3)).is_err());
        assert!("vc-3reg".parse::<ReductionKind>().is_err());
        let ud = kind(Problem::HopDom, Family::UnitDisk);
        assert!(matches!(reduce(ud, &k2()), Err(Error::Dispatch(_))));
        assert!(matches!(reduce(ud, &Graph::empty(1)), Err(Error::Dispatch(_))));
    }

    #[test]
    fn report_round_trip() {
        let r = reduce(kind(Problem::TwoStepDom, Family::DRegular(4)), &k2()).unwrap();
        let text = r.to_report();
        assert!(text.starts_with("hopdomlab-reduction v1\n"));
        let back = parse_reduction_report(&text).unwrap();
        assert_eq!(back.output, Graph::from_edges(r.output.n(), &r.output.edges()).unwrap());
        assert_eq!(back.offset, r.offset);
        assert_eq!(back.roles, r.roles);
        assert_eq!(back.kind, r.kind);
    }
}
