//! Per-edge gadget constructions for the six non-geometric families.

use std::collections::BTreeMap;

use super::regular::build_regular_graph;
use super::EdgeGadget;
use crate::error::Result;
use crate::graph::{Graph, GraphBuilder};

/// Output graph under construction plus the gadget registry.
pub(crate) struct Assembly {
    pub b: GraphBuilder,
    pub gadgets: Vec<EdgeGadget>,
}

impl Assembly {
    pub fn new(source: &Graph) -> Self {
        let mut b = GraphBuilder::new(0);
        for i in 0..source.n() {
            b.add_vertex(format!("u_{i}"));
        }
        Assembly { b, gadgets: Vec::new() }
    }
}

/// Builder for one edge's gadget; names are the symbol with its superscript,
/// e.g. `"d^{23}"`, and get the `_{i,j}` suffix in the role label.
pub(crate) struct Gadget<'a> {
    asm: &'a mut Assembly,
    rec: EdgeGadget,
}

impl<'a> Gadget<'a> {
    pub fn new(asm: &'a mut Assembly, (i, j): (usize, usize)) -> Self {
        let rec = EdgeGadget {
            edge: (i, j),
            vertices: Vec::new(),
            named: BTreeMap::new(),
            groups: BTreeMap::new(),
            u_side: Vec::new(),
            v_side: Vec::new(),
        };
        Gadget { asm, rec }
    }

    pub fn add(&mut self, name: &str) -> usize {
        let (i, j) = self.rec.edge;
        let id = self.asm.b.add_vertex(format!("{name}_{{{i},{j}}}"));
        self.rec.vertices.push(id);
        self.rec.named.insert(name.to_string(), id);
        id
    }

    pub fn add_in(&mut self, group: &str, name: &str) -> usize {
        let id = self.add(name);
        self.rec.groups.entry(group.to_string()).or_default().push(id);
        id
    }

    pub fn get(&self, name: &str) -> usize {
        self.rec.named[name]
    }

    pub fn edge(&mut self, a: usize, b: usize) -> Result<()> {
        self.asm.b.add_edge(a, b)
    }

    pub fn path(&mut self, vs: &[usize]) -> Result<()> {
        for w in vs.windows(2) {
            self.edge(w[0], w[1])?;
        }
        Ok(())
    }

    pub fn clique(&mut self, vs: &[usize]) -> Result<()> {
        for x in 0..vs.len() {
            for y in x + 1..vs.len() {
                self.asm.b.ensure_edge(vs[x], vs[y])?;
            }
        }
        Ok(())
    }

    /// Certificate picks, identical whichever endpoint is in the cover.
    pub fn picks(mut self, names: &[&str]) {
        let ids: Vec<usize> = names.iter().map(|n| self.get(n)).collect();
        self.rec.u_side = ids.clone();
        self.rec.v_side = ids;
        self.asm.gadgets.push(self.rec);
    }
}

/// `u_{ij}` joined to `u_i` and `u_j`.
fn hub(g: &mut Gadget<'_>) -> Result<usize> {
    let (i, j) = g.rec.edge;
    let uij = g.add("u");
    g.edge(i, uij)?;
    g.edge(j, uij)?;
    Ok(uij)
}

pub(crate) fn hd_three_regular(asm: &mut Assembly, e: (usize, usize)) -> Result<()> {
    let mut g = Gadget::new(asm, e);
    let uij = hub(&mut g)?;
    let [a, b, c, d, ee] = ["a", "b", "c", "d", "e"].map(|s| g.add(s));
    for (x, y) in [(a, uij), (a, b), (a, c), (b, c), (b, d), (c, ee)] {
        g.edge(x, y)?;
    }
    for (root, x) in [(d, "d"), (ee, "e")] {
        let mut lad = [[0usize; 7]; 3];
        for p in 1..=2 {
            lad[p][0] = root;
            for k in 1..=6 {
                lad[p][k] = g.add_in(x, &format!("{x}^{{{p}{k}}}"));
            }
            g.path(&lad[p])?;
        }
        for k in 1..=4 {
            g.edge(lad[1][k], lad[2][k])?;
        }
        g.edge(lad[2][5], lad[1][6])?;
        g.edge(lad[1][5], lad[2][6])?;
        // completes the ladder to degree 3
        g.edge(lad[1][6], lad[2][6])?;
    }
    g.picks(&["b", "c", "d^{24}", "d^{23}", "e^{24}", "e^{23}"]);
    Ok(())
}

pub(crate) fn two_step_three_regular(asm: &mut Assembly, e: (usize, usize)) -> Result<()> {
    let mut g = Gadget::new(asm, e);
    let uij = hub(&mut g)?;
    let [a, b, c] = ["a", "b", "c"].map(|s| g.add(s));
    for (x, y) in [(a, uij), (a, b), (a, c)] {
        g.edge(x, y)?;
    }
    for (root, x) in [(b, "b"), (c, "c")] {
        let [l11, l12, l21, l22] =
            ["11", "12", "21", "22"].map(|s| g.add_in(x, &format!("{x}^{{{s}}}")));
        for (p, q) in [(root, l11), (root, l21), (l11, l12), (l21, l22), (l11, l22), (l21, l12), (l12, l22)] {
            g.edge(p, q)?;
        }
    }
    g.picks(&["a", "b", "c"]);
    Ok(())
}

/// Levels: H0 = {u_ij}, H1 = middle vertices, H2 = their leaves (wired
/// `(d-1)`-regular so every gadget vertex has degree `d`).
pub(crate) fn hd_d_regular(asm: &mut Assembly, e: (usize, usize), d: usize) -> Result<()> {
    let mut g = Gadget::new(asm, e);
    let uij = hub(&mut g)?;
    g.rec.groups.insert("H0".into(), vec![uij]);
    let mut leaves = Vec::new();
    for k in 1..=d - 2 {
        let uk = g.add_in("H1", &format!("u^{{{k}}}"));
        g.edge(uij, uk)?;
        for m in 1..d {
            let ukm = g.add_in("H2", &format!("u^{{{k},{m}}}"));
            g.edge(uk, ukm)?;
            leaves.push(ukm);
        }
    }
    let h2 = build_regular_graph(leaves.len(), d - 1)?;
    for (x, y) in h2.edges() {
        g.edge(leaves[x], leaves[y])?;
    }
    g.picks(&["u"]);
    Ok(())
}

pub(crate) fn two_step_d_regular(asm: &mut Assembly, e: (usize, usize), d: usize) -> Result<()> {
    let mut g = Gadget::new(asm, e);
    let uij = hub(&mut g)?;
    let us: Vec<usize> = (1..=d - 2).map(|l| g.add_in("u", &format!("u^{{{l}}}"))).collect();
    let ws: Vec<usize> = (1..d).map(|k| g.add_in("w", &format!("w^{{{k}}}"))).collect();
    let p = g.add("p");
    let q = g.add("q");
    for &ul in &us {
        g.edge(uij, ul)?;
        for &wk in &ws {
            g.edge(ul, wk)?;
        }
    }
    for &wk in &ws {
        g.edge(p, wk)?;
        g.edge(q, wk)?;
    }
    g.edge(p, q)?;
    g.picks(&["u", "u^{1}"]);
    Ok(())
}

pub(crate) fn hd_claw_free(asm: &mut Assembly, e: (usize, usize)) -> Result<()> {
    let (i, j) = e;
    let mut g = Gadget::new(asm, e);
    let [a, b, c] = ["a", "b", "c"].map(|s| g.add(s));
    let [b1, b2, b3, b4] = [1, 2, 3, 4].map(|k| g.add(&format!("b^{{{k}}}")));
    g.path(&[i, a, b, c, j])?;
    g.path(&[b, b1, b2, b3, b4])?;
    g.edge(b, b2)?;
    g.clique(&[a, b, c, b1])?;
    g.picks(&["b^{1}", "b^{2}"]);
    Ok(())
}

pub(crate) fn two_step_claw_free(asm: &mut Assembly, e: (usize, usize)) -> Result<()> {
    let (i, j) = e;
    let mut g = Gadget::new(asm, e);
    let [a, b, c] = ["a", "b", "c"].map(|s| g.add(s));
    let bs: Vec<usize> = (1..=8).map(|k| g.add(&format!("b^{{{k}}}"))).collect();
    let bk = |k: usize| bs[k - 1];
    g.path(&[i, a, b, c, j])?;
    g.path(&[b, bk(1), bk(2)])?;
    for (x, y) in [(2, 3), (2, 6), (3, 4), (4, 5), (3, 6), (6, 7), (7, 8)] {
        g.edge(bk(x), bk(y))?;
    }
    g.picks(&["b^{3}", "b^{6}", "b", "b^{1}"]);
    Ok(())
}

/// Makes `N[u_i]` a clique for every source vertex (claw-free families).
pub(crate) fn close_source_neighborhoods(asm: &mut Assembly, n1: usize) -> Result<()> {
    for i in 0..n1 {
        let mut closed = asm.b.neighbors(i);
        closed.push(i);
        for x in 0..closed.len() {
            for y in x + 1..closed.len() {
                asm.b.ensure_edge(closed[x], closed[y])?;
            }
        }
    }
    Ok(())
}
