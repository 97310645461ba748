//! Canonical labelling by individualization and refinement, plus graph6.
//!
//! Meant for the small graphs of the corpora (n <= 11 fits the 64-bit code).

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};

/// Upper-triangle adjacency bits under a labelling; bit order is
/// (0,1), (0,2), (1,2), (0,3), ... as in graph6.
fn code(g: &Graph, label: &[usize]) -> u64 {
    let n = g.n();
    let mut inv = vec![0; n];
    for (v, &l) in label.iter().enumerate() {
        inv[l] = v;
    }
    let mut c = 0u64;
    for j in 1..n {
        for i in 0..j {
            c = (c << 1) | g.has_edge(inv[i], inv[j]) as u64;
        }
    }
    c
}

/// Equitable refinement of an ordered partition. Cells split by the count
/// of neighbours in every cell; new cells are ordered by that signature.
fn refine(g: &Graph, cells: &mut Vec<Vec<usize>>) {
    loop {
        let mut cell_of = vec![0; g.n()];
        for (i, c) in cells.iter().enumerate() {
            for &v in c {
                cell_of[v] = i;
            }
        }
        let mut next = Vec::with_capacity(cells.len());
        for c in cells.iter() {
            if c.len() == 1 {
                next.push(c.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<usize>, usize)> = c
                .iter()
                .map(|&v| {
                    let mut sig = vec![0; cells.len()];
                    for &w in g.neighbors(v) {
                        sig[cell_of[w]] += 1;
                    }
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for k in 1..=keyed.len() {
                if k == keyed.len() || keyed[k].0 != keyed[start].0 {
                    next.push(keyed[start..k].iter().map(|p| p.1).collect());
                    start = k;
                }
            }
        }
        let stable = next.len() == cells.len();
        *cells = next;
        if stable {
            return;
        }
    }
}

fn search(g: &Graph, cells: Vec<Vec<usize>>, best: &mut Option<u64>) {
    let Some(t) = cells.iter().position(|c| c.len() > 1) else {
        let mut label = vec![0; g.n()];
        for (i, c) in cells.iter().enumerate() {
            label[c[0]] = i;
        }
        let c = code(g, &label);
        if best.is_none_or(|b| c < b) {
            *best = Some(c);
        }
        return;
    };
    for &v in &cells[t] {
        let mut next = cells.clone();
        let rest: Vec<usize> = next[t].iter().copied().filter(|&w| w != v).collect();
        next.splice(t..=t, [vec![v], rest]);
        refine(g, &mut next);
        search(g, next, best);
    }
}

/// Isomorphism-invariant code; equal codes mean isomorphic graphs.
pub fn canonical_code(g: &Graph) -> Result<u64> {
    if g.n() > 11 {
        return Err(Error::Input(format!("canonical codes need n <= 11, got {}", g.n())));
    }
    let mut cells = vec![(0..g.n()).collect::<Vec<_>>()];
    if g.n() == 0 {
        return Ok(0);
    }
    refine(g, &mut cells);
    let mut best = None;
    search(g, cells, &mut best);
    Ok(best.unwrap())
}

/// The graph rebuilt from its canonical code.
pub fn from_code(n: usize, code: u64) -> Graph {
    let total = n * n.saturating_sub(1) / 2;
    let mut b = GraphBuilder::new(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if code >> (total - 1 - k) & 1 == 1 {
                b.add_edge(i, j).expect("distinct pair");
            }
            k += 1;
        }
    }
    b.build()
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    assert!(n <= 62, "graph6 short form only");
    let mut out = vec![(n as u8) + 63];
    let mut bits = Vec::new();
    for j in 1..n {
        for i in 0..j {
            bits.push(g.has_edge(i, j));
        }
    }
    for chunk in bits.chunks(6) {
        let mut x = 0u8;
        for k in 0..6 {
            x = (x << 1) | chunk.get(k).copied().unwrap_or(false) as u8;
        }
        out.push(x + 63);
    }
    String::from_utf8(out).unwrap()
}

pub fn from_graph6(s: &str) -> Result<Graph> {
    let bytes = s.trim().as_bytes();
    let bad = || Error::Input(format!("bad graph6 string {s:?}"));
    let (&first, rest) = bytes.split_first().ok_or_else(bad)?;
    if !(63..=125).contains(&first) {
        return Err(bad());
    }
    let n = (first - 63) as usize;
    let need = n * n.saturating_sub(1) / 2;
    if rest.len() != need.div_ceil(6) || rest.iter().any(|&c| !(63..=126).contains(&c)) {
        return Err(bad());
    }
    let bit = |k: usize| (rest[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut b = GraphBuilder::new(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                b.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    Ok(b.build())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isomorphic_graphs_share_a_code() {
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let q = p4.permuted(&[2, 0, 3, 1]);
        assert_eq!(canonical_code(&p4).unwrap(), canonical_code(&q).unwrap());
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_ne!(canonical_code(&p4).unwrap(), canonical_code(&star).unwrap());
        let c = canonical_code(&star).unwrap();
        assert_eq!(canonical_code(&from_code(4, c)).unwrap(), c);
    }

    #[test]
    fn regular_graphs_are_told_apart() {
        // C6 and two triangles: same degrees, refinement alone cannot split them
        let c6 = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]).unwrap();
        let tt = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_ne!(canonical_code(&c6).unwrap(), canonical_code(&tt).unwrap());
        assert_eq!(canonical_code(&c6).unwrap(), canonical_code(&c6.permuted(&[3, 5, 1, 0, 2, 4])).unwrap());
    }

    #[test]
    fn graph6_round_trip() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(to_graph6(&k2), "A_");
        let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        assert_eq!(from_graph6(&to_graph6(&c5)).unwrap(), c5);
        assert!(from_graph6("").is_err());
        assert!(from_graph6("C").is_err());
    }
}
