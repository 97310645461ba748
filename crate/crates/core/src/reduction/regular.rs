use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};

/// Simple `d`-regular graph on `n` vertices by Havel–Hakimi: the vertex with
/// the largest residual degree (lowest id on ties) is joined to the next
/// largest ones. Deterministic for fixed `(n, d)`.
pub fn build_regular_graph(n: usize, d: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::Realization("n must be positive".into()));
    }
    if d >= n {
        return Err(Error::Realization(format!("degree {d} needs more than {n} vertices")));
    }
    if (n * d) % 2 == 1 {
        return Err(Error::Realization(format!("n*d = {} is odd", n * d)));
    }
    let mut residual = vec![d; n];
    let mut b = GraphBuilder::new(n);
    loop {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(residual[v]), v));
        let v = order[0];
        let k = residual[v];
        if k == 0 {
            break;
        }
        residual[v] = 0;
        for &w in &order[1..=k] {
            if residual[w] == 0 {
                return Err(Error::Realization(format!("sequence not graphical at vertex {w}")));
            }
            residual[w] -= 1;
            b.add_edge(v, w)?;
        }
    }
    Ok(b.build())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let k4 = build_regular_graph(4, 3).unwrap();
        assert_eq!(k4.m(), 6);
        assert!(k4.is_regular(3));
        assert!(matches!(build_regular_graph(5, 3), Err(Error::Realization(_))));
        assert!(build_regular_graph(6, 3).unwrap().is_regular(3));
        assert!(build_regular_graph(3, 3).is_err());
        assert!(build_regular_graph(0, 0).is_err());
        assert_eq!(build_regular_graph(5, 0).unwrap().m(), 0);
    }

    #[test]
    fn deterministic() {
        assert_eq!(build_regular_graph(10, 4).unwrap(), build_regular_graph(10, 4).unwrap());
    }
}
