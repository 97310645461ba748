//! Radius-1/2 disks with exact rational centers.

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};

pub type Rational = Ratio<i64>;

/// A disk of radius 1/2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Disk {
    pub x: Rational,
    pub y: Rational,
    pub role: String,
}

/// Centers on a common integer grid: `(x * scale, y * scale)` with `scale`
/// the lcm of all denominators.
fn integer_centers(disks: &[Disk]) -> (Vec<(i128, i128)>, i128) {
    let l = disks.iter().fold(1i64, |acc, d| acc.lcm(d.x.denom()).lcm(d.y.denom()));
    let pts = disks
        .iter()
        .map(|d| {
            let x = *d.x.numer() as i128 * (l / d.x.denom()) as i128;
            let y = *d.y.numer() as i128 * (l / d.y.denom()) as i128;
            (x, y)
        })
        .collect();
    (pts, l as i128)
}

/// Pairs `(i, j)`, `i < j`, whose centers are within `reach / 8` (in units).
fn close_pairs(disks: &[Disk], reach_eighths: i128) -> (Vec<(usize, usize, i128)>, i128) {
    let (pts, l) = integer_centers(disks);
    let window = l * reach_eighths / 8 + 1;
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    idx.sort_by_key(|&i| pts[i]);
    let mut out = Vec::new();
    for a in 0..idx.len() {
        let i = idx[a];
        for &j in &idx[a + 1..] {
            let dx = pts[j].0 - pts[i].0;
            if dx > window {
                break;
            }
            let dy = pts[j].1 - pts[i].1;
            if dy.abs() <= window {
                out.push((i.min(j), i.max(j), dx * dx + dy * dy));
            }
        }
    }
    (out, l)
}

/// Intersection graph: an edge iff the centers are at distance at most 1.
/// Decided exactly on integers; vertex `i` is disk `i`.
pub fn intersection_graph(disks: &[Disk]) -> Graph {
    let (pairs, l) = close_pairs(disks, 8);
    let mut b = GraphBuilder::new(disks.len());
    for (i, j, d2) in pairs {
        if d2 <= l * l {
            b.add_edge(i, j).expect("pairs are distinct");
        }
    }
    b.build()
}

/// Pairs whose center distance lies strictly between 7/8 and 9/8, or that
/// share a center.
pub fn separation_violations(disks: &[Disk]) -> Vec<(usize, usize)> {
    let (pairs, l) = close_pairs(disks, 9);
    let mut out: Vec<(usize, usize)> = pairs
        .into_iter()
        .filter(|&(_, _, d2)| d2 == 0 || (64 * d2 > 49 * l * l && 64 * d2 < 81 * l * l))
        .map(|(i, j, _)| (i, j))
        .collect();
    out.sort_unstable();
    out
}

/// CSV with header `id,role,cx_num,cx_den,cy_num,cy_den`.
pub fn disks_to_csv(disks: &[Disk]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["id", "role", "cx_num", "cx_den", "cy_num", "cy_den"]).unwrap();
    for (i, d) in disks.iter().enumerate() {
        w.write_record([
            i.to_string(),
            d.role.clone(),
            d.x.numer().to_string(),
            d.x.denom().to_string(),
            d.y.numer().to_string(),
            d.y.denom().to_string(),
        ])
        .unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

/// Reads the CSV layout format; ids must run 0, 1, 2, ... in order.
pub fn disks_from_csv(text: &str) -> Result<Vec<Disk>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = r
        .headers()
        .map_err(|e| Error::parse(1, e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    if header != ["id", "role", "cx_num", "cx_den", "cy_num", "cy_den"] {
        return Err(Error::parse(1, "expected header id,role,cx_num,cx_den,cy_num,cy_den"));
    }
    let mut out = Vec::new();
    for (k, rec) in r.records().enumerate() {
        let line = k + 2;
        let rec = rec.map_err(|e| Error::parse(line, e.to_string()))?;
        if rec.len() != 6 {
            return Err(Error::parse(line, "expected 6 fields"));
        }
        let int = |i: usize| -> Result<i64> {
            rec[i].trim().parse().map_err(|_| Error::parse(line, format!("bad integer {:?}", &rec[i])))
        };
        if int(0)? != out.len() as i64 {
            return Err(Error::parse(line, format!("expected id {}", out.len())));
        }
        let (xd, yd) = (int(3)?, int(5)?);
        if xd <= 0 || yd <= 0 {
            return Err(Error::parse(line, "denominators must be positive"));
        }
        out.push(Disk {
            x: Rational::new(int(2)?, xd),
            y: Rational::new(int(4)?, yd),
            role: rec[1].to_string(),
        });
    }
    Ok(out)
}

fn role_color(role: &str) -> &'static str {
    if role.starts_with("u_") {
        "#d62728"
    } else if role.contains("_{d") {
        "#ff7f0e"
    } else {
        "#1f77b4"
    }
}

/// SVG drawing; coordinates are integers on the common denominator grid.
pub fn disks_to_svg(disks: &[Disk]) -> String {
    let (pts, l) = integer_centers(disks);
    let half = l / 2;
    let (mut x0, mut y0, mut x1, mut y1) = (0i128, 0i128, 0i128, 0i128);
    for (i, &(x, y)) in pts.iter().enumerate() {
        if i == 0 {
            (x0, y0, x1, y1) = (x, y, x, y);
        }
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    let pad = l;
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n",
        x0 - pad,
        -(y1 + pad),
        x1 - x0 + 2 * pad,
        y1 - y0 + 2 * pad
    );
    for (d, &(x, y)) in disks.iter().zip(&pts) {
        s.push_str(&format!(
            "  <circle cx=\"{x}\" cy=\"{}\" r=\"{half}\" fill=\"{}\" fill-opacity=\"0.35\" stroke=\"black\" stroke-width=\"{}\"><title>{}</title></circle>\n",
            -y,
            role_color(&d.role),
            (l / 64).max(1),
            d.role
        ));
    }
    s.push_str("</svg>\n");
    s
}

/// DOT document of the intersection graph, labelled by role.
pub fn disks_to_dot(disks: &[Disk]) -> String {
    let g = intersection_graph(disks);
    let mut s = String::from("graph layout {\n");
    for (i, d) in disks.iter().enumerate() {
        s.push_str(&format!("  {i} [label=\"{}\"];\n", d.role.replace('"', "'")));
    }
    for (u, v) in g.edges() {
        s.push_str(&format!("  {u} -- {v};\n"));
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disk(xn: i64, xd: i64, yn: i64, yd: i64) -> Disk {
        Disk { x: Rational::new(xn, xd), y: Rational::new(yn, yd), role: "t".into() }
    }

    #[test]
    fn pair_examples() {
        let g = intersection_graph(&[disk(0, 1, 0, 1), disk(3, 4, 0, 1)]);
        assert_eq!(g.m(), 1);
        let g = intersection_graph(&[disk(0, 1, 0, 1), disk(3, 2, 0, 1)]);
        assert_eq!(g.m(), 0);
        // exactly 1 apart still intersects
        let g = intersection_graph(&[disk(0, 1, 0, 1), disk(3, 5, 4, 5)]);
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn chain_is_a_path() {
        let ds: Vec<Disk> = (0..7).map(|i| disk(3 * i, 4, 0, 1)).collect();
        let g = intersection_graph(&ds);
        assert_eq!(g.edges(), (0..6).map(|i| (i, i + 1)).collect::<Vec<_>>());
        assert!(separation_violations(&ds).is_empty());
    }

    #[test]
    fn separation_band() {
        assert_eq!(separation_violations(&[disk(0, 1, 0, 1), disk(1, 1, 0, 1)]), vec![(0, 1)]);
        assert!(separation_violations(&[disk(0, 1, 0, 1), disk(7, 8, 0, 1)]).is_empty());
        assert!(separation_violations(&[disk(0, 1, 0, 1), disk(9, 8, 0, 1)]).is_empty());
        assert_eq!(separation_violations(&[disk(1, 2, 0, 1), disk(1, 2, 0, 1)]), vec![(0, 1)]);
    }

    #[test]
    fn csv_round_trip_with_commas_in_roles() {
        let ds = vec![
            Disk { x: Rational::new(7, 8), y: Rational::new(-3, 16), role: "C^{1}_{0,1}[0]".into() },
            disk(5, 1, 1, 2),
        ];
        let text = disks_to_csv(&ds);
        assert!(text.starts_with("id,role,cx_num,cx_den,cy_num,cy_den\n"));
        assert_eq!(disks_from_csv(&text).unwrap(), ds);
        assert!(disks_from_csv("id,role\n").is_err());
        assert!(disks_from_csv("id,role,cx_num,cx_den,cy_num,cy_den\n1,a,0,1,0,1\n").is_err());
    }

    #[test]
    fn drawings_mention_every_disk() {
        let ds: Vec<Disk> = (0..3).map(|i| disk(3 * i, 4, 0, 1)).collect();
        assert_eq!(disks_to_svg(&ds).matches("<circle").count(), 3);
        assert_eq!(disks_to_dot(&ds).matches(" -- ").count(), 2);
    }
}
