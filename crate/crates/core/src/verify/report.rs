//! Tab-separated report and an aligned human table.
//!
//! ```text
//! # hopdomlab-verify v1
//! graph  kind  n1  m1  n2  tau  gamma  offset  expected  status  cert  extract  structure  nodes  wall_ms  edges  vc  witness  note
//! ...one line per row...
//! # summary pass=P fail=F timeout=T skipped=S check_failures=C overall=PASS|FAIL
//! ```
//!
//! `gamma` is `inf` for an infeasible instance; `-` marks values that were
//! not computed. `edges` is the source edge list as `u-v` pairs separated by
//! spaces, enough to replay a row standalone.

use super::harness::{RowStatus, VerifyReport, VerifyRow};

pub const HEADER: &str = "# hopdomlab-verify v1";

pub const COLUMNS: [&str; 19] = [
    "graph", "kind", "n1", "m1", "n2", "tau", "gamma", "offset", "expected", "status", "cert", "extract",
    "structure", "nodes", "wall_ms", "edges", "vc", "witness", "note",
];

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn check(c: Option<bool>) -> &'static str {
    match c {
        None => "-",
        Some(true) => "ok",
        Some(false) => "FAIL",
    }
}

fn fields(r: &VerifyRow) -> Vec<String> {
    let gamma = if r.gamma_infeasible { "inf".to_string() } else { opt(r.gamma) };
    let edges: Vec<String> = r.source.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
    let set = |s: &Option<crate::graph::VertexSet>| s.as_ref().map_or_else(|| "-".to_string(), |s| s.to_string());
    vec![
        r.graph_name.clone(),
        r.kind.to_string(),
        r.n1.to_string(),
        r.m1.to_string(),
        opt(r.n2),
        opt(r.tau),
        gamma,
        opt(r.offset),
        opt(r.expected()),
        r.status.to_string(),
        check(r.certificate).into(),
        check(r.extraction).into(),
        check(r.structure).into(),
        r.nodes.to_string(),
        r.wall.as_millis().to_string(),
        edges.join(" "),
        set(&r.vc_witness),
        set(&r.witness),
        r.note.replace(['\t', '\n'], " "),
    ]
}

fn summary_line(rep: &VerifyReport) -> String {
    let s = rep.summary();
    format!(
        "# summary pass={} fail={} timeout={} skipped={} check_failures={} overall={}",
        s.pass,
        s.fail,
        s.timeout,
        s.skipped,
        s.check_failures,
        if rep.overall_pass() { "PASS" } else { "FAIL" }
    )
}

impl VerifyReport {
    pub fn to_tsv(&self) -> String {
        let mut out = format!("{HEADER}\n{}\n", COLUMNS.join("\t"));
        for r in &self.rows {
            out.push_str(&fields(r).join("\t"));
            out.push('\n');
        }
        out.push_str(&summary_line(self));
        out.push('\n');
        out
    }

    /// Fixed-width table without the replay columns.
    pub fn to_table(&self) -> String {
        let keep = [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 14];
        let mut grid: Vec<Vec<String>> = vec![keep.iter().map(|&i| COLUMNS[i].to_string()).collect()];
        for r in &self.rows {
            let f = fields(r);
            grid.push(keep.iter().map(|&i| f[i].clone()).collect());
        }
        let width: Vec<usize> =
            (0..keep.len()).map(|c| grid.iter().map(|row| row[c].chars().count()).max().unwrap_or(0)).collect();
        let mut out = String::new();
        for row in &grid {
            let line: Vec<String> = row.iter().zip(&width).map(|(s, &w)| format!("{s:<w$}")).collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        out.push_str(&summary_line(self)[2..]);
        out.push('\n');
        out
    }
}

/// One parsed report line, as strings keyed by column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportLine {
    pub values: Vec<String>,
}

impl ReportLine {
    pub fn get(&self, column: &str) -> Option<&str> {
        COLUMNS.iter().position(|&c| c == column).map(|i| self.values[i].as_str())
    }

    pub fn status(&self) -> Option<RowStatus> {
        match self.get("status")? {
            "PASS" => Some(RowStatus::Pass),
            "FAIL" => Some(RowStatus::Fail),
            "TIMEOUT" => Some(RowStatus::Timeout),
            "SKIPPED" => Some(RowStatus::Skipped),
            _ => None,
        }
    }
}

/// Reads back the rows of a report; comments and the column line are skipped.
pub fn parse_report(text: &str) -> crate::Result<Vec<ReportLine>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, HEADER)) => {}
        _ => return Err(crate::Error::parse(1, format!("missing header {HEADER:?}"))),
    }
    let mut out = Vec::new();
    for (i, line) in lines {
        if line.starts_with('#') || line.is_empty() || line.starts_with("graph\t") {
            continue;
        }
        let values: Vec<String> = line.split('\t').map(str::to_string).collect();
        if values.len() != COLUMNS.len() {
            return Err(crate::Error::parse(i + 1, format!("expected {} fields", COLUMNS.len())));
        }
        out.push(ReportLine { values });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::corpus::{enumerate_corpus, CorpusSpec};
    use super::super::harness::{run_verification, VerifyConfig};
    use super::*;
    use crate::reduction::{Family, ReductionKind};
    use crate::solver::Problem;

    #[test]
    fn tsv_round_trip() {
        let g = enumerate_corpus(&CorpusSpec::named(&["K2", "C3"])).unwrap();
        let kinds = [
            ReductionKind::new(Problem::TwoStepDom, Family::ThreeRegular).unwrap(),
            ReductionKind::new(Problem::HopDom, Family::ClawFree).unwrap(),
        ];
        let rep = run_verification(&g, &kinds, &VerifyConfig::default());
        let text = rep.to_tsv();
        assert!(text.starts_with("# hopdomlab-verify v1\ngraph\tkind\t"));
        assert!(!text.contains('.'), "no fractional values: {text}");
        let rows = parse_report(&text).unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[0].get("graph"), Some("K2"));
        assert_eq!(rows[0].get("gamma"), Some("4"));
        assert_eq!(rows[1].get("kind"), Some("hd-claw"));
        assert_eq!(rows[2].get("edges"), Some("0-1 0-2 1-2"));
        assert_eq!(rows[2].get("gamma"), Some("11"));
        assert!(text.lines().last().unwrap().starts_with("# summary pass="));
        let table = rep.to_table();
        assert_eq!(table.lines().count(), 6);
        assert!(parse_report("nope").is_err());
    }
}
