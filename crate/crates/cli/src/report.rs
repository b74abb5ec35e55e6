//! Aggregation of record files into a readable summary.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

use crate::record::{Record, Verdict};

#[derive(Debug, Default, Serialize, PartialEq, Eq)]
pub struct Summary {
    pub total: usize,
    /// Verdict counts per check id.
    pub checks: BTreeMap<String, BTreeMap<Verdict, usize>>,
    /// Every record that did not pass.
    pub open: Vec<Record>,
    /// The slowest instances, slowest first.
    pub slowest: Vec<Record>,
}

pub fn summarize(records: &[Record], slowest: usize) -> Summary {
    let mut s = Summary { total: records.len(), ..Summary::default() };
    for r in records {
        *s.checks.entry(r.check.clone()).or_default().entry(r.verdict).or_default() += 1;
        if r.verdict != Verdict::Pass {
            s.open.push(r.clone());
        }
    }
    let mut by_time: Vec<&Record> = records.iter().collect();
    by_time.sort_by_key(|r| std::cmp::Reverse(r.wall_ms));
    s.slowest = by_time.into_iter().take(slowest).cloned().collect();
    s
}

fn params(r: &Record) -> String {
    r.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
}

pub fn render(s: &Summary) -> String {
    let mut out = String::from("# Verification summary\n\n");
    if s.total == 0 {
        out.push_str("0 checks\n");
        return out;
    }
    let _ = writeln!(out, "{} records\n", s.total);
    out.push_str("| check | PASS | FAIL | INCONCLUSIVE | REFUSED |\n|---|---|---|---|---|\n");
    for (check, counts) in &s.checks {
        let c = |v| counts.get(&v).copied().unwrap_or(0);
        let _ = writeln!(
            out,
            "| {check} | {} | {} | {} | {} |",
            c(Verdict::Pass),
            c(Verdict::Fail),
            c(Verdict::Inconclusive),
            c(Verdict::Refused)
        );
    }
    if !s.open.is_empty() {
        out.push_str("\n## Not passing\n\n");
        for r in &s.open {
            let _ = write!(out, "- {} {} {}", r.verdict, r.check, params(r));
            if let Some(d) = &r.detail {
                let _ = write!(out, ": {d}");
            }
            if let Some(e) = &r.evidence {
                let _ = write!(out, " (evidence {e})");
            }
            out.push('\n');
        }
    }
    if !s.slowest.is_empty() {
        out.push_str("\n## Slowest instances\n\n");
        for r in &s.slowest {
            let _ = writeln!(out, "- {} ms {} {}", r.wall_ms, r.check, params(r));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_input() {
        let s = summarize(&[], 5);
        assert_eq!(s.total, 0);
        assert!(render(&s).contains("0 checks"));
    }

    #[test]
    fn mixed_verdicts_list_open_instances() {
        let recs = vec![
            Record::new("finality", Verdict::Pass).param("k", 3),
            Record::new("finality", Verdict::Inconclusive).param("k", 4).detail("homology only"),
            Record::new("collapse", Verdict::Pass),
        ];
        let s = summarize(&recs, 2);
        assert_eq!(s.checks["finality"][&Verdict::Pass], 1);
        assert_eq!(s.open.len(), 1);
        let text = render(&s);
        assert!(text.contains("| finality | 1 | 0 | 1 | 0 |"));
        assert!(text.contains("INCONCLUSIVE finality k=4: homology only"));
    }
}
