//! The three-cube configuration whose colimit fiber is not injective.

use std::fmt::Write;

use enops::cubes::reedy_counterexample;

use super::Ctx;
use crate::record::{Record, Verdict};

pub fn run(ctx: &Ctx) -> anyhow::Result<Vec<Record>> {
    Ok(ctx.run(&[()], |_| {
        let report = match reedy_counterexample() {
            Ok(r) => r,
            Err(e) => return vec![Record::new("reedy", Verdict::Fail).detail(e.to_string())],
        };
        let mut text = format!("configuration {}\n", report.config);
        for (i, s) in report.steps.iter().enumerate() {
            let _ = writeln!(text, "step {} {}: {}", i + 1, if s.pass { "PASS" } else { "FAIL" }, s.name);
            for c in &s.checks {
                let _ = writeln!(text, "  {c}");
            }
        }
        let passed = report.steps.iter().filter(|s| s.pass).count();
        let mut rec = Record::pass_if("reedy", report.all_pass()).detail(format!("{passed}/4 steps pass"));
        match ctx.evidence("evidence/reedy.txt", &text) {
            Ok(p) => rec = rec.evidence(p),
            Err(e) => rec = rec.detail(format!("evidence not written: {e}")),
        }
        let mut recs = vec![rec];
        for (i, s) in report.steps.iter().enumerate() {
            recs.push(Record::pass_if("reedy-step", s.pass).param("step", i + 1).detail(s.name.clone()));
        }
        recs
    }))
}
