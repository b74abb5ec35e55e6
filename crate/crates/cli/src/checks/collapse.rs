//! The deterministic collapse of the crossing-free partition complex.

use enops::operads::syntax::format_raw;
use enops::operads::FamilyTag;
use enops::partition::{collapse_driver, DriverOptions, PartitionSet};

use super::{error_record, Ctx};
use crate::record::{Record, Verdict};

pub fn run(ctx: &Ctx) -> anyhow::Result<Vec<Record>> {
    let mut out = Vec::new();
    for (n, k) in ctx.cfg.pairs() {
        if n != 2 {
            out.push(
                Record::new("collapse", Verdict::Refused)
                    .param("n", n)
                    .param("k", k)
                    .detail("the partition complex is defined for label bound 2"),
            );
            continue;
        }
        let omegas = ctx.family(FamilyTag::Ke, 2, k)?;
        let chosen = ctx.select(omegas.len(), k as u64);
        let opts = DriverOptions { paranoid: ctx.cfg.paranoid };
        out.extend(ctx.run(&chosen, |&i| {
            let omega = &omegas[i];
            let raw = format_raw(omega);
            let key = omega.key().0;
            let rel = format!("traces/collapse/n2-k{k}/{key}.txt");
            let set = match PartitionSet::for_omega(omega) {
                Ok(s) => s,
                Err(e) => return vec![error_record(ctx, "collapse", rel, e).param("k", k).param("omega", raw)],
            };
            let rec = match collapse_driver(&set, opts) {
                Ok(trace) => {
                    let least = set.least_element().ok();
                    let replay = trace.collapse_trace().replay(&set.complex());
                    let terminal_ok = least.is_some_and(|l| trace.terminal.facets().iter().eq([&vec![l as u32]]));
                    let text = trace.to_text(&set);
                    let verdict = if terminal_ok && replay.is_ok() { Verdict::Pass } else { Verdict::Fail };
                    let mut rec = Record::new("collapse", verdict).detail(format!(
                        "{} vertices, {} steps{}",
                        trace.vertex_count,
                        trace.steps.len(),
                        replay.err().map(|e| format!(", replay: {e}")).unwrap_or_default()
                    ));
                    match ctx.evidence(&rel, &text) {
                        Ok(p) => rec = rec.evidence(p),
                        Err(e) => rec = rec.detail(format!("trace not written: {e}")),
                    }
                    rec
                }
                Err(f) => error_record(ctx, "collapse", rel, f),
            };
            vec![rec.param("n", 2).param("k", k).param("omega", raw).param("paranoid", opts.paranoid)]
        }));
    }
    Ok(out)
}
