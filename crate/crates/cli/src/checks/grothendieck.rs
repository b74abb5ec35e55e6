//! The over-poset of each context as a Grothendieck construction over its
//! admissible partitions, and the reduction to label bound 2.

use enops::grothendieck::{verify_grothendieck_prop, verify_omega_prime};
use enops::operads::syntax::format_raw;
use enops::operads::FamilyTag;

use super::{error_record, Ctx};
use crate::record::{Record, Verdict};

pub fn run(ctx: &Ctx) -> anyhow::Result<Vec<Record>> {
    let mut out = Vec::new();
    for (n, k) in ctx.cfg.pairs() {
        if n < 2 {
            out.push(Record::new("grothendieck", Verdict::Refused).param("n", n).param("k", k).detail("needs label bound at least 2"));
            continue;
        }
        let mdown = ctx.family(FamilyTag::MDown, n, k)?;
        let mdown2 = if n == 3 { ctx.family(FamilyTag::MDown, 2, k)? } else { Vec::new() };
        let omegas = ctx.family(FamilyTag::Ke, n, k)?;
        let chosen = ctx.select(omegas.len(), (n as u64) << 32 | k as u64);
        out.extend(ctx.run(&chosen, |&i| {
            let omega = &omegas[i];
            let raw = format_raw(omega);
            let key = omega.key().0;
            let tag = |r: Record| r.param("n", n).param("k", k).param("omega", &raw);
            let mut recs = vec![tag(match verify_grothendieck_prop(omega, &mdown) {
                Ok(rep) => Record::new("grothendieck", Verdict::Pass)
                    .detail(format!("{} partitions, {} objects", rep.base_size, rep.total)),
                Err(e) => error_record(ctx, "grothendieck", format!("evidence/grothendieck/n{n}-k{k}-{key}.txt"), format!("omega {raw}\n{e}")),
            })];
            if n == 3 {
                recs.push(tag(match verify_omega_prime(omega, &mdown2) {
                    Ok(size) => Record::new("omega-prime", Verdict::Pass).detail(format!("{size} partitions")),
                    Err(e) => error_record(ctx, "omega-prime", format!("evidence/omega-prime/k{k}-{key}.txt"), format!("omega {raw}\n{e}")),
                }));
            }
            recs
        }));
    }
    Ok(out)
}
