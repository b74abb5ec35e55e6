//! Contractibility of every over-poset (initiality) or under-poset
//! (finality) of a subfamily inside an ambient family.

use enops::contractible::{self, check_element, Caps, Method};
use enops::operads::syntax::format_raw;
use enops::operads::FamilyTag;
use enops::poset::{over_poset, under_poset, ObjectOrder};

use super::Ctx;
use crate::record::{Record, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Initial,
    Final,
}

pub fn run(ctx: &Ctx, side: Side) -> anyhow::Result<Vec<Record>> {
    let (name, default_sub, core_side) = match side {
        Side::Initial => ("initiality", FamilyTag::MDown, contractible::Side::Initial),
        Side::Final => ("finality", FamilyTag::MUp, contractible::Side::Final),
    };
    let ambient_tag = ctx.cfg.ambient.unwrap_or(FamilyTag::Ke);
    let sub_tag = ctx.cfg.sub.unwrap_or(default_sub);
    let mut out = Vec::new();
    for (n, k) in ctx.cfg.pairs() {
        let ambient = match ctx.family(ambient_tag, n, k) {
            Ok(a) => a,
            Err(e) => {
                out.push(Record::new(name, Verdict::Refused).param("n", n).param("k", k).detail(e.to_string()));
                continue;
            }
        };
        let sub = Ctx::members(&ambient, sub_tag);
        let order = ObjectOrder(&ambient);
        let chosen = ctx.select(ambient.len(), (n as u64) << 32 | k as u64);
        out.extend(ctx.run(&chosen, |&b| {
            let element = format_raw(&ambient[b]);
            let base = |v: Verdict| {
                Record::new(name, v)
                    .param("n", n)
                    .param("k", k)
                    .param("ambient", ambient_tag)
                    .param("sub", sub_tag)
                    .param("element", &element)
            };
            let v = match check_element(&order, &sub, b, core_side, Caps::default()) {
                Ok(v) => v,
                Err(e) => return vec![base(Verdict::Fail).detail(e.to_string())],
            };
            let detail = match v.method {
                Method::Cone => format!("{} cone, size {}", v.verdict, v.size),
                Method::Collapse => format!("{} collapse in {} steps, size {}", v.verdict, v.collapse_steps, v.size),
                _ => format!("{}, size {}", v.verdict, v.size),
            };
            let verdict = match v.verdict {
                contractible::Verdict::Contractible => Verdict::Pass,
                contractible::Verdict::HomologyTrivialOnly => Verdict::Inconclusive,
                contractible::Verdict::Refused => Verdict::Refused,
                contractible::Verdict::Empty | contractible::Verdict::Failed => Verdict::Fail,
            };
            let mut rec = base(verdict).detail(detail);
            if verdict != Verdict::Pass {
                let (_, elems) = match side {
                    Side::Initial => over_poset(&order, &sub, b),
                    Side::Final => under_poset(&order, &sub, b),
                }
                .expect("element is in the ambient");
                let mut text = format!("{name} n={n} k={k} ambient={ambient_tag} sub={sub_tag}\nelement {element}\nverdict {}\n", v.verdict);
                if let Some(h) = &v.homology {
                    text.push_str(&format!("reduced betti {:?} torsion {:?}\n", h.betti, h.torsion));
                }
                for e in elems {
                    text.push_str(&format!("member {}\n", format_raw(&ambient[e])));
                }
                let rel = format!("evidence/{name}/{}-n{n}-k{k}-{}.txt", sub_tag.to_string().to_ascii_lowercase(), ambient[b].key().0);
                rec = match ctx.evidence(rel, &text) {
                    Ok(p) => rec.evidence(p),
                    Err(e) => rec.detail(format!("evidence not written: {e}")),
                };
            }
            vec![rec]
        }));
    }
    Ok(out)
}
