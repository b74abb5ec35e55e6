//! The label-reversing duality: involution, family exchange and order
//! reversal on each family.

use std::collections::HashSet;

use enops::operads::{dual, is_morphism, CanonicalKey, Edge, FamilyTag, GraphObject};

use super::Ctx;
use crate::record::{Record, Verdict};

const PAIRS: [(FamilyTag, FamilyTag); 6] = [
    (FamilyTag::G, FamilyTag::G),
    (FamilyTag::K, FamilyTag::K),
    (FamilyTag::Ke, FamilyTag::Ke),
    (FamilyTag::M, FamilyTag::M),
    (FamilyTag::MUp, FamilyTag::MDown),
    (FamilyTag::MDown, FamilyTag::MUp),
];

/// Per-edge states of label bound `n`, with the edgewise order and the
/// packed code of each state and of its dual.
struct EdgeOrder {
    states: Vec<Edge>,
    code: Vec<u64>,
    dual_code: Vec<u64>,
    bits: u32,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
}

impl EdgeOrder {
    fn new(n: u8) -> Self {
        let states: Vec<Edge> = (1..=n).flat_map(|l| [Edge::new(l, false), Edge::new(l, true)]).collect();
        let single = |e: Edge| GraphObject::new(n, 2, vec![e]).expect("edge in range");
        let leq = |a: usize, b: usize| is_morphism(&single(states[a]), &single(states[b])).expect("same shape");
        let m = states.len();
        let code = states.iter().map(|&e| single(e).key().0).collect();
        let dual_code = states.iter().map(|&e| dual(&single(e)).key().0).collect();
        let up = (0..m).map(|a| (0..m).filter(|&b| leq(a, b)).collect()).collect();
        let down = (0..m).map(|a| (0..m).filter(|&b| leq(b, a)).collect()).collect();
        EdgeOrder { states, code, dual_code, bits: CanonicalKey::bits_per_edge(n), up, down }
    }

    /// Keys, paired with the keys of their duals, of every object edgewise
    /// above (or below) `mu`.
    fn cone(&self, mu: &GraphObject, above: bool) -> Vec<(u64, u64)> {
        let mut out = vec![(0u64, 0u64)];
        for e in mu.edges() {
            let s = self.states.iter().position(|t| t == e).expect("known state");
            let choices = if above { &self.up[s] } else { &self.down[s] };
            out = out
                .iter()
                .flat_map(|&(key, dkey)| {
                    choices.iter().map(move |&c| ((key << self.bits) | self.code[c], (dkey << self.bits) | self.dual_code[c]))
                })
                .collect();
        }
        out
    }
}

pub fn run(ctx: &Ctx) -> anyhow::Result<Vec<Record>> {
    let mut out = Vec::new();
    for (n, k) in ctx.cfg.pairs() {
        let edges = EdgeOrder::new(n);
        let g = ctx.family(FamilyTag::G, n, k)?;
        let base = |check: &str, ok: bool, detail: String| Record::pass_if(check, ok).param("n", n).param("k", k).detail(detail);

        let bad = g.iter().filter(|mu| dual(&dual(mu)) != **mu).count();
        let images: HashSet<CanonicalKey> = g.iter().map(|mu| dual(mu).key()).collect();
        out.push(base("duality-involution", bad == 0 && images.len() == g.len(), format!("{} objects, {bad} not fixed by D∘D", g.len())));

        let jobs: Vec<(FamilyTag, FamilyTag)> = PAIRS.to_vec();
        out.extend(ctx.run(&jobs, |&(from, to)| {
            let src = match ctx.family(from, n, k) {
                Ok(s) => s,
                Err(e) => return vec![Record::new("duality-family", Verdict::Refused).detail(e.to_string())],
            };
            let dst = ctx.family(to, n, k).expect("same size as source");
            let src_keys: HashSet<u64> = src.iter().map(|mu| mu.key().0).collect();
            let dst_keys: HashSet<u64> = dst.iter().map(|mu| mu.key().0).collect();
            let mapped: HashSet<u64> = src.iter().map(|mu| dual(mu).key().0).collect();
            let onto = mapped == dst_keys;
            // D(up-set of mu in src) must equal the down-set of D(mu) in dst
            let mut reversal_failures = 0usize;
            let mut related = 0usize;
            for mu in &src {
                let up: HashSet<u64> =
                    edges.cone(mu, true).into_iter().filter(|(key, _)| src_keys.contains(key)).map(|(_, d)| d).collect();
                let down: HashSet<u64> =
                    edges.cone(&dual(mu), false).into_iter().map(|(key, _)| key).filter(|key| dst_keys.contains(key)).collect();
                related += up.len();
                if up != down {
                    reversal_failures += 1;
                }
            }
            vec![base("duality-family", onto && reversal_failures == 0, format!(
                "D maps {from} onto {to}: {onto}; {related} related pairs, {reversal_failures} objects with unreversed order"
            ))
            .param("from", from)
            .param("to", to)]
        }));
    }
    Ok(out)
}
