//! Operad axioms on seeded samples, the worked examples, and the partition
//! lemmas behind the label-bound-two collapse.

use enops::operads::syntax::{format_object, parse_expr};
use enops::operads::{dual, gamma, in_family, restrict, sigma_action, FamilyTag, GraphObject, Permutation};
use enops::partition::PartitionSet;
use enops::sampling::{random_member, random_object, random_permutation};
use rand::Rng;

use super::Ctx;
use crate::record::{Record, Verdict};

const CLOSED: [FamilyTag; 4] = [FamilyTag::G, FamilyTag::K, FamilyTag::Ke, FamilyTag::M];

pub fn run(ctx: &Ctx) -> anyhow::Result<Vec<Record>> {
    let mut out = examples();
    let samples = ctx.cfg.sample.unwrap_or(200);
    for &n in &ctx.cfg.n {
        let idx: Vec<u64> = (0..samples as u64).collect();
        let recs = ctx.run(&idx, |&i| {
            let mut r = ctx.seeded((n as u64) << 32 | i);
            match operad_laws(&mut r, n) {
                Ok(()) => Vec::new(),
                Err(e) => vec![Record::new("operad-laws", Verdict::Fail).param("n", n).param("sample", i).detail(e)],
            }
        });
        if recs.is_empty() {
            out.push(Record::new("operad-laws", Verdict::Pass).param("n", n).detail(format!("{samples} samples")));
        } else {
            out.extend(recs);
        }
    }
    for &k in &ctx.cfg.k {
        let omegas = ctx.family(FamilyTag::Ke, 2, k)?;
        let fails: Vec<Record> = ctx.run(&omegas, |omega| match partition_lemmas(omega) {
            Ok(()) => Vec::new(),
            Err(e) => vec![Record::new("partition-lemmas", Verdict::Fail)
                .param("k", k)
                .param("omega", enops::operads::syntax::format_raw(omega))
                .detail(e)],
        });
        if fails.is_empty() {
            out.push(Record::new("partition-lemmas", Verdict::Pass).param("k", k).detail(format!("{} contexts", omegas.len())));
        } else {
            out.extend(fails);
        }
    }
    Ok(out)
}

fn examples() -> Vec<Record> {
    let obj = |s: &str| parse_expr(s, 3).expect("literal parses");
    let mu = obj("2[]1(3[]2 1)");
    let nus = [obj("1[]1 2"), obj("1[]2 2"), obj("1[]3 2")];
    let shown = gamma(&mu, &nus).map(|g| format_object(&g)).unwrap_or_default();
    let gamma_rec = Record::pass_if("gamma-example", shown == "(3[]2 4)[]1((5[]3 6)[]2(1[]1 2))").detail(shown);

    let m = obj("3[]2((2[]3 6)[]1 4)[]2(1[]1 5)");
    let up = obj("3[]3((2[]1 6)[]2 4)[]3(1[]1 5)");
    let down = obj("3[]1((2[]3 6)[]2 4)[]1(1[]3 5)");
    let member = |mu: &GraphObject| [FamilyTag::M, FamilyTag::MUp, FamilyTag::MDown].map(|t| in_family(mu, t));
    let verdicts = [member(&m), member(&up), member(&down)];
    let expected = [[true, false, false], [true, true, false], [true, false, true]];
    let members_rec = Record::pass_if("preoperad-examples", verdicts == expected).detail(format!("{verdicts:?}"));
    let dual_rec = Record::pass_if("dual-example", dual(&up) == down && dual(&down) == up)
        .detail(format!("D({}) = {}", format_object(&up), format_object(&dual(&up))));
    vec![gamma_rec, members_rec, dual_rec]
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

/// Unit, associativity, both equivariances, the action law and closure of
/// the families, on one random draw.
fn operad_laws(r: &mut impl Rng, n: u8) -> Result<(), String> {
    let err = |e: enops::Error| e.to_string();
    let tag = CLOSED[r.gen_range(0..CLOSED.len())];
    let k = r.gen_range(1..=3);
    let mu = random_member(r, tag, n, k);
    let nus: Vec<GraphObject> = (0..k).map(|_| { let s = r.gen_range(0..=2); random_member(r, tag, n, s) }).collect();
    let total: usize = nus.iter().map(GraphObject::k).sum();
    let rhos: Vec<GraphObject> = (0..total).map(|_| { let s = r.gen_range(0..=2); random_member(r, tag, n, s) }).collect();

    let unit = GraphObject::trivial(n, 1);
    ensure(gamma(&unit, std::slice::from_ref(&mu)).map_err(err)? == mu, || "left unit".into())?;
    ensure(gamma(&mu, &vec![unit; k]).map_err(err)? == mu, || "right unit".into())?;

    let composed = gamma(&mu, &nus).map_err(err)?;
    ensure(in_family(&composed, tag), || format!("{tag} not closed under composition"))?;
    let left = gamma(&composed, &rhos).map_err(err)?;
    let mut start = 0;
    let mut inner = Vec::new();
    for nu in &nus {
        inner.push(gamma(nu, &rhos[start..start + nu.k()]).map_err(err)?);
        start += nu.k();
    }
    ensure(left == gamma(&mu, &inner).map_err(err)?, || "associativity".into())?;

    let sigma = random_permutation(r, k);
    let permuted: Vec<GraphObject> = (0..k).map(|i| nus[sigma.apply(i)].clone()).collect();
    let lhs = gamma(&sigma_action(&mu, &sigma).map_err(err)?, &permuted).map_err(err)?;
    let sizes: Vec<usize> = nus.iter().map(GraphObject::k).collect();
    let offsets: Vec<usize> = sizes.iter().scan(0, |acc, &s| { let o = *acc; *acc += s; Some(o) }).collect();
    let block: Vec<usize> = (0..k).flat_map(|i| { let b = sigma.apply(i); let start = offsets[b]; (0..sizes[b]).map(move |o| start + o) }).collect();
    let block = Permutation::new(block).map_err(err)?;
    ensure(lhs == sigma_action(&composed, &block).map_err(err)?, || "outer equivariance".into())?;

    let taus: Vec<Permutation> = nus.iter().map(|nu| random_permutation(r, nu.k())).collect();
    let acted: Vec<GraphObject> = nus.iter().zip(&taus).map(|(nu, t)| sigma_action(nu, t)).collect::<Result<_, _>>().map_err(err)?;
    let sum: Vec<usize> = taus.iter().zip(&offsets).flat_map(|(t, &o)| t.images().iter().map(move |x| x + o)).collect();
    let sum = Permutation::new(sum).map_err(err)?;
    ensure(gamma(&mu, &acted).map_err(err)? == sigma_action(&composed, &sum).map_err(err)?, || "inner equivariance".into())?;

    let big = random_object(r, n, 4);
    let (s, t) = (random_permutation(r, 4), random_permutation(r, 4));
    let twice = sigma_action(&sigma_action(&big, &s).map_err(err)?, &t).map_err(err)?;
    ensure(twice == sigma_action(&big, &s.compose(&t)).map_err(err)?, || "action law".into())?;
    ensure(in_family(&sigma_action(&mu, &sigma).map_err(err)?, tag), || format!("{tag} not closed under the action"))?;

    for pre in [FamilyTag::MUp, FamilyTag::MDown, tag] {
        let x = random_member(r, pre, n, 4);
        let m = r.gen_range(0..=4);
        let inj = random_permutation(r, 4).images()[..m].to_vec();
        ensure(in_family(&restrict(&x, &inj).map_err(err)?, pre), || format!("{pre} not closed under restriction"))?;
    }
    Ok(())
}

/// The crossing, wedge, infimum, interpolation and least-element lemmas
/// on every pair of admissible partitions of one context.
fn partition_lemmas(omega: &GraphObject) -> Result<(), String> {
    let set = PartitionSet::for_omega(omega).map_err(|e| e.to_string())?;
    let e = set.elements();
    let p = set.poset();
    use enops::poset::Order;
    for (a, v) in e.iter().enumerate() {
        for (b, w) in e.iter().enumerate() {
            let name = || format!("{v} and {w}");
            ensure(v.cap(w) == v.cap_blocks(w), || format!("crossing forms disagree on {}", name()))?;
            let wedge = v.wedge(w);
            ensure(wedge.preceq(v) && wedge.preceq(w) && set.index_of(&wedge).is_some(), || format!("wedge of {} is not an admissible lower bound", name()))?;
            if v.cap(w) {
                let min: Vec<u8> = v.alpha().iter().zip(w.alpha()).map(|(x, y)| *x.min(y)).collect();
                ensure(wedge.alpha() == &min[..], || format!("wedge of {} compresses", name()))?;
                ensure(e.iter().filter(|x| x.preceq(v) && x.preceq(w)).all(|x| x.preceq(&wedge)), || format!("wedge of {} is not the infimum", name()))?;
                let inf = v.inf_original(w).ok_or_else(|| format!("no block infimum for {}", name()))?;
                let i = set.index_of(&inf).ok_or_else(|| format!("block infimum of {} is not admissible", name()))?;
                ensure(p.leq(i, a) && p.leq(i, b), || format!("block infimum of {} is not below both", name()))?;
                ensure((0..e.len()).filter(|&x| p.leq(x, a) && p.leq(x, b)).all(|x| p.leq(x, i)), || format!("block infimum of {} is not greatest", name()))?;
            } else {
                ensure(v.inf_original(w).is_none(), || format!("crossing pair {} has a block infimum", name()))?;
                ensure((0..e.len()).all(|x| !(p.leq(x, a) && p.leq(x, b))), || format!("crossing pair {} has a common refinement", name()))?;
            }
            if w.strictly_precedes(v) {
                let tv = v.tilde(w).map_err(|err| err.to_string())?;
                set.verify_tilde(w, v, &tv).map_err(|err| err.to_string())?;
            }
        }
    }
    let least = set.least_element().map_err(|err| err.to_string())?;
    ensure(e.iter().all(|v| e[least].preceq(v)), || "least element is not pointwise least".into())
}
