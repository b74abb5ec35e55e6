//! Exact little-cubes certificates: witnesses, the closed form of the
//! union subspaces, contracting homotopies and the structure maps.

use enops::cubes::{
    check_gamma, check_sigma, classify, homotopy_h, in_f, in_g, infimum_check, rat, random_config, random_member_config,
    verify_cycle, witness, CubeConfig, WitnessOutcome,
};
use enops::operads::syntax::format_raw;
use enops::operads::{in_family, is_morphism, Edge, FamilyTag, GraphObject, Permutation};
use enops::sampling::{random_member, random_object, random_permutation};
use rand::seq::index::sample;
use rand::Rng;

use super::Ctx;
use crate::record::{Record, Verdict};

/// Above this many objects, exhaustive loops switch to seeded samples.
const EXHAUSTIVE_LIMIT: usize = 5000;

#[derive(Clone, Copy, Debug)]
enum Part {
    Witness,
    ClosedForm,
    Homotopy,
    Infimum,
    Sigma,
    Gamma,
}

pub fn run(ctx: &Ctx) -> anyhow::Result<Vec<Record>> {
    let mut out = Vec::new();
    for (n, k) in ctx.cfg.pairs() {
        let ke = ctx.family(FamilyTag::Ke, n, k)?;
        let parts = [Part::Witness, Part::ClosedForm, Part::Homotopy, Part::Infimum, Part::Sigma, Part::Gamma];
        out.extend(ctx.run(&parts, |&part| {
            let salt = (n as u64) << 40 | (k as u64) << 8 | part as u64;
            let mut r = ctx.seeded(salt);
            let (name, result) = match part {
                Part::Witness => ("cubes-witness", witnesses(ctx, &mut r, n, k)),
                Part::ClosedForm => ("cubes-closed-form", closed_form(&mut r, &ke, n, k)),
                Part::Homotopy => ("cubes-homotopy", homotopies(&mut r, &ke, n, k)),
                Part::Infimum => ("cubes-infimum", infima(&mut r, &ke, n, k)),
                Part::Sigma => ("cubes-sigma", sigma(&mut r, &ke, k)),
                Part::Gamma => ("cubes-gamma", gammas(&mut r, n)),
            };
            let rec = match result {
                Ok(detail) => Record::new(name, Verdict::Pass).detail(detail),
                Err(e) => Record::new(name, Verdict::Fail).detail(e),
            };
            vec![rec.param("n", n).param("k", k)]
        }));
    }
    Ok(out)
}

fn err(e: enops::Error) -> String {
    e.to_string()
}

/// Nonempty exactly on the extended family, with a checked certificate
/// either way.
fn witnesses(ctx: &Ctx, r: &mut impl Rng, n: u8, k: usize) -> Result<String, String> {
    let total = (2 * n as usize).checked_pow((k * k.saturating_sub(1) / 2) as u32);
    let objs: Vec<GraphObject> = match total {
        Some(t) if t <= EXHAUSTIVE_LIMIT => ctx.family(FamilyTag::G, n, k).map_err(|e| e.to_string())?,
        _ => (0..ctx.cfg.sample.unwrap_or(2000)).map(|_| random_object(r, n, k)).collect(),
    };
    let (mut configs, mut cycles) = (0, 0);
    for mu in &objs {
        let ke = in_family(mu, FamilyTag::Ke);
        match witness(mu).map_err(err)? {
            WitnessOutcome::Config(c) if ke && c.separated() && in_g(&c, mu).map_err(err)? => configs += 1,
            WitnessOutcome::Cycle { label, cycle } if !ke && verify_cycle(mu, label, &cycle) => cycles += 1,
            _ => return Err(format!("bad certificate for {}", format_raw(mu))),
        }
    }
    Ok(format!("{} objects: {configs} configurations, {cycles} cycles", objs.len()))
}

/// Every member of the extended family whose subspace contains `c`, found
/// edge by edge from the cube relations.
fn members_by_edges(c: &CubeConfig, n: u8, k: usize) -> Result<Vec<GraphObject>, String> {
    let cubes = c.cubes();
    let mut partial: Vec<Vec<Edge>> = vec![Vec::new()];
    for x in 0..k {
        for y in x + 1..k {
            let mut allowed = Vec::new();
            for l in 1..=n {
                if cubes[x].less(&cubes[y], l as usize).map_err(err)? {
                    allowed.push(Edge::new(l, true));
                }
                if cubes[y].less(&cubes[x], l as usize).map_err(err)? {
                    allowed.push(Edge::new(l, false));
                }
            }
            partial = partial
                .into_iter()
                .flat_map(|p| allowed.iter().map(move |e| { let mut q = p.clone(); q.push(*e); q }))
                .collect();
        }
    }
    // pairs are listed in the same (x, y) lexicographic order as the object edges
    partial
        .into_iter()
        .map(|edges| GraphObject::new(n, k, edges).map_err(err))
        .filter(|mu| mu.as_ref().map_or(true, |m| in_family(m, FamilyTag::Ke)))
        .collect()
}

fn closed_form(r: &mut impl Rng, ke: &[GraphObject], n: u8, k: usize) -> Result<String, String> {
    let configs = 1000;
    let mut compared = 0usize;
    for _ in 0..configs {
        let c = random_config(r, n as usize, k);
        let members = members_by_edges(&c, n, k)?;
        for mu in &members {
            if !in_g(&c, mu).map_err(err)? {
                return Err(format!("{c} fails the membership test of {}", format_raw(mu)));
            }
        }
        let cls = classify(&c).map_err(err)?;
        if !members.contains(&cls) {
            return Err(format!("classification of {c} is not a member"));
        }
        let targets: Vec<usize> = if ke.len() <= EXHAUSTIVE_LIMIT {
            (0..ke.len()).collect()
        } else {
            sample(r, ke.len(), 64).into_vec()
        };
        for t in targets {
            let nu = &ke[t];
            let brute = members.iter().try_fold(false, |acc, m| Ok::<_, String>(acc || is_morphism(m, nu).map_err(err)?))?;
            if in_f(&c, nu).map_err(err)? != brute {
                return Err(format!("closed form disagrees with the union at {c} for {}", format_raw(nu)));
            }
            compared += 1;
        }
    }
    Ok(format!("{configs} configurations, {compared} comparisons"))
}

fn homotopies(r: &mut impl Rng, ke: &[GraphObject], n: u8, k: usize) -> Result<String, String> {
    let samples = 200;
    let (zero, one) = (rat(0, 1), rat(1, 1));
    for _ in 0..samples {
        let c = random_config(r, n as usize, k);
        let base = classify(&c).map_err(err)?;
        let nu = loop {
            let cand = &ke[r.gen_range(0..ke.len())];
            if is_morphism(&base, cand).map_err(err)? {
                break cand;
            }
        };
        let WitnessOutcome::Config(anchor) = witness(nu).map_err(err)? else {
            return Err("extended member without witness".into());
        };
        let t = rat(r.gen_range(0..=24), 24);
        let j = r.gen_range(1..=n as usize);
        let h = |j: usize, t: &enops::cubes::Rational| homotopy_h(j, &c, t, &anchor, nu).map_err(err);
        if !in_f(&c, nu).map_err(err)? || !in_f(&h(j, &t)?, nu).map_err(err)? {
            return Err(format!("homotopy leaves the subspace of {} at {c}", format_raw(nu)));
        }
        if h(n as usize, &zero)? != c || h(1, &one)? != anchor || (j >= 2 && h(j, &one)? != h(j - 1, &zero)?) {
            return Err(format!("endpoint identity fails for {} at {c}", format_raw(nu)));
        }
    }
    Ok(format!("{samples} samples"))
}

fn infima(r: &mut impl Rng, ke: &[GraphObject], n: u8, k: usize) -> Result<String, String> {
    let mut pairs = 0;
    for _ in 0..125 {
        let c = random_config(r, n as usize, k);
        let members = if ke.len() <= EXHAUSTIVE_LIMIT {
            ke.iter().filter(|m| in_g(&c, m).unwrap_or(false)).cloned().collect()
        } else {
            members_by_edges(&c, n, k)?
        };
        for a in &members {
            for b in &members {
                let inf = infimum_check(a, b, &c).map_err(err)?;
                if a == b && inf != *a {
                    return Err("infimum of an object with itself moved".into());
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs over 125 configurations"))
}

fn sigma(r: &mut impl Rng, ke: &[GraphObject], k: usize) -> Result<String, String> {
    let perms = if k <= 4 { Permutation::all(k) } else { (0..24).map(|_| random_permutation(r, k)).collect() };
    for _ in 0..50 {
        let mu = &ke[r.gen_range(0..ke.len())];
        let c = random_member_config(r, mu).map_err(err)?;
        for s in &perms {
            check_sigma(&c, mu, s).map_err(err)?;
        }
    }
    Ok(format!("50 configurations, {} permutations each", perms.len()))
}

fn gammas(r: &mut impl Rng, n: u8) -> Result<String, String> {
    for _ in 0..100 {
        let k = r.gen_range(1..=3usize);
        let mut sizes: Vec<usize> = (0..k).map(|_| r.gen_range(0..=2)).collect();
        while sizes.iter().sum::<usize>() > 5 {
            sizes.iter_mut().for_each(|s| *s = s.saturating_sub(1));
        }
        let mu = random_member(r, FamilyTag::Ke, n, k);
        let nus: Vec<GraphObject> = sizes.iter().map(|&s| random_member(r, FamilyTag::Ke, n, s)).collect();
        let outer = random_member_config(r, &mu).map_err(err)?;
        let inner: Vec<CubeConfig> = nus.iter().map(|nu| random_member_config(r, nu)).collect::<Result<_, _>>().map_err(err)?;
        check_gamma(&outer, &mu, &inner, &nus).map_err(err)?;
    }
    Ok("100 samples".into())
}
