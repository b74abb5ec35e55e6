//! Little n-cubes with exact rational endpoints: the subspaces cut out by
//! graph objects, their unions over morphisms, the contracting homotopies,
//! operad compatibility and the failed Reedy cofibrancy example.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::operads::{
    enumerate_family, family_leq, find_cycle, gamma, in_family, sigma_action, syntax::parse_expr, topo_ranks, FamilyTag,
    GraphObject, Permutation, DEFAULT_MAX_BITS,
};
use crate::poset::Poset;

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn show(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `t ↦ (1 - t) a + t b` with `0 ≤ a < b ≤ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineEmbedding {
    a: Rational,
    b: Rational,
}

impl AffineEmbedding {
    pub fn new(a: Rational, b: Rational) -> Result<Self> {
        if a < Rational::zero() || b > Rational::one() || a >= b {
            return Err(Error::Precondition(format!("[{}, {}] is not a positive affine embedding", show(&a), show(&b))));
        }
        Ok(AffineEmbedding { a, b })
    }

    pub fn full() -> Self {
        AffineEmbedding { a: Rational::zero(), b: Rational::one() }
    }

    pub fn start(&self) -> &Rational {
        &self.a
    }

    pub fn end(&self) -> &Rational {
        &self.b
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        (Rational::one() - t) * &self.a + t * &self.b
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AffineEmbedding) -> AffineEmbedding {
        AffineEmbedding { a: self.eval(&inner.a), b: self.eval(&inner.b) }
    }

    /// Endpointwise `(1 - t) self + t other`.
    pub fn blend(&self, other: &AffineEmbedding, t: &Rational) -> AffineEmbedding {
        let s = Rational::one() - t;
        AffineEmbedding { a: &s * &self.a + t * &other.a, b: &s * &self.b + t * &other.b }
    }
}

impl fmt::Display for AffineEmbedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", show(&self.a), show(&self.b))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LittleCube(pub Vec<AffineEmbedding>);

impl LittleCube {
    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// From `(a, b)` pairs of `(numerator, denominator)` endpoints.
    pub fn from_fractions(coords: &[((i64, i64), (i64, i64))]) -> Result<Self> {
        coords
            .iter()
            .map(|&((an, ad), (bn, bd))| AffineEmbedding::new(rat(an, ad), rat(bn, bd)))
            .collect::<Result<_>>()
            .map(LittleCube)
    }

    /// `self <_i other`: the end of coordinate `i` (1-based) is at most the
    /// start of the other cube's coordinate `i`.
    pub fn less(&self, other: &LittleCube, i: usize) -> Result<bool> {
        if i == 0 || i > self.n() || i > other.n() {
            return Err(Error::Dimension(format!("coordinate {i} of a {}-cube", self.n())));
        }
        Ok(self.0[i - 1].b <= other.0[i - 1].a)
    }

    fn lt(&self, other: &LittleCube, i: u8) -> bool {
        self.0[i as usize - 1].b <= other.0[i as usize - 1].a
    }

    pub fn compose(&self, inner: &LittleCube) -> LittleCube {
        LittleCube(self.0.iter().zip(&inner.0).map(|(f, g)| f.compose(g)).collect())
    }
}

impl fmt::Display for LittleCube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        f.write_str(&parts.join("x"))
    }
}

/// An indexed family of little cubes of a common dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CubeConfig {
    n: usize,
    cubes: Vec<LittleCube>,
}

impl CubeConfig {
    pub fn new(n: usize, cubes: Vec<LittleCube>) -> Result<Self> {
        if let Some(c) = cubes.iter().find(|c| c.n() != n) {
            return Err(Error::Dimension(format!("{}-cube in a {n}-cube configuration", c.n())));
        }
        Ok(CubeConfig { n, cubes })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.cubes.len()
    }

    pub fn cubes(&self) -> &[LittleCube] {
        &self.cubes
    }

    /// Pairwise disjoint interiors.
    pub fn separated(&self) -> bool {
        let c = &self.cubes;
        (0..c.len()).all(|x| {
            (x + 1..c.len()).all(|y| (1..=self.n as u8).any(|i| c[x].lt(&c[y], i) || c[y].lt(&c[x], i)))
        })
    }

    /// Cube `x` of the result is cube `sigma(x)` of `self`.
    pub fn permute(&self, sigma: &Permutation) -> Result<CubeConfig> {
        if sigma.len() != self.k() {
            return Err(Error::Dimension(format!("permutation of {} on {} cubes", sigma.len(), self.k())));
        }
        Ok(CubeConfig { n: self.n, cubes: (0..self.k()).map(|x| self.cubes[sigma.apply(x)].clone()).collect() })
    }

    /// Endpointwise `(1 - t) self + t other`.
    pub fn blend(&self, other: &CubeConfig, t: &Rational) -> CubeConfig {
        let cubes = self
            .cubes
            .iter()
            .zip(&other.cubes)
            .map(|(c, d)| LittleCube(c.0.iter().zip(&d.0).map(|(f, g)| f.blend(g, t)).collect()))
            .collect();
        CubeConfig { n: self.n, cubes }
    }

    /// Fractions `a/b` per coordinate, one 2n-tuple per cube.
    pub fn to_fractions(&self) -> Vec<Vec<String>> {
        self.cubes.iter().map(|c| c.0.iter().flat_map(|e| [show(&e.a), show(&e.b)]).collect()).collect()
    }
}

impl fmt::Display for CubeConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.cubes.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn check_dims(config: &CubeConfig, mu: &GraphObject) -> Result<()> {
    if config.n != mu.n() as usize || config.k() != mu.k() {
        return Err(Error::Dimension(format!(
            "{}-cube configuration of {} cubes against n={} k={}",
            config.n,
            config.k(),
            mu.n(),
            mu.k()
        )));
    }
    Ok(())
}

/// Every arc `(x, y)` with label `i` has `c_x <_i c_y`.
pub fn in_g(config: &CubeConfig, mu: &GraphObject) -> Result<bool> {
    check_dims(config, mu)?;
    Ok(g_holds(config, mu))
}

fn g_holds(config: &CubeConfig, mu: &GraphObject) -> bool {
    let c = &config.cubes;
    mu.arcs().all(|(x, y)| c[x].lt(&c[y], mu.label(x, y)))
}

/// Every arc `(x, y)` with label `l` has `c_x <_i c_y` for some `i ≤ l`
/// or `c_y <_i c_x` for some `i < l`.
pub fn in_f(config: &CubeConfig, nu: &GraphObject) -> Result<bool> {
    check_dims(config, nu)?;
    let c = &config.cubes;
    Ok(nu.arcs().all(|(x, y)| {
        let l = nu.label(x, y);
        (1..=l).any(|i| c[x].lt(&c[y], i)) || (1..l).any(|i| c[y].lt(&c[x], i))
    }))
}

/// Either a configuration in `G(mu)` or a monochromatic cycle showing
/// `G(mu)` is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessOutcome {
    Config(CubeConfig),
    Cycle { label: u8, cycle: Vec<usize> },
}

/// Cube `x` occupies `[(r-1)/k, r/k]` in coordinate `i`, where `r` is its
/// rank in a topological order of the label-`i` arcs.
pub fn witness(mu: &GraphObject) -> Result<WitnessOutcome> {
    let (n, k) = (mu.n() as usize, mu.k());
    let mut coords: Vec<Vec<AffineEmbedding>> = vec![Vec::with_capacity(n); k];
    for i in 1..=mu.n() {
        let arcs: Vec<(usize, usize)> = mu.arcs_with_label(i).collect();
        let Some(rank) = topo_ranks(k, &arcs) else {
            let cycle = find_cycle(k, arcs.into_iter()).expect("an unsortable relation has a cycle");
            return Ok(WitnessOutcome::Cycle { label: i, cycle });
        };
        for x in 0..k {
            let r = rank[x] as i64;
            coords[x].push(AffineEmbedding::new(rat(r, k as i64), rat(r + 1, k as i64))?);
        }
    }
    let config = CubeConfig::new(n, coords.into_iter().map(LittleCube).collect())?;
    if !g_holds(&config, mu) || !config.separated() {
        return Err(Error::Integrity(format!("witness {config} fails its own check")));
    }
    Ok(WitnessOutcome::Config(config))
}

/// Checks that `cycle` is a directed cycle of `mu` with constant `label`.
pub fn verify_cycle(mu: &GraphObject, label: u8, cycle: &[usize]) -> bool {
    cycle.len() >= 2
        && (0..cycle.len()).all(|j| {
            let (x, y) = (cycle[j], cycle[(j + 1) % cycle.len()]);
            x != y && mu.label(x, y) == label && mu.points(x, y)
        })
}

/// Edgewise minimum of two objects sharing a configuration, with the
/// orientation of the minimizing side.
pub fn infimum_check(mu1: &GraphObject, mu2: &GraphObject, config: &CubeConfig) -> Result<GraphObject> {
    if !in_g(config, mu1)? || !in_g(config, mu2)? {
        return Err(Error::Precondition("configuration is not in both subspaces".into()));
    }
    let mut conflict = false;
    let mu0 = GraphObject::from_fn(mu1.n(), mu1.k(), |x, y| {
        let (l1, l2) = (mu1.label(x, y), mu2.label(x, y));
        if l1 == l2 && mu1.points(x, y) != mu2.points(x, y) {
            conflict = true;
        }
        if l1 <= l2 {
            (l1, mu1.points(x, y))
        } else {
            (l2, mu2.points(x, y))
        }
    })?;
    if conflict {
        return Err(Error::Integrity("opposite orientations at an equal label".into()));
    }
    if !in_family(&mu0, FamilyTag::Ke) || !g_holds(config, &mu0) || !family_leq(&mu0, mu1) || !family_leq(&mu0, mu2) {
        return Err(Error::Integrity(format!("infimum {mu0:?} fails verification")));
    }
    Ok(mu0)
}

/// Coordinates before `j` from `config`, coordinate `j` moved toward the
/// anchor, coordinates after `j` from the anchor.
pub fn homotopy_h(j: usize, config: &CubeConfig, t: &Rational, anchor: &CubeConfig, nu: &GraphObject) -> Result<CubeConfig> {
    check_dims(config, nu)?;
    check_dims(anchor, nu)?;
    if j == 0 || j > config.n {
        return Err(Error::Precondition(format!("homotopy index {j} outside 1..={}", config.n)));
    }
    if *t < Rational::zero() || *t > Rational::one() {
        return Err(Error::Precondition(format!("time {} outside [0,1]", show(t))));
    }
    if !g_holds(anchor, nu) {
        return Err(Error::Precondition("anchor is not in G(nu)".into()));
    }
    let cubes = config
        .cubes
        .iter()
        .zip(&anchor.cubes)
        .map(|(c, d)| {
            LittleCube(
                (0..config.n)
                    .map(|i| match (i + 1).cmp(&j) {
                        std::cmp::Ordering::Less => c.0[i].clone(),
                        std::cmp::Ordering::Equal => c.0[i].blend(&d.0[i], t),
                        std::cmp::Ordering::Greater => d.0[i].clone(),
                    })
                    .collect(),
            )
        })
        .collect();
    Ok(CubeConfig { n: config.n, cubes })
}

/// Operad composition: inner configuration `i` is substituted into cube `i`.
pub fn compose_configs(outer: &CubeConfig, inner: &[CubeConfig]) -> Result<CubeConfig> {
    if inner.len() != outer.k() {
        return Err(Error::Arity { expected: outer.k(), got: inner.len() });
    }
    if let Some(d) = inner.iter().find(|d| d.n != outer.n) {
        return Err(Error::Dimension(format!("{}-cubes inside {}-cubes", d.n, outer.n)));
    }
    let cubes = outer.cubes.iter().zip(inner).flat_map(|(c, d)| d.cubes.iter().map(move |e| c.compose(e))).collect();
    Ok(CubeConfig { n: outer.n, cubes })
}

/// `config ∈ G(mu)` implies the permuted configuration is in `G(mu σ)`.
pub fn check_sigma(config: &CubeConfig, mu: &GraphObject, sigma: &Permutation) -> Result<()> {
    if !in_g(config, mu)? {
        return Err(Error::Precondition("configuration is not in G(mu)".into()));
    }
    let moved = config.permute(sigma)?;
    if !in_g(&moved, &sigma_action(mu, sigma)?)? {
        return Err(Error::Falsification(format!("{moved} is not in G(mu sigma) for sigma {:?}", sigma.images())));
    }
    Ok(())
}

/// Members of `G(mu)` and `G(nu_i)` compose into `G(gamma(mu, nu))`.
pub fn check_gamma(outer: &CubeConfig, mu: &GraphObject, inner: &[CubeConfig], nus: &[GraphObject]) -> Result<()> {
    if !in_g(outer, mu)? || inner.len() != nus.len() {
        return Err(Error::Precondition("outer configuration is not in G(mu)".into()));
    }
    for (d, nu) in inner.iter().zip(nus) {
        if !in_g(d, nu)? {
            return Err(Error::Precondition("inner configuration is not in its subspace".into()));
        }
    }
    let composed = compose_configs(outer, inner)?;
    let target = gamma(mu, nus)?;
    if !in_g(&composed, &target)? || !composed.separated() {
        return Err(Error::Falsification(format!("composed configuration {composed} is not in G(gamma)")));
    }
    Ok(())
}

/// The object with, on each pair, the least coordinate separating the two
/// cubes, directed accordingly. A separated configuration lies in its `G`.
pub fn classify(config: &CubeConfig) -> Result<GraphObject> {
    if !config.separated() {
        return Err(Error::Precondition("interiors overlap".into()));
    }
    let c = &config.cubes;
    GraphObject::from_fn(config.n as u8, config.k(), |x, y| {
        for i in 1..=config.n as u8 {
            if c[x].lt(&c[y], i) {
                return (i, true);
            }
            if c[y].lt(&c[x], i) {
                return (i, false);
            }
        }
        unreachable!("separated cubes differ in some coordinate")
    })
}

/// A random grid endpoint pair in `[0, 1]` with denominator at most 24.
fn random_embedding(rng: &mut impl Rng) -> AffineEmbedding {
    let d = rng.gen_range(1..=24i64);
    let a = rng.gen_range(0..d);
    let b = rng.gen_range(a + 1..=d);
    AffineEmbedding { a: rat(a, d), b: rat(b, d) }
}

/// Rejection-sampled configuration with separated interiors.
pub fn random_config(rng: &mut impl Rng, n: usize, k: usize) -> CubeConfig {
    loop {
        let cubes = (0..k).map(|_| LittleCube((0..n).map(|_| random_embedding(rng)).collect())).collect();
        let c = CubeConfig { n, cubes };
        if c.separated() {
            return c;
        }
    }
}

/// A random member of `G(mu)`, for `mu` in the extended family: random
/// grid intervals, stretched to respect the per-label orders.
pub fn random_member_config(rng: &mut impl Rng, mu: &GraphObject) -> Result<CubeConfig> {
    let WitnessOutcome::Config(w) = witness(mu)? else {
        return Err(Error::NotInFamily("extended complete graph".into()));
    };
    let t = rat(rng.gen_range(0..=12), 12);
    let other = random_config(rng, mu.n() as usize, mu.k());
    // shrink each witness cube toward a random point inside it
    let cubes = w
        .cubes
        .iter()
        .zip(&other.cubes)
        .map(|(c, r)| LittleCube(c.0.iter().zip(&r.0).map(|(f, g)| f.compose(&g.blend(&AffineEmbedding::full(), &t))).collect()))
        .collect();
    let c = CubeConfig { n: w.n, cubes };
    debug_assert!(g_holds(&c, mu));
    Ok(c)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReedyStep {
    pub name: String,
    pub pass: bool,
    pub checks: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReedyReport {
    pub config: CubeConfig,
    pub steps: Vec<ReedyStep>,
}

impl ReedyReport {
    pub fn all_pass(&self) -> bool {
        self.steps.len() == 4 && self.steps.iter().all(|s| s.pass)
    }
}

/// The configuration of three cubes in the 3-cube used by the example.
pub fn reedy_config() -> CubeConfig {
    let cube = |c: [((i64, i64), (i64, i64)); 3]| LittleCube::from_fractions(&c).unwrap();
    CubeConfig {
        n: 3,
        cubes: vec![
            cube([((0, 1), (1, 2)), ((0, 1), (1, 3)), ((1, 2), (1, 1))]),
            cube([((0, 1), (1, 1)), ((1, 3), (2, 3)), ((0, 1), (1, 2))]),
            cube([((1, 2), (1, 1)), ((2, 3), (1, 1)), ((1, 2), (1, 1))]),
        ],
    }
}

/// Replays the four steps showing the decomposable-object diagram of
/// subspace unions fails to be Reedy cofibrant at three points in the
/// 3-cube.
pub fn reedy_counterexample() -> Result<ReedyReport> {
    let p = reedy_config();
    let mu1 = parse_expr("1[]2 2[]2 3", 3)?;
    let mu2 = parse_expr("2[]3(1[]1 3)", 3)?;
    let nu = parse_expr("2[]3(1[]2 3)", 3)?;
    let m = enumerate_family(FamilyTag::M, 3, 3, DEFAULT_MAX_BITS)?;
    let fmt_obj = crate::operads::syntax::format_object;
    let mut steps = Vec::new();

    let c = p.cubes();
    let mut checks = Vec::new();
    let mut pass = p.separated();
    for mu in [&mu1, &mu2] {
        for (x, y) in mu.arcs() {
            let i = mu.label(x, y);
            let ok = c[x].lt(&c[y], i);
            pass &= ok;
            checks.push(format!(
                "{}: c{} <_{} c{}: {} <= {} {}",
                fmt_obj(mu),
                x + 1,
                i,
                y + 1,
                show(&c[x].0[i as usize - 1].b),
                show(&c[y].0[i as usize - 1].a),
                ok
            ));
        }
    }
    steps.push(ReedyStep { name: "point lies in both subspaces".into(), pass, checks });

    let between: Vec<&GraphObject> = m.iter().filter(|mu| family_leq(&mu2, mu) && family_leq(mu, &nu)).collect();
    let pass = between.len() == 2 && between.contains(&&mu2) && between.contains(&&nu);
    steps.push(ReedyStep {
        name: "interval between mu2 and nu".into(),
        pass,
        checks: between.iter().map(|mu| fmt_obj(mu)).collect(),
    });

    let below: Vec<&GraphObject> = m.iter().filter(|mu| family_leq(mu, &mu2) && g_holds(&p, mu)).collect();
    let pass = below.len() == 1 && below[0] == &mu2;
    steps.push(ReedyStep {
        name: "mu2 is the only object below mu2 containing the point".into(),
        pass,
        checks: below.iter().map(|mu| fmt_obj(mu)).collect(),
    });

    // objects of the punctured over-poset of nu whose union contains the point
    let in_union = |mu: &GraphObject| m.iter().any(|m2| family_leq(m2, mu) && g_holds(&p, m2));
    let fiber: Vec<&GraphObject> = m.iter().filter(|mu| *mu != &nu && family_leq(mu, &nu) && in_union(mu)).collect();
    let poset = Poset::from_leq(fiber.len(), |a, b| family_leq(fiber[a], fiber[b]))?;
    let comp = poset.comparability_components();
    let i1 = fiber.iter().position(|mu| *mu == &mu1);
    let i2 = fiber.iter().position(|mu| *mu == &mu2);
    let classes: BTreeSet<usize> = comp.iter().copied().collect();
    let pass = matches!((i1, i2), (Some(a), Some(b)) if comp[a] != comp[b]);
    let checks = fiber.iter().zip(&comp).map(|(mu, c)| format!("{} in class {}", fmt_obj(mu), c)).chain([format!("{} classes", classes.len())]).collect();
    steps.push(ReedyStep { name: "colimit fiber separates mu1 from mu2".into(), pass, checks });

    Ok(ReedyReport { config: p, steps })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn obj(s: &str, n: u8) -> GraphObject {
        parse_expr(s, n).unwrap()
    }

    #[test]
    fn less_boundaries() {
        let c = LittleCube::from_fractions(&[((0, 1), (1, 2))]).unwrap();
        let d = LittleCube::from_fractions(&[((1, 2), (1, 1))]).unwrap();
        assert!(c.less(&d, 1).unwrap());
        assert!(!c.less(&c, 1).unwrap());
        assert!(c.less(&d, 2).is_err());
        let p = reedy_config();
        assert!(p.cubes()[1].less(&p.cubes()[0], 3).unwrap());
    }

    #[test]
    fn example_point() {
        let p = reedy_config();
        assert!(p.separated());
        assert!(in_g(&p, &obj("1[]2 2[]2 3", 3)).unwrap());
        assert!(in_g(&p, &obj("2[]3(1[]1 3)", 3)).unwrap());
        assert!(in_f(&p, &obj("2[]3(1[]2 3)", 3)).unwrap());
        let mu0 = infimum_check(&obj("1[]2 2[]2 3", 3), &obj("2[]3(1[]1 3)", 3), &p).unwrap();
        assert!(in_family(&mu0, FamilyTag::Ke));
    }

    #[test]
    fn witness_shapes() {
        let mu = obj("1[]2 2", 2);
        let WitnessOutcome::Config(w) = witness(&mu).unwrap() else { panic!() };
        assert_eq!(w.to_string(), "([0,1/2]x[0,1/2], [1/2,1]x[1/2,1])");
        let WitnessOutcome::Config(one) = witness(&GraphObject::trivial(3, 1)).unwrap() else { panic!() };
        assert_eq!(one.to_string(), "([0,1]x[0,1]x[0,1])");
        let cyc = GraphObject::from_fn(2, 3, |x, y| (1, !(x == 0 && y == 2))).unwrap();
        match witness(&cyc).unwrap() {
            WitnessOutcome::Cycle { label, cycle } => assert!(verify_cycle(&cyc, label, &cycle)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn homotopy_endpoints() {
        let nu = obj("1[]2 2[]1 3", 2);
        let WitnessOutcome::Config(anchor) = witness(&nu).unwrap() else { panic!() };
        let mut r = crate::sampling::rng(1);
        let config = random_config(&mut r, 2, 3);
        assert_eq!(homotopy_h(2, &config, &rat(0, 1), &anchor, &nu).unwrap(), config);
        assert_eq!(homotopy_h(1, &config, &rat(1, 1), &anchor, &nu).unwrap(), anchor);
        assert_eq!(
            homotopy_h(2, &config, &rat(1, 1), &anchor, &nu).unwrap(),
            homotopy_h(1, &config, &rat(0, 1), &anchor, &nu).unwrap()
        );
        assert!(homotopy_h(1, &config, &rat(3, 2), &anchor, &nu).is_err());
    }

    #[test]
    fn reedy_steps_pass() {
        let r = reedy_counterexample().unwrap();
        assert!(r.all_pass(), "{r:#?}");
        assert_eq!(r.steps[1].checks.len(), 2);
    }
}
