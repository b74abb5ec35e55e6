//! Grothendieck constructions of poset-valued functors, the partition
//! functor presenting over-posets of the decreasing family, and the
//! reduction of its base to label bound two.

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use crate::contractible::{poset_contractibility, Caps, Verdict};
use crate::error::{Error, Result};
use crate::operads::{enumerate_family, family_leq, find_cycle, restrict, topo_ranks, FamilyTag, GraphObject, DEFAULT_MAX_BITS};
use crate::partition::{collapse_driver, DriverOptions, OmegaContext, OrderedPartition, PartitionSet};
use crate::poset::{is_isomorphism, Order, Poset};

/// A contravariant functor from a poset to posets.
///
/// `transport[(a, b)]` for `a ≤ b` maps `fibers[b]` into `fibers[a]`.
#[derive(Clone, Debug)]
pub struct PosetFunctor {
    base: Poset,
    fibers: Vec<Poset>,
    transport: BTreeMap<(usize, usize), Vec<usize>>,
}

impl PosetFunctor {
    /// Validates monotonicity, identities and composition.
    pub fn new(base: Poset, fibers: Vec<Poset>, transport: BTreeMap<(usize, usize), Vec<usize>>) -> Result<Self> {
        if fibers.len() != base.len() {
            return Err(Error::Dimension(format!("{} fibers over {} base elements", fibers.len(), base.len())));
        }
        let f = PosetFunctor { base, fibers, transport };
        let n = f.base.len();
        for a in 0..n {
            for b in 0..n {
                if !f.base.leq(a, b) {
                    continue;
                }
                let t = f.map(a, b)?;
                if t.len() != f.fibers[b].len() || t.iter().any(|&x| x >= f.fibers[a].len()) {
                    return Err(Error::Integrity(format!("transport {a} <= {b} has the wrong shape")));
                }
                if a == b && t.iter().enumerate().any(|(i, &x)| i != x) {
                    return Err(Error::Integrity(format!("transport at {a} is not the identity")));
                }
                let fb = &f.fibers[b];
                for y in 0..fb.len() {
                    for z in 0..fb.len() {
                        if fb.leq(y, z) && !f.fibers[a].leq(t[y], t[z]) {
                            return Err(Error::Integrity(format!("transport {a} <= {b} is not monotone")));
                        }
                    }
                }
                for c in 0..n {
                    if f.base.leq(b, c) {
                        let (ab, bc, ac) = (t, f.map(b, c)?, f.map(a, c)?);
                        if (0..ac.len()).any(|z| ab[bc[z]] != ac[z]) {
                            return Err(Error::Integrity(format!("transports through {a} <= {b} <= {c} disagree")));
                        }
                    }
                }
            }
        }
        Ok(f)
    }

    pub fn base(&self) -> &Poset {
        &self.base
    }

    pub fn fiber(&self, a: usize) -> &Poset {
        &self.fibers[a]
    }

    pub fn map(&self, a: usize, b: usize) -> Result<&[usize]> {
        self.transport
            .get(&(a, b))
            .map(Vec::as_slice)
            .ok_or_else(|| Error::Integrity(format!("no transport for {a} <= {b}")))
    }

    /// Pairs `(a, x)` with `(a, x) ≤ (b, y)` iff `a ≤ b` and `x ≤ T(a≤b)(y)`.
    pub fn grothendieck(&self) -> Result<(Poset, Vec<(usize, usize)>)> {
        let elems: Vec<(usize, usize)> =
            (0..self.base.len()).flat_map(|a| (0..self.fibers[a].len()).map(move |x| (a, x))).collect();
        let p = Poset::from_leq(elems.len(), |i, j| {
            let ((a, x), (b, y)) = (elems[i], elems[j]);
            self.base.leq(a, b) && self.fibers[a].leq(x, self.transport[&(a, b)][y])
        })?;
        Ok((p, elems))
    }
}

/// Objects of the decreasing family on a block with labels `≥ 2` lying
/// below the restricted context, in block-local coordinates.
#[derive(Debug)]
pub struct Factor {
    pub block: Vec<usize>,
    pub objects: Vec<GraphObject>,
    pub poset: Poset,
    index: HashMap<GraphObject, usize>,
}

/// The partition functor of a context together with the data needed to
/// map its Grothendieck construction back to graph objects.
pub struct PartitionFunctor {
    pub partitions: PartitionSet,
    pub functor: PosetFunctor,
    /// Per base element: one factor per block, and the tuple list of the
    /// product fiber.
    pub factors: Vec<Vec<Rc<Factor>>>,
    pub tuples: Vec<Vec<Vec<usize>>>,
}

/// Decreasing family with labels in `2..=n` on `m` points, relabelled from
/// the decreasing family with bound `n - 1`.
pub fn mdown_from_two(n: u8, m: usize) -> Result<Vec<GraphObject>> {
    if n < 2 {
        return Err(Error::Precondition("label bound below 2".into()));
    }
    enumerate_family(FamilyTag::MDown, n - 1, m, DEFAULT_MAX_BITS)?
        .iter()
        .map(|mu| mu.shift_labels(1, n))
        .collect()
}

fn factor(omega: &GraphObject, block: &[usize]) -> Result<Factor> {
    let local = restrict(omega, block)?;
    if local.k() >= 2 && local.min_label() < 2 {
        return Err(Error::Integrity(format!("label 1 inside block {block:?}")));
    }
    let objects: Vec<GraphObject> =
        mdown_from_two(omega.n(), block.len())?.into_iter().filter(|mu| family_leq(mu, &local)).collect();
    let poset = Poset::from_leq(objects.len(), |a, b| family_leq(&objects[a], &objects[b]))?;
    let index = objects.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect();
    Ok(Factor { block: block.to_vec(), objects, poset, index })
}

/// The functor over admissible partitions with product fibers and
/// transport by restriction to finer blocks.
pub fn build_partition_functor(omega: &GraphObject) -> Result<PartitionFunctor> {
    if omega.n() < 2 {
        return Err(Error::Precondition("label bound below 2".into()));
    }
    let partitions = PartitionSet::for_omega(omega)?;
    let base = partitions.poset();
    let mut cache: HashMap<Vec<usize>, Rc<Factor>> = HashMap::new();
    let mut factors = Vec::new();
    let mut fibers = Vec::new();
    let mut tuples = Vec::new();
    for v in partitions.elements() {
        let mut fs = Vec::new();
        for block in v.blocks() {
            let f = match cache.get(&block) {
                Some(f) => f.clone(),
                None => {
                    let f = Rc::new(factor(omega, &block)?);
                    cache.insert(block, f.clone());
                    f
                }
            };
            fs.push(f);
        }
        let posets: Vec<Poset> = fs.iter().map(|f| f.poset.clone()).collect();
        let (fiber, ts) = Poset::product(&posets);
        fibers.push(fiber);
        tuples.push(ts);
        factors.push(fs);
    }
    let tuple_index: Vec<HashMap<&[usize], usize>> =
        tuples.iter().map(|ts| ts.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect()).collect();
    let e = partitions.elements();
    let mut transport = BTreeMap::new();
    for a in 0..e.len() {
        for b in 0..e.len() {
            if !base.leq(a, b) {
                continue;
            }
            let outer = e[b].alpha();
            let mut map = Vec::with_capacity(tuples[b].len());
            for t in &tuples[b] {
                let mut image = Vec::with_capacity(factors[a].len());
                for f in &factors[a] {
                    let j = outer[f.block[0]] as usize - 1;
                    let big = &factors[b][j];
                    let positions: Vec<usize> =
                        f.block.iter().map(|x| big.block.iter().position(|y| y == x).unwrap()).collect();
                    let mu = restrict(&big.objects[t[j]], &positions)?;
                    let i = *f.index.get(&mu).ok_or_else(|| Error::Integrity("restriction leaves the fiber".into()))?;
                    image.push(i);
                }
                map.push(tuple_index[a][image.as_slice()]);
            }
            transport.insert((a, b), map);
        }
    }
    let functor = PosetFunctor::new(base, fibers, transport)?;
    Ok(PartitionFunctor { partitions, functor, factors, tuples })
}

impl PartitionFunctor {
    /// `μ1 □1 … □1 μp` on the ground set of the context.
    pub fn assemble(&self, a: usize, x: usize) -> Result<GraphObject> {
        let v = &self.partitions.elements()[a];
        let t = &self.tuples[a][x];
        let alpha = v.alpha();
        let mut local = vec![0usize; v.k()];
        for f in &self.factors[a] {
            for (i, &y) in f.block.iter().enumerate() {
                local[y] = i;
            }
        }
        let omega = self.partitions.context().omega();
        GraphObject::from_fn(omega.n(), v.k(), |x, y| {
            let (bx, by) = (alpha[x] as usize, alpha[y] as usize);
            if bx == by {
                let mu = &self.factors[a][bx - 1].objects[t[bx - 1]];
                (mu.label(local[x], local[y]), mu.points(local[x], local[y]))
            } else {
                (1, bx < by)
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsomorphismReport {
    pub base_size: usize,
    pub fiber_sizes: Vec<usize>,
    pub total: usize,
}

/// Objects of `mdown` below `omega`, with their order.
pub fn over_objects(omega: &GraphObject, mdown: &[GraphObject]) -> Result<(Poset, Vec<GraphObject>)> {
    let objs: Vec<GraphObject> = mdown.iter().filter(|mu| family_leq(mu, omega)).cloned().collect();
    let p = Poset::from_leq(objs.len(), |a, b| family_leq(&objs[a], &objs[b]))?;
    Ok((p, objs))
}

/// Checks that assembling blocks is an order isomorphism from the
/// Grothendieck construction onto the over-poset of `omega` in `mdown`.
pub fn verify_grothendieck_prop(omega: &GraphObject, mdown: &[GraphObject]) -> Result<IsomorphismReport> {
    let pf = build_partition_functor(omega)?;
    let (g, elems) = pf.functor.grothendieck()?;
    let (over, objs) = over_objects(omega, mdown)?;
    let index: HashMap<&GraphObject, usize> = objs.iter().enumerate().map(|(i, o)| (o, i)).collect();
    let mut map = Vec::with_capacity(elems.len());
    for &(a, x) in &elems {
        let mu = pf.assemble(a, x)?;
        match index.get(&mu) {
            Some(&i) => map.push(i),
            None => return Err(Error::Falsification(format!("assembled object {mu:?} is not below omega"))),
        }
    }
    if !is_isomorphism(&g, &over, &map) {
        return Err(Error::Falsification(format!(
            "assembly is not an order isomorphism ({} pairs against {} objects)",
            g.len(),
            over.len()
        )));
    }
    Ok(IsomorphismReport {
        base_size: pf.partitions.len(),
        fiber_sizes: (0..pf.partitions.len()).map(|a| pf.functor.fiber(a).len()).collect(),
        total: g.len(),
    })
}

/// Label-bound-two shadow: labels 1 kept, the rest become 2, directed by
/// the index-least topological extension of the label-1 arcs.
pub fn omega_prime(omega: &GraphObject) -> Result<GraphObject> {
    let k = omega.k();
    let arcs: Vec<(usize, usize)> = omega.arcs_with_label(1).collect();
    if let Some(c) = find_cycle(k, arcs.iter().copied()) {
        return Err(Error::Integrity(format!("label-1 arcs contain the cycle {c:?}")));
    }
    let rank = topo_ranks(k, &arcs).expect("acyclic arcs sort");
    GraphObject::from_fn(2, k, |x, y| (if omega.label(x, y) == 1 { 1 } else { 2 }, rank[x] < rank[y]))
}

/// Checks that sending each partition to its bound-two object is an order
/// isomorphism onto the over-poset of the shadow context.
pub fn verify_omega_prime(omega: &GraphObject, mdown2: &[GraphObject]) -> Result<usize> {
    let wp = omega_prime(omega)?;
    let set = PartitionSet::for_omega(omega)?;
    let ctx = OmegaContext::new(&wp)?;
    let (over, objs) = over_objects(&wp, mdown2)?;
    let index: HashMap<&GraphObject, usize> = objs.iter().enumerate().map(|(i, o)| (o, i)).collect();
    let map: Vec<usize> = set
        .elements()
        .iter()
        .map(|v| {
            let mu = ctx.to_object(v)?;
            index.get(&mu).copied().ok_or_else(|| Error::Falsification(format!("{v} has no image below the shadow")))
        })
        .collect::<Result<_>>()?;
    if !is_isomorphism(&set.poset(), &over, &map) {
        return Err(Error::Falsification("identity on partitions is not an order isomorphism".into()));
    }
    Ok(set.len())
}

/// Contractibility of the over-poset of `omega` from its pieces: the base
/// collapses onto its least element, and each block factor is
/// contractible by the same argument one label bound lower.
pub fn structural_contractibility(omega: &GraphObject) -> Result<bool> {
    if omega.n() <= 1 {
        // the over-poset has omega itself as maximum
        return Ok(true);
    }
    let set = PartitionSet::for_omega(omega)?;
    if collapse_driver(&set, DriverOptions::default()).is_err() {
        return Ok(false);
    }
    let mut blocks: Vec<Vec<usize>> = set.elements().iter().flat_map(OrderedPartition::blocks).collect();
    blocks.sort();
    blocks.dedup();
    for block in blocks {
        let local = restrict(omega, &block)?;
        let lowered = if block.len() >= 2 { local.shift_labels(-1, omega.n() - 1)? } else { GraphObject::trivial(omega.n() - 1, 1) };
        if !structural_contractibility(&lowered)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Direct verdict for the over-poset of `omega` in `mdown`.
pub fn direct_contractibility(omega: &GraphObject, mdown: &[GraphObject]) -> Result<Verdict> {
    let (p, _) = over_objects(omega, mdown)?;
    Ok(poset_contractibility(&p, Caps::default()).verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::poset_isomorphic;

    fn identity_transport(base: &Poset, sizes: &[usize]) -> BTreeMap<(usize, usize), Vec<usize>> {
        let mut t = BTreeMap::new();
        for a in 0..base.len() {
            for b in 0..base.len() {
                if base.leq(a, b) {
                    t.insert((a, b), (0..sizes[b]).collect());
                }
            }
        }
        t
    }

    #[test]
    fn point_base_and_point_fibers() {
        let fiber = Poset::from_leq(3, |a, b| a == b || a == 0).unwrap();
        let f = PosetFunctor::new(Poset::chain(1), vec![fiber.clone()], identity_transport(&Poset::chain(1), &[3])).unwrap();
        let (g, _) = f.grothendieck().unwrap();
        assert!(poset_isomorphic(&g, &fiber, None).is_some());
        let base = Poset::from_leq(3, |a, b| a == b || b == 2).unwrap();
        let f = PosetFunctor::new(base.clone(), vec![Poset::chain(1); 3], identity_transport(&base, &[1, 1, 1])).unwrap();
        let (g, _) = f.grothendieck().unwrap();
        assert!(poset_isomorphic(&g, &base, None).is_some());
    }

    #[test]
    fn chain_over_chain_is_grid() {
        let base = Poset::chain(2);
        let f = PosetFunctor::new(base.clone(), vec![Poset::chain(2); 2], identity_transport(&base, &[2, 2])).unwrap();
        let (g, elems) = f.grothendieck().unwrap();
        let grid = Poset::from_leq(4, |a, b| a / 2 <= b / 2 && a % 2 <= b % 2).unwrap();
        let map: Vec<usize> = elems.iter().map(|&(a, x)| 2 * a + x).collect();
        assert!(is_isomorphism(&g, &grid, &map));
    }

    #[test]
    fn broken_composition_is_rejected() {
        let base = Poset::chain(3);
        let mut t = identity_transport(&base, &[2, 2, 2]);
        t.insert((0, 2), vec![1, 0]);
        assert!(PosetFunctor::new(base, vec![Poset::antichain(2); 3], t).is_err());
    }

    #[test]
    fn bound_two_fibers_are_points() {
        let omega = GraphObject::chain(2, 3, 2);
        let pf = build_partition_functor(&omega).unwrap();
        assert!((0..pf.partitions.len()).all(|a| pf.functor.fiber(a).len() == 1));
        assert_eq!(pf.partitions.len(), 13);
    }

    #[test]
    fn relabelling_is_an_order_isomorphism() {
        let high = mdown_from_two(3, 3).unwrap();
        let mut from_interval = enumerate_family(FamilyTag::MInterval(2), 3, 3, DEFAULT_MAX_BITS).unwrap();
        from_interval.retain(|mu| crate::operads::in_family(mu, FamilyTag::MDown));
        let mut sorted = high.clone();
        sorted.sort_by_key(|m| m.key());
        assert_eq!(sorted, from_interval);
        let low = enumerate_family(FamilyTag::MDown, 2, 3, DEFAULT_MAX_BITS).unwrap();
        for a in 0..low.len() {
            for b in 0..low.len() {
                assert_eq!(family_leq(&low[a], &low[b]), family_leq(&high[a], &high[b]));
            }
        }
    }

    #[test]
    fn shadow_without_one_labels() {
        let omega = GraphObject::from_fn(3, 3, |x, y| (3, (x + y) % 2 == 0)).unwrap();
        let wp = omega_prime(&omega).unwrap();
        assert_eq!(wp, GraphObject::chain(2, 3, 2));
    }
}
