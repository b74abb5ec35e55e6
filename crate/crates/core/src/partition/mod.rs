//! Ordered partitions constrained by the label-1 arcs of a graph object,
//! with the crossing relation, the pointwise order and the collapse driver
//! for the complex of pairwise crossing-free partitions.

mod driver;

pub use driver::{collapse_driver, DriverOptions, DriverStep, DriverTrace, Falsification};

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::bitset::BitSet;
use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::operads::GraphObject;
use crate::poset::Poset;

/// An ordered partition of `0..k`, stored as its block-index word.
///
/// `alpha[x]` is the 1-based block of `x`; the word is surjective onto
/// `1..=p`. Ordering compares words lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedPartition {
    alpha: Vec<u8>,
}

impl OrderedPartition {
    pub fn from_alpha(alpha: Vec<u8>) -> Result<Self> {
        let p = alpha.iter().copied().max().unwrap_or(0) as usize;
        let mut seen = vec![false; p + 1];
        for &a in &alpha {
            if a == 0 {
                return Err(Error::Precondition("block indices start at 1".into()));
            }
            seen[a as usize] = true;
        }
        if seen[1..].iter().any(|s| !s) {
            return Err(Error::Precondition(format!("block word {alpha:?} is not surjective")));
        }
        Ok(OrderedPartition { alpha })
    }

    pub fn from_blocks(k: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut alpha = vec![0u8; k];
        for (i, b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(Error::Precondition(format!("block {} is empty", i + 1)));
            }
            for &x in b {
                if x >= k || alpha[x] != 0 {
                    return Err(Error::Precondition(format!("element {} repeated or out of range", x + 1)));
                }
                alpha[x] = (i + 1) as u8;
            }
        }
        if alpha.contains(&0) {
            return Err(Error::Precondition("blocks do not cover the ground set".into()));
        }
        Ok(OrderedPartition { alpha })
    }

    /// The one-block partition.
    pub fn single(k: usize) -> Self {
        OrderedPartition { alpha: vec![1; k] }
    }

    pub fn k(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[u8] {
        &self.alpha
    }

    pub fn block_count(&self) -> usize {
        self.alpha.iter().copied().max().unwrap_or(0) as usize
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.block_count()];
        for (x, &a) in self.alpha.iter().enumerate() {
            out[a as usize - 1].push(x);
        }
        out
    }

    fn check_ground(&self, other: &Self) {
        assert_eq!(self.k(), other.k(), "ordered partitions of different ground sets");
    }

    /// Morphism `self -> other` in the refinement order: every block lies
    /// in a block of `other`, and block order is kept.
    ///
    /// # Panics
    /// On ground-set mismatch, as do the other binary operations.
    pub fn refines(&self, other: &Self) -> bool {
        self.check_ground(other);
        let (a, b) = (&self.alpha, &other.alpha);
        (0..a.len()).all(|x| (0..a.len()).all(|y| a[x] > a[y] || b[x] <= b[y]))
    }

    /// Crossing-free relation, via block words.
    pub fn cap(&self, other: &Self) -> bool {
        self.check_ground(other);
        let (a, b) = (&self.alpha, &other.alpha);
        (0..a.len()).all(|x| (0..a.len()).all(|y| a[x] >= a[y] || b[x] <= b[y]))
    }

    /// Crossing-free relation, via blocks: for `i1 < i2` and `j1 < j2`,
    /// `S_i1 ∩ T_j2` or `S_i2 ∩ T_j1` is empty.
    pub fn cap_blocks(&self, other: &Self) -> bool {
        self.check_ground(other);
        let s: Vec<BitSet> = self.blocks().iter().map(|b| BitSet::from_indices(self.k(), b.iter().copied())).collect();
        let t: Vec<BitSet> = other.blocks().iter().map(|b| BitSet::from_indices(self.k(), b.iter().copied())).collect();
        for i1 in 0..s.len() {
            for i2 in i1 + 1..s.len() {
                for j1 in 0..t.len() {
                    for j2 in j1 + 1..t.len() {
                        if s[i1].intersects(&t[j2]) && s[i2].intersects(&t[j1]) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// The nonempty block intersections in product order, when crossing-free.
    pub fn inf_original(&self, other: &Self) -> Option<Self> {
        if !self.cap(other) {
            return None;
        }
        let mut pairs: Vec<(u8, u8)> = self.alpha.iter().zip(&other.alpha).map(|(&a, &b)| (a, b)).collect();
        pairs.sort_unstable();
        pairs.dedup();
        let alpha = self
            .alpha
            .iter()
            .zip(&other.alpha)
            .map(|(&a, &b)| (pairs.binary_search(&(a, b)).unwrap() + 1) as u8)
            .collect();
        Some(OrderedPartition { alpha })
    }

    /// Pointwise order on block words.
    pub fn preceq(&self, other: &Self) -> bool {
        self.check_ground(other);
        self.alpha.iter().zip(&other.alpha).all(|(a, b)| a <= b)
    }

    pub fn strictly_precedes(&self, other: &Self) -> bool {
        self != other && self.preceq(other)
    }

    /// Pointwise minimum, compressed onto `1..=r` in an order-preserving way.
    pub fn wedge(&self, other: &Self) -> Self {
        self.check_ground(other);
        let m: Vec<u8> = self.alpha.iter().zip(&other.alpha).map(|(&a, &b)| a.min(b)).collect();
        compress(m)
    }

    /// The partition built from `u ≺ self` by the interpolation construction,
    /// using the least admissible block index.
    pub fn tilde(&self, u: &Self) -> Result<Self> {
        let v = self;
        if !u.strictly_precedes(v) {
            return Err(Error::Precondition(format!("{u} does not strictly precede {v}")));
        }
        let k = v.k();
        let r = u.blocks();
        let s = v.blocks();
        let block = |blocks: &[Vec<usize>], i: usize| -> BitSet {
            BitSet::from_indices(k, blocks.get(i).into_iter().flatten().copied())
        };
        let j = (0..s.len())
            .find(|&j| !block(&s, j).is_subset(&block(&r, j)))
            .ok_or_else(|| Error::Integrity(format!("no index separates {u} from {v}")))?;
        if j == 0 {
            return Err(Error::Integrity(format!("first block of {v} escapes the first block of {u}")));
        }
        let mut earlier = BitSet::new(k);
        for i in 0..j {
            earlier.union_with(&block(&r, i));
        }
        let sj = block(&s, j);
        let mut merged = block(&s, j - 1);
        let mut moved = sj.clone();
        moved.intersect_with(&earlier);
        merged.union_with(&moved);
        let mut kept = sj;
        kept.intersect_with(&block(&r, j));
        let mut out: Vec<Vec<usize>> = s[..j - 1].to_vec();
        out.push(merged.iter().collect());
        if !kept.is_empty() {
            out.push(kept.iter().collect());
        }
        out.extend(s[j + 1..].iter().cloned());
        Self::from_blocks(k, &out)
    }
}

fn compress(m: Vec<u8>) -> OrderedPartition {
    let mut vals = m.clone();
    vals.sort_unstable();
    vals.dedup();
    let alpha = m.iter().map(|x| (vals.binary_search(x).unwrap() + 1) as u8).collect();
    OrderedPartition { alpha }
}

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| format!("{{{}}}", b.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for OrderedPartition {
    type Err = Error;

    /// Parses `({1},{2},{3,4})` with 1-based elements.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad ordered partition {s:?}"));
        let inner = s.trim().strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
        let mut blocks = Vec::new();
        for piece in inner.split('}') {
            let piece = piece.trim().trim_start_matches(',').trim();
            if piece.is_empty() {
                continue;
            }
            let body = piece.strip_prefix('{').ok_or_else(bad)?;
            let block: Vec<usize> = body
                .split(',')
                .map(|t| t.trim().parse::<usize>().ok().filter(|&x| x >= 1).map(|x| x - 1))
                .collect::<Option<_>>()
                .ok_or_else(bad)?;
            blocks.push(block);
        }
        let k = blocks.iter().map(Vec::len).sum();
        Self::from_blocks(k, &blocks)
    }
}

/// A graph object together with its label-1 arcs.
#[derive(Clone, Debug)]
pub struct OmegaContext {
    omega: GraphObject,
    one_edges: Vec<(usize, usize)>,
}

impl OmegaContext {
    pub fn new(omega: &GraphObject) -> Result<Self> {
        let one_edges: Vec<(usize, usize)> = omega.arcs_with_label(1).collect();
        if let Some(c) = crate::operads::find_cycle(omega.k(), one_edges.iter().copied()) {
            return Err(Error::Integrity(format!("label-1 arcs contain the cycle {c:?}")));
        }
        Ok(OmegaContext { omega: omega.clone(), one_edges })
    }

    pub fn omega(&self) -> &GraphObject {
        &self.omega
    }

    pub fn k(&self) -> usize {
        self.omega.k()
    }

    pub fn one_edges(&self) -> &[(usize, usize)] {
        &self.one_edges
    }

    /// Every label-1 arc goes from an earlier block to a later one.
    pub fn admits(&self, v: &OrderedPartition) -> bool {
        v.k() == self.k() && self.one_edges.iter().all(|&(x, y)| v.alpha[x] < v.alpha[y])
    }

    /// All admissible ordered partitions, sorted by block word.
    pub fn partitions(&self) -> Vec<OrderedPartition> {
        let k = self.k();
        let mut out = Vec::new();
        let mut word = vec![1u8; k];
        if k == 0 {
            return vec![OrderedPartition { alpha: Vec::new() }];
        }
        loop {
            if let Ok(v) = OrderedPartition::from_alpha(word.clone()) {
                if self.admits(&v) {
                    out.push(v);
                }
            }
            // next word in lexicographic order over 1..=k
            let mut i = k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if (word[i] as usize) < k {
                    word[i] += 1;
                    for w in &mut word[i + 1..] {
                        *w = 1;
                    }
                    break;
                }
            }
        }
    }

    /// The graph object of a partition: label 1 across blocks, directed
    /// forward, and label 2 inside blocks with the direction of the context.
    pub fn to_object(&self, v: &OrderedPartition) -> Result<GraphObject> {
        GraphObject::from_fn(2, self.k(), |x, y| {
            let (a, b) = (v.alpha[x], v.alpha[y]);
            if a == b {
                (2, self.omega.points(x, y))
            } else {
                (1, a < b)
            }
        })
    }
}

/// The admissible partitions of a context with the derived relations.
pub struct PartitionSet {
    ctx: OmegaContext,
    elements: Vec<OrderedPartition>,
    index: HashMap<OrderedPartition, usize>,
}

impl PartitionSet {
    pub fn new(ctx: OmegaContext) -> Self {
        let elements = ctx.partitions();
        let index = elements.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        PartitionSet { ctx, elements, index }
    }

    pub fn for_omega(omega: &GraphObject) -> Result<Self> {
        Ok(Self::new(OmegaContext::new(omega)?))
    }

    pub fn context(&self) -> &OmegaContext {
        &self.ctx
    }

    pub fn elements(&self) -> &[OrderedPartition] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, v: &OrderedPartition) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// The refinement order.
    pub fn poset(&self) -> Poset {
        let e = &self.elements;
        Poset::from_leq(e.len(), |a, b| e[a].refines(&e[b])).expect("refinement is a partial order")
    }

    /// The pointwise order.
    pub fn preceq_poset(&self) -> Poset {
        let e = &self.elements;
        Poset::from_leq(e.len(), |a, b| e[a].preceq(&e[b])).expect("pointwise order is a partial order")
    }

    /// `cap_graph()[a]` holds every `b != a` crossing-free with `a`.
    pub fn cap_graph(&self) -> Vec<BitSet> {
        let e = &self.elements;
        (0..e.len())
            .map(|a| BitSet::from_indices(e.len(), (0..e.len()).filter(|&b| b != a && e[a].cap(&e[b]))))
            .collect()
    }

    /// Flag complex of the crossing-free relation.
    pub fn complex(&self) -> SimplicialComplex {
        SimplicialComplex::flag(&self.cap_graph())
    }

    /// Least element for the pointwise order, by iterated wedge, verified.
    pub fn least_element(&self) -> Result<usize> {
        let (first, rest) = self.elements.split_first().ok_or_else(|| Error::Precondition("no admissible partitions".into()))?;
        let w = rest.iter().fold(first.clone(), |acc, v| acc.wedge(v));
        let i = self.index_of(&w).ok_or_else(|| Error::Integrity(format!("iterated wedge {w} is not admissible")))?;
        if let Some(v) = self.elements.iter().find(|v| !w.preceq(v)) {
            return Err(Error::Integrity(format!("{w} does not precede {v}")));
        }
        Ok(i)
    }

    /// Least vertex of `simplex` for the pointwise order, if any.
    pub fn least_vertex(&self, simplex: &[u32]) -> Option<u32> {
        let (&first, rest) = simplex.split_first()?;
        let mut w = self.elements[first as usize].clone();
        for &v in rest {
            w = w.wedge(&self.elements[v as usize]);
        }
        let i = self.index_of(&w)? as u32;
        (simplex.contains(&i) && simplex.iter().all(|&v| w.preceq(&self.elements[v as usize]))).then_some(i)
    }

    /// Checks the three interpolation properties of `tv` for `u ≺ v`
    /// against every admissible `w`.
    pub fn verify_tilde(&self, u: &OrderedPartition, v: &OrderedPartition, tv: &OrderedPartition) -> Result<()> {
        let fail = |what: &str| Err(Error::Integrity(format!("interpolant {tv} of {u} < {v}: {what}")));
        if !self.ctx.admits(tv) {
            return fail("not admissible");
        }
        if !tv.strictly_precedes(v) {
            return fail("does not strictly precede v");
        }
        if !v.cap(tv) {
            return fail("crosses v");
        }
        if let Some(w) = self.elements.iter().find(|w| u.cap(w) && v.cap(w) && !tv.cap(w)) {
            return fail(&format!("crosses {w}, which crosses neither u nor v"));
        }
        Ok(())
    }

    /// A simplex of the complex with no least vertex, smallest size first.
    pub fn simplex_without_least_vertex(&self, max_size: usize) -> Option<Simplex> {
        let c = self.complex();
        let mut seen = std::collections::HashSet::new();
        for size in 2..=max_size {
            for f in c.facets() {
                if f.len() < size {
                    continue;
                }
                let mut found = None;
                for_each_subset(f, size, &mut |s| {
                    if found.is_none() && seen.insert(s.to_vec()) && self.least_vertex(s).is_none() {
                        found = Some(s.to_vec());
                    }
                });
                if found.is_some() {
                    return found;
                }
            }
        }
        None
    }

    /// A pair `v ≼ w` without a refinement `w -> v`.
    pub fn preceq_without_morphism(&self) -> Option<(OrderedPartition, OrderedPartition)> {
        let e = &self.elements;
        e.iter()
            .flat_map(|v| e.iter().map(move |w| (v, w)))
            .find(|(v, w)| v.preceq(w) && !w.refines(v))
            .map(|(v, w)| (v.clone(), w.clone()))
    }
}

fn for_each_subset(items: &[u32], size: usize, f: &mut impl FnMut(&[u32])) {
    fn go(items: &[u32], size: usize, start: usize, cur: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
        if cur.len() == size {
            f(cur);
            return;
        }
        for i in start..items.len() {
            if items.len() - i < size - cur.len() {
                break;
            }
            cur.push(items[i]);
            go(items, size, i + 1, cur, f);
            cur.pop();
        }
    }
    go(items, size, 0, &mut Vec::new(), f);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operads::syntax::parse_expr;

    fn op(s: &str) -> OrderedPartition {
        s.parse().unwrap()
    }

    #[test]
    fn representations_agree() {
        let v = op("({2},{1,4},{3})");
        assert_eq!(v.alpha(), &[2, 1, 3, 2]);
        assert_eq!(v.blocks(), vec![vec![1], vec![0, 3], vec![2]]);
        assert_eq!(v.to_string(), "({2},{1,4},{3})");
        assert!(OrderedPartition::from_alpha(vec![1, 3]).is_err());
    }

    #[test]
    fn small_contexts() {
        let p = PartitionSet::for_omega(&parse_expr("1[]1 2", 2).unwrap()).unwrap();
        assert_eq!(p.elements(), &[op("({1},{2})")]);
        let p = PartitionSet::for_omega(&parse_expr("1[]2 2", 2).unwrap()).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.elements()[p.least_element().unwrap()], op("({1,2})"));
        let c = p.complex();
        assert_eq!(c.facets().len(), 2);
    }

    #[test]
    fn crossing_examples() {
        let v = op("({1},{2},{3,4})");
        let w = op("({2},{1},{3,4})");
        let m = op("({1,2},{3,4})");
        assert!(!v.cap(&w) && !v.cap_blocks(&w));
        assert!(v.cap(&m) && w.cap(&m));
        assert_eq!(v.wedge(&w), m);
        assert!(!op("({1},{2})").cap(&op("({2},{1})")));
        assert_eq!(op("({1,2})").inf_original(&op("({1},{2})")), Some(op("({1},{2})")));
    }

    #[test]
    fn wedge_lower_bounds_from_example() {
        let v = op("({1},{2},{3,4})");
        let w = op("({2},{1},{3,4})");
        let all = OmegaContext::new(&GraphObject::chain(2, 4, 2)).unwrap().partitions();
        let lower: Vec<&OrderedPartition> = all.iter().filter(|x| x.preceq(&v) && x.preceq(&w)).collect();
        let maximal: Vec<String> = lower
            .iter()
            .filter(|x| !lower.iter().any(|y| x.strictly_precedes(y)))
            .map(|x| x.to_string())
            .collect();
        assert_eq!(maximal, vec!["({1,2},{3},{4})", "({1,2},{4},{3})"]);
    }

    #[test]
    fn tilde_examples() {
        assert_eq!(op("({1},{2})").tilde(&op("({1,2})")).unwrap(), op("({1,2})"));
        assert_eq!(op("({1},{2},{3,4})").tilde(&op("({1,2},{3,4})")).unwrap(), op("({1,2},{3,4})"));
        assert!(op("({1,2})").tilde(&op("({1},{2})")).is_err());
    }
}
