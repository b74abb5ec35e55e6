//! Finite posets stored as bitset rows of the order relation.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::operads::GraphObject;

/// Anything that can answer `a ≤ b` on indices `0..len()`.
pub trait Order {
    fn len(&self) -> usize;
    fn leq(&self, a: usize, b: usize) -> bool;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// The morphism order on a list of objects, evaluated on demand.
pub struct ObjectOrder<'a>(pub &'a [GraphObject]);

impl Order for ObjectOrder<'_> {
    fn len(&self) -> usize {
        self.0.len()
    }

    fn leq(&self, a: usize, b: usize) -> bool {
        crate::operads::family_leq(&self.0[a], &self.0[b])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    /// `up[a]` holds every `b` with `a ≤ b`.
    up: Vec<BitSet>,
    down: Vec<BitSet>,
}

impl Order for Poset {
    fn len(&self) -> usize {
        self.up.len()
    }

    fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }
}

impl Poset {
    /// Builds and validates the poset on `0..size` with the given relation.
    pub fn from_leq(size: usize, mut leq: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut up = vec![BitSet::new(size); size];
        for (a, row) in up.iter_mut().enumerate() {
            for b in 0..size {
                if leq(a, b) {
                    row.insert(b);
                }
            }
        }
        Self::from_rows(up)
    }

    pub fn from_order(order: &impl Order) -> Result<Self> {
        Self::from_leq(order.len(), |a, b| order.leq(a, b))
    }

    fn from_rows(up: Vec<BitSet>) -> Result<Self> {
        let size = up.len();
        let mut down = vec![BitSet::new(size); size];
        for (a, row) in up.iter().enumerate() {
            if !row.contains(a) {
                return Err(Error::NotAPoset(format!("{a} is not related to itself")));
            }
            for b in row.iter() {
                down[b].insert(a);
            }
        }
        for a in 0..size {
            for b in up[a].iter() {
                if b != a && up[b].contains(a) {
                    return Err(Error::NotAPoset(format!("{a} and {b} are mutually related")));
                }
                if !up[b].is_subset(&up[a]) {
                    return Err(Error::NotAPoset(format!("transitivity fails through {a} <= {b}")));
                }
            }
        }
        Ok(Poset { up, down })
    }

    pub fn chain(m: usize) -> Self {
        Self::from_leq(m, |a, b| a <= b).unwrap()
    }

    pub fn antichain(m: usize) -> Self {
        Self::from_leq(m, |a, b| a == b).unwrap()
    }

    pub fn up_set(&self, a: usize) -> &BitSet {
        &self.up[a]
    }

    pub fn down_set(&self, a: usize) -> &BitSet {
        &self.down[a]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.up[a].contains(b)
    }

    pub fn opposite(&self) -> Poset {
        Poset { up: self.down.clone(), down: self.up.clone() }
    }

    pub fn minimum(&self) -> Option<usize> {
        (0..self.len()).find(|&a| self.up[a].count() == self.len())
    }

    pub fn maximum(&self) -> Option<usize> {
        (0..self.len()).find(|&a| self.down[a].count() == self.len())
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.down[a].count() == 1).collect()
    }

    /// `b` covers `a`: `a < b` with nothing strictly between.
    pub fn covers(&self, a: usize) -> Vec<usize> {
        let strict: Vec<usize> = self.up[a].iter().filter(|&b| b != a).collect();
        strict
            .iter()
            .copied()
            .filter(|&b| !strict.iter().any(|&c| c != b && self.up[c].contains(b)))
            .collect()
    }

    /// Induced subposet on `elements`, in the given order.
    pub fn induced(&self, elements: &[usize]) -> Poset {
        Self::from_leq(elements.len(), |i, j| self.leq(elements[i], elements[j])).expect("induced order is a poset")
    }

    /// Components of the comparability graph, as a component index per element.
    pub fn comparability_components(&self) -> Vec<usize> {
        let n = self.len();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            comp[s] = next;
            while let Some(a) = stack.pop() {
                for b in self.up[a].iter().chain(self.down[a].iter()) {
                    if comp[b] == usize::MAX {
                        comp[b] = next;
                        stack.push(b);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    /// Product order on tuples, enumerated with the last coordinate fastest.
    pub fn product(factors: &[Poset]) -> (Poset, Vec<Vec<usize>>) {
        let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
        for f in factors {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    (0..f.len()).map(move |x| {
                        let mut t = t.clone();
                        t.push(x);
                        t
                    })
                })
                .collect();
        }
        let p = Self::from_leq(tuples.len(), |a, b| {
            factors.iter().enumerate().all(|(i, f)| f.leq(tuples[a][i], tuples[b][i]))
        })
        .expect("product of posets is a poset");
        (p, tuples)
    }
}

/// `{a ∈ sub : b ≤ a}` as a poset, with the ambient index of each element.
pub fn under_poset(ambient: &impl Order, sub: &[usize], b: usize) -> Result<(Poset, Vec<usize>)> {
    if b >= ambient.len() {
        return Err(Error::Precondition(format!("element {b} not in ambient of size {}", ambient.len())));
    }
    let elems: Vec<usize> = sub.iter().copied().filter(|&a| ambient.leq(b, a)).collect();
    let p = Poset::from_leq(elems.len(), |i, j| ambient.leq(elems[i], elems[j]))?;
    Ok((p, elems))
}

/// `{a ∈ sub : a ≤ b}` as a poset, with the ambient index of each element.
pub fn over_poset(ambient: &impl Order, sub: &[usize], b: usize) -> Result<(Poset, Vec<usize>)> {
    if b >= ambient.len() {
        return Err(Error::Precondition(format!("element {b} not in ambient of size {}", ambient.len())));
    }
    let elems: Vec<usize> = sub.iter().copied().filter(|&a| ambient.leq(a, b)).collect();
    let p = Poset::from_leq(elems.len(), |i, j| ambient.leq(elems[i], elems[j]))?;
    Ok((p, elems))
}

/// Checks `map: p -> q` is an order isomorphism.
pub fn is_isomorphism(p: &Poset, q: &Poset, map: &[usize]) -> bool {
    if p.len() != q.len() || map.len() != p.len() {
        return false;
    }
    let mut hit = vec![false; q.len()];
    for &m in map {
        if m >= q.len() || std::mem::replace(&mut hit[m], true) {
            return false;
        }
    }
    (0..p.len()).all(|a| (0..p.len()).all(|b| p.leq(a, b) == q.leq(map[a], map[b])))
}

/// An order isomorphism `p -> q`, verifying `candidate` when given and
/// searching otherwise.
pub fn poset_isomorphic(p: &Poset, q: &Poset, candidate: Option<&[usize]>) -> Option<Vec<usize>> {
    if let Some(c) = candidate {
        return is_isomorphism(p, q, c).then(|| c.to_vec());
    }
    if p.len() != q.len() {
        return None;
    }
    let sig = |r: &Poset, a: usize| (r.down[a].count(), r.up[a].count(), r.covers(a).len());
    let sp: Vec<_> = (0..p.len()).map(|a| sig(p, a)).collect();
    let sq: Vec<_> = (0..q.len()).map(|a| sig(q, a)).collect();
    let mut a_sorted = sp.clone();
    let mut b_sorted = sq.clone();
    a_sorted.sort_unstable();
    b_sorted.sort_unstable();
    if a_sorted != b_sorted {
        return None;
    }
    // map the most constrained elements first
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by_key(|&a| (sq.iter().filter(|s| **s == sp[a]).count(), a));
    let mut map = vec![usize::MAX; p.len()];
    let mut used = vec![false; q.len()];
    fn go(
        depth: usize,
        order: &[usize],
        p: &Poset,
        q: &Poset,
        sp: &[(usize, usize, usize)],
        sq: &[(usize, usize, usize)],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let a = order[depth];
        for b in 0..q.len() {
            if used[b] || sp[a] != sq[b] {
                continue;
            }
            let ok = order[..depth]
                .iter()
                .all(|&c| p.leq(a, c) == q.leq(b, map[c]) && p.leq(c, a) == q.leq(map[c], b));
            if !ok {
                continue;
            }
            map[a] = b;
            used[b] = true;
            if go(depth + 1, order, p, q, sp, sq, map, used) {
                return true;
            }
            used[b] = false;
            map[a] = usize::MAX;
        }
        false
    }
    go(0, &order, p, q, &sp, &sq, &mut map, &mut used).then_some(map)
}
