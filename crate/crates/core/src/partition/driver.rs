//! Deterministic collapse of the crossing-free complex onto the least
//! admissible partition, one preorder-maximal facet at a time.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::PartitionSet;
use crate::bitset::BitSet;
use crate::collapse::{CollapseStep, CollapseTrace};
use crate::complex::{Simplex, SimplicialComplex};
use crate::operads::syntax::format_raw;

#[derive(Clone, Copy, Debug, Default)]
pub struct DriverOptions {
    /// Re-validate the whole good-subcomplex structure after every step.
    pub paranoid: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DriverStep {
    pub index: usize,
    /// The collapsed facet, as sorted vertex indices.
    pub simplex: Vec<u32>,
    pub least: u32,
    /// The free face removed with the facet.
    pub face: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct DriverTrace {
    pub omega: String,
    pub vertex_count: usize,
    pub simplex_count: usize,
    pub steps: Vec<DriverStep>,
    pub least_element: u32,
    pub terminal: SimplicialComplex,
    pub initial: SimplicialComplex,
}

impl DriverTrace {
    /// The same steps as generic elementary collapses.
    pub fn collapse_trace(&self) -> CollapseTrace {
        CollapseTrace {
            steps: self
                .steps
                .iter()
                .map(|s| CollapseStep { index: s.index, face: s.face.clone(), cofacet: s.simplex.clone() })
                .collect(),
            terminal: self.terminal.clone(),
        }
    }

    /// Header line plus one line per step, vertices written as partitions.
    pub fn to_text(&self, set: &PartitionSet) -> String {
        let name = |v: &u32| set.elements()[*v as usize].to_string();
        let names = |s: &[u32]| s.iter().map(name).collect::<Vec<_>>().join(" ");
        let mut out = format!(
            "omega {} vertices {} simplices {} least {}\n",
            self.omega,
            self.vertex_count,
            self.simplex_count,
            name(&self.least_element)
        );
        for s in &self.steps {
            out.push_str(&format!("step {} least {} facet {} | face {}\n", s.index, name(&s.least), names(&s.simplex), names(&s.face)));
        }
        out
    }
}

/// A violated invariant, with the complex at the point of failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Falsification {
    pub omega: String,
    pub step: usize,
    pub reason: String,
    pub facets: Vec<Vec<String>>,
}

impl fmt::Display for Falsification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FALSIFICATION for omega {} at step {}: {}", self.omega, self.step, self.reason)?;
        for facet in &self.facets {
            writeln!(f, "  facet {}", facet.join(" "))?;
        }
        Ok(())
    }
}

impl std::error::Error for Falsification {}

struct Facet {
    verts: Simplex,
    bits: BitSet,
    least: u32,
}

struct Driver<'a> {
    set: &'a PartitionSet,
    facets: Vec<Option<Facet>>,
    by_vertex: Vec<BTreeSet<usize>>,
    by_least: BTreeMap<u32, BTreeSet<(Simplex, usize)>>,
    above: Vec<BitSet>,
    below: Vec<BitSet>,
    cap: Vec<BitSet>,
    step: usize,
}

impl<'a> Driver<'a> {
    fn fail(&self, reason: impl Into<String>) -> Falsification {
        let e = self.set.elements();
        let facets = self
            .facets
            .iter()
            .flatten()
            .map(|f| f.verts.iter().map(|&v| e[v as usize].to_string()).collect())
            .collect();
        Falsification { omega: format_raw(self.set.context().omega()), step: self.step, reason: reason.into(), facets }
    }

    fn add(&mut self, verts: Simplex, least: u32) {
        let id = self.facets.len();
        for &v in &verts {
            self.by_vertex[v as usize].insert(id);
        }
        self.by_least.entry(least).or_default().insert((verts.clone(), id));
        let bits = BitSet::from_indices(self.set.len(), verts.iter().map(|&v| v as usize));
        self.facets.push(Some(Facet { verts, bits, least }));
    }

    fn remove(&mut self, id: usize) -> Facet {
        let f = self.facets[id].take().unwrap();
        for &v in &f.verts {
            self.by_vertex[v as usize].remove(&id);
        }
        let group = self.by_least.get_mut(&f.least).unwrap();
        group.remove(&(f.verts.clone(), id));
        if group.is_empty() {
            self.by_least.remove(&f.least);
        }
        f
    }

    /// Facets other than `skip` containing `s`.
    fn containing(&self, s: &[u32], skip: Option<usize>) -> Vec<usize> {
        let Some((&first, rest)) = s.split_first() else { return Vec::new() };
        self.by_vertex[first as usize]
            .iter()
            .copied()
            .filter(|&id| Some(id) != skip && rest.iter().all(|&v| self.by_vertex[v as usize].contains(&id)))
            .collect()
    }

    fn contains_simplex(&self, s: &BitSet) -> bool {
        let Some(first) = s.first() else { return false };
        self.by_vertex[first].iter().any(|&id| s.is_subset(&self.facets[id].as_ref().unwrap().bits))
    }

    /// Condition (b) for one simplex: every ≺-minimal crossing-free lower
    /// bound extends it to a simplex of the current complex.
    fn closure_holds(&self, s: &[u32]) -> std::result::Result<(), String> {
        let n = self.set.len();
        let mut cand = BitSet::from_indices(n, 0..n);
        for &v in s {
            cand.intersect_with(&self.below[v as usize]);
            cand.intersect_with(&self.cap[v as usize]);
        }
        for c in cand.iter() {
            if self.below[c].intersects(&cand) {
                continue;
            }
            let mut ext = BitSet::from_indices(n, s.iter().map(|&v| v as usize));
            ext.insert(c);
            if !self.contains_simplex(&ext) {
                let e = self.set.elements();
                return Err(format!(
                    "closure fails: adjoining {} to {{{}}}",
                    e[c],
                    s.iter().map(|&v| e[v as usize].to_string()).collect::<Vec<_>>().join(" ")
                ));
            }
        }
        Ok(())
    }

    fn validate_from_scratch(&self) -> std::result::Result<(), String> {
        let mut seen = BTreeSet::new();
        for f in self.facets.iter().flatten() {
            if self.set.least_vertex(&f.verts) != Some(f.least) {
                return Err(format!("facet {:?} has no least vertex matching the cache", f.verts));
            }
            let m = f.verts.len();
            for mask in 1u64..(1u64 << m) {
                let s: Simplex = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| f.verts[i]).collect();
                if seen.insert(s.clone()) {
                    self.closure_holds(&s)?;
                }
            }
        }
        Ok(())
    }

    /// The facet to collapse: least vertex ≼-maximal among all least
    /// vertices, at least two vertices, smallest vertex list.
    fn select(&self) -> Option<usize> {
        let leasts: Vec<u32> = self.by_least.keys().copied().collect();
        let lset = BitSet::from_indices(self.set.len(), leasts.iter().map(|&v| v as usize));
        leasts
            .iter()
            .filter(|&&v| !self.above[v as usize].intersects(&lset))
            .flat_map(|v| self.by_least[v].iter().find(|(s, _)| s.len() >= 2))
            .min()
            .map(|&(_, id)| id)
    }
}

/// Collapses the crossing-free complex of `set` onto its least element.
pub fn collapse_driver(set: &PartitionSet, opts: DriverOptions) -> std::result::Result<DriverTrace, Falsification> {
    let n = set.len();
    let e = set.elements();
    let rel = |f: &dyn Fn(usize, usize) -> bool| -> Vec<BitSet> {
        (0..n).map(|a| BitSet::from_indices(n, (0..n).filter(|&b| f(a, b)))).collect()
    };
    let mut d = Driver {
        set,
        facets: Vec::new(),
        by_vertex: vec![BTreeSet::new(); n],
        by_least: BTreeMap::new(),
        above: rel(&|a, b| e[a].strictly_precedes(&e[b])),
        below: rel(&|a, b| e[b].strictly_precedes(&e[a])),
        cap: rel(&|a, b| e[a].cap(&e[b])),
        step: 0,
    };
    let u0 = match set.least_element() {
        Ok(i) => i as u32,
        Err(err) => return Err(d.fail(err.to_string())),
    };
    let initial = set.complex();
    for f in initial.facets() {
        match set.least_vertex(f) {
            Some(l) => d.add(f.clone(), l),
            None => return Err(d.fail(format!("maximal simplex {f:?} has no least vertex"))),
        }
    }
    if opts.paranoid {
        d.validate_from_scratch().map_err(|r| d.fail(r))?;
    }
    let mut steps = Vec::new();
    while let Some(id) = d.select() {
        let (verts, v0) = {
            let f = d.facets[id].as_ref().unwrap();
            (f.verts.clone(), f.least)
        };
        let face: Simplex = verts.iter().copied().filter(|&v| v != v0).collect();
        if !d.containing(&face, Some(id)).is_empty() {
            return Err(d.fail(format!("face {face:?} of {verts:?} is not free")));
        }
        d.remove(id);
        for &w in &face {
            let rest: Simplex = verts.iter().copied().filter(|&v| v != w).collect();
            if !d.containing(&rest, None).is_empty() {
                continue;
            }
            if !rest.iter().all(|&v| e[v0 as usize].preceq(&e[v as usize])) {
                return Err(d.fail(format!("{v0} is not least in {rest:?}")));
            }
            d.add(rest, v0);
        }
        steps.push(DriverStep { index: d.step, simplex: verts, least: v0, face });
        d.step += 1;
        if opts.paranoid {
            d.validate_from_scratch().map_err(|r| d.fail(r))?;
        }
    }
    let remaining: Vec<&Facet> = d.facets.iter().flatten().collect();
    if remaining.len() != 1 || remaining[0].verts != [u0] {
        return Err(d.fail(format!("stopped without reaching the least element {}", e[u0 as usize])));
    }
    Ok(DriverTrace {
        omega: format_raw(set.context().omega()),
        vertex_count: n,
        simplex_count: 2 * steps.len() + 1,
        steps,
        least_element: u0,
        terminal: SimplicialComplex::from_simplices(n, [vec![u0]]).unwrap(),
        initial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operads::syntax::parse_expr;

    #[test]
    fn path_complex_in_two_steps() {
        let set = PartitionSet::for_omega(&parse_expr("1[]2 2", 2).unwrap()).unwrap();
        let t = collapse_driver(&set, DriverOptions { paranoid: true }).unwrap();
        assert_eq!(t.steps.len(), 2);
        assert_eq!(set.elements()[t.least_element as usize].to_string(), "({1,2})");
        t.collapse_trace().replay(&t.initial).unwrap();
    }

    #[test]
    fn singleton() {
        let set = PartitionSet::for_omega(&parse_expr("1[]1 2", 2).unwrap()).unwrap();
        let t = collapse_driver(&set, DriverOptions::default()).unwrap();
        assert!(t.steps.is_empty());
        assert_eq!(t.simplex_count, 1);
    }
}
