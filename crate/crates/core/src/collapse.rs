//! Elementary simplicial collapses with recorded, replayable traces.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{is_subset, Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::sampling;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Lexicographically smallest free face at every step.
    MinimalKey,
    /// Uniformly random free face from a seeded stream.
    Seeded(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseStep {
    pub index: usize,
    pub face: Simplex,
    pub cofacet: Simplex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapseTrace {
    pub steps: Vec<CollapseStep>,
    pub terminal: SimplicialComplex,
}

impl CollapseTrace {
    pub fn collapsible_to_point(&self) -> bool {
        self.terminal.is_single_vertex()
    }

    /// Re-executes the steps on `input`, checking every step is a legal
    /// elementary collapse and that the recorded terminal is reached.
    pub fn replay(&self, input: &SimplicialComplex) -> Result<()> {
        let mut c = input.clone();
        for s in &self.steps {
            c.collapse(&s.face, &s.cofacet)
                .map_err(|e| Error::Integrity(format!("step {}: {e}", s.index)))?;
        }
        if c != self.terminal {
            return Err(Error::Integrity("replay does not reach the recorded terminal".into()));
        }
        Ok(())
    }
}

struct State {
    facets: Vec<Option<Simplex>>,
    ids: HashMap<Simplex, usize>,
    by_vertex: BTreeMap<u32, BTreeSet<usize>>,
    // free face -> its unique cofacet id
    free: BTreeMap<Simplex, usize>,
}

impl State {
    fn new(c: &SimplicialComplex) -> Self {
        let mut st = State { facets: Vec::new(), ids: HashMap::new(), by_vertex: BTreeMap::new(), free: BTreeMap::new() };
        for f in c.facets() {
            st.add_facet(f.clone());
        }
        let all: Vec<Simplex> = c.facets().iter().cloned().collect();
        for f in &all {
            for face in codim_one(f) {
                st.recheck(face);
            }
        }
        st
    }

    fn add_facet(&mut self, f: Simplex) {
        let id = self.facets.len();
        for &v in &f {
            self.by_vertex.entry(v).or_default().insert(id);
        }
        self.ids.insert(f.clone(), id);
        self.facets.push(Some(f));
    }

    fn remove_facet(&mut self, id: usize) -> Simplex {
        let f = self.facets[id].take().unwrap();
        for v in &f {
            let set = self.by_vertex.get_mut(v).unwrap();
            set.remove(&id);
            if set.is_empty() {
                self.by_vertex.remove(v);
            }
        }
        self.ids.remove(&f);
        f
    }

    fn containing(&self, s: &[u32]) -> Vec<usize> {
        let mut sets: Vec<&BTreeSet<usize>> = match s.iter().map(|v| self.by_vertex.get(v)).collect::<Option<Vec<_>>>() {
            Some(v) => v,
            None => return Vec::new(),
        };
        sets.sort_by_key(|x| x.len());
        sets[0].iter().copied().filter(|id| sets[1..].iter().all(|t| t.contains(id))).collect()
    }

    fn recheck(&mut self, face: Simplex) {
        if face.is_empty() {
            return;
        }
        let owners = self.containing(&face);
        if owners.len() == 1 && self.facets[owners[0]].as_ref().unwrap().len() == face.len() + 1 {
            self.free.insert(face, owners[0]);
        } else {
            self.free.remove(&face);
        }
    }

    fn collapse(&mut self, face: &Simplex) -> Simplex {
        let sid = self.free[face];
        let sigma = self.remove_facet(sid);
        // a face that becomes free is either a codimension-one face of sigma
        // or of a newly maximal face of sigma
        let mut touched: Vec<Simplex> = codim_one(&sigma).collect();
        for &w in face {
            let rest: Simplex = sigma.iter().copied().filter(|&v| v != w).collect();
            if rest.is_empty() || !self.containing(&rest).is_empty() {
                continue;
            }
            touched.extend(codim_one(&rest));
            self.add_facet(rest);
        }
        for f in touched {
            self.recheck(f);
        }
        sigma
    }

    fn into_complex(self, n_vertices: usize) -> SimplicialComplex {
        SimplicialComplex::from_simplices(n_vertices, self.facets.into_iter().flatten()).unwrap()
    }
}

fn codim_one(s: &[u32]) -> impl Iterator<Item = Simplex> + '_ {
    (0..s.len()).map(move |skip| s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect())
}

/// Collapses free faces until none is left.
pub fn greedy_collapse(c: &SimplicialComplex, strategy: Strategy) -> CollapseTrace {
    let mut st = State::new(c);
    let mut rng = match strategy {
        Strategy::Seeded(seed) => Some(sampling::rng(seed)),
        Strategy::MinimalKey => None,
    };
    let mut steps = Vec::new();
    while !st.free.is_empty() {
        let face = match rng.as_mut() {
            None => st.free.keys().next().unwrap().clone(),
            Some(r) => {
                let i = r.gen_range(0..st.free.len());
                st.free.keys().nth(i).unwrap().clone()
            }
        };
        let cofacet = st.collapse(&face);
        debug_assert!(is_subset(&face, &cofacet));
        steps.push(CollapseStep { index: steps.len(), face, cofacet });
    }
    CollapseTrace { steps, terminal: st.into_complex(c.n_vertices()) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::order_complex;
    use crate::homology::reduced_homology_default;
    use crate::poset::Poset;

    #[test]
    fn simplex_collapses() {
        for m in 1..7 {
            let c = SimplicialComplex::full_simplex(m);
            let t = greedy_collapse(&c, Strategy::MinimalKey);
            assert!(t.collapsible_to_point(), "m = {m}");
            t.replay(&c).unwrap();
            let t = greedy_collapse(&c, Strategy::Seeded(m as u64));
            assert!(t.collapsible_to_point());
            t.replay(&c).unwrap();
        }
    }

    #[test]
    fn boundary_is_stuck() {
        let c = SimplicialComplex::simplex_boundary(3);
        let t = greedy_collapse(&c, Strategy::MinimalKey);
        assert!(t.steps.is_empty());
        assert_eq!(t.terminal, c);
        assert!(!t.collapsible_to_point());
    }

    #[test]
    fn deterministic_first_step() {
        let c = SimplicialComplex::full_simplex(3);
        let t = greedy_collapse(&c, Strategy::MinimalKey);
        assert_eq!(t.steps[0].face, vec![0, 1]);
        assert_eq!(t.steps[0].cofacet, vec![0, 1, 2]);
        assert_eq!(t.terminal.facets().iter().next().unwrap(), &vec![2]);
    }

    #[test]
    fn tampered_trace_fails_replay() {
        let c = SimplicialComplex::full_simplex(3);
        let mut t = greedy_collapse(&c, Strategy::MinimalKey);
        t.steps.swap(0, 1);
        assert!(t.replay(&c).is_err());
    }

    #[test]
    fn cone_over_circle_collapses() {
        let p = Poset::from_leq(5, |a, b| a == b || a == 0 || (b == 3 && (a == 1 || a == 2)) || (b == 4 && (a == 1 || a == 2))).unwrap();
        let c = order_complex(&p);
        let t = greedy_collapse(&c, Strategy::MinimalKey);
        assert!(t.collapsible_to_point());
        assert!(reduced_homology_default(&c).unwrap().is_trivial());
    }
}
