//! Finite abstract simplicial complexes stored by their maximal simplices.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::poset::{Order, Poset};

/// Sorted vertex list.
pub type Simplex = Vec<u32>;

/// Default dimension cap for materializing simplices of flag complexes.
pub const DEFAULT_DIM_CAP: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    n_vertices: usize,
    facets: BTreeSet<Simplex>,
}

pub(crate) fn is_subset(small: &[u32], big: &[u32]) -> bool {
    let mut it = big.iter();
    small.iter().all(|v| it.by_ref().any(|w| w == v))
}

impl SimplicialComplex {
    /// The complex generated by `simplices`; non-maximal ones are dropped.
    pub fn from_simplices(n_vertices: usize, simplices: impl IntoIterator<Item = Simplex>) -> Result<Self> {
        let mut all: Vec<Simplex> = Vec::new();
        for mut s in simplices {
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                continue;
            }
            if s.iter().any(|&v| v as usize >= n_vertices) {
                return Err(Error::Precondition(format!("vertex out of range in {s:?}")));
            }
            all.push(s);
        }
        // longest first so maximality is decided against already-kept facets
        all.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        all.dedup();
        let mut kept: Vec<Simplex> = Vec::new();
        for s in all {
            if !kept.iter().any(|f| f.len() > s.len() && is_subset(&s, f)) {
                kept.push(s);
            }
        }
        Ok(SimplicialComplex { n_vertices, facets: kept.into_iter().collect() })
    }

    pub fn empty(n_vertices: usize) -> Self {
        SimplicialComplex { n_vertices, facets: BTreeSet::new() }
    }

    pub fn full_simplex(m: usize) -> Self {
        Self::from_simplices(m, [(0..m as u32).collect()]).unwrap()
    }

    /// Boundary of the `(m-1)`-simplex on `m` vertices.
    pub fn simplex_boundary(m: usize) -> Self {
        Self::from_simplices(m, (0..m as u32).map(|skip| (0..m as u32).filter(|&v| v != skip).collect())).unwrap()
    }

    /// Flag complex of a symmetric relation: simplices are cliques.
    ///
    /// `adjacent[v]` must not contain `v`.
    pub fn flag(adjacent: &[BitSet]) -> Self {
        let n = adjacent.len();
        let mut facets = BTreeSet::new();
        let mut r = Vec::new();
        let p = BitSet::from_indices(n, 0..n);
        bron_kerbosch(adjacent, &mut r, p, BitSet::new(n), &mut facets);
        SimplicialComplex { n_vertices: n, facets }
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn facets(&self) -> &BTreeSet<Simplex> {
        &self.facets
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// Vertices that occur in some simplex.
    pub fn vertices(&self) -> Vec<u32> {
        let s: BTreeSet<u32> = self.facets.iter().flatten().copied().collect();
        s.into_iter().collect()
    }

    pub fn dimension(&self) -> Option<usize> {
        self.facets.iter().map(|f| f.len() - 1).max()
    }

    pub fn is_single_vertex(&self) -> bool {
        self.facets.len() == 1 && self.facets.iter().next().unwrap().len() == 1
    }

    pub fn contains(&self, simplex: &[u32]) -> bool {
        !simplex.is_empty() && self.facets.iter().any(|f| is_subset(simplex, f))
    }

    /// The unique simplex properly containing `face`, if `face` is free.
    pub fn free_cofacet(&self, face: &[u32]) -> Option<&Simplex> {
        if face.is_empty() {
            return None;
        }
        let mut containing = self.facets.iter().filter(|f| is_subset(face, f));
        let first = containing.next()?;
        if containing.next().is_some() || first.len() != face.len() + 1 {
            return None;
        }
        Some(first)
    }

    /// Removes a free face together with its unique cofacet.
    pub fn collapse(&mut self, face: &[u32], cofacet: &[u32]) -> Result<()> {
        match self.free_cofacet(face) {
            Some(c) if c.as_slice() == cofacet => {}
            _ => return Err(Error::Precondition(format!("{face:?} is not a free face of {cofacet:?}"))),
        }
        let cofacet = cofacet.to_vec();
        self.facets.remove(&cofacet);
        for &w in face {
            let rest: Simplex = cofacet.iter().copied().filter(|&v| v != w).collect();
            if !rest.is_empty() && !self.contains(&rest) {
                self.facets.insert(rest);
            }
        }
        Ok(())
    }

    /// All simplices, grouped by dimension, each group sorted.
    ///
    /// Refuses when the dimension exceeds `dim_cap` or the count exceeds
    /// `count_cap`.
    pub fn simplices_by_dim(&self, dim_cap: usize, count_cap: usize) -> Result<Vec<Vec<Simplex>>> {
        let dim = match self.dimension() {
            None => return Ok(Vec::new()),
            Some(d) => d,
        };
        if dim > dim_cap {
            return Err(Error::CapExceeded(format!("dimension {dim} above cap {dim_cap}")));
        }
        let mut groups: Vec<HashSet<Simplex>> = vec![HashSet::new(); dim + 1];
        let mut total = 0usize;
        for f in &self.facets {
            let m = f.len();
            for mask in 1u64..(1u64 << m) {
                let s: Simplex = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect();
                let d = s.len() - 1;
                if groups[d].insert(s) {
                    total += 1;
                    if total > count_cap {
                        return Err(Error::CapExceeded(format!("more than {count_cap} simplices")));
                    }
                }
            }
        }
        Ok(groups
            .into_iter()
            .map(|g| {
                let mut v: Vec<Simplex> = g.into_iter().collect();
                v.sort_unstable();
                v
            })
            .collect())
    }

    /// Text form: sorted vertex list, then one maximal simplex per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let verts: Vec<String> = self.vertices().iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "vertices {}", verts.join(" "));
        for f in &self.facets {
            let vs: Vec<String> = f.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "facet {}", vs.join(" "));
        }
        out
    }
}

fn bron_kerbosch(adj: &[BitSet], r: &mut Vec<u32>, p: BitSet, mut x: BitSet, out: &mut BTreeSet<Simplex>) {
    if p.is_empty() {
        if x.is_empty() {
            let mut s = r.clone();
            s.sort_unstable();
            out.insert(s);
        }
        return;
    }
    // pivot maximizing |P ∩ N(u)|
    let mut pivot_src = p.clone();
    pivot_src.union_with(&x);
    let pivot = pivot_src
        .iter()
        .max_by_key(|&u| {
            let mut t = p.clone();
            t.intersect_with(&adj[u]);
            t.count()
        })
        .unwrap();
    let mut candidates = p.clone();
    candidates.difference_with(&adj[pivot]);
    let mut p = p;
    for v in candidates.iter().collect::<Vec<_>>() {
        let mut np = p.clone();
        np.intersect_with(&adj[v]);
        let mut nx = x.clone();
        nx.intersect_with(&adj[v]);
        r.push(v as u32);
        bron_kerbosch(adj, r, np, nx, out);
        r.pop();
        p.remove(v);
        x.insert(v);
    }
}

/// Chains of `p` as simplices; facets are the maximal chains.
pub fn order_complex(p: &Poset) -> SimplicialComplex {
    let mut facets = BTreeSet::new();
    let covers: Vec<Vec<usize>> = (0..p.len()).map(|a| p.covers(a)).collect();
    let mut chain = Vec::new();
    fn walk(a: usize, covers: &[Vec<usize>], chain: &mut Vec<u32>, out: &mut BTreeSet<Simplex>) {
        chain.push(a as u32);
        if covers[a].is_empty() {
            let mut s = chain.clone();
            s.sort_unstable();
            out.insert(s);
        } else {
            for &b in &covers[a] {
                walk(b, covers, chain, out);
            }
        }
        chain.pop();
    }
    for m in p.minimal_elements() {
        walk(m, &covers, &mut chain, &mut facets);
    }
    SimplicialComplex { n_vertices: p.len(), facets }
}
