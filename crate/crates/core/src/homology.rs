//! Reduced integral homology through sparse Smith normal form.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::complex::{Simplex, SimplicialComplex, DEFAULT_DIM_CAP};
use crate::error::Result;

/// Default bound on the number of simplices materialized for homology.
pub const DEFAULT_SIMPLEX_CAP: usize = 2_000_000;

/// Reduced homology groups in dimensions `0..=top`.
///
/// The empty complex is reported with `empty = true`; its only nonzero
/// reduced group sits in degree -1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub empty: bool,
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<BigInt>>,
    pub simplex_counts: Vec<usize>,
}

impl HomologyReport {
    /// All reduced groups vanish.
    pub fn is_trivial(&self) -> bool {
        !self.empty && self.betti.iter().all(|&b| b == 0) && self.torsion.iter().all(Vec::is_empty)
    }

    /// Reduced Euler characteristic from Betti numbers against simplex counts.
    pub fn euler_consistent(&self) -> bool {
        let alt = |v: &[usize]| -> i64 {
            v.iter().enumerate().map(|(d, &x)| if d % 2 == 0 { x as i64 } else { -(x as i64) }).sum()
        };
        if self.empty {
            return self.simplex_counts.iter().all(|&c| c == 0);
        }
        alt(&self.betti) == alt(&self.simplex_counts) - 1
    }

    /// `(dim, betti, torsion)` triples.
    pub fn triples(&self) -> Vec<(usize, usize, Vec<BigInt>)> {
        (0..self.betti.len()).map(|d| (d, self.betti[d], self.torsion[d].clone())).collect()
    }
}

/// Reduced homology of `c`, refusing complexes above `max_dim` or with
/// more than `simplex_cap` simplices.
pub fn reduced_homology(c: &SimplicialComplex, max_dim: usize, simplex_cap: usize) -> Result<HomologyReport> {
    let groups = c.simplices_by_dim(max_dim, simplex_cap)?;
    if groups.is_empty() {
        return Ok(HomologyReport { empty: true, betti: Vec::new(), torsion: Vec::new(), simplex_counts: Vec::new() });
    }
    let top = groups.len() - 1;
    // ranks[d] = rank of boundary C_d -> C_{d-1}; d = 0 is the augmentation
    let mut ranks = vec![0usize; top + 2];
    let mut factors: Vec<Vec<BigInt>> = vec![Vec::new(); top + 2];
    ranks[0] = 1;
    for d in 1..=top {
        let index: HashMap<&Simplex, usize> = groups[d - 1].iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut m = SparseMatrix::new(groups[d - 1].len());
        for s in &groups[d] {
            let mut col = BTreeMap::new();
            for skip in 0..s.len() {
                let face: Simplex = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                let sign = if skip % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                col.insert(index[&face], sign);
            }
            m.push_column(col);
        }
        let diag = m.smith_diagonal();
        ranks[d] = diag.len();
        factors[d] = invariant_factors(diag).into_iter().filter(|f| !f.is_one()).collect();
    }
    let betti = (0..=top).map(|d| groups[d].len() - ranks[d] - ranks[d + 1]).collect();
    let torsion = (0..=top).map(|d| factors[d + 1].clone()).collect();
    Ok(HomologyReport { empty: false, betti, torsion, simplex_counts: groups.iter().map(Vec::len).collect() })
}

/// Reduced homology with the default caps.
pub fn reduced_homology_default(c: &SimplicialComplex) -> Result<HomologyReport> {
    reduced_homology(c, DEFAULT_DIM_CAP, DEFAULT_SIMPLEX_CAP)
}

struct SparseMatrix {
    cols: Vec<BTreeMap<usize, BigInt>>,
    rows: Vec<BTreeSet<usize>>,
}

impl SparseMatrix {
    fn new(n_rows: usize) -> Self {
        SparseMatrix { cols: Vec::new(), rows: vec![BTreeSet::new(); n_rows] }
    }

    fn push_column(&mut self, col: BTreeMap<usize, BigInt>) {
        let c = self.cols.len();
        for &r in col.keys() {
            self.rows[r].insert(c);
        }
        self.cols.push(col);
    }

    fn set(&mut self, r: usize, c: usize, v: BigInt) {
        if v.is_zero() {
            self.cols[c].remove(&r);
            self.rows[r].remove(&c);
        } else {
            self.cols[c].insert(r, v);
            self.rows[r].insert(c);
        }
    }

    /// `col[dst] -= q * col[src]`
    fn sub_column(&mut self, dst: usize, src: usize, q: &BigInt) {
        let entries: Vec<(usize, BigInt)> = self.cols[src].iter().map(|(&r, v)| (r, v.clone())).collect();
        for (r, v) in entries {
            let cur = self.cols[dst].get(&r).cloned().unwrap_or_default();
            self.set(r, dst, cur - q * v);
        }
    }

    fn get(&self, r: usize, c: usize) -> BigInt {
        self.cols[c].get(&r).cloned().unwrap_or_default()
    }

    /// Diagonal of a Smith-equivalent form (not yet divisibility-normalized).
    fn smith_diagonal(mut self) -> Vec<BigInt> {
        let mut diag = Vec::new();
        for start in 0..self.cols.len() {
            if self.cols[start].is_empty() {
                continue;
            }
            let mut c = start;
            let mut r = *self.cols[c].iter().min_by_key(|(_, v)| v.abs()).unwrap().0;
            'pivot: loop {
                let p = self.get(r, c);
                let others: Vec<usize> = self.rows[r].iter().copied().filter(|&x| x != c).collect();
                for c2 in others {
                    let q = self.get(r, c2).div_floor(&p);
                    self.sub_column(c2, c, &q);
                    if self.cols[c2].contains_key(&r) {
                        // remainder is smaller than the pivot; make it the pivot
                        c = c2;
                        continue 'pivot;
                    }
                }
                // row r now holds only the pivot, so row operations touch column c only
                let others: Vec<usize> = self.cols[c].keys().copied().filter(|&x| x != r).collect();
                for r2 in others {
                    let v = self.get(r2, c);
                    let rem = v.mod_floor(&p);
                    self.set(r2, c, rem);
                    if self.cols[c].contains_key(&r2) {
                        r = r2;
                        continue 'pivot;
                    }
                }
                break;
            }
            diag.push(self.get(r, c).abs());
            self.set(r, c, BigInt::zero());
        }
        diag
    }
}

/// Normalizes a diagonal so each entry divides the next.
fn invariant_factors(mut d: Vec<BigInt>) -> Vec<BigInt> {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            if !(&d[j] % &d[i]).is_zero() {
                let g = d[i].gcd(&d[j]);
                let l = d[i].lcm(&d[j]);
                d[i] = g;
                d[j] = l;
            }
        }
    }
    d
}
