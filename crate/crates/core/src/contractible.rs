//! Contractibility verdicts for finite posets and the per-element
//! homotopy initial/final checks built on them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::collapse::{greedy_collapse, Strategy};
use crate::complex::{order_complex, DEFAULT_DIM_CAP};
use crate::error::Result;
use crate::homology::{reduced_homology, HomologyReport, DEFAULT_SIMPLEX_CAP};
use crate::poset::{over_poset, under_poset, Order, Poset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    /// A cone point or a full collapse certifies contractibility.
    #[serde(rename = "CONTRACTIBLE")]
    Contractible,
    /// Collapse got stuck but every reduced homology group vanishes.
    #[serde(rename = "HOMOLOGY-TRIVIAL-only")]
    HomologyTrivialOnly,
    #[serde(rename = "EMPTY")]
    Empty,
    /// Nonvanishing reduced homology.
    #[serde(rename = "FAILED")]
    Failed,
    /// Collapse got stuck and homology exceeded its caps.
    #[serde(rename = "REFUSED")]
    Refused,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Contractible => "CONTRACTIBLE",
            Verdict::HomologyTrivialOnly => "HOMOLOGY-TRIVIAL-only",
            Verdict::Empty => "EMPTY",
            Verdict::Failed => "FAILED",
            Verdict::Refused => "REFUSED",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Cone,
    Collapse,
    Homology,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetVerdict {
    pub verdict: Verdict,
    pub method: Method,
    pub size: usize,
    pub collapse_steps: usize,
    pub homology: Option<HomologyReport>,
}

#[derive(Clone, Copy, Debug)]
pub struct Caps {
    pub dim: usize,
    pub simplices: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { dim: DEFAULT_DIM_CAP, simplices: DEFAULT_SIMPLEX_CAP }
    }
}

/// Cone shortcut, then deterministic collapse, then homology.
pub fn poset_contractibility(p: &Poset, caps: Caps) -> PosetVerdict {
    let mut out = PosetVerdict { verdict: Verdict::Empty, method: Method::None, size: p.len(), collapse_steps: 0, homology: None };
    if p.is_empty() {
        return out;
    }
    if p.minimum().is_some() || p.maximum().is_some() {
        out.verdict = Verdict::Contractible;
        out.method = Method::Cone;
        return out;
    }
    let c = order_complex(p);
    let trace = greedy_collapse(&c, Strategy::MinimalKey);
    out.collapse_steps = trace.steps.len();
    if trace.collapsible_to_point() {
        out.verdict = Verdict::Contractible;
        out.method = Method::Collapse;
        return out;
    }
    out.method = Method::Homology;
    match reduced_homology(&c, caps.dim, caps.simplices) {
        Ok(h) => {
            out.verdict = if h.is_trivial() { Verdict::HomologyTrivialOnly } else { Verdict::Failed };
            out.homology = Some(h);
        }
        Err(_) => out.verdict = Verdict::Refused,
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Over-posets `{a ∈ sub : a ≤ b}`.
    Initial,
    /// Under-posets `{a ∈ sub : b ≤ a}`.
    Final,
}

/// Verdict for the over- or under-poset of a single ambient element.
pub fn check_element(ambient: &impl Order, sub: &[usize], b: usize, side: Side, caps: Caps) -> Result<PosetVerdict> {
    let (p, _) = match side {
        Side::Initial => over_poset(ambient, sub, b)?,
        Side::Final => under_poset(ambient, sub, b)?,
    };
    Ok(poset_contractibility(&p, caps))
}

pub fn check_homotopy_initial(ambient: &impl Order, sub: &[usize], caps: Caps) -> Result<Vec<PosetVerdict>> {
    (0..ambient.len()).map(|b| check_element(ambient, sub, b, Side::Initial, caps)).collect()
}

pub fn check_homotopy_final(ambient: &impl Order, sub: &[usize], caps: Caps) -> Result<Vec<PosetVerdict>> {
    (0..ambient.len()).map(|b| check_element(ambient, sub, b, Side::Final, caps)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn whole_poset_is_its_own_cone() {
        let p = Poset::from_leq(4, |a, b| a == b || (a < 2 && b >= 2)).unwrap();
        let all: Vec<usize> = (0..4).collect();
        for v in check_homotopy_initial(&p, &all, Caps::default()).unwrap() {
            assert_eq!((v.verdict, v.method), (Verdict::Contractible, Method::Cone));
        }
        for v in check_homotopy_final(&p, &all, Caps::default()).unwrap() {
            assert_eq!(v.verdict, Verdict::Contractible);
        }
    }

    #[test]
    fn crown_fails() {
        // two minima below two maxima: a circle
        let p = Poset::from_leq(4, |a, b| a == b || (a < 2 && b >= 2)).unwrap();
        let v = poset_contractibility(&p, Caps::default());
        assert_eq!(v.verdict, Verdict::Failed);
        assert_eq!(v.homology.unwrap().betti, vec![0, 1]);
    }

    #[test]
    fn empty_sub() {
        let p = Poset::chain(3);
        let v = check_element(&p, &[2], 0, Side::Initial, Caps::default()).unwrap();
        assert_eq!(v.verdict, Verdict::Empty);
    }
}
