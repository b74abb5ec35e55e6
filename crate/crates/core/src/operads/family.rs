use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::object::GraphObject;
use crate::error::{Error, Result};

/// The (pre)operad families of the label/orientation poset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyTag {
    G,
    K,
    Ke,
    M,
    MUp,
    MDown,
    /// Decomposable objects with every label in `lo..=n`.
    MInterval(u8),
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyTag::G => f.write_str("G"),
            FamilyTag::K => f.write_str("K"),
            FamilyTag::Ke => f.write_str("Ke"),
            FamilyTag::M => f.write_str("M"),
            FamilyTag::MUp => f.write_str("MUp"),
            FamilyTag::MDown => f.write_str("MDown"),
            FamilyTag::MInterval(lo) => write!(f, "MInterval({lo})"),
        }
    }
}

impl FromStr for FamilyTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        Ok(match t.as_str() {
            "g" => FamilyTag::G,
            "k" => FamilyTag::K,
            "ke" => FamilyTag::Ke,
            "m" => FamilyTag::M,
            "mup" => FamilyTag::MUp,
            "mdown" => FamilyTag::MDown,
            _ => {
                let inner = t
                    .strip_prefix("minterval(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| Error::Parse(format!("unknown family tag {s:?}")))?;
                let lo: u8 = inner.parse().map_err(|_| Error::Parse(format!("bad interval bound in {s:?}")))?;
                if lo == 0 {
                    return Err(Error::Parse("interval bound must be at least 1".into()));
                }
                FamilyTag::MInterval(lo)
            }
        })
    }
}

/// The morphism relation `mu -> nu` of `G_n(S)`.
pub fn is_morphism(mu: &GraphObject, nu: &GraphObject) -> Result<bool> {
    if mu.n() != nu.n() || mu.k() != nu.k() {
        return Err(Error::Dimension(format!(
            "objects over (n={}, k={}) and (n={}, k={})",
            mu.n(),
            mu.k(),
            nu.n(),
            nu.k()
        )));
    }
    Ok(leq(mu, nu))
}

#[inline]
pub(crate) fn leq(mu: &GraphObject, nu: &GraphObject) -> bool {
    mu.edges().iter().zip(nu.edges()).all(|(a, b)| {
        if a.forward == b.forward {
            a.label <= b.label
        } else {
            a.label < b.label
        }
    })
}

/// Acyclicity of the orientation tournament via the directed-triangle test.
pub(crate) fn tournament_acyclic(mu: &GraphObject) -> bool {
    let k = mu.k();
    for x in 0..k {
        for y in 0..k {
            if y == x || !mu.points(x, y) {
                continue;
            }
            for z in 0..k {
                if z != x && z != y && mu.points(y, z) && mu.points(z, x) {
                    return false;
                }
            }
        }
    }
    true
}

/// Acyclicity of each single-label digraph.
pub(crate) fn monochromatic_acyclic(mu: &GraphObject) -> bool {
    (1..=mu.n()).all(|l| find_cycle(mu.k(), mu.arcs_with_label(l)).is_none())
}

/// Some directed cycle of the digraph on `0..k`, as a vertex sequence.
pub(crate) fn find_cycle(k: usize, arcs: impl Iterator<Item = (usize, usize)>) -> Option<Vec<usize>> {
    let mut adj = vec![Vec::new(); k];
    for (a, b) in arcs {
        adj[a].push(b);
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; k];
    let mut stack: Vec<usize> = Vec::new();
    fn dfs(u: usize, adj: &[Vec<usize>], state: &mut [u8], stack: &mut Vec<usize>) -> Option<Vec<usize>> {
        state[u] = 1;
        stack.push(u);
        for &v in &adj[u] {
            if state[v] == 1 {
                let pos = stack.iter().position(|&w| w == v).unwrap();
                return Some(stack[pos..].to_vec());
            }
            if state[v] == 0 {
                if let Some(c) = dfs(v, adj, state, stack) {
                    return Some(c);
                }
            }
        }
        stack.pop();
        state[u] = 2;
        None
    }
    for u in 0..k {
        if state[u] == 0 {
            if let Some(c) = dfs(u, &adj, &mut state, &mut stack) {
                return Some(c);
            }
        }
    }
    None
}

/// Positions in the topological order of `arcs` that always takes the
/// least available element; `None` when the arcs contain a cycle.
pub(crate) fn topo_ranks(k: usize, arcs: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; k];
    for &(_, y) in arcs {
        indeg[y] += 1;
    }
    let mut ready: std::collections::BTreeSet<usize> = (0..k).filter(|&x| indeg[x] == 0).collect();
    let mut rank = vec![0usize; k];
    let mut next = 0;
    while let Some(x) = ready.pop_first() {
        rank[x] = next;
        next += 1;
        for &(a, b) in arcs {
            if a == x {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    ready.insert(b);
                }
            }
        }
    }
    (next == k).then_some(rank)
}

/// The linear order of the ground set induced by an acyclic orientation.
pub fn linear_order(mu: &GraphObject) -> Result<Vec<usize>> {
    if !tournament_acyclic(mu) {
        return Err(Error::NotATournamentOrder);
    }
    Ok(order_unchecked(mu))
}

/// Elements sorted by decreasing out-degree; correct for acyclic tournaments.
fn order_unchecked(mu: &GraphObject) -> Vec<usize> {
    let k = mu.k();
    let mut out = vec![0usize; k];
    for (a, _) in mu.arcs() {
        out[a] += 1;
    }
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&x| std::cmp::Reverse(out[x]));
    order
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Mode {
    Plain,
    /// Cross labels bounded above, starting from this bound.
    Up(u8),
    /// Cross labels bounded below, starting from this bound.
    Down(u8),
}

/// Interval DP over the induced linear order deciding decomposability.
pub(crate) struct Decomposer {
    labels: Vec<Vec<u8>>,
    k: usize,
    n: u8,
    memo: Vec<Option<bool>>,
}

impl Decomposer {
    /// `mu` must be in K.
    pub(crate) fn new(mu: &GraphObject) -> (Self, Vec<usize>) {
        let order = order_unchecked(mu);
        let k = mu.k();
        let mut labels = vec![vec![0u8; k]; k];
        for a in 0..k {
            for b in 0..k {
                if a != b {
                    labels[a][b] = mu.label(order[a], order[b]);
                }
            }
        }
        let n = mu.n();
        let memo = vec![None; (k + 1) * (k + 1) * (n as usize + 2)];
        (Decomposer { labels, k, n, memo }, order)
    }

    /// Common label of all edges crossing the cut `[lo, cut) | [cut, hi)`.
    pub(crate) fn cut_label(&self, lo: usize, cut: usize, hi: usize) -> Option<u8> {
        let l = self.labels[lo][cut];
        for a in lo..cut {
            for b in cut..hi {
                if self.labels[a][b] != l {
                    return None;
                }
            }
        }
        Some(l)
    }

    fn slot(&self, lo: usize, hi: usize, bound: u8) -> usize {
        (lo * (self.k + 1) + hi) * (self.n as usize + 2) + bound as usize
    }

    pub(crate) fn decomposable(&mut self, lo: usize, hi: usize, mode: Mode) -> bool {
        if hi - lo <= 1 {
            return true;
        }
        let bound = match mode {
            Mode::Plain => 0,
            Mode::Up(b) | Mode::Down(b) => b,
        };
        let plain_slot = self.n as usize + 1;
        let slot = match mode {
            Mode::Plain => self.slot(lo, hi, plain_slot as u8),
            // Up and Down are never both used on one Decomposer.
            _ => self.slot(lo, hi, bound),
        };
        if let Some(v) = self.memo[slot] {
            return v;
        }
        let mut result = false;
        for cut in lo + 1..hi {
            let Some(c) = self.cut_label(lo, cut, hi) else { continue };
            let next = match mode {
                Mode::Plain => Mode::Plain,
                Mode::Up(b) if c <= b => Mode::Up(c),
                Mode::Down(b) if c >= b => Mode::Down(c),
                _ => continue,
            };
            if self.decomposable(lo, cut, next) && self.decomposable(cut, hi, next) {
                result = true;
                break;
            }
        }
        self.memo[slot] = Some(result);
        result
    }
}

/// Membership of `mu` in the family `tag`.
pub fn in_family(mu: &GraphObject, tag: FamilyTag) -> bool {
    match tag {
        FamilyTag::G => true,
        FamilyTag::Ke => monochromatic_acyclic(mu),
        FamilyTag::K => tournament_acyclic(mu),
        FamilyTag::M | FamilyTag::MUp | FamilyTag::MDown | FamilyTag::MInterval(_) => {
            if mu.k() <= 1 {
                return true;
            }
            if let FamilyTag::MInterval(lo) = tag {
                if mu.min_label() < lo {
                    return false;
                }
            }
            if !tournament_acyclic(mu) {
                return false;
            }
            let (mut dp, _) = Decomposer::new(mu);
            let mode = match tag {
                FamilyTag::MUp => Mode::Up(mu.n()),
                FamilyTag::MDown => Mode::Down(1),
                _ => Mode::Plain,
            };
            dp.decomposable(0, mu.k(), mode)
        }
    }
}
