use super::family::{in_family, FamilyTag};
use super::object::{pair_count, Edge, GraphObject};
use crate::error::{Error, Result};

/// Default bit budget for exhaustive enumeration.
pub const DEFAULT_MAX_BITS: u32 = 36;

/// Bits of packed code space an enumeration of `G_n(k)` ranges over.
pub fn bits_needed(n: u8, k: usize) -> u32 {
    GraphObject::key_bits(n, k)
}

/// All members of `tag` over `0..k`, ascending by canonical key.
pub fn enumerate_family(tag: FamilyTag, n: u8, k: usize, max_bits: u32) -> Result<Vec<GraphObject>> {
    let mut out = Vec::new();
    enumerate_family_with(tag, n, k, max_bits, |mu| out.push(mu.clone()))?;
    Ok(out)
}

/// Streaming form of [`enumerate_family`].
///
/// Edges are assigned depth-first in lexicographic pair order with codes in
/// ascending order, so members are visited in ascending key order. For the
/// acyclicity families a partial assignment is abandoned as soon as it closes
/// a (monochromatic) cycle.
pub fn enumerate_family_with(
    tag: FamilyTag,
    n: u8,
    k: usize,
    max_bits: u32,
    mut visit: impl FnMut(&GraphObject),
) -> Result<()> {
    if n == 0 {
        return Err(Error::Dimension("n must be at least 1".into()));
    }
    let needed = bits_needed(n, k);
    if needed > max_bits.min(64) || k > 32 {
        return Err(Error::BitBudget { needed, budget: max_bits.min(64) });
    }
    if k <= 1 {
        let mu = GraphObject::trivial(n, k);
        if in_family(&mu, tag) {
            visit(&mu);
        }
        return Ok(());
    }
    let (pruning, lo) = match tag {
        FamilyTag::G => (Pruning::None, 1),
        FamilyTag::Ke => (Pruning::PerLabel, 1),
        FamilyTag::MInterval(lo) => (Pruning::Whole, lo),
        _ => (Pruning::Whole, 1),
    };
    if lo > n {
        return Ok(());
    }
    let filter = !matches!(tag, FamilyTag::G | FamilyTag::Ke | FamilyTag::K);
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|x| (x + 1..k).map(move |y| (x, y))).collect();
    let layers = match pruning {
        Pruning::PerLabel => n as usize,
        _ => 1,
    };
    let mut state = Search {
        n,
        k,
        lo,
        pruning,
        pairs,
        edges: vec![Edge::new(1, false); pair_count(k)],
        reach: vec![vec![0u32; k * layers]],
    };
    state.run(0, &mut |edges: &[Edge]| {
        let mu = GraphObject::new(n, k, edges.to_vec()).expect("enumerated edges are valid");
        if !filter || in_family(&mu, tag) {
            visit(&mu);
        }
    });
    Ok(())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Pruning {
    None,
    Whole,
    PerLabel,
}

struct Search {
    n: u8,
    k: usize,
    lo: u8,
    pruning: Pruning,
    pairs: Vec<(usize, usize)>,
    edges: Vec<Edge>,
    /// One reachability table per depth; `reach[d][layer * k + x]` is the set
    /// of vertices reachable from `x` in that layer.
    reach: Vec<Vec<u32>>,
}

impl Search {
    fn run(&mut self, depth: usize, emit: &mut impl FnMut(&[Edge])) {
        if depth == self.pairs.len() {
            emit(&self.edges);
            return;
        }
        if self.reach.len() <= depth + 1 {
            let top = self.reach[depth].clone();
            self.reach.push(top);
        }
        let (x, y) = self.pairs[depth];
        for label in self.lo..=self.n {
            for forward in [false, true] {
                let (src, dst) = if forward { (x, y) } else { (y, x) };
                let layer = match self.pruning {
                    Pruning::PerLabel => (label - 1) as usize,
                    _ => 0,
                };
                if self.pruning != Pruning::None {
                    let base = layer * self.k;
                    if self.reach[depth][base + dst] >> src & 1 == 1 {
                        continue;
                    }
                    let (cur, next) = self.reach.split_at_mut(depth + 1);
                    let next = &mut next[0];
                    next.copy_from_slice(&cur[depth]);
                    let add = (1u32 << dst) | cur[depth][base + dst];
                    for w in 0..self.k {
                        if w == src || cur[depth][base + w] >> src & 1 == 1 {
                            next[base + w] |= add;
                        }
                    }
                } else {
                    let (cur, next) = self.reach.split_at_mut(depth + 1);
                    next[0].copy_from_slice(&cur[depth]);
                }
                self.edges[depth] = Edge::new(label, forward);
                self.run(depth + 1, emit);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_family(FamilyTag::G, 2, 3, 64).unwrap().len(), 64);
        for n in 1..=3u8 {
            for tag in [FamilyTag::K, FamilyTag::Ke, FamilyTag::M] {
                assert_eq!(enumerate_family(tag, n, 2, 64).unwrap().len(), 2 * n as usize);
            }
        }
    }

    #[test]
    fn ascending_keys() {
        let all = enumerate_family(FamilyTag::Ke, 2, 4, 64).unwrap();
        assert!(all.windows(2).all(|w| w[0].key() < w[1].key()));
    }

    #[test]
    fn guard_refuses() {
        let err = enumerate_family(FamilyTag::G, 3, 6, 30).unwrap_err();
        assert!(matches!(err, Error::BitBudget { needed: 45, budget: 30 }));
    }

    #[test]
    fn trivial_sizes() {
        for k in 0..=1 {
            for tag in [FamilyTag::G, FamilyTag::MDown, FamilyTag::MInterval(3)] {
                assert_eq!(enumerate_family(tag, 2, k, 64).unwrap().len(), 1);
            }
        }
    }
}
