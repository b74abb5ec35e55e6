//! Seeded randomness shared by the sampled sweeps.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::operads::{in_family, FamilyTag, GraphObject, Permutation};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derives an independent stream for instance `index` of a sweep.
pub fn sub_rng(seed: u64, index: u64) -> SeededRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(index);
    r
}

pub fn random_object(rng: &mut impl Rng, n: u8, k: usize) -> GraphObject {
    GraphObject::from_fn(n, k, |_, _| (rng.gen_range(1..=n), rng.gen_bool(0.5))).expect("labels in range")
}

/// Rejection sampling from `G_n(k)`; `k` must be small enough for the family
/// to be reasonably dense.
pub fn random_member(rng: &mut impl Rng, tag: FamilyTag, n: u8, k: usize) -> GraphObject {
    loop {
        let mu = random_object(rng, n, k);
        if in_family(&mu, tag) {
            return mu;
        }
    }
}

pub fn random_permutation(rng: &mut impl Rng, k: usize) -> Permutation {
    let mut v: Vec<usize> = (0..k).collect();
    v.shuffle(rng);
    Permutation::new(v).expect("shuffle is a bijection")
}

/// Uniform choice from a slice.
pub fn choose<'a, T>(rng: &mut impl Rng, items: &'a [T]) -> &'a T {
    &items[rng.gen_range(0..items.len())]
}
