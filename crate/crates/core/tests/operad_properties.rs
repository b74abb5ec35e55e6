use enops::operads::{
    box_product, dual, enumerate_family, gamma, in_family, is_morphism, restrict, sigma_action, FamilyTag, GraphObject,
    Permutation, DEFAULT_MAX_BITS,
};
use enops::sampling::{random_member, random_object, random_permutation, rng};
use proptest::prelude::*;
use rand::Rng;

const CLOSED: [FamilyTag; 4] = [FamilyTag::G, FamilyTag::K, FamilyTag::Ke, FamilyTag::M];
const ALL: [FamilyTag; 6] = [FamilyTag::G, FamilyTag::K, FamilyTag::Ke, FamilyTag::M, FamilyTag::MUp, FamilyTag::MDown];

fn tag_of(i: usize) -> FamilyTag {
    CLOSED[i % CLOSED.len()]
}

/// Block permutation moving block `i` of `gamma(mu σ, ν_σ…)` onto block
/// `σ(i)` of `gamma(mu, ν…)`.
fn block_permutation(sigma: &Permutation, sizes: &[usize]) -> Permutation {
    let offsets: Vec<usize> = sizes.iter().scan(0, |acc, &s| { let o = *acc; *acc += s; Some(o) }).collect();
    let mut images = Vec::new();
    for i in 0..sizes.len() {
        let b = sigma.apply(i);
        images.extend((0..sizes[b]).map(|o| offsets[b] + o));
    }
    Permutation::new(images).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn gamma_unit_laws(seed in any::<u64>(), n in 1u8..=3, k in 0usize..=4, t in 0usize..4) {
        let mut r = rng(seed);
        let mu = random_member(&mut r, tag_of(t), n, k);
        let unit = GraphObject::trivial(n, 1);
        prop_assert_eq!(gamma(&unit, std::slice::from_ref(&mu)).unwrap(), mu.clone());
        prop_assert_eq!(gamma(&mu, &vec![unit; k]).unwrap(), mu);
    }

    #[test]
    fn gamma_associative(seed in any::<u64>(), n in 1u8..=3, t in 0usize..4) {
        let mut r = rng(seed);
        let tag = tag_of(t);
        let k = r.gen_range(0..=3);
        let mu = random_member(&mut r, tag, n, k);
        let nus: Vec<GraphObject> = (0..k).map(|_| { let s = r.gen_range(0..=2); random_member(&mut r, tag, n, s) }).collect();
        let total: usize = nus.iter().map(GraphObject::k).sum();
        let rhos: Vec<GraphObject> = (0..total).map(|_| { let s = r.gen_range(0..=2); random_member(&mut r, tag, n, s) }).collect();
        let left = gamma(&gamma(&mu, &nus).unwrap(), &rhos).unwrap();
        let mut start = 0;
        let inner: Vec<GraphObject> = nus.iter().map(|nu| {
            let g = gamma(nu, &rhos[start..start + nu.k()]).unwrap();
            start += nu.k();
            g
        }).collect();
        prop_assert_eq!(left.clone(), gamma(&mu, &inner).unwrap());
        prop_assert!(in_family(&left, tag));
    }

    #[test]
    fn gamma_equivariant(seed in any::<u64>(), n in 1u8..=3, t in 0usize..4) {
        let mut r = rng(seed);
        let tag = tag_of(t);
        let k = r.gen_range(1..=3);
        let mu = random_member(&mut r, tag, n, k);
        let nus: Vec<GraphObject> = (0..k).map(|_| { let s = r.gen_range(0..=2); random_member(&mut r, tag, n, s) }).collect();
        let sigma = random_permutation(&mut r, k);
        let permuted: Vec<GraphObject> = (0..k).map(|i| nus[sigma.apply(i)].clone()).collect();
        let lhs = gamma(&sigma_action(&mu, &sigma).unwrap(), &permuted).unwrap();
        let rhs = gamma(&mu, &nus).unwrap();
        let sizes: Vec<usize> = nus.iter().map(GraphObject::k).collect();
        let tau = block_permutation(&sigma, &sizes);
        prop_assert_eq!(lhs, sigma_action(&rhs, &tau).unwrap());
    }

    #[test]
    fn inner_equivariance(seed in any::<u64>(), n in 1u8..=3) {
        let mut r = rng(seed);
        let k = r.gen_range(1..=3);
        let mu = random_member(&mut r, FamilyTag::Ke, n, k);
        let nus: Vec<GraphObject> = (0..k).map(|_| { let s = r.gen_range(0..=2); random_member(&mut r, FamilyTag::Ke, n, s) }).collect();
        let taus: Vec<Permutation> = nus.iter().map(|nu| random_permutation(&mut r, nu.k())).collect();
        let acted: Vec<GraphObject> = nus.iter().zip(&taus).map(|(nu, t)| sigma_action(nu, t).unwrap()).collect();
        let mut images = Vec::new();
        let mut off = 0;
        for t in &taus {
            images.extend(t.images().iter().map(|&x| x + off));
            off += t.len();
        }
        let sum = Permutation::new(images).unwrap();
        prop_assert_eq!(gamma(&mu, &acted).unwrap(), sigma_action(&gamma(&mu, &nus).unwrap(), &sum).unwrap());
    }

    #[test]
    fn action_law(seed in any::<u64>(), n in 1u8..=3, k in 0usize..=5) {
        let mut r = rng(seed);
        let mu = random_object(&mut r, n, k);
        let s = random_permutation(&mut r, k);
        let t = random_permutation(&mut r, k);
        let lhs = sigma_action(&sigma_action(&mu, &s).unwrap(), &t).unwrap();
        prop_assert_eq!(lhs, sigma_action(&mu, &s.compose(&t)).unwrap());
        prop_assert_eq!(sigma_action(&mu, &Permutation::identity(k)).unwrap(), mu);
    }

    #[test]
    fn action_preserves_closed_families(seed in any::<u64>(), n in 1u8..=3, k in 0usize..=5, t in 0usize..4) {
        let mut r = rng(seed);
        let tag = tag_of(t);
        let mu = random_member(&mut r, tag, n, k);
        let s = random_permutation(&mut r, k);
        prop_assert!(in_family(&sigma_action(&mu, &s).unwrap(), tag));
    }

    #[test]
    fn restriction_preserves_families(seed in any::<u64>(), n in 1u8..=3, k in 0usize..=5, t in 0usize..6) {
        let mut r = rng(seed);
        let tag = ALL[t];
        let mu = random_member(&mut r, tag, n, k);
        let m = r.gen_range(0..=k);
        let perm = random_permutation(&mut r, k);
        let inj: Vec<usize> = perm.images()[..m].to_vec();
        prop_assert!(in_family(&restrict(&mu, &inj).unwrap(), tag));
    }

    #[test]
    fn box_product_is_binary_gamma(seed in any::<u64>(), n in 1u8..=3, i in 1u8..=3) {
        prop_assume!(i <= n);
        let mut r = rng(seed);
        let a = { let s = r.gen_range(0..=3); random_object(&mut r, n, s) };
        let b = { let s = r.gen_range(0..=3); random_object(&mut r, n, s) };
        let two = GraphObject::chain(n, 2, i);
        prop_assert_eq!(box_product(i, &a, &b).unwrap(), gamma(&two, &[a, b]).unwrap());
    }

    #[test]
    fn dual_reverses_order(seed in any::<u64>(), n in 1u8..=3, k in 0usize..=5) {
        let mut r = rng(seed);
        let mu = random_object(&mut r, n, k);
        let nu = random_object(&mut r, n, k);
        prop_assert_eq!(dual(&dual(&mu)), mu.clone());
        prop_assert_eq!(is_morphism(&mu, &nu).unwrap(), is_morphism(&dual(&nu), &dual(&mu)).unwrap());
    }
}

#[test]
fn morphisms_form_a_partial_order() {
    for (n, k) in [(2u8, 3usize), (3, 2), (1, 4)] {
        let all = enumerate_family(FamilyTag::G, n, k, DEFAULT_MAX_BITS).unwrap();
        for a in &all {
            assert!(is_morphism(a, a).unwrap());
            for b in &all {
                let ab = is_morphism(a, b).unwrap();
                if ab && a != b {
                    assert!(!is_morphism(b, a).unwrap());
                }
                if ab {
                    for c in &all {
                        if is_morphism(b, c).unwrap() {
                            assert!(is_morphism(a, c).unwrap());
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn dual_exchanges_families() {
    for n in 1..=3u8 {
        for k in 0..=4 {
            let all = enumerate_family(FamilyTag::G, n, k, DEFAULT_MAX_BITS).unwrap();
            for mu in &all {
                let d = dual(mu);
                for tag in [FamilyTag::K, FamilyTag::Ke, FamilyTag::M] {
                    assert_eq!(in_family(mu, tag), in_family(&d, tag));
                }
                assert_eq!(in_family(mu, FamilyTag::MUp), in_family(&d, FamilyTag::MDown));
            }
        }
    }
    let mut r = rng(9);
    for _ in 0..50 {
        let mu = random_member(&mut r, FamilyTag::MUp, 3, 5);
        assert!(in_family(&dual(&mu), FamilyTag::MDown));
    }
}
