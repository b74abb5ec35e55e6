use enops::cubes::{
    check_gamma, check_sigma, classify, homotopy_h, in_f, in_g, infimum_check, random_config, random_member_config, rat,
    verify_cycle, witness, WitnessOutcome,
};
use enops::operads::{enumerate_family, in_family, is_morphism, FamilyTag, Permutation, DEFAULT_MAX_BITS};
use enops::sampling::{random_member, random_object, rng};
use rand::Rng;

fn witness_or_cycle(n: u8, k: usize) {
    for mu in enumerate_family(FamilyTag::G, n, k, DEFAULT_MAX_BITS).unwrap() {
        match witness(&mu).unwrap() {
            WitnessOutcome::Config(c) => {
                assert!(in_family(&mu, FamilyTag::Ke));
                assert!(in_g(&c, &mu).unwrap() && c.separated());
            }
            WitnessOutcome::Cycle { label, cycle } => {
                assert!(!in_family(&mu, FamilyTag::Ke));
                assert!(verify_cycle(&mu, label, &cycle));
            }
        }
    }
}

#[test]
fn nonempty_iff_extended_exhaustive() {
    witness_or_cycle(2, 3);
    witness_or_cycle(2, 4);
    witness_or_cycle(3, 3);
}

#[test]
fn nonempty_iff_extended_sampled() {
    let mut r = rng(5);
    for _ in 0..2000 {
        let mu = random_object(&mut r, 3, 4);
        let ke = in_family(&mu, FamilyTag::Ke);
        match witness(&mu).unwrap() {
            WitnessOutcome::Config(c) => assert!(ke && in_g(&c, &mu).unwrap()),
            WitnessOutcome::Cycle { label, cycle } => assert!(!ke && verify_cycle(&mu, label, &cycle)),
        }
    }
}

#[test]
fn witness_in_g_for_ke3_4() {
    for mu in enumerate_family(FamilyTag::Ke, 3, 4, DEFAULT_MAX_BITS).unwrap() {
        let WitnessOutcome::Config(c) = witness(&mu).unwrap() else { panic!() };
        assert!(in_g(&c, &mu).unwrap());
    }
}

#[test]
fn closed_form_matches_union() {
    for (n, k, seed) in [(2u8, 3usize, 1u64), (3, 3, 2), (2, 4, 3)] {
        let ke = enumerate_family(FamilyTag::Ke, n, k, DEFAULT_MAX_BITS).unwrap();
        let mut r = rng(seed);
        for _ in 0..1000 {
            let c = random_config(&mut r, n as usize, k);
            let members: Vec<usize> = (0..ke.len()).filter(|&m| in_g(&c, &ke[m]).unwrap()).collect();
            assert!(members.contains(&ke.iter().position(|m| *m == classify(&c).unwrap()).unwrap()));
            for nu in &ke {
                let brute = members.iter().any(|&m| is_morphism(&ke[m], nu).unwrap());
                assert_eq!(in_f(&c, nu).unwrap(), brute, "config {c} nu {nu:?}");
            }
        }
    }
}

#[test]
fn homotopies_stay_inside() {
    for (n, k, seed) in [(2u8, 3usize, 10u64), (3, 3, 11), (2, 4, 12)] {
        let ke = enumerate_family(FamilyTag::Ke, n, k, DEFAULT_MAX_BITS).unwrap();
        let mut r = rng(seed);
        let mut done = 0;
        while done < 200 {
            let c = random_config(&mut r, n as usize, k);
            let base = classify(&c).unwrap();
            let above: Vec<_> = ke.iter().filter(|nu| is_morphism(&base, nu).unwrap()).collect();
            let nu = above[r.gen_range(0..above.len())];
            assert!(in_f(&c, nu).unwrap());
            let WitnessOutcome::Config(anchor) = witness(nu).unwrap() else { panic!() };
            let t = rat(r.gen_range(0..=24), 24);
            let j = r.gen_range(1..=n as usize);
            let moved = homotopy_h(j, &c, &t, &anchor, nu).unwrap();
            assert!(in_f(&moved, nu).unwrap());
            let zero = rat(0, 1);
            let one = rat(1, 1);
            assert_eq!(homotopy_h(n as usize, &c, &zero, &anchor, nu).unwrap(), c);
            if j >= 2 {
                assert_eq!(homotopy_h(j, &c, &one, &anchor, nu).unwrap(), homotopy_h(j - 1, &c, &zero, &anchor, nu).unwrap());
            }
            assert_eq!(homotopy_h(1, &c, &one, &anchor, nu).unwrap(), anchor);
            done += 1;
        }
    }
}

#[test]
fn infimum_of_pairs_sharing_a_point() {
    let mut r = rng(21);
    let mut checked = 0;
    for (n, k) in [(2u8, 3usize), (3, 3), (2, 2), (3, 2)] {
        let ke = enumerate_family(FamilyTag::Ke, n, k, DEFAULT_MAX_BITS).unwrap();
        for _ in 0..125 {
            let c = random_config(&mut r, n as usize, k);
            let members: Vec<_> = ke.iter().filter(|m| in_g(&c, m).unwrap()).collect();
            for a in &members {
                for b in &members {
                    let mu0 = infimum_check(a, b, &c).unwrap();
                    if a == b {
                        assert_eq!(&&mu0, a);
                    }
                }
            }
            checked += 1;
        }
    }
    assert_eq!(checked, 500);
}

#[test]
fn permutation_factorization() {
    for mu in enumerate_family(FamilyTag::Ke, 2, 3, DEFAULT_MAX_BITS).unwrap() {
        let WitnessOutcome::Config(c) = witness(&mu).unwrap() else { panic!() };
        for sigma in Permutation::all(3) {
            check_sigma(&c, &mu, &sigma).unwrap();
        }
    }
}

#[test]
fn composition_factorization() {
    let mut r = rng(33);
    for _ in 0..100 {
        let n = r.gen_range(1..=3u8);
        let k = r.gen_range(1..=3usize);
        let mut sizes: Vec<usize> = (0..k).map(|_| r.gen_range(0..=2)).collect();
        while sizes.iter().sum::<usize>() > 5 {
            sizes.iter_mut().for_each(|s| *s = (*s).saturating_sub(1));
        }
        let mu = random_member(&mut r, FamilyTag::Ke, n, k);
        let nus: Vec<_> = sizes.iter().map(|&s| random_member(&mut r, FamilyTag::Ke, n, s)).collect();
        let outer = random_member_config(&mut r, &mu).unwrap();
        let inner: Vec<_> = nus.iter().map(|nu| random_member_config(&mut r, nu).unwrap()).collect();
        check_gamma(&outer, &mu, &inner, &nus).unwrap();
    }
}

#[test]
fn convexity_and_monotonicity() {
    let mut r = rng(44);
    let ke = enumerate_family(FamilyTag::Ke, 2, 3, DEFAULT_MAX_BITS).unwrap();
    for _ in 0..300 {
        let mu = &ke[r.gen_range(0..ke.len())];
        let a = random_member_config(&mut r, mu).unwrap();
        let b = random_member_config(&mut r, mu).unwrap();
        let t = rat(r.gen_range(0..=24), 24);
        assert!(in_g(&a.blend(&b, &t), mu).unwrap());
        let c = random_config(&mut r, 2, 3);
        let nu1 = &ke[r.gen_range(0..ke.len())];
        for nu2 in ke.iter().filter(|nu2| is_morphism(nu1, nu2).unwrap()) {
            if in_f(&c, nu1).unwrap() {
                assert!(in_f(&c, nu2).unwrap());
            }
        }
        if in_g(&c, mu).unwrap() {
            assert!(in_f(&c, mu).unwrap());
        }
    }
}
