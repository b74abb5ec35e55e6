use enops::collapse::{greedy_collapse, Strategy};
use enops::complex::{order_complex, SimplicialComplex};
use enops::contractible::{check_element, check_homotopy_final, check_homotopy_initial, poset_contractibility, Caps, Method, Side, Verdict};
use enops::homology::reduced_homology_default;
use enops::operads::{enumerate_family, in_family, FamilyTag, GraphObject, DEFAULT_MAX_BITS};
use enops::poset::{over_poset, Order, under_poset, ObjectOrder, Poset};
use enops::sampling::rng;
use rand::Rng;

fn family(tag: FamilyTag, n: u8, k: usize) -> Vec<GraphObject> {
    enumerate_family(tag, n, k, DEFAULT_MAX_BITS).unwrap()
}

fn sub_indices(ambient: &[GraphObject], tag: FamilyTag) -> Vec<usize> {
    (0..ambient.len()).filter(|&i| in_family(&ambient[i], tag)).collect()
}

fn all_certified(verdicts: &[enops::contractible::PosetVerdict]) -> bool {
    verdicts.iter().all(|v| v.verdict == Verdict::Contractible)
}

#[test]
fn keyed_circle() {
    let ke = family(FamilyTag::Ke, 2, 2);
    assert_eq!(ke.len(), 4);
    let p = Poset::from_order(&ObjectOrder(&ke)).unwrap();
    let h = reduced_homology_default(&order_complex(&p)).unwrap();
    assert_eq!(h.betti, vec![0, 1]);
    assert!(!greedy_collapse(&order_complex(&p), Strategy::MinimalKey).collapsible_to_point());
}

#[test]
fn initial_and_final_sweeps() {
    for (n, k) in [(2u8, 1usize), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3)] {
        let ke = family(FamilyTag::Ke, n, k);
        let order = ObjectOrder(&ke);
        let down = sub_indices(&ke, FamilyTag::MDown);
        let up = sub_indices(&ke, FamilyTag::MUp);
        assert!(all_certified(&check_homotopy_initial(&order, &down, Caps::default()).unwrap()), "n={n} k={k}");
        assert!(all_certified(&check_homotopy_final(&order, &up, Caps::default()).unwrap()), "n={n} k={k}");
    }
}

#[test]
fn wrong_sides_are_not_all_contractible() {
    let ke = family(FamilyTag::Ke, 2, 3);
    let order = ObjectOrder(&ke);
    let down = sub_indices(&ke, FamilyTag::MDown);
    let up = sub_indices(&ke, FamilyTag::MUp);
    let failed = |v: Vec<enops::contractible::PosetVerdict>| v.iter().filter(|x| x.verdict == Verdict::Failed).count();
    assert_eq!(failed(check_homotopy_final(&order, &down, Caps::default()).unwrap()), 24);
    assert_eq!(failed(check_homotopy_initial(&order, &up, Caps::default()).unwrap()), 24);
}

#[test]
fn sampled_initial_and_final_at_larger_size() {
    let ke = family(FamilyTag::Ke, 3, 4);
    let order = ObjectOrder(&ke);
    let down = sub_indices(&ke, FamilyTag::MDown);
    let up = sub_indices(&ke, FamilyTag::MUp);
    let mut r = rng(4);
    for _ in 0..40 {
        let b = r.gen_range(0..ke.len());
        assert_eq!(check_element(&order, &down, b, Side::Initial, Caps::default()).unwrap().verdict, Verdict::Contractible);
        assert_eq!(check_element(&order, &up, b, Side::Final, Caps::default()).unwrap().verdict, Verdict::Contractible);
    }
}

#[test]
fn monochromatic_triangle_outside_keyed_family() {
    let cycle = GraphObject::from_fn(2, 3, |x, y| (2, !(x == 0 && y == 2))).unwrap();
    assert!(!in_family(&cycle, FamilyTag::Ke));
    let g = family(FamilyTag::G, 2, 3);
    let b = g.iter().position(|m| *m == cycle).unwrap();
    let order = ObjectOrder(&g);
    let down = sub_indices(&g, FamilyTag::MDown);
    let (over, _) = over_poset(&order, &down, b).unwrap();
    let (under, _) = under_poset(&order, &down, b).unwrap();
    assert_eq!(over.len(), 12);
    let v = poset_contractibility(&over, Caps::default());
    assert_eq!(v.verdict, Verdict::Failed);
    assert_eq!(v.homology.unwrap().betti, vec![0, 1]);
    assert!(under.is_empty());
}

fn random_complex(r: &mut impl Rng) -> SimplicialComplex {
    let n = r.gen_range(3..=12u32);
    let m = r.gen_range(1..=8);
    let simplices: Vec<Vec<u32>> = (0..m)
        .map(|_| {
            let d = r.gen_range(1..=4);
            let mut s: Vec<u32> = (0..d).map(|_| r.gen_range(0..n)).collect();
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect();
    SimplicialComplex::from_simplices(n as usize, simplices).unwrap()
}

fn nonzero<T: Clone + Default + PartialEq>(groups: &[T]) -> Vec<T> {
    let end = groups.iter().rposition(|g| *g != T::default()).map_or(0, |i| i + 1);
    groups[..end].to_vec()
}

#[test]
fn collapse_preserves_homology() {
    let mut r = rng(11);
    for _ in 0..300 {
        let c = random_complex(&mut r);
        let trace = greedy_collapse(&c, Strategy::Seeded(r.gen()));
        trace.replay(&c).unwrap();
        let a = reduced_homology_default(&c).unwrap();
        let b = reduced_homology_default(&trace.terminal).unwrap();
        assert_eq!(nonzero(&a.betti), nonzero(&b.betti));
        assert_eq!(nonzero(&a.torsion), nonzero(&b.torsion));
    }
}

#[test]
fn cone_agrees_with_collapse() {
    let mut r = rng(12);
    for _ in 0..200 {
        let size = r.gen_range(1..=9);
        let density: f64 = r.gen_range(0.1..0.6);
        let rel: Vec<Vec<bool>> = (0..size).map(|_| (0..size).map(|_| r.gen_bool(density)).collect()).collect();
        // transitive closure of a random relation on the forward direction
        let mut leq = vec![vec![false; size]; size];
        for a in 0..size {
            for b in a..size {
                leq[a][b] = a == b || rel[a][b];
            }
        }
        for m in 0..size {
            for a in 0..size {
                for b in 0..size {
                    if leq[a][m] && leq[m][b] {
                        leq[a][b] = true;
                    }
                }
            }
        }
        let p = Poset::from_leq(size, |a, b| leq[a][b]).unwrap();
        let v = poset_contractibility(&p, Caps::default());
        if v.method == Method::Cone {
            assert!(greedy_collapse(&order_complex(&p), Strategy::MinimalKey).collapsible_to_point());
        }
        assert_eq!(order_complex(&p), order_complex(&p.opposite()));
    }
}

#[test]
fn opposite_has_same_order_complex() {
    for (tag, n, k) in [(FamilyTag::Ke, 2u8, 3usize), (FamilyTag::K, 3, 2), (FamilyTag::M, 2, 4)] {
        let objs = family(tag, n, k);
        let p = Poset::from_order(&ObjectOrder(&objs)).unwrap();
        assert_eq!(order_complex(&p), order_complex(&p.opposite()));
    }
}
