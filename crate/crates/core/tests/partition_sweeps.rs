use enops::collapse::{greedy_collapse, Strategy};
use enops::complex::order_complex;
use enops::homology::reduced_homology_default;
use enops::operads::{enumerate_family, FamilyTag, DEFAULT_MAX_BITS};
use enops::partition::{collapse_driver, DriverOptions, OrderedPartition, PartitionSet};
use enops::poset::{is_isomorphism, over_poset, ObjectOrder, Order};

fn contexts(k: usize) -> Vec<PartitionSet> {
    enumerate_family(FamilyTag::Ke, 2, k, DEFAULT_MAX_BITS)
        .unwrap()
        .iter()
        .map(|w| PartitionSet::for_omega(w).unwrap())
        .collect()
}

#[test]
fn driver_reaches_least_element() {
    for k in 0..=4 {
        for set in contexts(k) {
            let t = collapse_driver(&set, DriverOptions { paranoid: k <= 3 }).unwrap_or_else(|f| panic!("{f}"));
            assert_eq!(t.terminal.facets().iter().next().unwrap(), &vec![t.least_element]);
            t.collapse_trace().replay(&t.initial).unwrap();
        }
    }
}

#[test]
fn partitions_match_over_poset() {
    for k in 1..=4 {
        let ke = enumerate_family(FamilyTag::Ke, 2, k, DEFAULT_MAX_BITS).unwrap();
        let md = enumerate_family(FamilyTag::MDown, 2, k, DEFAULT_MAX_BITS).unwrap();
        let all: Vec<_> = ke.iter().chain(&md).cloned().collect();
        let order = ObjectOrder(&all);
        let sub: Vec<usize> = (ke.len()..all.len()).collect();
        for (b, omega) in ke.iter().enumerate() {
            let set = PartitionSet::for_omega(omega).unwrap();
            let (over, elems) = over_poset(&order, &sub, b).unwrap();
            assert_eq!(over.len(), set.len());
            let map: Vec<usize> = set
                .elements()
                .iter()
                .map(|v| {
                    let obj = set.context().to_object(v).unwrap();
                    elems.iter().position(|&i| all[i] == obj).expect("image is in the over-poset")
                })
                .collect();
            assert!(is_isomorphism(&set.poset(), &over, &map));
        }
    }
}

#[test]
fn crossing_and_wedge_lemmas() {
    for k in 1..=4 {
        for set in contexts(k) {
            let e = set.elements();
            let p = set.poset();
            for (a, v) in e.iter().enumerate() {
                for (b, w) in e.iter().enumerate() {
                    assert_eq!(v.cap(w), v.cap_blocks(w));
                    if w.refines(v) {
                        assert!(v.preceq(w));
                    }
                    let wedge = v.wedge(w);
                    assert!(wedge.preceq(v) && wedge.preceq(w));
                    assert!(set.index_of(&wedge).is_some());
                    if v.cap(w) {
                        // wedge is the pointwise min with no compression, and the infimum
                        let min: Vec<u8> = v.alpha().iter().zip(w.alpha()).map(|(x, y)| *x.min(y)).collect();
                        assert_eq!(wedge.alpha(), &min[..]);
                        assert!(e.iter().filter(|x| x.preceq(v) && x.preceq(w)).all(|x| x.preceq(&wedge)));
                        // the block-intersection partition is the refinement infimum
                        let inf = v.inf_original(w).unwrap();
                        let i = set.index_of(&inf).unwrap();
                        assert!(p.leq(i, a) && p.leq(i, b));
                        assert!((0..e.len()).filter(|&x| p.leq(x, a) && p.leq(x, b)).all(|x| p.leq(x, i)));
                    } else {
                        assert!(v.inf_original(w).is_none());
                        // no common lower bound in the refinement order
                        assert!((0..e.len()).all(|x| !(p.leq(x, a) && p.leq(x, b))));
                    }
                    for u in e {
                        if u.cap(v) && u.cap(w) {
                            assert!(u.cap(&wedge));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn interpolation_lemma() {
    for k in 1..=4 {
        for set in contexts(k) {
            for u in set.elements() {
                for v in set.elements() {
                    if u.strictly_precedes(v) {
                        let tv = v.tilde(u).unwrap();
                        set.verify_tilde(u, v, &tv).unwrap();
                    }
                }
            }
        }
    }
}

#[test]
fn least_element_is_pointwise_minimum() {
    for k in 1..=4 {
        for set in contexts(k) {
            let e = set.elements();
            let least = set.least_element().unwrap();
            let brute: Vec<usize> = (0..e.len()).filter(|&a| e.iter().all(|v| e[a].preceq(v))).collect();
            assert_eq!(brute, vec![least]);
        }
    }
}

#[test]
fn no_one_edges_gives_single_block() {
    let omega = enops::operads::GraphObject::chain(2, 3, 2);
    let set = PartitionSet::for_omega(&omega).unwrap();
    assert_eq!(set.elements()[set.least_element().unwrap()], OrderedPartition::single(3));
}

#[test]
fn both_complexes_collapse() {
    for k in 1..=3 {
        for set in contexts(k) {
            for c in [set.complex(), order_complex(&set.poset())] {
                assert!(greedy_collapse(&c, Strategy::MinimalKey).collapsible_to_point());
                assert!(reduced_homology_default(&c).unwrap().is_trivial());
            }
        }
    }
}

#[test]
fn searches_for_missing_least_vertex() {
    let mut converse = None;
    let mut no_least = None;
    for k in 3..=4 {
        for set in contexts(k) {
            if converse.is_none() {
                converse = set.preceq_without_morphism();
            }
            if no_least.is_none() {
                no_least = set.simplex_without_least_vertex(3).map(|s| {
                    s.iter().map(|&v| set.elements()[v as usize].to_string()).collect::<Vec<_>>()
                });
            }
        }
    }
    let (v, w) = converse.expect("pointwise order without refinement occurs somewhere");
    assert!(v.preceq(&w) && !w.refines(&v));
    assert_eq!(no_least, Some(vec!["({2},{1,3,4})".to_string(), "({2,4},{1},{3})".to_string()]));
}

#[test]
fn intersections_of_over_sets() {
    for k in 1..=4 {
        for set in contexts(k) {
            let p = set.poset();
            let e = set.elements();
            for a in 0..e.len() {
                for b in 0..e.len() {
                    let common: Vec<usize> = (0..e.len()).filter(|&x| p.leq(x, a) && p.leq(x, b)).collect();
                    assert_eq!(!common.is_empty(), e[a].cap(&e[b]));
                    if let Some(inf) = e[a].inf_original(&e[b]) {
                        let i = set.index_of(&inf).unwrap();
                        let over: Vec<usize> = (0..e.len()).filter(|&x| p.leq(x, i)).collect();
                        assert_eq!(common, over);
                    }
                }
            }
        }
    }
}
