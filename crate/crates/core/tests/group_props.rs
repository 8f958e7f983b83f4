mod common;

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{family_suite, raw, Brute};
use porigami::families::{maximal_class_family, random_pair, MaximalClass};
use porigami::props::{self, PropertyCOptions};
use porigami::{Caps, Group};

#[test]
fn normal_closure_is_conjugation_invariant() {
    for m in family_suite(1 << 10) {
        let g = &m.group;
        let seed = m.x.commutator(&m.y).unwrap();
        let n = g.normal_closure(&[m.y.clone(), seed]).unwrap();
        for e in n.elements().unwrap().iter() {
            for s in g.generators() {
                assert!(n.contains(&e.conjugate_by(s)), "{}", m.name);
            }
        }
    }
}

#[test]
fn frattini_quotient_is_elementary_of_rank_two() {
    for m in family_suite(1 << 12) {
        let g = &m.group;
        if g.is_abelian() {
            continue;
        }
        let p = g.prime().unwrap().unwrap() as u128;
        let phi = g.frattini_subgroup().unwrap();
        assert_eq!(g.order() / phi.order(), p * p, "{}", m.name);
        // G/Phi has exponent p: every p-th power and commutator lies in Phi.
        for s in g.generators() {
            assert!(phi.contains(&s.pow(p as i64)), "{}", m.name);
        }
        assert!(g.derived_subgroup().is_subgroup_of(&phi), "{}", m.name);
    }
}

#[test]
fn automorphism_extension_is_symmetric() {
    for kind in [MaximalClass::Dihedral, MaximalClass::Quaternion] {
        let (g, _, _) = maximal_class_family(kind, 4, Caps::default()).unwrap();
        let brute = Brute::new(g.generators(), g.degree());
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        let mut pairs = Vec::new();
        while pairs.len() < 20 {
            let (a, b) = random_pair(&g, &mut rng);
            if g.is_generating_pair(&a, &b).unwrap() {
                pairs.push((a, b));
            }
        }
        for (a, b) in &pairs {
            for (c, d) in &pairs {
                let forward = g.extends_to_automorphism((a, b), (c, d)).unwrap();
                assert_eq!(
                    forward,
                    g.extends_to_automorphism((c, d), (a, b)).unwrap(),
                    "{kind}"
                );
                let idx = |p: &porigami::Perm| brute.index[&raw(p)];
                assert_eq!(
                    forward,
                    brute.extends((idx(a), idx(b)), (idx(c), idx(d))),
                    "{kind}"
                );
            }
        }
    }
}

#[test]
fn lower_central_series_reaches_trivial() {
    for m in family_suite(1 << 12) {
        let series = m.group.lower_central_series().unwrap();
        assert!(series.last().unwrap().is_trivial(), "{}", m.name);
        for w in series.windows(2) {
            assert!(w[1].is_subgroup_of(&w[0]));
        }
    }
}

#[test]
fn sufficient_conditions_for_property_c() {
    for m in family_suite(1 << 10) {
        let g = &m.group;
        let holds = props::property_c(g, PropertyCOptions::default())
            .unwrap()
            .holds;
        if props::is_weakly_order_closed(&g.derived_subgroup()).unwrap() {
            assert!(holds, "{}: weakly order-closed G' without (C)", m.name);
        }
        if props::is_powerful(g).unwrap() {
            assert!(holds, "{}: powerful without (C)", m.name);
        }
    }
}

#[test]
fn commutator_exponent_bounds() {
    for m in family_suite(1 << 13) {
        let g = &m.group;
        let p = g.prime().unwrap().unwrap();
        let exp = g.derived_subgroup().exponent().unwrap() as u128;
        if p == 2 {
            if g.order() >= 8 {
                assert!(exp <= g.order() / 4, "{}", m.name);
            }
        } else {
            assert!(exp * exp < g.order(), "{}", m.name);
        }
    }
}

#[test]
fn maximal_class_for_all_orders() {
    for kind in MaximalClass::ALL {
        let first = if kind == MaximalClass::Semidihedral {
            4
        } else {
            3
        };
        for n in first..=9 {
            let (g, _, _) = maximal_class_family(kind, n, Caps::default()).unwrap();
            assert_eq!(
                props::nilpotency_class(&g).unwrap(),
                (n as usize - 1, true),
                "{kind} {n}"
            );
        }
    }
    let cyclic = Group::new(vec![porigami::Perm::parse_with_degree(
        "(1,2,3,4,5,6,7,8)",
        8,
    )
    .unwrap()])
    .unwrap();
    assert_eq!(props::nilpotency_class(&cyclic).unwrap(), (1, false));
}

#[test]
fn pruned_and_exhaustive_agree() {
    for m in family_suite(1 << 8) {
        let g = &m.group;
        let pruned = PropertyCOptions {
            early_exit: false,
            ..Default::default()
        };
        let a = props::property_c(g, pruned).unwrap();
        let b = props::property_c(g, PropertyCOptions::exhaustive()).unwrap();
        assert_eq!(a.holds, b.holds, "{}", m.name);
        assert_eq!(a.orders_found, b.orders_found, "{}", m.name);
        let mut parallel = pruned;
        parallel.threads = Some(4);
        assert_eq!(props::property_c(g, parallel).unwrap(), a, "{}", m.name);
    }
}

#[test]
fn isoclinic_maximal_class_groups_share_commutator_orders() {
    for n in 4..=7u32 {
        let sets: Vec<BTreeSet<u64>> = MaximalClass::ALL
            .iter()
            .map(|&kind| {
                let (g, _, _) = maximal_class_family(kind, n, Caps::default()).unwrap();
                props::property_c(&g, PropertyCOptions::exhaustive())
                    .unwrap()
                    .orders_found
            })
            .collect();
        assert!(
            sets.iter().all(|s| *s == BTreeSet::from([1 << (n - 2)])),
            "n={n}: {sets:?}"
        );
    }
    for kind in [MaximalClass::Dihedral, MaximalClass::Quaternion] {
        let (g, _, _) = maximal_class_family(kind, 3, Caps::default()).unwrap();
        let r = props::property_c(&g, PropertyCOptions::exhaustive()).unwrap();
        assert_eq!(r.orders_found, BTreeSet::from([2]));
    }
}

#[test]
fn power_closed_example_predicates() {
    let (g, _, _) = porigami::families::power_closed_example().unwrap();
    assert!(props::is_weakly_power_closed(&g.derived_subgroup()).unwrap());
    assert!(
        !props::property_c(&g, PropertyCOptions::default())
            .unwrap()
            .holds
    );
}

#[test]
fn subgroup_enumeration_helpers() {
    let (d8, _, _) = maximal_class_family(MaximalClass::Dihedral, 3, Caps::default()).unwrap();
    assert_eq!(props::all_subgroups(&d8, 256, 1000).unwrap().len(), 10);
    assert!(props::subgroups_weakly_power_closed(&d8, 256, 1000).unwrap());
    let (q16, _, _) = maximal_class_family(MaximalClass::Quaternion, 4, Caps::default()).unwrap();
    assert!(props::subgroups_weakly_order_closed(&q16, 256, 1000).is_ok());
}
