mod common;

use proptest::prelude::*;

use porigami::families::{wollmilchsau_group, MaximalClass};
use porigami::presentation::{
    coset_realization, parse_presentation, parse_relation, todd_coxeter, Word,
};
use porigami::{Caps, Group, Perm, StabilizerChain};

fn suite() -> Vec<String> {
    let mut out = vec![
        "<a | a^7>".to_string(),
        "<a,b | a^2, b^3, (a*b)^5>".to_string(),
        "<a,b | a^2, b^3, (a*b)^4>".to_string(),
        "<x,y | x^3, y^3, (x*y)^3, (x^-1*y)^3>".to_string(),
    ];
    for kind in MaximalClass::ALL {
        for n in 3..=7 {
            out.push(kind.presentation(n));
        }
    }
    for n in 1..=3u32 {
        let (big, half) = (1u64 << (n + 1), 1u64 << n);
        out.push(format!(
            "<x,y | x^{big}, y^{big}, x^{half}*y^{half}, x^-1*y*x*y>"
        ));
    }
    out
}

#[test]
fn relators_hold_and_cosets_match_chain_order() {
    for text in suite() {
        let pres = parse_presentation(&text).unwrap();
        let table = todd_coxeter(&pres, 1 << 16).unwrap();
        let gens = coset_realization(&table);
        let n = table.num_cosets();
        for r in pres.relators() {
            assert!(r.evaluate(&gens, n).is_identity(), "{text}: relator {r:?}");
        }
        // Full Schreier-Sims, not the regular-action shortcut.
        assert_eq!(StabilizerChain::new(n, &gens).order(), n as u128, "{text}");
    }
}

#[test]
fn presentation_display_round_trips() {
    for text in suite() {
        let pres = parse_presentation(&text).unwrap();
        let again = parse_presentation(&pres.to_string()).unwrap();
        assert_eq!(again.relators(), pres.relators());
        assert_eq!(again.names(), pres.names());
    }
}

#[test]
fn derived_subgroup_of_w_n_is_cyclic() {
    for n in 1..=3 {
        let (w, _, _) = wollmilchsau_group(n, Caps::default()).unwrap();
        let d = w.derived_subgroup();
        assert_eq!(d.order(), 1 << n);
        assert_eq!(d.exponent().unwrap() as u128, d.order());
    }
}

/// Twists `a` with `s^-1 r s = r^a` defining a semidirect product of order `p^(l+m)`.
fn valid_twists(p: u64, l: u32, m: u32) -> Vec<u64> {
    let modulus = p.pow(l);
    (1..modulus)
        .filter(|a| a % p != 0)
        .filter(|&a| common::pow_mod(a as u128, p.pow(m) as u128, modulus as u128) == 1)
        .collect()
}

fn metacyclic() -> impl Strategy<Value = (u64, u32, u32, u64)> {
    prop_oneof![Just(2u64), Just(3), Just(5), Just(7)]
        .prop_flat_map(|p| {
            let max = (12.0 / (p as f64).log2()).floor() as u32;
            (Just(p), 1..=max - 1).prop_flat_map(move |(p, l)| (Just(p), Just(l), 1..=max - l))
        })
        .prop_flat_map(|(p, l, m)| {
            let twists = valid_twists(p, l, m);
            (Just(p), Just(l), Just(m), prop::sample::select(twists))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn metacyclic_orders((p, l, m, a) in metacyclic()) {
        let text = format!("<r,s | r^{}, s^{}, s^-1*r*s = r^{a}>", p.pow(l), p.pow(m));
        let pres = parse_presentation(&text).unwrap();
        let (g, _) = Group::from_presentation(&pres, Caps::default()).unwrap();
        prop_assert_eq!(g.order(), (p as u128).pow(l + m));
    }

    #[test]
    fn word_evaluation_is_a_homomorphism(
        u in prop::collection::vec((0usize..2, -3i64..=3), 0..6),
        v in prop::collection::vec((0usize..2, -3i64..=3), 0..6),
    ) {
        let gens = [
            Perm::parse_with_degree("(1,2,3,4,5)", 6).unwrap(),
            Perm::parse_with_degree("(1,6)(2,3)", 6).unwrap(),
        ];
        let (u, v) = (Word::from_letters(u), Word::from_letters(v));
        prop_assert_eq!(u.concat(&v).evaluate(&gens, 6), &u.evaluate(&gens, 6) * &v.evaluate(&gens, 6));
        prop_assert!(u.concat(&u.inverse()).evaluate(&gens, 6).is_identity());
    }
}

#[test]
fn relation_syntax() {
    let names = vec!["a".to_string(), "b".to_string()];
    let w = parse_relation("a*b = b*a", &names).unwrap();
    let x = Perm::parse_with_degree("(1,2)", 4).unwrap();
    let y = Perm::parse_with_degree("(3,4)", 4).unwrap();
    assert!(w.evaluate(&[x, y], 4).is_identity());
    assert!(parse_relation("a*c", &names).is_err());
    assert!(parse_presentation("<a,b | a^2,, b>").is_err());
}
