use diracspace_core::sample;
use diracspace_core::scalar::Poly;
use diracspace_core::{Form, VField};
use diracspace_core::courant::SectionEp;
use diracspace_linfty::family::tuple_seed;
use diracspace_linfty::getzler::{getzler_family, GetzlerFamily, XiVariant};
use diracspace_linfty::sampling::getzler_tuple;
use diracspace_linfty::{bracket, GradedElem};
use diracspace_oracle::multibracket::{oracle_multibracket, oracle_multibracket_with};

/// Compares engine and oracle on `trials` sampled tuples of each arity; returns how many of
/// the compared values were nonzero.
fn compare(fam: &GetzlerFamily, arities: &[usize], trials: usize, seed: u64) -> usize {
    let mut nonzero = 0;
    for &n in arities {
        for t in 0..trials {
            let tuple = getzler_tuple(tuple_seed(seed, n, t), fam, n);
            let refs: Vec<&GradedElem> = tuple.iter().collect();
            let engine = bracket(fam, &refs).unwrap();
            let oracle = oracle_multibracket(fam.r, fam.h.as_ref(), fam.n, &tuple).unwrap();
            let degs: Vec<i32> = tuple.iter().map(|e| e.degree).collect();
            assert!(engine.sub(&oracle).unwrap().is_zero(), "r = {}, arity {n}, degrees {degs:?}: engine {engine} vs oracle {oracle}", fam.r);
            if !engine.is_zero() {
                nonzero += 1;
            }
        }
    }
    nonzero
}

#[test]
fn oracle_matches_engine_untwisted() {
    for (r, n) in [(2, 3), (2, 4), (3, 3), (3, 4)] {
        let fam = getzler_family(r, None, n, false).unwrap();
        let nonzero = compare(&fam, &[1, 2, 3, 4, 5], 25, 7 + r as u64);
        assert!(nonzero > 25, "r = {r}, n = {n}: only {nonzero} nonzero values");
    }
}

#[test]
fn oracle_matches_engine_twisted() {
    let mut rng = sample::rng(2024);
    for (r, n) in [(2, 3), (2, 4), (3, 4)] {
        let h = sample::closed_form(&mut rng, n, r + 1, 1);
        assert!(!h.is_zero());
        let fam = getzler_family(r, Some(h), n, false).unwrap();
        let nonzero = compare(&fam, &[1, 2, 3, 4, 5], 25, 11 + r as u64);
        assert!(nonzero > 25);
    }
}

#[test]
fn oracle_matches_engine_at_arity_five() {
    let fam = getzler_family(4, None, 4, false).unwrap();
    let nonzero = compare(&fam, &[5], 25, 13);
    assert!(nonzero > 0, "arity five is vacuous");
}

#[test]
fn arity_five_is_degree_trivial_below_r_four() {
    for r in 2..=3 {
        let fam = getzler_family(r, None, 3, false).unwrap();
        for t in 0..25 {
            let tuple = getzler_tuple(tuple_seed(17, 5, t), &fam, 5);
            assert!(oracle_multibracket(r, None, 3, &tuple).unwrap().is_zero());
        }
    }
}

fn ternary_with_form(r: usize, n: usize, seed: u64) -> Vec<GradedElem> {
    let mut rng = sample::rng(seed);
    vec![
        GradedElem::form(-1, sample::form(&mut rng, n, r - 2, 2)),
        GradedElem::section(sample::section(&mut rng, n, r - 1, 2)),
        GradedElem::section(sample::section(&mut rng, n, r - 1, 2)),
    ]
}

#[test]
fn oracle_prefers_the_ternary_without_d_term() {
    let (r, n) = (3, 4);
    let printed = getzler_family(r, None, n, false).unwrap();
    let with_d = printed.clone().with_xi_variant(XiVariant::WithD);
    let mut disagreements = 0;
    for seed in 0..10 {
        let tuple = ternary_with_form(r, n, seed);
        let refs: Vec<&GradedElem> = tuple.iter().collect();
        let oracle = oracle_multibracket(r, None, n, &tuple).unwrap();
        assert!(bracket(&printed, &refs).unwrap().sub(&oracle).unwrap().is_zero());
        if !bracket(&with_d, &refs).unwrap().sub(&oracle).unwrap().is_zero() {
            disagreements += 1;
        }
    }
    assert!(disagreements > 0);
}

#[test]
fn reordering_sign_is_trivial_in_canonical_orders() {
    let (r, n) = (2, 3);
    let mut rng = sample::rng(77);
    let mut seen_difference = false;
    for _ in 0..10 {
        let e = GradedElem::section(sample::section(&mut rng, n, r - 1, 2));
        let f = GradedElem::section(sample::section(&mut rng, n, r - 1, 2));
        let xi = GradedElem::form(-1, sample::form(&mut rng, n, 0, 2));
        for canonical in [vec![e.clone(), xi.clone()], vec![xi.clone(), e.clone(), f.clone()], vec![e.clone(), f.clone()]] {
            let with = oracle_multibracket_with(r, None, n, &canonical, true).unwrap();
            let without = oracle_multibracket_with(r, None, n, &canonical, false).unwrap();
            assert!(with.sub(&without).unwrap().is_zero());
        }
        let swapped = [xi.clone(), e.clone()];
        let with = oracle_multibracket_with(r, None, n, &swapped, true).unwrap();
        let without = oracle_multibracket_with(r, None, n, &swapped, false).unwrap();
        if !with.is_zero() {
            assert!(with.add(&without).unwrap().is_zero());
            seen_difference = true;
        }
    }
    assert!(seen_difference);
}

#[test]
fn binary_bracket_of_sections_is_courant() {
    // l2 on two sections at r = 2 is the Courant bracket
    let n = 2;
    let e1 = SectionEp::new(1, VField::basis(n, 0), Form::zero(n, 1)).unwrap();
    let e2 = SectionEp::new(1, VField::zero(n), Form::term(n, &[1], Poly::var(n, 0))).unwrap();
    let out = oracle_multibracket(2, None, n, &[GradedElem::section(e1.clone()), GradedElem::section(e2.clone())]).unwrap();
    let want = diracspace_core::courant::courant(&e1, &e2, None).unwrap();
    assert!(out.sub(&GradedElem::section(want)).unwrap().is_zero());
}
