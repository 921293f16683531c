use diracspace_core::exterior::Form;
use diracspace_core::presentations::{HamiltonianSpace, Presentation};
use diracspace_core::sample;
use diracspace_core::scalar::Poly;
use diracspace_linfty::family::{check_relation, relation_suite, tuple_seed, MultibracketFamily};
use diracspace_linfty::getzler::{getzler_family, GetzlerFamily, XiVariant};
use diracspace_linfty::observables::observables_family;
use diracspace_linfty::sampling::{getzler_tuple, observables_tuple};
use diracspace_linfty::{GradedElem, LinftyError};
use rand::Rng;

fn assert_all_zero(reports: &[diracspace_linfty::family::RelationReport]) {
    for r in reports {
        assert!(r.pass(), "{} n={} seed={}: {}", r.family, r.arity, r.sample_seed, r.residual);
    }
}

fn getzler_cases() -> Vec<GetzlerFamily> {
    let mut rng = sample::rng(2024);
    let mut out = Vec::new();
    for r in [2usize, 3] {
        for n in [3usize, 4] {
            out.push(getzler_family(r, None, n, false).unwrap());
            let h = sample::closed_form(&mut rng, n, r + 1, 1);
            if !h.is_zero() {
                out.push(getzler_family(r, Some(h), n, false).unwrap());
            }
        }
    }
    out
}

#[test]
fn getzler_relations_vanish() {
    for fam in getzler_cases() {
        let reports = relation_suite(&fam, 1..=fam.r + 2, 50, 11, |s, n| getzler_tuple(s, &fam, n)).unwrap();
        assert_all_zero(&reports);
    }
}

#[test]
fn twisted_cases_are_exercised() {
    let cases = getzler_cases();
    assert!(cases.iter().filter(|f| f.h.is_some()).count() >= 3);
}

#[test]
fn non_closed_twist_breaks_a_low_relation() {
    let n = 4;
    let h = Form::term(n, &[1, 2, 3], Poly::var(n, 0));
    assert!(getzler_family(2, Some(h.clone()), n, false).is_err());
    let fam = getzler_family(2, Some(h), n, true).unwrap();
    let broken = (0..50).any(|t| {
        (1..=3).any(|k| !check_relation(&fam, &getzler_tuple(tuple_seed(3, k, t), &fam, k)).unwrap().is_zero())
    });
    assert!(broken);
}

#[test]
fn ternary_with_d_term_on_lower_forms_breaks_relations() {
    let fam = getzler_family(3, None, 4, false).unwrap().with_xi_variant(XiVariant::WithD);
    let mut broken = false;
    for t in 0..50 {
        for k in 3..=5 {
            if !check_relation(&fam, &getzler_tuple(tuple_seed(5, k, t), &fam, k)).unwrap().is_zero() {
                broken = true;
            }
        }
    }
    assert!(broken);
}

fn observables_cases() -> Vec<(Presentation, HamiltonianSpace)> {
    let mut rng = sample::rng(77);
    let mut pres = vec![
        Presentation::graph_form(1, &Form::basis(4, &[0, 1]) + &Form::basis(4, &[2, 3])).unwrap(),
        Presentation::graph_form(1, sample::closed_form(&mut rng, 4, 2, 1)).unwrap(),
        Presentation::graph_form(2, Form::basis(3, &[0, 1, 2])).unwrap(),
        Presentation::graph_form(2, sample::closed_form(&mut rng, 4, 3, 1)).unwrap(),
        Presentation::graph_form(3, Form::basis(4, &[0, 1, 2, 3])).unwrap(),
        Presentation::graph_form(3, Form::term(4, &[0, 1, 2, 3], Poly::one(4) + Poly::var(4, 0).pow(2))).unwrap(),
        Presentation::regular_coordinate(2, vec![0, 1], Form::basis(4, &[0, 1, 2])).unwrap(),
    ];
    pres.push(Presentation::regular_coordinate(1, vec![0, 1], Form::basis(3, &[0, 1])).unwrap());
    pres.into_iter()
        .map(|p| {
            let s = HamiltonianSpace::new(&p, 3, 2);
            (p, s)
        })
        .collect()
}

#[test]
fn observables_fixtures_have_nontrivial_hamiltonian_fields() {
    for (p, s) in observables_cases() {
        assert!(s.basis.iter().any(|(a, x)| !a.is_zero() && !x.is_zero()), "{:?}", p);
    }
}

#[test]
fn observables_relations_vanish() {
    for (pres, space) in observables_cases() {
        let fam = observables_family(&pres).unwrap();
        let reports =
            relation_suite(&fam, 1..=fam.p + 2, 50, 13, |s, n| observables_tuple(s, &fam, &space, n)).unwrap();
        assert_all_zero(&reports);
    }
}

#[test]
fn unverified_presentations_are_rejected() {
    let n = 3;
    let bad = Presentation::graph_form(1, Form::term(n, &[0, 1], Poly::var(n, 2))).unwrap();
    assert!(matches!(observables_family(&bad), Err(LinftyError::Unverified(_))));
}

#[test]
fn relation_arity_is_bounded() {
    let fam = getzler_family(2, None, 3, false).unwrap();
    let v = getzler_tuple(1, &fam, 5);
    assert!(matches!(check_relation(&fam, &v), Err(LinftyError::ArityExceeded { .. })));
}

#[test]
fn misplaced_payload_is_a_degree_violation() {
    let fam = getzler_family(2, None, 3, false).unwrap();
    let wrong = GradedElem::form(-1, Form::basis(3, &[0, 1]));
    let e = getzler_tuple(9, &fam, 1).remove(0);
    let err = diracspace_linfty::bracket(&fam, &[&e, &wrong]).unwrap_err();
    assert!(matches!(err, LinftyError::DegreeViolation(_)));
    assert!(fam.check_element(&GradedElem::form(-1, Form::scalar(Poly::var(3, 0)))).is_ok());
}

#[test]
fn brackets_do_not_depend_on_the_chosen_hamiltonian_field() {
    let pres = Presentation::graph_form(2, Form::basis(4, &[0, 1, 2])).unwrap();
    let space = HamiltonianSpace::new(&pres, 2, 2);
    let kernel = space.kernel_fields();
    assert!(!kernel.is_empty());
    let fam = observables_family(&pres).unwrap();
    let mut rng = sample::rng(15);
    for k in 2..=3 {
        for _ in 0..20 {
            let hs: Vec<_> = (0..k).map(|_| space.sample(&mut rng, 3)).collect();
            let base: Vec<GradedElem> = hs.iter().cloned().map(GradedElem::ham).collect();
            let slot = rng.gen_range(0..k);
            let mut shifted = base.clone();
            let mut h = hs[slot].clone();
            h.x = &h.x + &kernel[rng.gen_range(0..kernel.len())].mul_poly(&sample::poly(&mut rng, 4, 1));
            shifted[slot] = GradedElem::ham(h);
            let a = diracspace_linfty::bracket(&fam, &base.iter().collect::<Vec<_>>()).unwrap();
            let b = diracspace_linfty::bracket(&fam, &shifted.iter().collect::<Vec<_>>()).unwrap();
            let value = |e: &GradedElem| e.as_ham().map(|h| h.alpha.clone()).or(e.as_form().cloned());
            assert_eq!(value(&a), value(&b));
        }
    }
}
