use diracspace_core::courant::{pairing, SectionEp};
use diracspace_core::exterior::{Form, VField};
use diracspace_core::sample;
use diracspace_core::scalar::{int, rat, Poly};
use diracspace_linfty::family::{bracket, MultibracketFamily};
use diracspace_linfty::getzler::{cyclic_pairing_ternary, getzler_family};
use diracspace_linfty::morphism::{
    canonical_families, canonical_morphism_sigma, check_lie2_morphism, eval_two_form, p1_prequantization,
    Equation, Lie2Morphism, MorphismSample,
};
use diracspace_linfty::sampling::{e0_element, getzler_element};
use diracspace_linfty::{GradedElem, LinftyError, Result};

fn x(n: usize, i: usize) -> Poly {
    Poly::var(n, i)
}

fn e0_samples(seed: u64, n: usize, count: usize) -> Vec<MorphismSample> {
    let mut rng = sample::rng(seed);
    (0..count)
        .map(|_| MorphismSample {
            x: e0_element(&mut rng, n),
            y: e0_element(&mut rng, n),
            z: e0_element(&mut rng, n),
            f: None,
        })
        .collect()
}

fn sigmas() -> Vec<Form> {
    let n = 3;
    vec![Form::basis(n, &[0, 1]), sample::closed_form(&mut sample::rng(8), n, 2, 1)]
}

#[test]
fn canonical_morphism_satisfies_all_equations() {
    for sigma in sigmas() {
        assert!(sigma.d().is_zero());
        let (src, dst) = canonical_families(Some(sigma.clone()), 3, false).unwrap();
        let m = canonical_morphism_sigma(Some(sigma), false).unwrap();
        let report = check_lie2_morphism(&m, &src, &dst, &e0_samples(21, 3, 50)).unwrap();
        assert!(report.pass(), "{:?}", report.residuals.iter().find(|r| !r.residual.is_zero()));
        assert_eq!(report.residuals.len(), 100);
    }
}

#[test]
fn non_closed_sigma_leaves_its_differential_in_the_ternary_equation() {
    let n = 3;
    let sigma = Form::term(n, &[0, 1], x(n, 2));
    let dsigma = sigma.d();
    assert!(canonical_morphism_sigma(Some(sigma.clone()), false).is_err());
    let (src, dst) = canonical_families(Some(sigma.clone()), n, true).unwrap();
    let m = canonical_morphism_sigma(Some(sigma), true).unwrap();
    let samples = e0_samples(22, n, 50);
    let report = check_lie2_morphism(&m, &src, &dst, &samples).unwrap();
    assert!(report.failures(Equation::BinaryDefect).is_empty());
    let mut nonzero = 0;
    for r in report.residuals.iter().filter(|r| r.equation == Equation::TernaryDefect) {
        let s = &samples[r.sample];
        let fields: Vec<&VField> = [&s.x, &s.y, &s.z].iter().map(|e| &e.as_section().unwrap().x).collect();
        let expected = dsigma.interior(fields[0]).interior(fields[1]).interior(fields[2]);
        assert_eq!(r.residual, GradedElem::form(-1, expected.clone()));
        if !expected.is_zero() {
            nonzero += 1;
        }
    }
    assert!(nonzero > 0);
}

#[test]
fn canonical_maps_on_basis_fields() {
    let n = 3;
    let m = canonical_morphism_sigma(Some(Form::basis(n, &[0, 1])), false).unwrap();
    let e1 = GradedElem::section(SectionEp::vector(0, VField::basis(n, 0)));
    let e2 = GradedElem::section(SectionEp::vector(0, VField::basis(n, 1)));
    assert_eq!((m.phi0)(&e1).unwrap(), GradedElem::section(SectionEp::vector(1, VField::basis(n, 0))));
    assert_eq!((m.phi2)(&e1, &e2).unwrap(), GradedElem::form(-1, Form::scalar(Poly::one(n))));
    assert_eq!(eval_two_form(&Form::basis(n, &[0, 1]), &VField::basis(n, 0), &VField::basis(n, 1)), Poly::one(n));
}

#[test]
fn ternary_on_exact_sections_is_quarter_bracket_sum() {
    let n = 3;
    let fam = getzler_family(2, None, n, false).unwrap();
    let mut rng = sample::rng(23);
    for _ in 0..20 {
        let xs: Vec<VField> = (0..3).map(|_| sample::vfield(&mut rng, n, 2)).collect();
        let fs: Vec<Poly> = (0..3).map(|_| sample::poly(&mut rng, n, 2)).collect();
        let es: Vec<GradedElem> = (0..3)
            .map(|i| GradedElem::section(SectionEp::new(1, xs[i].clone(), Form::scalar(fs[i].clone()).d()).unwrap()))
            .collect();
        let j = bracket(&fam, &[&es[0], &es[1], &es[2]]).unwrap();
        let mut expected = Poly::zero(n);
        for s in 0..3 {
            let (a, b, c) = (s, (s + 1) % 3, (s + 2) % 3);
            expected = &expected + &xs[a].bracket(&xs[b]).apply(&fs[c]);
        }
        assert_eq!(j.neg(), GradedElem::form(-1, Form::scalar(expected.scale(&rat(1, 4)))));
    }
}

#[test]
fn second_order_family_matches_courant_lie_two_algebra() {
    let n = 4;
    let fam = getzler_family(2, None, n, false).unwrap();
    let mut rng = sample::rng(24);
    for _ in 0..25 {
        let es: Vec<SectionEp> = (0..3).map(|_| sample::section(&mut rng, n, 1, 2)).collect();
        let gs: Vec<GradedElem> = es.iter().cloned().map(GradedElem::section).collect();
        let j = bracket(&fam, &[&gs[0], &gs[1], &gs[2]]).unwrap();
        assert_eq!(j, GradedElem::form(-1, cyclic_pairing_ternary([&es[0], &es[1], &es[2]]).unwrap()));
        let f = sample::poly(&mut rng, n, 2);
        let fe = GradedElem::form(-1, Form::scalar(f.clone()));
        let half = pairing(&es[0], &SectionEp::form(1, Form::scalar(f).d())).unwrap().scale(&rat(1, 2));
        assert_eq!(bracket(&fam, &[&gs[0], &fe]).unwrap(), GradedElem::form(-1, half.clone()));
        assert_eq!(bracket(&fam, &[&fe, &gs[0]]).unwrap(), GradedElem::form(-1, -&half));
    }
}

#[test]
fn identity_morphism_exercises_every_equation() {
    let n = 3;
    let fam = getzler_family(2, None, n, false).unwrap();
    let id = Lie2Morphism {
        phi0: Box::new(|e: &GradedElem| -> Result<GradedElem> { Ok(e.clone()) }),
        phi1: Box::new(|e: &GradedElem| -> Result<GradedElem> { Ok(e.clone()) }),
        phi2: Box::new(|_: &GradedElem, _: &GradedElem| -> Result<GradedElem> { Ok(GradedElem::zero(-1)) }),
    };
    let mut rng = sample::rng(25);
    let samples: Vec<MorphismSample> = (0..20)
        .map(|_| MorphismSample {
            x: getzler_element(&mut rng, &fam, 0),
            y: getzler_element(&mut rng, &fam, 0),
            z: getzler_element(&mut rng, &fam, 0),
            f: Some(getzler_element(&mut rng, &fam, -1)),
        })
        .collect();
    let report = check_lie2_morphism(&id, &fam, &fam, &samples).unwrap();
    assert!(report.pass());
    assert_eq!(report.residuals.len(), 80);

    let doubled = Lie2Morphism {
        phi0: Box::new(|e: &GradedElem| -> Result<GradedElem> { Ok(e.scale(&int(2))) }),
        phi1: Box::new(|e: &GradedElem| -> Result<GradedElem> { Ok(e.scale(&int(2))) }),
        phi2: Box::new(|_: &GradedElem, _: &GradedElem| -> Result<GradedElem> { Ok(GradedElem::zero(-1)) }),
    };
    let report = check_lie2_morphism(&doubled, &fam, &fam, &samples).unwrap();
    assert!(!report.failures(Equation::BinaryDefect).is_empty());
    assert!(report.failures(Equation::ChainMap).is_empty());
}

/// Lie 2-algebra of forms `C(M) -> Omega^1(M)` with every bracket above arity 1 zero.
struct Abelian(usize);

impl MultibracketFamily for Abelian {
    fn name(&self) -> String {
        "abelian".into()
    }
    fn dim(&self) -> usize {
        self.0
    }
    fn min_degree(&self) -> i32 {
        -1
    }
    fn max_arity(&self) -> usize {
        1
    }
    fn check_element(&self, e: &GradedElem) -> Result<()> {
        match e.as_form() {
            Some(f) if f.is_zero() || f.deg() == 1 + e.degree => Ok(()),
            _ => Err(LinftyError::DegreeViolation(e.to_string())),
        }
    }
    fn eval(&self, v: &[&GradedElem]) -> Result<GradedElem> {
        Ok(GradedElem::form(v[0].degree + 1, v[0].as_form().unwrap().d()))
    }
}

#[test]
fn zero_maps_between_abelian_families_pass() {
    let n = 3;
    let mut rng = sample::rng(26);
    let mut one_form = || GradedElem::form(0, sample::form(&mut rng, n, 1, 2));
    let samples: Vec<MorphismSample> = (0..10)
        .map(|_| MorphismSample {
            x: one_form(),
            y: one_form(),
            z: one_form(),
            f: Some(GradedElem::form(-1, Form::scalar(Poly::var(n, 0)))),
        })
        .collect();
    let report = check_lie2_morphism(&Lie2Morphism::zero(), &Abelian(n), &Abelian(n), &samples).unwrap();
    assert!(report.pass());
}

#[test]
fn higher_families_are_not_lie_two_algebras() {
    let m = Lie2Morphism::zero();
    let big = getzler_family(3, None, 3, false).unwrap();
    let small = getzler_family(2, None, 3, false).unwrap();
    assert!(matches!(check_lie2_morphism(&m, &small, &big, &[]), Err(LinftyError::ArityMismatch(_))));
}

#[test]
fn prequantization_is_a_morphism() {
    let n = 2;
    let pq = p1_prequantization(&Form::basis(n, &[0, 1])).unwrap();
    assert!(pq.check_pair(&x(n, 0), &x(n, 1)).unwrap().is_zero());
    let mut rng = sample::rng(27);
    for _ in 0..50 {
        let (f, g) = (sample::poly(&mut rng, n, 2), sample::poly(&mut rng, n, 2));
        assert!(pq.check_pair(&f, &g).unwrap().is_zero());
    }
    let four = p1_prequantization(&(&Form::basis(4, &[0, 1]) + &Form::basis(4, &[2, 3]))).unwrap();
    for _ in 0..20 {
        let (f, g) = (sample::poly(&mut rng, 4, 2), sample::poly(&mut rng, 4, 2));
        assert!(four.check_pair(&f, &g).unwrap().is_zero());
    }
}

#[test]
fn prequantization_of_constants_is_central() {
    let n = 2;
    let pq = p1_prequantization(&Form::basis(n, &[0, 1])).unwrap();
    let c = Poly::from_int(n, 5);
    assert_eq!(pq.map(&c).unwrap(), SectionEp::form(0, Form::scalar(Poly::from_int(n, -5))));
    let pc = GradedElem::section(pq.map(&c).unwrap());
    let pg = GradedElem::section(pq.map(&(&x(n, 0) * &x(n, 1))).unwrap());
    assert!(bracket(&pq.target, &[&pc, &pg]).unwrap().is_zero());
}

#[test]
fn degenerate_forms_have_no_prequantization() {
    assert!(p1_prequantization(&Form::basis(4, &[0, 1])).is_err());
    assert!(p1_prequantization(&Form::basis(3, &[0, 1])).is_err());
    assert!(p1_prequantization(&Form::term(2, &[0, 1], x(2, 0))).is_err());
}
