use diracspace_core::courant::{dorfman, pairing, SectionEp};
use diracspace_core::exterior::{Form, MultiVec, VField};
use diracspace_core::presentations::{
    ham_bracket, ham_bracket_datum, hamiltonian_solve, hamiltonian_verify, isotropy_witnesses, nested_identity_residual,
    verify_involutive, verify_isotropic, HamiltonianDatum, HamiltonianSpace, Presentation,
};
use diracspace_core::sample;
use diracspace_core::scalar::{int, Poly};

fn x(n: usize, i: usize) -> Poly {
    Poly::var(n, i)
}

fn volume(n: usize) -> Form {
    Form::basis(n, &(0..n).collect::<Vec<_>>())
}

fn hagi() -> Presentation {
    Presentation::regular_coordinate(2, vec![0, 1], Form::basis(4, &[0, 1, 2])).unwrap()
}

fn solved(pres: &Presentation, alpha: Form) -> HamiltonianDatum {
    let xa = hamiltonian_solve(pres, &alpha).unwrap().expect("Hamiltonian");
    HamiltonianDatum::new(pres, alpha, xa).unwrap()
}

#[test]
fn member_examples() {
    let n = 3;
    let omega = sample::form(&mut sample::rng(1), n, 3, 2);
    let g = Presentation::graph_form(2, omega.clone()).unwrap();
    let v = sample::vfield(&mut sample::rng(2), n, 2);
    assert!(g.member(&SectionEp::new(2, v.clone(), -&omega.interior(&v)).unwrap()).unwrap());

    let top = volume(n);
    let st = Presentation::scaled_top(x(n, 0), top.clone()).unwrap();
    let d2 = VField::basis(n, 1);
    assert!(st.member(&SectionEp::new(2, d2.mul_poly(&x(n, 0)), -&top.interior(&d2)).unwrap()).unwrap());
    assert!(!st.member(&SectionEp::vector(2, d2)).unwrap());

    let reg = hagi();
    assert!(reg.member(&SectionEp::form(2, Form::basis(4, &[2, 3]))).unwrap());
    assert!(!reg.member(&SectionEp::form(2, Form::basis(4, &[0, 3]))).unwrap());
    assert!(reg.member(&SectionEp::zero(5, 2)).is_err());
}

#[test]
fn graph_forms_are_isotropic() {
    let mut rng = sample::rng(10);
    for n in 2..=5 {
        for p in 1..n {
            let omega = sample::form(&mut rng, n, p + 1, 2);
            let report = verify_isotropic(&Presentation::graph_form(p, omega).unwrap());
            assert!(report.pass, "{:?}", report.witnesses);
        }
    }
}

#[test]
fn top_multivector_graph_is_isotropic() {
    let pres = Presentation::graph_multivector(2, volume_multivector(3)).unwrap();
    assert!(verify_isotropic(&pres).pass);
    assert!(verify_involutive(&pres).pass);
}

fn volume_multivector(n: usize) -> MultiVec {
    MultiVec::basis(n, &(0..n).collect::<Vec<_>>())
}

#[test]
fn multivector_degree_guard() {
    assert!(Presentation::graph_multivector(2, MultiVec::basis(4, &[0, 1, 2])).is_err());
    assert!(Presentation::graph_multivector(2, MultiVec::zero(4, 3)).is_ok());
}

#[test]
fn corrupted_regular_family_fails() {
    let pres = hagi();
    let mut gens = pres.generators();
    assert!(isotropy_witnesses(&gens).is_empty());
    gens.push(SectionEp::form(2, Form::basis(4, &[0, 3])));
    let w = isotropy_witnesses(&gens);
    assert!(!w.is_empty());
}

#[test]
fn involutivity_examples() {
    assert!(verify_involutive(&hagi()).pass);

    let n = 3;
    let bad = Presentation::graph_form(1, Form::term(n, &[0, 1], x(n, 2))).unwrap();
    let r = verify_involutive(&bad);
    assert!(!r.pass);
    assert_eq!(r.witnesses, vec![format!("d(omega) = {}", volume(3))]);

    let n = 5;
    let omega = Form::term(n, &[1, 2, 3], x(n, 0));
    assert_eq!(omega.d(), Form::basis(n, &[0, 1, 2, 3]));
    let reg = Presentation::regular_coordinate(2, vec![0, 1, 2], omega).unwrap();
    assert!(verify_isotropic(&reg).pass);
    assert!(!verify_involutive(&reg).pass);
}

#[test]
fn regular_dimension_constraint() {
    assert!(Presentation::regular_coordinate(2, vec![0, 1, 2], Form::zero(4, 3)).is_err());
    assert!(Presentation::regular_coordinate(2, vec![0, 1, 2, 3], Form::zero(4, 3)).is_ok());
}

#[test]
fn regular_involutivity_agrees_with_dorfman_closure() {
    let mut rng = sample::rng(20);
    for _ in 0..20 {
        let omega = sample::form(&mut rng, 4, 3, 1);
        let pres = Presentation::regular_coordinate(2, vec![0, 1], omega.clone()).unwrap();
        assert!(verify_isotropic(&pres).pass);
        let closure = diracspace_core::presentations::closure_witnesses(&pres);
        assert_eq!(verify_involutive(&pres).pass, closure.is_empty(), "{omega}");
    }
    let omega = Form::term(5, &[1, 2, 3], x(5, 0));
    let pres = Presentation::regular_coordinate(2, vec![0, 1, 2], omega).unwrap();
    assert!(!diracspace_core::presentations::closure_witnesses(&pres).is_empty());
}

#[test]
fn graph_form_involutivity_agrees_with_dorfman_closure() {
    let mut rng = sample::rng(21);
    for _ in 0..10 {
        let closed = sample::closed_form(&mut rng, 3, 3, 1);
        let pres = Presentation::graph_form(1, sample::form(&mut rng, 3, 2, 1)).unwrap();
        assert_eq!(verify_involutive(&pres).pass, diracspace_core::presentations::closure_witnesses(&pres).is_empty());
        let pres = Presentation::graph_form(2, closed).unwrap();
        assert!(verify_involutive(&pres).pass);
        assert!(diracspace_core::presentations::closure_witnesses(&pres).is_empty());
    }
}

#[test]
fn bivector_graphs() {
    let n = 3;
    let poisson = MultiVec::term(n, &[0, 1], x(n, 2));
    assert!(verify_involutive(&Presentation::graph_multivector(1, poisson).unwrap()).pass);
    let rot = &(&MultiVec::term(n, &[0, 1], x(n, 2)) + &MultiVec::term(n, &[1, 2], x(n, 0))) - &MultiVec::term(n, &[0, 2], x(n, 1));
    assert!(verify_involutive(&Presentation::graph_multivector(1, rot).unwrap()).pass);
    // {x1,x2} = x1, {x2,x3} = x2, {x3,x1} = x3 has Jacobiator x1 + x2 + x3.
    let bad = &(&MultiVec::term(n, &[0, 1], x(n, 0)) + &MultiVec::term(n, &[1, 2], x(n, 1))) - &MultiVec::term(n, &[0, 2], x(n, 2));
    let pres = Presentation::graph_multivector(1, bad).unwrap();
    assert!(verify_isotropic(&pres).pass);
    assert!(!verify_involutive(&pres).pass);
}

#[test]
fn scaled_top_is_dirac() {
    let pres = Presentation::scaled_top(x(3, 0), volume(3)).unwrap();
    assert!(verify_isotropic(&pres).pass);
    assert!(verify_involutive(&pres).pass);
    let pres = Presentation::scaled_top(&x(4, 0) * &x(4, 1) + Poly::one(4), volume(4)).unwrap();
    assert!(verify_isotropic(&pres).pass);
    assert!(verify_involutive(&pres).pass);
}

#[test]
fn hemi_bracket_counterexample() {
    let n = 4;
    let pres = Presentation::graph_form(2, Form::basis(n, &[0, 1, 2])).unwrap();
    let zero = Form::zero(n, 1);
    assert!(hamiltonian_verify(&pres, &zero, &VField::basis(n, 3)).unwrap());
    assert!(hamiltonian_verify(&pres, &zero, &VField::zero(n)).unwrap());
    let beta = &Form::term(n, &[3], x(n, 0)) + &Form::term(n, &[0], x(n, 3));
    assert!(hamiltonian_verify(&pres, &beta, &VField::zero(n)).unwrap());
    // The two admissible fields give different Lie derivatives of beta.
    assert_eq!(beta.lie(&VField::basis(n, 3)), Form::basis(n, &[0]));
    assert!(beta.lie(&VField::zero(n)).is_zero());
    assert!(!hamiltonian_verify(&pres, &Form::term(n, &[3], x(n, 0)), &VField::zero(n)).unwrap());
}

#[test]
fn solve_examples() {
    let n = 2;
    let pres = Presentation::graph_form(1, Form::basis(n, &[0, 1])).unwrap();
    let mut rng = sample::rng(30);
    for _ in 0..20 {
        let f = sample::poly(&mut rng, n, 3);
        let xf = hamiltonian_solve(&pres, &Form::scalar(f.clone())).unwrap().unwrap();
        assert_eq!(xf, VField::from_comps(vec![-&f.partial(1), f.partial(0)]));
        let g = sample::poly(&mut rng, n, 3);
        let hf = HamiltonianDatum::new(&pres, Form::scalar(f.clone()), xf).unwrap();
        let hg = solved(&pres, Form::scalar(g.clone()));
        let classical = &(&f.partial(0) * &g.partial(1)) - &(&f.partial(1) * &g.partial(0));
        assert_eq!(ham_bracket(&hf, &hg).as_poly(), classical);
    }

    let n = 3;
    let pres = Presentation::graph_form(2, volume(n)).unwrap();
    let alpha = Form::term(n, &[1], x(n, 0));
    let xa = hamiltonian_solve(&pres, &alpha).unwrap().unwrap();
    assert_eq!(xa, VField::basis(n, 2).scale(&int(-1)));
    assert!(hamiltonian_verify(&pres, &alpha, &xa).unwrap());
    assert!(hamiltonian_solve(&pres, &Form::zero(n, 1)).unwrap().unwrap().is_zero());

    let pres = Presentation::graph_form(2, Form::basis(4, &[0, 1, 2])).unwrap();
    assert!(hamiltonian_solve(&pres, &Form::term(4, &[3], x(4, 0))).unwrap().is_none());

    let curved = Presentation::graph_form(2, Form::term(n, &[0, 1, 2], x(n, 0))).unwrap();
    assert!(hamiltonian_solve(&curved, &alpha).is_err());
    let st = Presentation::scaled_top(x(n, 0), volume(n)).unwrap();
    assert!(hamiltonian_solve(&st, &alpha).is_err());
}

#[test]
fn regular_solve_matches_space() {
    let pres = hagi();
    let alpha = Form::term(4, &[0], x(4, 2));
    assert!(hamiltonian_solve(&pres, &Form::term(4, &[0], x(4, 1))).unwrap().is_none());
    let xa = hamiltonian_solve(&pres, &alpha).unwrap().unwrap();
    assert!(hamiltonian_verify(&pres, &alpha, &xa).unwrap());
    let space = HamiltonianSpace::new(&pres, 2, 2);
    let mut rng = sample::rng(31);
    for _ in 0..20 {
        let h = space.sample(&mut rng, 4);
        assert!(hamiltonian_verify(&pres, &h.alpha, &h.x).unwrap());
        let solved = hamiltonian_solve(&pres, &h.alpha).unwrap().unwrap();
        assert!(hamiltonian_verify(&pres, &h.alpha, &solved).unwrap());
    }
}

fn presentations_with_space() -> Vec<(Presentation, HamiltonianSpace)> {
    let mut rng = sample::rng(40);
    let mut out = Vec::new();
    let mut push = |p: Presentation| {
        let s = HamiltonianSpace::new(&p, 2, 2);
        out.push((p, s));
    };
    push(Presentation::graph_form(2, Form::basis(4, &[0, 1, 2])).unwrap());
    push(Presentation::graph_form(2, sample::closed_form(&mut rng, 3, 3, 1)).unwrap());
    push(Presentation::graph_form(1, Form::term(3, &[0, 1], Poly::one(3) + x(3, 0))).unwrap());
    push(hagi());
    push(Presentation::scaled_top(x(3, 0), volume(3)).unwrap());
    push(Presentation::graph_multivector(1, MultiVec::term(3, &[0, 1], x(3, 2))).unwrap());
    out
}

#[test]
fn hamiltonian_spaces_are_nontrivial() {
    for (pres, space) in presentations_with_space() {
        assert!(space.basis.iter().any(|(a, _)| !a.is_zero()), "{} {:?}", pres.kind(), pres);
        for (a, xv) in &space.basis {
            assert!(hamiltonian_verify(&pres, a, xv).unwrap());
        }
    }
}

#[test]
fn bracket_properties() {
    let mut rng = sample::rng(50);
    for (pres, space) in presentations_with_space() {
        let p = pres.p();
        for _ in 0..8 {
            let a = space.sample(&mut rng, 4);
            let b = space.sample(&mut rng, 4);
            let c = space.sample(&mut rng, 4);
            let ab = ham_bracket(&a, &b);
            assert!((&ab + &ham_bracket(&b, &a)).is_zero(), "skew on {}", pres.kind());

            let hab = ham_bracket_datum(&a, &b);
            assert!(hamiltonian_verify(&pres, &hab.alpha, &hab.x).unwrap());
            let closed = dorfman(&a.section(p), &b.section(p), None).unwrap();
            assert_eq!(closed, SectionEp::new(p, a.x.bracket(&b.x), ab.d()).unwrap());

            let bc = ham_bracket_datum(&b, &c);
            let ca = ham_bracket_datum(&c, &a);
            let jac = &(&ham_bracket(&a, &bc) + &ham_bracket(&b, &ca)) + &ham_bracket(&c, &hab);
            assert_eq!(jac, -&bc.alpha.interior(&a.x).d(), "Jacobiator on {}", pres.kind());

            for k in space.kernel_fields() {
                let shifted = HamiltonianDatum::new(&pres, a.alpha.clone(), &a.x + &k).unwrap();
                assert_eq!(ham_bracket(&shifted, &b), ab);
            }
        }
    }
}

#[test]
fn ambiguity_of_hamiltonian_fields() {
    let n = 4;
    let pres = Presentation::graph_form(2, Form::basis(n, &[0, 1, 2])).unwrap();
    let space = HamiltonianSpace::new(&pres, 2, 2);
    let kernel = space.kernel_fields();
    assert!(kernel.contains(&VField::basis(n, 3)));
    let mut rng = sample::rng(60);
    for _ in 0..10 {
        let h = space.sample(&mut rng, 4);
        let other = &h.x + &VField::basis(n, 3).mul_poly(&sample::poly(&mut rng, n, 2));
        assert!(hamiltonian_verify(&pres, &h.alpha, &other).unwrap());
        assert!(pres.member(&SectionEp::vector(2, &other - &h.x)).unwrap());
    }
    for k in &kernel {
        for g in pres.generators() {
            assert!(g.alpha.interior(k).is_zero());
        }
    }
    let reg = hagi();
    for k in HamiltonianSpace::new(&reg, 1, 1).kernel_fields() {
        for g in reg.generators() {
            assert!(g.alpha.interior(&k).is_zero());
        }
    }
}

#[test]
fn nested_contraction_identity() {
    let mut rng = sample::rng(70);
    for arity in 3..=5 {
        let dim = arity;
        let p = arity - 1;
        let pres = Presentation::graph_form(p, volume(dim)).unwrap();
        for _ in 0..3 {
            let hs: Vec<HamiltonianDatum> =
                (0..arity).map(|_| solved(&pres, sample::form(&mut rng, dim, p - 1, 2))).collect();
            let r = nested_identity_residual(&hs);
            assert!(r.is_zero(), "arity {arity}: {r}");
        }
    }
    let pres = Presentation::graph_form(2, Form::basis(4, &[0, 1, 2])).unwrap();
    let space = HamiltonianSpace::new(&pres, 2, 2);
    for _ in 0..5 {
        let hs: Vec<HamiltonianDatum> = (0..3).map(|_| space.sample(&mut rng, 4)).collect();
        assert!(nested_identity_residual(&hs).is_zero());
    }
}

#[test]
fn nested_identity_detects_broken_data() {
    let n = 3;
    let pres = Presentation::graph_form(2, volume(n)).unwrap();
    let mut rng = sample::rng(71);
    let mut hs: Vec<HamiltonianDatum> = (0..3).map(|_| solved(&pres, sample::form(&mut rng, n, 1, 2))).collect();
    hs[0] = HamiltonianDatum::trusted(hs[0].alpha.clone(), &hs[0].x + &VField::basis(n, 0).mul_poly(&x(n, 1)));
    assert!(!nested_identity_residual(&hs).is_zero());
}

#[test]
fn members_form_lie_algebroid() {
    let mut rng = sample::rng(80);
    for (pres, _) in presentations_with_space() {
        if !verify_involutive(&pres).pass {
            continue;
        }
        for _ in 0..4 {
            let a = pres.random_member(&mut rng, 1);
            let b = pres.random_member(&mut rng, 1);
            let c = pres.random_member(&mut rng, 1);
            assert!(pairing(&a, &b).unwrap().is_zero());
            let ab = dorfman(&a, &b, None).unwrap();
            assert!(pres.member(&ab).unwrap());
            assert!((&ab + &dorfman(&b, &a, None).unwrap()).is_zero(), "skew on {}", pres.kind());
            let lhs = dorfman(&a, &dorfman(&b, &c, None).unwrap(), None).unwrap();
            let rhs = &dorfman(&ab, &c, None).unwrap() + &dorfman(&b, &dorfman(&a, &c, None).unwrap(), None).unwrap();
            assert_eq!(lhs, rhs);
            let f = sample::poly(&mut rng, pres.dim(), 1);
            let lhs = dorfman(&a, &b.mul_poly(&f), None).unwrap();
            let rhs = &ab.mul_poly(&f) + &b.mul_poly(&a.x.apply(&f));
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn scaling_maps_members_to_members() {
    let mut rng = sample::rng(41);
    for (pres, _) in presentations_with_space() {
        for lambda in [int(2), int(-3)] {
            let image = pres.scaled(&lambda).unwrap();
            for _ in 0..5 {
                let e = pres.random_member(&mut rng, 2);
                let m = SectionEp::new(e.p, e.x.clone(), e.alpha.scale(&lambda)).unwrap();
                assert!(image.member(&m).unwrap(), "{}", pres.kind());
            }
            assert!(verify_isotropic(&image).pass && verify_involutive(&image).pass);
        }
        assert!(pres.scaled(&int(0)).is_err());
    }
}
