use diracspace_core::sample;
use diracspace_core::scalar::{int, Poly};
use diracspace_core::{Form, VField};
use diracspace_oracle::derived::{self, master_equation};
use diracspace_oracle::encode::{decode_elem, encode_form, encode_vfield, symplectic_potential};
use diracspace_oracle::{GPoly, Gen};
use diracspace_core::courant::SectionEp;
use diracspace_linfty::GradedElem;
use proptest::prelude::*;
use rand::Rng;

fn one(n: usize) -> Poly {
    Poly::one(n)
}

#[test]
fn graded_commutative_products() {
    let (r, n) = (2, 3);
    let v = |i| GPoly::generator(r, n, Gen::V(i));
    let p = |i| GPoly::generator(r, n, Gen::LowP(i));
    let big = |i| GPoly::generator(r, n, Gen::TopP(i));
    // odd generators anticommute and square to zero
    assert_eq!(v(0).gmul(&v(1)).unwrap(), v(1).gmul(&v(0)).unwrap().neg());
    assert!(v(0).gmul(&v(0)).unwrap().is_zero());
    // r = 2: p is odd, P is even
    assert_eq!(p(0).gmul(&v(1)).unwrap(), v(1).gmul(&p(0)).unwrap().neg());
    assert!(p(2).gmul(&p(2)).unwrap().is_zero());
    assert_eq!(big(0).gmul(&v(1)).unwrap(), v(1).gmul(&big(0)).unwrap());
    assert!(!big(0).gmul(&big(0)).unwrap().is_zero());
    // r = 3: p is even
    let p3 = GPoly::generator(3, n, Gen::LowP(0));
    let v3 = GPoly::generator(3, n, Gen::V(1));
    assert_eq!(p3.gmul(&v3).unwrap(), v3.gmul(&p3).unwrap());
    assert!(!p3.gmul(&p3).unwrap().is_zero());
    assert_eq!(v(0).gmul(&v(1)).unwrap().degree().unwrap(), Some(2));
    assert!(v(0).add(&big(0)).unwrap().degree().is_err());
}

#[test]
fn generator_brackets() {
    for r in 2..=4 {
        let n = 2;
        let x = GPoly::constant(r, n, Poly::var(n, 0));
        let big = GPoly::generator(r, n, Gen::TopP(0));
        let v = GPoly::generator(r, n, Gen::V(0));
        let p = GPoly::generator(r, n, Gen::LowP(0));
        let unit = GPoly::constant(r, n, one(n));
        assert_eq!(big.gbracket(&x).unwrap(), unit);
        assert_eq!(x.gbracket(&big).unwrap(), unit.neg());
        assert_eq!(p.gbracket(&v).unwrap(), unit);
        let sign = if (r - 1) % 2 == 0 { -1 } else { 1 };
        assert_eq!(v.gbracket(&p).unwrap(), unit.scale(&int(sign)));
        assert!(v.gbracket(&v).unwrap().is_zero());
        assert!(big.gbracket(&GPoly::generator(r, n, Gen::TopP(1))).unwrap().is_zero());
        assert!(GPoly::generator(r, n, Gen::LowP(1)).gbracket(&v).unwrap().is_zero());
    }
}

#[test]
fn basis_examples() {
    let (r, n) = (2, 3);
    let s = symplectic_potential(r, n);
    assert!(s.gbracket(&s).unwrap().is_zero());
    // {S, x1} = dx1
    let x1 = GPoly::constant(r, n, Poly::var(n, 0));
    assert_eq!(s.gbracket(&x1).unwrap(), encode_form(r, &Form::basis(n, &[0])));
    // {S, x1 dx2} = dx1 dx2
    let xi = Form::term(n, &[1], Poly::var(n, 0));
    assert_eq!(encode_form(r, &xi), GPoly::monomial(r, n, &[Gen::V(1)], Poly::var(n, 0)));
    assert_eq!(s.gbracket(&encode_form(r, &xi)).unwrap(), encode_form(r, &Form::basis(n, &[0, 1])));
    // {d/dx1, x1 dx2} contracts to zero; {d/dx2, x1 dx2} = x1
    let d1 = encode_vfield(r, &VField::basis(n, 0));
    let d2 = encode_vfield(r, &VField::basis(n, 1));
    assert!(d1.gbracket(&encode_form(r, &xi)).unwrap().is_zero());
    assert_eq!(d2.gbracket(&encode_form(r, &xi)).unwrap(), x1);
    // {{S, d/dx1}, x1 dx2} = L_{d/dx1}(x1 dx2) = dx2
    let lie = s.gbracket(&d1).unwrap().gbracket(&encode_form(r, &xi)).unwrap();
    assert_eq!(lie, encode_form(r, &Form::basis(n, &[1])));
}

#[test]
fn encode_decode_round_trip() {
    let mut rng = sample::rng(31);
    for t in 0..100 {
        let r = 2 + t % 3;
        let n = 2 + t % 3;
        let degree = -(rng.gen_range(0..r) as i32);
        let elem = if degree == 0 {
            GradedElem::section(sample::section(&mut rng, n, r - 1, 3))
        } else {
            GradedElem::form(degree, sample::form(&mut rng, n, (r as i32 - 1 + degree) as usize, 3))
        };
        let enc = diracspace_oracle::encode::encode_elem(r, n, &elem).unwrap();
        if !enc.is_zero() {
            assert_eq!(enc.degree().unwrap(), Some(r as i32 - 1 + degree));
        }
        let back = decode_elem(&enc, degree).unwrap();
        assert!(back.sub(&elem).unwrap().is_zero(), "{back} vs {elem}");
    }
    let s = SectionEp::new(1, VField::from_comps(vec![Poly::var(2, 1), Poly::zero(2)]), Form::term(2, &[1], Poly::var(2, 0))).unwrap();
    let enc = diracspace_oracle::encode::encode_section(2, &s);
    let want = GPoly::monomial(2, 2, &[Gen::LowP(0)], Poly::var(2, 1))
        .add(&GPoly::monomial(2, 2, &[Gen::V(1)], Poly::var(2, 0)))
        .unwrap();
    assert_eq!(enc, want);
}

#[test]
fn dictionary_facts_hold() {
    for r in 2..=3 {
        for n in 2..=3 {
            for rep in derived::derived_check(r, n, 12, 100 + (r * 10 + n) as u64).unwrap() {
                assert!(rep.checks > 0);
                assert!(rep.pass(), "{} (r = {r}, n = {n}): {:?}", rep.fact, rep.failures);
            }
        }
    }
}

#[test]
fn nested_brackets_can_survive_with_one_early_form() {
    let (r, n) = (2, 3);
    let s = symplectic_potential(r, n);
    let xi = encode_form(r, &Form::term(n, &[0], Poly::var(n, 1)));
    let x = encode_vfield(r, &VField::basis(n, 1));
    let y = encode_vfield(r, &VField::basis(n, 0));
    let val = s.gbracket(&xi).unwrap().gbracket(&x).unwrap().gbracket(&y).unwrap();
    assert!(!val.is_zero());
}

#[test]
fn master_equation_detects_closedness() {
    let mut rng = sample::rng(5);
    for (r, n) in [(2, 3), (2, 4), (3, 4)] {
        let closed = sample::closed_form(&mut rng, n, r + 1, 2);
        let (lhs, want) = master_equation(r, &closed).unwrap();
        assert!(lhs.is_zero() && want.is_zero());
    }
    let h = Form::term(4, &[1, 2, 3], Poly::var(4, 0));
    let (lhs, want) = master_equation(2, &h).unwrap();
    assert!(!lhs.is_zero());
    assert_eq!(lhs, want);
}

fn random_homogeneous(seed: u64, r: usize, n: usize, degree: i32) -> GPoly {
    let mut rng = sample::rng(seed);
    let mut out = GPoly::zero(r, n);
    for _ in 0..3 {
        let tops = rng.gen_range(0..=1usize);
        let lows = rng.gen_range(0..=1usize);
        let vs = degree - (tops * r + lows * (r - 1)) as i32;
        if vs < 0 || vs as usize > n {
            continue;
        }
        let mut word: Vec<Gen> = (0..tops).map(|_| Gen::TopP(rng.gen_range(0..n))).collect();
        word.extend((0..lows).map(|_| Gen::LowP(rng.gen_range(0..n))));
        let mut idx: Vec<usize> = (0..n).collect();
        sample::shuffle(&mut rng, &mut idx);
        word.extend(idx[..vs as usize].iter().map(|&i| Gen::V(i)));
        out = out.add(&GPoly::monomial(r, n, &word, sample::poly(&mut rng, n, 2))).unwrap();
    }
    out
}

fn pm(e: i32) -> Poly {
    Poly::from_int(1, if e.rem_euclid(2) == 0 { 1 } else { -1 })
}

fn sgn(e: i32) -> diracspace_core::Rat {
    pm(e).constant_term()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn graded_antisymmetry(seed in any::<u64>(), r in 2usize..=3, da in 0i32..=4, db in 0i32..=4) {
        let n = 3;
        let a = random_homogeneous(seed, r, n, da);
        let b = random_homogeneous(seed ^ 0xabc, r, n, db);
        let ab = a.gbracket(&b).unwrap();
        let ba = b.gbracket(&a).unwrap();
        let s = sgn((da - r as i32) * (db - r as i32) + 1);
        prop_assert_eq!(ab, ba.scale(&s));
    }

    #[test]
    fn graded_jacobi(seed in any::<u64>(), r in 2usize..=3, da in 0i32..=4, db in 0i32..=4, dc in 0i32..=4) {
        let n = 3;
        let a = random_homogeneous(seed, r, n, da);
        let b = random_homogeneous(seed ^ 0x1, r, n, db);
        let c = random_homogeneous(seed ^ 0x2, r, n, dc);
        let lhs = a.gbracket(&b.gbracket(&c).unwrap()).unwrap();
        let first = a.gbracket(&b).unwrap().gbracket(&c).unwrap();
        let second = b.gbracket(&a.gbracket(&c).unwrap()).unwrap().scale(&sgn((da - r as i32) * (db - r as i32)));
        prop_assert_eq!(lhs, first.add(&second).unwrap());
    }

    #[test]
    fn bracket_is_biderivation(seed in any::<u64>(), r in 2usize..=3, da in 0i32..=3, db in 0i32..=3, dc in 0i32..=3) {
        let n = 3;
        let a = random_homogeneous(seed, r, n, da);
        let b = random_homogeneous(seed ^ 0x5, r, n, db);
        let c = random_homogeneous(seed ^ 0x7, r, n, dc);
        let lhs = a.gbracket(&b.gmul(&c).unwrap()).unwrap();
        let rhs = a.gbracket(&b).unwrap().gmul(&c).unwrap()
            .add(&b.gmul(&a.gbracket(&c).unwrap()).unwrap().scale(&sgn((da - r as i32) * db))).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
