//! Seeded random generators for polynomials, forms, fields and sections.
//!
//! Coefficients are integers in `[-9, 9]`; polynomial degree is bounded by the caller
//! (2 by default in the checks).

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::courant::SectionEp;
use crate::exterior::{subsets_lex, Form, MultiVec, VField};
use crate::scalar::{int, Exponents, Poly, Rat};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn coefficient<R: Rng>(rng: &mut R) -> Rat {
    loop {
        let v: i64 = rng.gen_range(-9..=9);
        if v != 0 {
            return int(v);
        }
    }
}

fn random_exponents<R: Rng>(rng: &mut R, n: usize, max_deg: u32) -> Exponents {
    let total = rng.gen_range(0..=max_deg);
    let mut e = vec![0u32; n];
    for _ in 0..total {
        e[rng.gen_range(0..n)] += 1;
    }
    e
}

/// Sparse polynomial with up to `max_terms` monomials of total degree `<= max_deg`.
pub fn poly_with<R: Rng>(rng: &mut R, n: usize, max_deg: u32, max_terms: usize) -> Poly {
    let mut p = Poly::zero(n);
    for _ in 0..rng.gen_range(1..=max_terms) {
        p.add_term(random_exponents(rng, n, max_deg), coefficient(rng));
    }
    p
}

pub fn poly<R: Rng>(rng: &mut R, n: usize, max_deg: u32) -> Poly {
    poly_with(rng, n, max_deg, 3)
}

/// Polynomial that is zero with probability `1 - density`.
fn sparse_poly<R: Rng>(rng: &mut R, n: usize, max_deg: u32, density: f64) -> Poly {
    if rng.gen_bool(density) {
        poly(rng, n, max_deg)
    } else {
        Poly::zero(n)
    }
}

pub fn form<R: Rng>(rng: &mut R, n: usize, k: usize, max_deg: u32) -> Form {
    if k > n {
        return Form::zero(n, k as i32);
    }
    let basis = subsets_lex(n, k);
    let density = (2.0 / basis.len() as f64).min(1.0).max(0.5);
    Form::from_comps(n, k as i32, basis.into_iter().map(|m| (m, sparse_poly(rng, n, max_deg, density))))
}

pub fn const_form<R: Rng>(rng: &mut R, n: usize, k: usize) -> Form {
    form(rng, n, k, 0)
}

/// Closed form `d(eta) + c` with `eta` of coefficient degree `max_deg + 1` and `c` constant.
pub fn closed_form<R: Rng>(rng: &mut R, n: usize, k: usize, max_deg: u32) -> Form {
    if k == 0 {
        return Form::scalar(Poly::constant(n, coefficient(rng)));
    }
    let exact = form(rng, n, k - 1, max_deg + 1).d();
    let c = const_form(rng, n, k);
    let out = &exact + &c;
    if out.is_zero() {
        Form::zero(n, k as i32)
    } else {
        out
    }
}

pub fn vfield<R: Rng>(rng: &mut R, n: usize, max_deg: u32) -> VField {
    VField::from_comps((0..n).map(|_| sparse_poly(rng, n, max_deg, 0.7)).collect())
}

pub fn const_vfield<R: Rng>(rng: &mut R, n: usize) -> VField {
    vfield(rng, n, 0)
}

pub fn multivec<R: Rng>(rng: &mut R, n: usize, k: usize, max_deg: u32) -> MultiVec {
    let basis = subsets_lex(n, k);
    let density = (2.0 / basis.len() as f64).min(1.0).max(0.4);
    MultiVec::from_comps(n, k as i32, basis.into_iter().map(|m| (m, sparse_poly(rng, n, max_deg, density))))
}

pub fn section<R: Rng>(rng: &mut R, n: usize, p: usize, max_deg: u32) -> SectionEp {
    SectionEp::new(p, vfield(rng, n, max_deg), form(rng, n, p, max_deg)).expect("degrees match")
}

/// Small integer in `[-bound, bound]`.
pub fn small_int<R: Rng>(rng: &mut R, bound: i64) -> Rat {
    int(rng.gen_range(-bound..=bound))
}

pub fn shuffle<R: Rng, T>(rng: &mut R, v: &mut [T]) {
    v.shuffle(rng);
}
