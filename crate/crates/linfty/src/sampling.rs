//! Seeded random tuples for the relation, morphism and isomorphism checks. Coefficients
//! are polynomials of degree at most 2 with integer coefficients in `[-9, 9]`.

use diracspace_core::presentations::HamiltonianSpace;
use diracspace_core::sample;
use rand::Rng;

use crate::element::GradedElem;
use crate::getzler::GetzlerFamily;
use crate::observables::ObservablesFamily;

pub const MAX_DEG: u32 = 2;

/// Degrees for an `n`-tuple in `min ..= 0`: mostly degree 0, with at most two negative
/// entries at random positions.
pub fn degree_pattern<R: Rng>(rng: &mut R, n: usize, min: i32) -> Vec<i32> {
    let mut degrees = vec![0; n];
    if min == 0 {
        return degrees;
    }
    let negatives = match rng.gen_range(0..6) {
        0..=2 => 0,
        3 | 4 => 1,
        _ => 2,
    }
    .min(n);
    let mut slots: Vec<usize> = (0..n).collect();
    sample::shuffle(rng, &mut slots);
    for &s in &slots[..negatives] {
        degrees[s] = rng.gen_range(min..=-1);
    }
    degrees
}

pub fn getzler_element<R: Rng>(rng: &mut R, fam: &GetzlerFamily, degree: i32) -> GradedElem {
    let top = fam.r as i32 - 1;
    if degree == 0 {
        GradedElem::section(sample::section(rng, fam.n, fam.r - 1, MAX_DEG))
    } else {
        GradedElem::form(degree, sample::form(rng, fam.n, (top + degree) as usize, MAX_DEG))
    }
}

pub fn getzler_tuple(seed: u64, fam: &GetzlerFamily, n: usize) -> Vec<GradedElem> {
    let mut rng = sample::rng(seed);
    let degrees = degree_pattern(&mut rng, n, 1 - fam.r as i32);
    degrees.into_iter().map(|d| getzler_element(&mut rng, fam, d)).collect()
}

pub fn observables_element<R: Rng>(rng: &mut R, fam: &ObservablesFamily, space: &HamiltonianSpace, degree: i32) -> GradedElem {
    let top = fam.p as i32 - 1;
    if degree == 0 {
        GradedElem::ham(space.sample(rng, 3))
    } else {
        GradedElem::form(degree, sample::form(rng, fam.pres.dim(), (top + degree) as usize, MAX_DEG))
    }
}

pub fn observables_tuple(seed: u64, fam: &ObservablesFamily, space: &HamiltonianSpace, n: usize) -> Vec<GradedElem> {
    let mut rng = sample::rng(seed);
    let degrees = degree_pattern(&mut rng, n, 1 - fam.p as i32);
    degrees.into_iter().map(|d| observables_element(&mut rng, fam, space, d)).collect()
}

pub fn e0_element<R: Rng>(rng: &mut R, n: usize) -> GradedElem {
    GradedElem::section(sample::section(rng, n, 0, MAX_DEG))
}

pub fn e0_tuple(seed: u64, n_dim: usize, n: usize) -> Vec<GradedElem> {
    let mut rng = sample::rng(seed);
    (0..n).map(|_| e0_element(&mut rng, n_dim)).collect()
}

