//! Dictionary between forms, vector fields and sections and the generators:
//! `dx_i <-> v_i`, `d/dx_i <-> p_i`.

use diracspace_core::courant::SectionEp;
use diracspace_core::exterior::mask_indices;
use diracspace_core::{Form, Poly, VField};
use diracspace_linfty::{GradedElem, Payload};

use crate::gpoly::{GPoly, Gen};
use crate::{OracleError, Result};

pub fn encode_form(r: usize, f: &Form) -> GPoly {
    let n = f.dim();
    let mut out = GPoly::zero(r, n);
    for (&m, c) in f.comps() {
        let word: Vec<Gen> = mask_indices(m).into_iter().map(Gen::V).collect();
        out = out.add(&GPoly::monomial(r, n, &word, c.clone())).expect("same context");
    }
    out
}

pub fn encode_vfield(r: usize, x: &VField) -> GPoly {
    let n = x.dim();
    let mut out = GPoly::zero(r, n);
    for (i, c) in x.comps().iter().enumerate() {
        out = out.add(&GPoly::monomial(r, n, &[Gen::LowP(i)], c.clone())).expect("same context");
    }
    out
}

pub fn encode_section(r: usize, e: &SectionEp) -> GPoly {
    encode_vfield(r, &e.x).add(&encode_form(r, &e.alpha)).expect("same context")
}

/// `S = sum_i v_i P_i`, whose self-bracket vanishes and whose bracket with forms is `d`.
pub fn symplectic_potential(r: usize, n: usize) -> GPoly {
    let mut out = GPoly::zero(r, n);
    for i in 0..n {
        out = out.add(&GPoly::monomial(r, n, &[Gen::V(i), Gen::TopP(i)], Poly::one(n))).expect("same context");
    }
    out
}

/// Element of complex degree `d` sits in algebra degree `r - 1 + d`.
pub fn encode_elem(r: usize, n: usize, e: &GradedElem) -> Result<GPoly> {
    Ok(match &e.payload {
        Payload::Zero => GPoly::zero(r, n),
        Payload::Form(f) => encode_form(r, f),
        Payload::Section(s) => encode_section(r, s),
        Payload::Ham(_) => return Err(OracleError::NotDecodable("Hamiltonian data have no encoding".into())),
    })
}

/// Form of degree `k` from an element built only from `v` generators.
pub fn decode_form(g: &GPoly, k: usize) -> Result<Form> {
    let mut out = Form::zero(g.n, k as i32);
    for (m, c) in g.terms() {
        let mut idx = Vec::new();
        for gen in m {
            match gen {
                Gen::V(i) => idx.push(*i),
                _ => return Err(OracleError::NotDecodable(format!("{g} is not a form"))),
            }
        }
        if idx.len() != k {
            return Err(OracleError::Inhomogeneous);
        }
        out = &out + &Form::term(g.n, &idx, c.clone());
    }
    Ok(out)
}

/// Section of `E^{r-1}` from an element of algebra degree `r - 1`.
pub fn decode_section(g: &GPoly) -> Result<SectionEp> {
    let (r, n) = (g.r, g.n);
    let mut x = vec![Poly::zero(n); n];
    let mut form_part = GPoly::zero(r, n);
    for (m, c) in g.terms() {
        match m.as_slice() {
            [Gen::LowP(i)] => x[*i] = &x[*i] + c,
            _ => form_part = form_part.add(&GPoly::monomial(r, n, m, c.clone()))?,
        }
    }
    let alpha = decode_form(&form_part, r - 1)?;
    Ok(SectionEp::new(r - 1, VField::from_comps(x), alpha)?)
}

/// Graded element of complex degree `degree`; degrees below the complex give zero.
pub fn decode_elem(g: &GPoly, degree: i32) -> Result<GradedElem> {
    let r = g.r as i32;
    if degree > 0 {
        return Err(OracleError::OutOfRange(degree));
    }
    let k = r - 1 + degree;
    if k < 0 {
        return if g.is_zero() { Ok(GradedElem::zero(degree)) } else { Err(OracleError::OutOfRange(degree)) };
    }
    if degree == 0 {
        Ok(GradedElem::section(decode_section(g)?))
    } else {
        Ok(GradedElem::form(degree, decode_form(g, k as usize)?))
    }
}

