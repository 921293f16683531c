//! Multibracket families and the quadratic relation checker.

use crate::element::{GradedElem, Payload};
use crate::signs::{koszul_sign, permute, unshuffles};
use crate::{LinftyError, Result};

/// Arity-indexed brackets `l_n` of degree `2 - n` on a complex concentrated in degrees
/// `min_degree ..= 0`.
pub trait MultibracketFamily: Sync {
    fn name(&self) -> String;
    fn dim(&self) -> usize;
    fn min_degree(&self) -> i32;
    fn max_arity(&self) -> usize;
    /// Rejects elements whose payload does not sit at their degree.
    fn check_element(&self, e: &GradedElem) -> Result<()>;
    /// `l_n` on nonzero entries, called only when the output degree lies in the complex and
    /// `n` is at most the declared maximum.
    fn eval(&self, elems: &[&GradedElem]) -> Result<GradedElem>;
}

pub fn output_degree(elems: &[&GradedElem]) -> i32 {
    elems.iter().map(|e| e.degree).sum::<i32>() + 2 - elems.len() as i32
}

/// `l_n(elems)` with the degree of every input and of the output asserted.
pub fn bracket(fam: &dyn MultibracketFamily, elems: &[&GradedElem]) -> Result<GradedElem> {
    if elems.is_empty() {
        return Err(LinftyError::Invalid("bracket of no entries".into()));
    }
    for e in elems {
        if !matches!(e.payload, Payload::Zero) {
            fam.check_element(e)?;
        }
    }
    let out = output_degree(elems);
    if elems.len() > fam.max_arity() || out < fam.min_degree() || out > 0 || elems.iter().any(|e| e.is_zero()) {
        return Ok(GradedElem::zero(out));
    }
    let value = fam.eval(elems)?;
    if value.degree != out {
        return Err(LinftyError::DegreeViolation(format!(
            "{} l_{} returned degree {} instead of {}",
            fam.name(),
            elems.len(),
            value.degree,
            out
        )));
    }
    if !matches!(value.payload, Payload::Zero) {
        fam.check_element(&value)?;
    }
    Ok(value)
}

/// Left side of the quadratic relation
/// `sum_{i+j=n+1} sum_{sigma in Sh(i,n-i)} chi(sigma) (-1)^{i(j-1)} l_j(l_i(v_sigma..), v_sigma..)`.
pub fn check_relation(fam: &dyn MultibracketFamily, elems: &[GradedElem]) -> Result<GradedElem> {
    let n = elems.len();
    if n == 0 {
        return Err(LinftyError::Invalid("relation of arity 0".into()));
    }
    if n > fam.max_arity() + 1 {
        return Err(LinftyError::ArityExceeded { n, max: fam.max_arity() + 1 });
    }
    let degrees: Vec<i32> = elems.iter().map(|e| e.degree).collect();
    let mut acc = GradedElem::zero(degrees.iter().sum::<i32>() + 3 - n as i32);
    for i in 1..=n {
        let j = n + 1 - i;
        let sign_ij = if (i * (j - 1)).is_multiple_of(2) { 1 } else { -1 };
        for sigma in unshuffles(i, n - i) {
            let v = permute(&sigma, elems);
            let inner_args: Vec<&GradedElem> = v[..i].iter().collect();
            let inner = bracket(fam, &inner_args)?;
            if inner.is_zero() {
                continue;
            }
            let mut outer_args = vec![&inner];
            outer_args.extend(v[i..].iter());
            let term = bracket(fam, &outer_args)?;
            if term.is_zero() {
                continue;
            }
            acc = acc.add(&term.signed(sign_ij * koszul_sign(&sigma, &degrees)))?;
        }
    }
    Ok(acc)
}

/// One relation evaluation, as emitted in reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub family: String,
    pub arity: usize,
    pub sample_seed: u64,
    pub residual: String,
}

impl RelationReport {
    pub fn pass(&self) -> bool {
        self.residual == "0"
    }
}

/// Seed of the `trial`-th tuple of arity `n` under a base seed.
pub fn tuple_seed(seed: u64, n: usize, trial: usize) -> u64 {
    seed.wrapping_mul(1_000_003).wrapping_add((n as u64) << 32).wrapping_add(trial as u64)
}

/// Relation residuals for every arity in `arities`, `trials` tuples each, drawn by `draw`
/// from the seed reported alongside the residual.
pub fn relation_suite<F>(
    fam: &dyn MultibracketFamily,
    arities: impl IntoIterator<Item = usize>,
    trials: usize,
    seed: u64,
    mut draw: F,
) -> Result<Vec<RelationReport>>
where
    F: FnMut(u64, usize) -> Vec<GradedElem>,
{
    let mut out = Vec::new();
    for n in arities {
        for t in 0..trials {
            let s = tuple_seed(seed, n, t);
            let elems = draw(s, n);
            let residual = check_relation(fam, &elems)?;
            out.push(RelationReport { family: fam.name(), arity: n, sample_seed: s, residual: residual.to_string() });
        }
    }
    Ok(out)
}
