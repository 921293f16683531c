//! Lie `p`-algebra of observables `C(M) -> ... -> Omega^{p-2} -> Omega^{p-1}_ham` of an
//! isotropic involutive presentation.

use diracspace_core::presentations::{
    ham_bracket, ham_bracket_datum, verify_involutive, verify_isotropic, HamiltonianDatum, Presentation,
};
use diracspace_core::scalar::int;
use diracspace_core::VField;

use crate::element::{GradedElem, Payload};
use crate::family::{output_degree, MultibracketFamily};
use crate::{LinftyError, Result};

#[derive(Clone, Debug)]
pub struct ObservablesFamily {
    pub pres: Presentation,
    pub p: usize,
}

/// Family of a presentation that passes both verifications.
pub fn observables_family(pres: &Presentation) -> Result<ObservablesFamily> {
    for report in [verify_isotropic(pres), verify_involutive(pres)] {
        if !report.pass {
            return Err(LinftyError::Unverified(format!("{}: {}", report.check, report.witnesses.join("; "))));
        }
    }
    Ok(ObservablesFamily { pres: pres.clone(), p: pres.p() })
}

/// `(-1)^{k/2 + 1}` for even `k`, `(-1)^{(k-1)/2}` for odd `k`.
pub fn epsilon(k: usize) -> i32 {
    let e = if k.is_multiple_of(2) { k / 2 + 1 } else { (k - 1) / 2 };
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

impl MultibracketFamily for ObservablesFamily {
    fn name(&self) -> String {
        format!("observables({}, p={}, n={})", self.pres.kind(), self.p, self.pres.dim())
    }

    fn dim(&self) -> usize {
        self.pres.dim()
    }

    fn min_degree(&self) -> i32 {
        1 - self.p as i32
    }

    fn max_arity(&self) -> usize {
        self.p + 1
    }

    fn check_element(&self, e: &GradedElem) -> Result<()> {
        let n = self.dim();
        let top = self.p as i32 - 1;
        let ok = match (&e.payload, e.degree) {
            (_, d) if d < self.min_degree() || d > 0 => false,
            (Payload::Zero, _) => true,
            (Payload::Ham(h), 0) => h.alpha.dim() == n && (h.alpha.is_zero() || h.alpha.deg() == top),
            (Payload::Form(f), d) if d < 0 => f.dim() == n && (f.is_zero() || f.deg() == top + d),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(LinftyError::DegreeViolation(format!("{} does not sit in degree {} of {}", e, e.degree, self.name())))
        }
    }

    fn eval(&self, v: &[&GradedElem]) -> Result<GradedElem> {
        let k = v.len();
        let out = output_degree(v);
        if k == 1 {
            let f = v[0].as_form().expect("negative-degree entry").d();
            return Ok(if out == 0 {
                GradedElem::ham(HamiltonianDatum::trusted(f, VField::zero(self.dim())))
            } else {
                GradedElem::form(out, f)
            });
        }
        if v.iter().any(|e| e.degree < 0) {
            return Ok(GradedElem::zero(out));
        }
        let hs: Vec<&HamiltonianDatum> = v.iter().map(|e| e.as_ham().expect("degree-0 entry")).collect();
        if k == 2 {
            return Ok(GradedElem::ham(ham_bracket_datum(hs[0], hs[1])));
        }
        let mut t = ham_bracket(hs[0], hs[1]);
        for h in &hs[2..] {
            t = t.interior(&h.x);
        }
        Ok(GradedElem::form(out, t.scale(&int(epsilon(k) as i64))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epsilon_values() {
        assert_eq!([epsilon(2), epsilon(3), epsilon(4), epsilon(5)], [1, -1, -1, 1]);
    }
}
