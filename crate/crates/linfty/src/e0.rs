//! `Gamma(T + R)` with the `sigma`-twisted bracket `[X+f, Y+g] = [X,Y] + X(g) - Y(f) + sigma(X,Y)`,
//! a complex concentrated in degree 0.

use diracspace_core::courant::dorfman;
use diracspace_core::{CoreError, Form};

use crate::element::{GradedElem, Payload};
use crate::family::MultibracketFamily;
use crate::{LinftyError, Result};

#[derive(Clone, Debug)]
pub struct TwistedE0Family {
    pub n: usize,
    pub sigma: Option<Form>,
}

pub fn e0_family(sigma: Option<Form>, n: usize, allow_nonclosed: bool) -> Result<TwistedE0Family> {
    let sigma = sigma.filter(|s| !s.is_zero());
    if let Some(s) = &sigma {
        if s.deg() != 2 {
            return Err(CoreError::DegreeMismatch { expected: 2, found: s.deg() }.into());
        }
        if !allow_nonclosed && !s.d().is_zero() {
            return Err(CoreError::NotClosed.into());
        }
    }
    Ok(TwistedE0Family { n, sigma })
}

impl MultibracketFamily for TwistedE0Family {
    fn name(&self) -> String {
        match &self.sigma {
            None => format!("e0(n={}, sigma=0)", self.n),
            Some(s) => format!("e0(n={}, sigma={})", self.n, s),
        }
    }

    fn dim(&self) -> usize {
        self.n
    }

    fn min_degree(&self) -> i32 {
        0
    }

    fn max_arity(&self) -> usize {
        2
    }

    fn check_element(&self, e: &GradedElem) -> Result<()> {
        match (&e.payload, e.degree) {
            (Payload::Zero, 0) => Ok(()),
            (Payload::Section(s), 0) if s.p == 0 && s.dim() == self.n => Ok(()),
            _ => Err(LinftyError::DegreeViolation(format!("{} is not a degree-0 section of T + R", e))),
        }
    }

    fn eval(&self, v: &[&GradedElem]) -> Result<GradedElem> {
        let (a, b) = (v[0].as_section().unwrap(), v[1].as_section().unwrap());
        Ok(GradedElem::section(dorfman(a, b, self.sigma.as_ref())?))
    }
}
