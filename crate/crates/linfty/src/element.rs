//! Homogeneous elements of the truncated complexes.

use std::fmt;

use diracspace_core::courant::SectionEp;
use diracspace_core::presentations::HamiltonianDatum;
use diracspace_core::{Form, Rat};
use num::One;

use crate::{LinftyError, Result};

#[derive(Clone, Debug)]
pub enum Payload {
    /// Zero in any degree.
    Zero,
    /// Form of degree `top + degree` in a negative degree.
    Form(Form),
    /// Degree-0 section of `E^{r-1}` (Getzler) or `E^0` (twisted `E^0` family).
    Section(SectionEp),
    /// Degree-0 Hamiltonian form with its chosen vector field (observables).
    Ham(HamiltonianDatum),
}

#[derive(Clone, Debug)]
pub struct GradedElem {
    pub degree: i32,
    pub payload: Payload,
}

impl GradedElem {
    pub fn zero(degree: i32) -> GradedElem {
        GradedElem { degree, payload: Payload::Zero }
    }

    pub fn form(degree: i32, f: Form) -> GradedElem {
        GradedElem { degree, payload: Payload::Form(f) }
    }

    pub fn section(e: SectionEp) -> GradedElem {
        GradedElem { degree: 0, payload: Payload::Section(e) }
    }

    pub fn ham(h: HamiltonianDatum) -> GradedElem {
        GradedElem { degree: 0, payload: Payload::Ham(h) }
    }

    pub fn is_zero(&self) -> bool {
        match &self.payload {
            Payload::Zero => true,
            Payload::Form(f) => f.is_zero(),
            Payload::Section(e) => e.is_zero(),
            Payload::Ham(h) => h.alpha.is_zero() && h.x.is_zero(),
        }
    }

    pub fn as_form(&self) -> Option<&Form> {
        match &self.payload {
            Payload::Form(f) => Some(f),
            _ => None,
        }
    }

    pub fn as_section(&self) -> Option<&SectionEp> {
        match &self.payload {
            Payload::Section(e) => Some(e),
            _ => None,
        }
    }

    pub fn as_ham(&self) -> Option<&HamiltonianDatum> {
        match &self.payload {
            Payload::Ham(h) => Some(h),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rat) -> GradedElem {
        let payload = match &self.payload {
            Payload::Zero => Payload::Zero,
            Payload::Form(f) => Payload::Form(f.scale(c)),
            Payload::Section(e) => Payload::Section(e.scale(c)),
            Payload::Ham(h) => Payload::Ham(HamiltonianDatum::trusted(h.alpha.scale(c), h.x.scale(c))),
        };
        GradedElem { degree: self.degree, payload }
    }

    pub fn neg(&self) -> GradedElem {
        self.scale(&-Rat::one())
    }

    pub fn signed(&self, sign: i32) -> GradedElem {
        if sign >= 0 {
            self.clone()
        } else {
            self.neg()
        }
    }

    pub fn add(&self, other: &GradedElem) -> Result<GradedElem> {
        if self.degree != other.degree {
            return Err(LinftyError::DegreeViolation(format!(
                "adding elements of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        let payload = match (&self.payload, &other.payload) {
            (Payload::Zero, q) | (q, Payload::Zero) => q.clone(),
            (Payload::Form(a), Payload::Form(b)) => Payload::Form(a + b),
            (Payload::Section(a), Payload::Section(b)) => {
                if a.p != b.p {
                    return Err(LinftyError::Invalid(format!("sections of orders {} and {}", a.p, b.p)));
                }
                Payload::Section(a + b)
            }
            (Payload::Ham(a), Payload::Ham(b)) => {
                Payload::Ham(HamiltonianDatum::trusted(&a.alpha + &b.alpha, &a.x + &b.x))
            }
            _ if self.is_zero() => other.payload.clone(),
            _ if other.is_zero() => self.payload.clone(),
            _ => return Err(LinftyError::Invalid("adding elements of different kinds".into())),
        };
        Ok(GradedElem { degree: self.degree, payload })
    }

    pub fn sub(&self, other: &GradedElem) -> Result<GradedElem> {
        self.add(&other.neg())
    }
}

impl PartialEq for GradedElem {
    fn eq(&self, other: &GradedElem) -> bool {
        self.degree == other.degree && self.sub(other).map(|d| d.is_zero()).unwrap_or(false)
    }
}

impl fmt::Display for GradedElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        match &self.payload {
            Payload::Zero => write!(f, "0"),
            Payload::Form(a) => write!(f, "{a}"),
            Payload::Section(e) => write!(f, "{e}"),
            Payload::Ham(h) => write!(f, "{} [X = {}]", h.alpha, h.x),
        }
    }
}
