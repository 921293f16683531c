//! Strict isomorphisms: unary maps intertwining every bracket.

use diracspace_core::courant::gauge;
use diracspace_core::presentations::{HamiltonianDatum, HamiltonianSpace, Presentation};
use diracspace_core::{Form, Rat};

use crate::element::{GradedElem, Payload};
use crate::family::{bracket, tuple_seed, MultibracketFamily};
use crate::getzler::{getzler_family, GetzlerFamily};
use crate::observables::{observables_family, ObservablesFamily};
use crate::sampling::{getzler_tuple, observables_tuple};
use crate::Result;

#[derive(Clone, Debug, Default)]
pub struct IsoReport {
    pub kind: String,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl IsoReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Compares `phi(l_n(v))` with `l'_n(phi v)` on every tuple.
pub fn strict_intertwining(
    kind: &str,
    src: &dyn MultibracketFamily,
    dst: &dyn MultibracketFamily,
    phi: &dyn Fn(&GradedElem) -> Result<GradedElem>,
    tuples: &[Vec<GradedElem>],
) -> Result<IsoReport> {
    let mut report = IsoReport { kind: kind.to_string(), ..IsoReport::default() };
    for v in tuples {
        let refs: Vec<&GradedElem> = v.iter().collect();
        let lhs = phi(&bracket(src, &refs)?)?;
        let mapped = v.iter().map(phi).collect::<Result<Vec<_>>>()?;
        let mapped_refs: Vec<&GradedElem> = mapped.iter().collect();
        let rhs = bracket(dst, &mapped_refs)?;
        report.checks += 1;
        let diff = lhs.sub(&rhs)?;
        if !diff.is_zero() {
            report.failures.push(format!("arity {}: {}", v.len(), diff));
        }
    }
    Ok(report)
}

/// Multiplication by `lambda` in every degree, keeping Hamiltonian vector fields.
pub fn lambda_map(lambda: &Rat) -> impl Fn(&GradedElem) -> Result<GradedElem> + '_ {
    move |e: &GradedElem| {
        Ok(match &e.payload {
            Payload::Ham(h) => GradedElem::ham(HamiltonianDatum::trusted(h.alpha.scale(lambda), h.x.clone())),
            _ => e.scale(lambda),
        })
    }
}

/// `e^{-B}` on sections, identity on forms.
pub fn gauge_map(b: &Form) -> impl Fn(&GradedElem) -> Result<GradedElem> + '_ {
    move |e: &GradedElem| {
        Ok(match &e.payload {
            Payload::Section(s) => GradedElem::section(gauge(s, b, -1)?),
            _ => e.clone(),
        })
    }
}

/// Observables of `pres` against observables of its image under `X + a -> X + lambda a`,
/// for arities `1 ..= p + 1`.
pub fn lambda_scale_check(
    pres: &Presentation,
    space: &HamiltonianSpace,
    lambda: &Rat,
    trials: usize,
    seed: u64,
) -> Result<(IsoReport, ObservablesFamily, ObservablesFamily)> {
    let src = observables_family(pres)?;
    let dst = observables_family(&pres.scaled(lambda)?)?;
    let tuples: Vec<Vec<GradedElem>> = (1..=src.max_arity())
        .flat_map(|n| (0..trials).map(move |t| (n, t)))
        .map(|(n, t)| observables_tuple(tuple_seed(seed, n, t), &src, space, n))
        .collect();
    let phi = lambda_map(lambda);
    let report = strict_intertwining(&format!("lambda_scale({lambda})"), &src, &dst, &phi, &tuples)?;
    Ok((report, src, dst))
}

/// Derived-bracket family twisted by `h` against the one twisted by `h + dB`, for arities
/// `1 ..= r + 1`.
pub fn gauge_check(
    r: usize,
    h: Option<Form>,
    b: &Form,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<(IsoReport, GetzlerFamily, GetzlerFamily)> {
    let shifted = match &h {
        Some(h) => h + &b.d(),
        None => b.d(),
    };
    let src = getzler_family(r, h, n, false)?;
    let dst = getzler_family(r, Some(shifted), n, false)?;
    let tuples: Vec<Vec<GradedElem>> = (1..=src.max_arity())
        .flat_map(|k| (0..trials).map(move |t| (k, t)))
        .map(|(k, t)| getzler_tuple(tuple_seed(seed, k, t), &src, k))
        .collect();
    let phi = gauge_map(b);
    let report = strict_intertwining("gauge", &src, &dst, &phi, &tuples)?;
    Ok((report, src, dst))
}

