//! Morphisms of Lie 2-algebras, the canonical morphism from the twisted `E^0` algebra to the
//! `r = 2` derived-bracket algebra, and the `p = 1` prequantization map.

use diracspace_core::courant::SectionEp;
use diracspace_core::presentations::{ham_bracket, hamiltonian_solve, HamiltonianDatum, Presentation};
use diracspace_core::scalar::rat;
use diracspace_core::{linalg, CoreError, Form, Poly, VField};

use crate::e0::{e0_family, TwistedE0Family};
use crate::element::GradedElem;
use crate::family::{bracket, MultibracketFamily};
use crate::getzler::{getzler_family, GetzlerFamily};
use crate::{LinftyError, Result};

type Unary<'a> = Box<dyn Fn(&GradedElem) -> Result<GradedElem> + Sync + 'a>;
type Binary<'a> = Box<dyn Fn(&GradedElem, &GradedElem) -> Result<GradedElem> + Sync + 'a>;

/// `phi_0` on degree 0, `phi_1` on degree -1 and `phi_2` from pairs of degree-0 elements to
/// degree -1.
pub struct Lie2Morphism<'a> {
    pub phi0: Unary<'a>,
    pub phi1: Unary<'a>,
    pub phi2: Binary<'a>,
}

impl<'a> Lie2Morphism<'a> {
    /// All three maps zero.
    pub fn zero() -> Lie2Morphism<'a> {
        Lie2Morphism {
            phi0: Box::new(|_| Ok(GradedElem::zero(0))),
            phi1: Box::new(|_| Ok(GradedElem::zero(-1))),
            phi2: Box::new(|_, _| Ok(GradedElem::zero(-1))),
        }
    }
}

/// Degree-0 triple, plus a degree -1 element when the source has one.
#[derive(Clone, Debug)]
pub struct MorphismSample {
    pub x: GradedElem,
    pub y: GradedElem,
    pub z: GradedElem,
    pub f: Option<GradedElem>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Equation {
    ChainMap,
    BinaryDefect,
    MixedDefect,
    TernaryDefect,
}

impl Equation {
    pub fn name(self) -> &'static str {
        match self {
            Equation::ChainMap => "chain-map",
            Equation::BinaryDefect => "binary-defect",
            Equation::MixedDefect => "mixed-defect",
            Equation::TernaryDefect => "ternary-defect",
        }
    }
}

/// Right side minus left side of one equation on one sample.
#[derive(Clone, Debug)]
pub struct EquationResidual {
    pub equation: Equation,
    pub sample: usize,
    pub residual: GradedElem,
}

#[derive(Clone, Debug, Default)]
pub struct MorphismReport {
    pub residuals: Vec<EquationResidual>,
}

impl MorphismReport {
    pub fn pass(&self) -> bool {
        self.residuals.iter().all(|r| r.residual.is_zero())
    }

    pub fn failures(&self, eq: Equation) -> Vec<&EquationResidual> {
        self.residuals.iter().filter(|r| r.equation == eq && !r.residual.is_zero()).collect()
    }
}

fn l(fam: &dyn MultibracketFamily, args: &[&GradedElem]) -> Result<GradedElem> {
    bracket(fam, args)
}

/// Evaluates, per sample,
/// `d' phi_1 = phi_0 d`,
/// `d' phi_2(x,y) = phi_0[x,y] - [phi_0 x, phi_0 y]'`,
/// `phi_2(df, y) = phi_1[f,y] - [phi_1 f, phi_0 y]'` and
/// `phi_1 J(x,y,z) - J'(phi_0 x, phi_0 y, phi_0 z) = phi_2(x,[y,z]) - phi_2(y,[x,z]) + phi_2(z,[x,y])
///  + [phi_0 x, phi_2(y,z)]' - [phi_0 y, phi_2(x,z)]' + [phi_0 z, phi_2(x,y)]'`.
pub fn check_lie2_morphism(
    m: &Lie2Morphism<'_>,
    src: &dyn MultibracketFamily,
    dst: &dyn MultibracketFamily,
    samples: &[MorphismSample],
) -> Result<MorphismReport> {
    for fam in [src, dst] {
        if fam.max_arity() > 3 || fam.min_degree() < -1 {
            return Err(LinftyError::ArityMismatch(format!("{} is not a Lie 2-algebra", fam.name())));
        }
    }
    let mut report = MorphismReport::default();
    let mut push = |equation, sample, residual| report.residuals.push(EquationResidual { equation, sample, residual });
    for (s, smp) in samples.iter().enumerate() {
        let (x, y, z) = (&smp.x, &smp.y, &smp.z);
        let (px, py, pz) = ((m.phi0)(x)?, (m.phi0)(y)?, (m.phi0)(z)?);
        for e in [&px, &py, &pz] {
            if !e.is_zero() {
                dst.check_element(e)?;
            }
        }

        let lhs = l(dst, &[&(m.phi2)(x, y)?])?;
        let rhs = (m.phi0)(&l(src, &[x, y])?)?.sub(&l(dst, &[&px, &py])?)?;
        push(Equation::BinaryDefect, s, rhs.sub(&lhs)?);

        if let Some(f) = &smp.f {
            let df = l(src, &[f])?;
            let lhs = l(dst, &[&(m.phi1)(f)?])?;
            let rhs = (m.phi0)(&df)?;
            push(Equation::ChainMap, s, rhs.sub(&lhs)?);

            let lhs = (m.phi2)(&df, y)?;
            let pf = (m.phi1)(f)?;
            let rhs = (m.phi1)(&l(src, &[f, y])?)?.sub(&l(dst, &[&pf, &py])?)?;
            push(Equation::MixedDefect, s, rhs.sub(&lhs)?);
        }

        let lhs = (m.phi1)(&l(src, &[x, y, z])?)?.sub(&l(dst, &[&px, &py, &pz])?)?;
        let terms = [
            ((m.phi2)(x, &l(src, &[y, z])?)?, 1),
            ((m.phi2)(y, &l(src, &[x, z])?)?, -1),
            ((m.phi2)(z, &l(src, &[x, y])?)?, 1),
            (l(dst, &[&px, &(m.phi2)(y, z)?])?, 1),
            (l(dst, &[&py, &(m.phi2)(x, z)?])?, -1),
            (l(dst, &[&pz, &(m.phi2)(x, y)?])?, 1),
        ];
        let mut rhs = GradedElem::zero(-1);
        for (t, sign) in terms {
            rhs = rhs.add(&t.signed(sign))?;
        }
        push(Equation::TernaryDefect, s, rhs.sub(&lhs)?);
    }
    Ok(report)
}

/// `sigma(X, Y) = i_Y i_X sigma`.
pub fn eval_two_form(sigma: &Form, x: &VField, y: &VField) -> Poly {
    sigma.interior(x).interior(y).as_poly()
}

/// `phi_0(X, f) = (X, df)`, `phi_1 = 0`,
/// `phi_2((X,f),(Y,g)) = 1/2 (X(g) - Y(f)) + sigma(X,Y)`.
pub fn canonical_morphism_sigma(sigma: Option<Form>, allow_nonclosed: bool) -> Result<Lie2Morphism<'static>> {
    let sigma = sigma.filter(|s| !s.is_zero());
    if let Some(s) = &sigma {
        if s.deg() != 2 {
            return Err(CoreError::DegreeMismatch { expected: 2, found: s.deg() }.into());
        }
        if !allow_nonclosed && !s.d().is_zero() {
            return Err(CoreError::NotClosed.into());
        }
    }
    let phi0: Unary<'static> = Box::new(|e: &GradedElem| {
        if e.is_zero() {
            return Ok(GradedElem::zero(0));
        }
        let s = section_of(e)?;
        Ok(GradedElem::section(SectionEp::new(1, s.x.clone(), s.alpha.d())?))
    });
    let phi1: Unary<'static> = Box::new(|_| Ok(GradedElem::zero(-1)));
    let phi2: Binary<'static> = Box::new(move |a: &GradedElem, b: &GradedElem| {
        if a.is_zero() || b.is_zero() {
            return Ok(GradedElem::zero(-1));
        }
        let (a, b) = (section_of(a)?, section_of(b)?);
        let (f, g) = (a.alpha.as_poly(), b.alpha.as_poly());
        let mut v = (&a.x.apply(&g) - &b.x.apply(&f)).scale(&rat(1, 2));
        if let Some(s) = &sigma {
            v = &v + &eval_two_form(s, &a.x, &b.x);
        }
        Ok(GradedElem::form(-1, Form::scalar(v)))
    });
    Ok(Lie2Morphism { phi0, phi1, phi2 })
}

fn section_of(e: &GradedElem) -> Result<&SectionEp> {
    e.as_section().ok_or_else(|| LinftyError::Invalid(format!("{e} is not a section")))
}

fn section_or_zero(e: &GradedElem, n: usize, p: usize) -> Result<SectionEp> {
    if e.is_zero() {
        Ok(SectionEp::zero(n, p))
    } else {
        section_of(e).cloned()
    }
}

/// Source and target families of the canonical morphism on a patch of dimension `n`.
pub fn canonical_families(sigma: Option<Form>, n: usize, allow_nonclosed: bool) -> Result<(TwistedE0Family, GetzlerFamily)> {
    Ok((e0_family(sigma, n, allow_nonclosed)?, getzler_family(2, None, n, false)?))
}

/// `f -> (X_f, -f)` into `Gamma(T + R)` with the `omega`-twisted bracket, for a constant
/// nondegenerate 2-form `omega`.
#[derive(Clone, Debug)]
pub struct Prequantization {
    pub omega: Form,
    pub pres: Presentation,
    pub target: TwistedE0Family,
}

/// Residuals of the prequantization identities on one pair `(f, g)`.
#[derive(Clone, Debug)]
pub struct PrequantizationResidual {
    /// `P({f,g}) - [P f, P g]_omega`.
    pub morphism: SectionEp,
    /// `phi_0(P f) - (X_f - df)`.
    pub composite_unary: SectionEp,
    /// `phi_2(P f, P g)`, the binary part of the composite.
    pub composite_binary: Form,
}

impl PrequantizationResidual {
    pub fn is_zero(&self) -> bool {
        self.morphism.is_zero() && self.composite_unary.is_zero() && self.composite_binary.is_zero()
    }
}

pub fn p1_prequantization(omega: &Form) -> Result<Prequantization> {
    let n = omega.dim();
    if omega.deg() != 2 || !omega.is_constant() {
        return Err(LinftyError::Invalid("expected a constant 2-form".into()));
    }
    let mut matrix = vec![vec![num::Zero::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let v = eval_two_form(omega, &VField::basis(n, i), &VField::basis(n, j));
            matrix[i][j] = v.constant_term();
        }
    }
    if n % 2 == 1 || linalg::rank(&matrix, n) < n {
        return Err(CoreError::Degenerate.into());
    }
    let pres = Presentation::graph_form(1, omega.clone())?;
    let target = e0_family(Some(omega.clone()), n, false)?;
    Ok(Prequantization { omega: omega.clone(), pres, target })
}

impl Prequantization {
    pub fn hamiltonian(&self, f: &Poly) -> Result<HamiltonianDatum> {
        let alpha = Form::scalar(f.clone());
        let x = hamiltonian_solve(&self.pres, &alpha)?
            .ok_or_else(|| LinftyError::Invalid(format!("{f} has no Hamiltonian vector field")))?;
        Ok(HamiltonianDatum::new(&self.pres, alpha, x)?)
    }

    /// `P(f) = (X_f, -f)`.
    pub fn map(&self, f: &Poly) -> Result<SectionEp> {
        let h = self.hamiltonian(f)?;
        Ok(SectionEp::new(0, h.x, Form::scalar(-f))?)
    }

    pub fn check_pair(&self, f: &Poly, g: &Poly) -> Result<PrequantizationResidual> {
        let n = self.omega.dim();
        let (hf, hg) = (self.hamiltonian(f)?, self.hamiltonian(g)?);
        let poisson = ham_bracket(&hf, &hg).as_poly();
        let (pf, pg) = (GradedElem::section(self.map(f)?), GradedElem::section(self.map(g)?));
        let image = self.map(&poisson)?;
        let br = bracket(&self.target, &[&pf, &pg])?;
        let morphism = &image - &section_or_zero(&br, n, 0)?;
        let d = canonical_morphism_sigma(Some(self.omega.clone()), false)?;
        let unary = (d.phi0)(&pf)?;
        let expected = SectionEp::new(1, hf.x.clone(), -&hf.alpha.d())?;
        let composite_unary = &section_or_zero(&unary, n, 1)? - &expected;
        let binary = (d.phi2)(&pf, &pg)?;
        let composite_binary = binary.as_form().cloned().unwrap_or_else(|| Form::zero(n, 0));
        Ok(PrequantizationResidual { morphism, composite_unary, composite_binary })
    }
}
