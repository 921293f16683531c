//! Split Courant structure on `E^p = T + ^p T*` and the tiered pairing and bracket on
//! `P_r = ^r T + ^{p+1-r} T*`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num::{One, Zero};

use crate::exterior::{Form, MultiVec, VField};
use crate::scalar::{rat, Poly, Rat};
use crate::CoreError;

/// Section `X + alpha` of `E^p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SectionEp {
    pub p: usize,
    pub x: VField,
    pub alpha: Form,
}

impl SectionEp {
    pub fn new(p: usize, x: VField, alpha: Form) -> Result<SectionEp, CoreError> {
        if x.dim() != alpha.dim() {
            return Err(CoreError::ContextMismatch { left: x.dim(), right: alpha.dim() });
        }
        if alpha.deg() != p as i32 && !alpha.is_zero() {
            return Err(CoreError::DegreeMismatch { expected: p as i32, found: alpha.deg() });
        }
        let alpha = if alpha.is_zero() { Form::zero(x.dim(), p as i32) } else { alpha };
        Ok(SectionEp { p, x, alpha })
    }

    pub fn zero(n: usize, p: usize) -> SectionEp {
        SectionEp { p, x: VField::zero(n), alpha: Form::zero(n, p as i32) }
    }

    pub fn vector(p: usize, x: VField) -> SectionEp {
        let n = x.dim();
        SectionEp { p, x, alpha: Form::zero(n, p as i32) }
    }

    pub fn form(p: usize, alpha: Form) -> SectionEp {
        SectionEp::new(p, VField::zero(alpha.dim()), alpha).expect("form degree")
    }

    pub fn dim(&self) -> usize {
        self.x.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.alpha.is_zero()
    }

    pub fn scale(&self, c: &Rat) -> SectionEp {
        SectionEp { p: self.p, x: self.x.scale(c), alpha: self.alpha.scale(c) }
    }

    pub fn mul_poly(&self, f: &Poly) -> SectionEp {
        SectionEp { p: self.p, x: self.x.mul_poly(f), alpha: self.alpha.mul_poly(f) }
    }
}

impl Add for &SectionEp {
    type Output = SectionEp;
    fn add(self, rhs: &SectionEp) -> SectionEp {
        assert_eq!(self.p, rhs.p, "order mismatch");
        SectionEp { p: self.p, x: &self.x + &rhs.x, alpha: &self.alpha + &rhs.alpha }
    }
}

impl Sub for &SectionEp {
    type Output = SectionEp;
    fn sub(self, rhs: &SectionEp) -> SectionEp {
        self + &(-rhs)
    }
}

impl Neg for &SectionEp {
    type Output = SectionEp;
    fn neg(self) -> SectionEp {
        SectionEp { p: self.p, x: -&self.x, alpha: -&self.alpha }
    }
}

impl fmt::Display for SectionEp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.x.is_zero(), self.alpha.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.x),
            (true, false) => write!(f, "{}", self.alpha),
            (false, false) => {
                let a = self.alpha.to_string();
                match a.strip_prefix('-') {
                    Some(rest) => write!(f, "{} - {}", self.x, rest),
                    None => write!(f, "{} + {}", self.x, a),
                }
            }
        }
    }
}

impl fmt::Debug for SectionEp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SectionEp[p={}]({})", self.p, self)
    }
}

fn same_order(a: &SectionEp, b: &SectionEp) -> Result<(), CoreError> {
    if a.p != b.p {
        return Err(CoreError::OrderMismatch { left: a.p, right: b.p });
    }
    if a.dim() != b.dim() {
        return Err(CoreError::ContextMismatch { left: a.dim(), right: b.dim() });
    }
    Ok(())
}

/// `<X+a, Y+b> = i_X b + i_Y a`, a `(p-1)`-form.
pub fn pairing(e1: &SectionEp, e2: &SectionEp) -> Result<Form, CoreError> {
    same_order(e1, e2)?;
    Ok(&e2.alpha.interior(&e1.x) + &e1.alpha.interior(&e2.x))
}

fn check_twist(h: Option<&Form>, p: usize) -> Result<(), CoreError> {
    match h {
        Some(h) if h.deg() != p as i32 + 2 && !h.is_zero() => {
            Err(CoreError::DegreeMismatch { expected: p as i32 + 2, found: h.deg() })
        }
        _ => Ok(()),
    }
}

/// Dorfman bracket `[X,Y] + L_X b - i_Y da`, plus `i_Y i_X H` when twisted.
pub fn dorfman(e1: &SectionEp, e2: &SectionEp, h: Option<&Form>) -> Result<SectionEp, CoreError> {
    same_order(e1, e2)?;
    check_twist(h, e1.p)?;
    let mut alpha = &e2.alpha.lie(&e1.x) - &e1.alpha.d().interior(&e2.x);
    if let Some(h) = h {
        alpha = &alpha + &h.interior(&e1.x).interior(&e2.x);
    }
    SectionEp::new(e1.p, e1.x.bracket(&e2.x), alpha)
}

/// Skew part of the Dorfman bracket: `[[e1,e2]] - 1/2 d<e1,e2>`.
pub fn courant(e1: &SectionEp, e2: &SectionEp, h: Option<&Form>) -> Result<SectionEp, CoreError> {
    let dor = dorfman(e1, e2, h)?;
    let half = pairing(e1, e2)?.d().scale(&rat(1, 2));
    SectionEp::new(e1.p, dor.x, &dor.alpha - &half)
}

/// `X + a -> X + a + sign * i_X B`.
pub fn gauge(e: &SectionEp, b: &Form, sign: i32) -> Result<SectionEp, CoreError> {
    if b.deg() != e.p as i32 + 1 && !b.is_zero() {
        return Err(CoreError::DegreeMismatch { expected: e.p as i32 + 1, found: b.deg() });
    }
    let shift = b.interior(&e.x);
    let alpha = if sign >= 0 { &e.alpha + &shift } else { &e.alpha - &shift };
    SectionEp::new(e.p, e.x.clone(), alpha)
}

/// `X + a -> X + lambda a`.
pub fn scale(e: &SectionEp, lambda: &Rat) -> Result<SectionEp, CoreError> {
    if lambda.is_zero() {
        return Err(CoreError::ZeroScale);
    }
    Ok(SectionEp { p: e.p, x: e.x.clone(), alpha: e.alpha.scale(lambda) })
}

/// Element `(Y, eta)` of `P_r`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SectionPr {
    pub p: usize,
    pub r: usize,
    pub y: MultiVec,
    pub eta: Form,
}

impl SectionPr {
    pub fn new(p: usize, r: usize, y: MultiVec, eta: Form) -> Result<SectionPr, CoreError> {
        if r == 0 || r > p {
            return Err(CoreError::TierOverflow(format!("tier {r} outside 1..={p}")));
        }
        if y.deg() != r as i32 && !y.is_zero() {
            return Err(CoreError::DegreeMismatch { expected: r as i32, found: y.deg() });
        }
        let k = (p + 1 - r) as i32;
        if eta.deg() != k && !eta.is_zero() {
            return Err(CoreError::DegreeMismatch { expected: k, found: eta.deg() });
        }
        let n = y.dim();
        let y = if y.is_zero() { MultiVec::zero(n, r as i32) } else { y };
        let eta = if eta.is_zero() { Form::zero(n, k) } else { eta };
        Ok(SectionPr { p, r, y, eta })
    }

    /// `Y + i_Y omega`.
    pub fn graph(p: usize, y: MultiVec, omega: &Form) -> Result<SectionPr, CoreError> {
        let eta = omega.interior_multi(&y);
        SectionPr::new(p, y.deg() as usize, y, eta)
    }

    pub fn from_ep(e: &SectionEp) -> SectionPr {
        SectionPr { p: e.p, r: 1, y: e.x.to_multivec(), eta: e.alpha.clone() }
    }

    pub fn to_ep(&self) -> SectionEp {
        assert_eq!(self.r, 1, "only tier 1 is a section of E^p");
        SectionEp { p: self.p, x: self.y.to_vfield(), alpha: self.eta.clone() }
    }
}

impl fmt::Debug for SectionPr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SectionPr[p={},r={}]({} ; {})", self.p, self.r, self.y, self.eta)
    }
}

fn sgn(k: usize) -> Rat {
    if k.is_multiple_of(2) {
        Rat::one()
    } else {
        -Rat::one()
    }
}

/// `1/2 (i_Ybar eta - (-1)^{rs} i_Y etabar)`.
pub fn multi_pairing(a: &SectionPr, b: &SectionPr) -> Result<Form, CoreError> {
    if a.p != b.p {
        return Err(CoreError::OrderMismatch { left: a.p, right: b.p });
    }
    if a.r + b.r > a.p + 1 {
        return Err(CoreError::TierOverflow(format!("r + s = {} > p + 1 = {}", a.r + b.r, a.p + 1)));
    }
    let t1 = a.eta.interior_multi(&b.y);
    let t2 = b.eta.interior_multi(&a.y).scale(&sgn(a.r * b.r));
    Ok((&t1 - &t2).scale(&rat(1, 2)))
}

/// Lie derivative along a degree-`r` multivector, `L_Y = i_Y d - (-1)^r d i_Y`.
pub fn multi_lie(y: &MultiVec, eta: &Form) -> Form {
    let r = y.deg() as usize;
    let a = eta.d().interior_multi(y);
    let b = eta.interior_multi(y).d().scale(&sgn(r));
    &a - &b
}

/// Tiered bracket `P_r x P_s -> P_{r+s-1}`:
/// `([Y,Ybar], L_Y etabar - (-1)^{(r-1)(s-1)} L_Ybar eta + (-1)^r/2 d(i_Y etabar + (-1)^{rs} i_Ybar eta))`.
/// With this order inside `d(...)` the tier (1,1) case is the Courant bracket.
pub fn multi_bracket(a: &SectionPr, b: &SectionPr) -> Result<SectionPr, CoreError> {
    if a.p != b.p {
        return Err(CoreError::OrderMismatch { left: a.p, right: b.p });
    }
    let (r, s) = (a.r, b.r);
    if r + s - 1 > a.p {
        return Err(CoreError::TierOverflow(format!("r + s - 1 = {} > p = {}", r + s - 1, a.p)));
    }
    let y = a.y.schouten(&b.y);
    let lie = &multi_lie(&a.y, &b.eta) - &multi_lie(&b.y, &a.eta).scale(&sgn((r - 1) * (s - 1)));
    let inner = &b.eta.interior_multi(&a.y) + &a.eta.interior_multi(&b.y).scale(&sgn(r * s));
    let eta = &lie + &inner.d().scale(&(sgn(r) * rat(1, 2)));
    SectionPr::new(a.p, r + s - 1, y, eta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    #[test]
    fn pairing_examples() {
        let n = 3;
        let e1 = SectionEp::vector(1, VField::basis(n, 0));
        let e2 = SectionEp::vector(1, VField::basis(n, 1));
        assert!(pairing(&e1, &e2).unwrap().is_zero());
        let omega = &Form::term(n, &[0, 1], x(n, 2)) + &Form::basis(n, &[1, 2]);
        let g = |v: VField| SectionEp::new(1, v.clone(), -&omega.interior(&v)).unwrap();
        let a = g(VField::from_comps(vec![x(n, 1), Poly::one(n), Poly::zero(n)]));
        let b = g(VField::basis(n, 2).mul_poly(&x(n, 0)));
        assert!(pairing(&a, &b).unwrap().is_zero());
        assert!(pairing(&a, &SectionEp::zero(n, 2)).is_err());
    }

    #[test]
    fn dorfman_examples() {
        let n = 3;
        let p = 2;
        let e1 = SectionEp::vector(p, VField::basis(n, 0));
        let e2 = SectionEp::form(p, Form::term(n, &[1, 2], x(n, 0)));
        let out = dorfman(&e1, &e2, None).unwrap();
        assert!(out.x.is_zero());
        assert_eq!(out.alpha, Form::basis(n, &[1, 2]));
        let e = SectionEp::new(1, VField::basis(n, 1).mul_poly(&x(n, 0)), Form::term(n, &[1], x(n, 2))).unwrap();
        let self_bracket = dorfman(&e, &e, None).unwrap();
        assert!(self_bracket.x.is_zero());
        assert_eq!(self_bracket.alpha, e.alpha.interior(&e.x).d());
    }

    #[test]
    fn courant_examples() {
        let n = 2;
        let f = &x(n, 0) * &x(n, 1);
        let g = x(n, 1).pow(2);
        let xv = VField::from_comps(vec![Poly::one(n), x(n, 0)]);
        let yv = VField::from_comps(vec![x(n, 1), Poly::zero(n)]);
        let e1 = SectionEp::new(1, xv.clone(), Form::scalar(f.clone()).d()).unwrap();
        let e2 = SectionEp::new(1, yv.clone(), Form::scalar(g.clone()).d()).unwrap();
        let out = courant(&e1, &e2, None).unwrap();
        let expected = Form::scalar(&xv.apply(&g) - &yv.apply(&f)).d().scale(&rat(1, 2));
        assert_eq!(out.x, xv.bracket(&yv));
        assert_eq!(out.alpha, expected);
        assert!(courant(&e1, &e1, None).unwrap().is_zero());
    }

    #[test]
    fn gauge_and_scale() {
        let n = 3;
        let b = Form::term(n, &[0, 1], x(n, 2));
        let e = SectionEp::new(1, VField::basis(n, 0), Form::basis(n, &[2])).unwrap();
        let a = SectionEp::form(1, Form::basis(n, &[1]));
        assert_eq!(gauge(&a, &b, 1).unwrap(), a);
        assert_eq!(gauge(&gauge(&e, &b, 1).unwrap(), &b, -1).unwrap(), e);
        assert_eq!(scale(&e, &Rat::one()).unwrap(), e);
        assert!(scale(&e, &Rat::zero()).is_err());
        let e2 = SectionEp::new(1, VField::basis(n, 1), Form::basis(n, &[0])).unwrap();
        let lhs = pairing(&scale(&e, &int(2)).unwrap(), &scale(&e2, &int(2)).unwrap()).unwrap();
        assert_eq!(lhs, pairing(&e, &e2).unwrap().scale(&int(2)));
    }

    #[test]
    fn multi_pairing_examples() {
        let n = 3;
        let p = 1;
        let a = SectionPr::new(p, 1, VField::basis(n, 0).to_multivec(), Form::basis(n, &[1])).unwrap();
        let b = SectionPr::new(p, 1, VField::basis(n, 1).to_multivec(), Form::basis(n, &[0])).unwrap();
        let half = pairing(&a.to_ep(), &b.to_ep()).unwrap().scale(&rat(1, 2));
        assert_eq!(multi_pairing(&a, &b).unwrap(), half);
        assert_eq!(multi_pairing(&a, &a).unwrap(), a.eta.interior_multi(&a.y));
        let z1 = SectionPr::new(p, 1, MultiVec::zero(n, 1), Form::basis(n, &[1])).unwrap();
        assert!(multi_pairing(&z1, &z1).unwrap().is_zero());
    }
}
