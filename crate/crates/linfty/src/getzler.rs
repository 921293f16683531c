//! Derived-bracket Lie `r`-algebra on `C(M) -> Omega^1 -> ... -> Omega^{r-2} -> Gamma(E^{r-1})`,
//! optionally twisted by a closed `(r+1)`-form `H`.

use diracspace_core::courant::{courant, SectionEp};
use diracspace_core::scalar::{bernoulli, int, rat};
use diracspace_core::{CoreError, Form, Rat, VField};

use crate::element::{GradedElem, Payload};
use crate::family::{output_degree, MultibracketFamily};
use crate::{LinftyError, Result};

/// Which ternary expression is used when the form entry has negative degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XiVariant {
    /// Without the `i_{X_1} i_{X_2} d` term.
    Printed,
    /// With the `i_{X_1} i_{X_2} d` term, as for sections.
    WithD,
}

#[derive(Clone, Debug)]
pub struct GetzlerFamily {
    pub r: usize,
    pub n: usize,
    pub h: Option<Form>,
    pub xi_variant: XiVariant,
}

/// Family for `r >= 2` on a patch of dimension `n`; `h` must be closed unless
/// `allow_nonclosed` is set.
pub fn getzler_family(r: usize, h: Option<Form>, n: usize, allow_nonclosed: bool) -> Result<GetzlerFamily> {
    if r < 2 {
        return Err(LinftyError::Invalid(format!("r = {r} must be at least 2")));
    }
    let h = h.filter(|h| !h.is_zero());
    if let Some(h) = &h {
        if h.deg() != r as i32 + 1 {
            return Err(CoreError::DegreeMismatch { expected: r as i32 + 1, found: h.deg() }.into());
        }
        if h.dim() != n {
            return Err(CoreError::ContextMismatch { left: n, right: h.dim() }.into());
        }
        if !allow_nonclosed && !h.d().is_zero() {
            return Err(CoreError::NotClosed.into());
        }
    }
    Ok(GetzlerFamily { r, n, h, xi_variant: XiVariant::Printed })
}

impl GetzlerFamily {
    pub fn with_xi_variant(mut self, v: XiVariant) -> GetzlerFamily {
        self.xi_variant = v;
        self
    }

    fn top(&self) -> i32 {
        self.r as i32 - 1
    }

    fn all_sections(&self, v: &[&GradedElem]) -> Result<Form> {
        let es: Vec<&SectionEp> = v.iter().map(|e| e.as_section().expect("degree-0 entry")).collect();
        let k = es.len();
        let mut out = Form::zero(self.n, self.top() + 2 - k as i32);
        for i in 0..k {
            let xs: Vec<VField> = (0..k).filter(|&j| j != i).map(|j| es[j].x.clone()).collect();
            let term = higher(&es[i].alpha, &xs, true);
            out = if i % 2 == 0 { &out + &term } else { &out - &term };
        }
        if let Some(h) = &self.h {
            let mut t = h.clone();
            for e in &es {
                t = t.interior(&e.x);
            }
            out = &out + &t.scale(&twist_coefficient(k));
        }
        Ok(out)
    }
}

/// `-1/6 (1/2 (i_a L_b - i_b L_a) + i_[a,b] + [with_d] i_a i_b d) alpha`.
pub fn ternary_core(alpha: &Form, xa: &VField, xb: &VField, with_d: bool) -> Form {
    let mut t = &alpha.lie(xb).interior(xa) - &alpha.lie(xa).interior(xb);
    t = &t.scale(&rat(1, 2)) + &alpha.interior(&xa.bracket(xb));
    if with_d {
        t = &t + &alpha.d().interior(xb).interior(xa);
    }
    t.scale(&rat(-1, 6))
}

/// `(-1)^{(n+1)/2} 12 B_{n-1} / ((n-1)(n-2))` for odd `n >= 3`.
pub fn nested_coefficient(n: usize) -> Rat {
    let sign = if n.div_ceil(2).is_multiple_of(2) { 1 } else { -1 };
    int(sign * 12) * bernoulli(n - 1) / int(((n - 1) * (n - 2)) as i64)
}

/// `(-1)^{(n-1)/2} n B_{n-1}` for odd `n >= 3`.
pub fn twist_coefficient(n: usize) -> Rat {
    let sign = if ((n - 1) / 2).is_multiple_of(2) { 1 } else { -1 };
    int(sign * n as i64) * bernoulli(n - 1)
}

/// `c_n sum_{i<j} (-1)^{i+j+1} i_{X_m} .. (no i, j) .. i_{X_1} T(alpha, X_i, X_j)` with
/// `m = n - 1 = xs.len()` and `T` the ternary core.
pub fn higher(alpha: &Form, xs: &[VField], with_d: bool) -> Form {
    let m = xs.len();
    let n = m + 1;
    let mut out = Form::zero(alpha.dim(), alpha.deg() + 1 - n as i32);
    for i in 0..m {
        for j in i + 1..m {
            let mut t = ternary_core(alpha, &xs[i], &xs[j], with_d);
            for (k, x) in xs.iter().enumerate() {
                if k != i && k != j {
                    t = t.interior(x);
                }
            }
            // 1-based exponent i + j + 1 equals the 0-based i + j + 3.
            out = if (i + j + 3) % 2 == 0 { &out + &t } else { &out - &t };
        }
    }
    out.scale(&nested_coefficient(n))
}

impl MultibracketFamily for GetzlerFamily {
    fn name(&self) -> String {
        match &self.h {
            None => format!("getzler(r={}, n={}, H=0)", self.r, self.n),
            Some(h) => format!("getzler(r={}, n={}, H={})", self.r, self.n, h),
        }
    }

    fn dim(&self) -> usize {
        self.n
    }

    fn min_degree(&self) -> i32 {
        1 - self.r as i32
    }

    fn max_arity(&self) -> usize {
        self.r + 1
    }

    fn check_element(&self, e: &GradedElem) -> Result<()> {
        let ok = match (&e.payload, e.degree) {
            (_, d) if d < self.min_degree() || d > 0 => false,
            (Payload::Zero, _) => true,
            (Payload::Section(s), 0) => s.p == self.r - 1 && s.dim() == self.n,
            (Payload::Form(f), d) if d < 0 => f.dim() == self.n && (f.is_zero() || f.deg() == self.top() + d),
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
        let neg: Vec<usize> = (0..k).filter(|&i| v[i].degree < 0).collect();
        if k == 1 {
            let f = v[0].as_form().expect("negative-degree entry").d();
            return Ok(if out == 0 {
                GradedElem::section(SectionEp::form(self.r - 1, f))
            } else {
                GradedElem::form(out, f)
            });
        }
        if k == 2 {
            return Ok(match neg.len() {
                0 => {
                    let (a, b) = (v[0].as_section().unwrap(), v[1].as_section().unwrap());
                    GradedElem::section(courant(a, b, self.h.as_ref())?)
                }
                1 => {
                    let (e, xi) = (v[1 - neg[0]].as_section().unwrap(), v[neg[0]].as_form().unwrap());
                    // Canonical order is (e, xi); moving xi past e costs -1.
                    let c = if neg[0] == 1 { rat(1, 2) } else { rat(-1, 2) };
                    GradedElem::form(out, xi.lie(&e.x).scale(&c))
                }
                _ => GradedElem::zero(out),
            });
        }
        if k.is_multiple_of(2) {
            return Ok(GradedElem::zero(out));
        }
        match neg.len() {
            0 => Ok(GradedElem::form(out, self.all_sections(v)?)),
            1 => {
                let pos = neg[0];
                let xi = v[pos].as_form().unwrap();
                let xs: Vec<VField> =
                    (0..k).filter(|&i| i != pos).map(|i| v[i].as_section().unwrap().x.clone()).collect();
                let t = higher(xi, &xs, self.xi_variant == XiVariant::WithD);
                // Moving xi to the front passes `pos` degree-0 entries.
                Ok(GradedElem::form(out, if pos.is_multiple_of(2) { t } else { -&t }))
            }
            _ => Ok(GradedElem::zero(out)),
        }
    }
}

/// `-1/6 (<[[e0,e1]], e2> + c.p.)` with the untwisted skew bracket.
pub fn cyclic_pairing_ternary(e: [&SectionEp; 3]) -> Result<Form> {
    let mut out: Option<Form> = None;
    for s in 0..3 {
        let (a, b, c) = (e[s], e[(s + 1) % 3], e[(s + 2) % 3]);
        let t = diracspace_core::courant::pairing(&courant(a, b, None)?, c)?;
        out = Some(match out {
            None => t,
            Some(o) => &o + &t,
        });
    }
    Ok(out.unwrap().scale(&rat(-1, 6)))
}
