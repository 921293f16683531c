//! Finitely presented isotropic subbundles of `E^p` over a coordinate patch, membership and
//! verification, Hamiltonian forms and their bracket.

use std::collections::BTreeMap;

use num::{One, Zero};
use rand::Rng;

use crate::courant::{dorfman, pairing, SectionEp};
use crate::exterior::{mask_indices, sort_indices, subsets_lex, Form, Mask, MultiVec, VField};
use crate::lagrangian::wedge_annihilator;
use crate::linalg::{self, Matrix, Vector};
use crate::sample;
use crate::scalar::{monomials_up_to, Exponents, Poly, Rat};
use crate::CoreError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Presentation {
    /// `{X - i_X w}` for a `(p+1)`-form `w`.
    GraphForm { p: usize, omega: Form },
    /// `{i_a pi + a}` for a `(p+1)`-vector `pi`, with `i_a pi` pairing `a` against the first
    /// `p` slots.
    GraphMultivector { p: usize, pi: MultiVec },
    /// `{X + i_X w + a : X in span{F e_i, i in S}, a in ^p S°}` for a constant frame `F`.
    Regular { p: usize, frame: Vec<Vector>, frame_inv: Matrix, s: Vec<usize>, omega: Form },
    /// `{f W - i_W Omega}` for a top-degree form `Omega`, order `p = n - 1`.
    ScaledTop { f: Poly, top: Form },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub check: String,
    pub pass: bool,
    pub witnesses: Vec<String>,
}

impl Report {
    fn new(check: &str, witnesses: Vec<String>) -> Report {
        Report { check: check.to_string(), pass: witnesses.is_empty(), witnesses }
    }
}

/// `i_a pi`: `a` contracted against the first `p` slots of `pi`.
pub fn contract_into_multivector(a: &Form, pi: &MultiVec) -> VField {
    let n = pi.dim();
    let mut comps = vec![Poly::zero(n); n];
    for (&i_mask, ac) in a.comps() {
        let idx = mask_indices(i_mask);
        for (k, comp) in comps.iter_mut().enumerate() {
            let mut seq = idx.clone();
            seq.push(k);
            if let Some((sign, m)) = sort_indices(&seq) {
                let pc = pi.coeff(m);
                if pc.is_zero() {
                    continue;
                }
                let t = ac * &pc;
                if sign > 0 {
                    *comp += &t;
                } else {
                    *comp -= &t;
                }
            }
        }
    }
    VField::from_comps(comps)
}

fn frame_field(v: &[Rat]) -> VField {
    VField::from_const_vector(v)
}

impl Presentation {
    pub fn graph_form(p: usize, omega: Form) -> Result<Presentation, CoreError> {
        if omega.deg() != p as i32 + 1 && !omega.is_zero() {
            return Err(CoreError::DegreeMismatch { expected: p as i32 + 1, found: omega.deg() });
        }
        Ok(Presentation::GraphForm { p, omega })
    }

    pub fn graph_multivector(p: usize, pi: MultiVec) -> Result<Presentation, CoreError> {
        let n = pi.dim();
        if pi.deg() != p as i32 + 1 && !pi.is_zero() {
            return Err(CoreError::DegreeMismatch { expected: p as i32 + 1, found: pi.deg() });
        }
        if !pi.is_zero() && p + 1 != 2 && p + 1 != n {
            return Err(CoreError::InvalidPresentation(format!(
                "multivector graphs need degree 2 or n, got {} on R^{n}",
                p + 1
            )));
        }
        Ok(Presentation::GraphMultivector { p, pi })
    }

    /// `frame` lists the columns `F e_1, ..., F e_n`; `s` holds 0-based column indices.
    pub fn regular(p: usize, frame: Vec<Vector>, s: Vec<usize>, omega: Form) -> Result<Presentation, CoreError> {
        let n = omega.dim();
        if frame.len() != n || frame.iter().any(|c| c.len() != n) {
            return Err(CoreError::InvalidPresentation("frame must be n columns of length n".into()));
        }
        let frame_inv = linalg::inverse(&linalg::transpose(&frame, n))
            .ok_or_else(|| CoreError::InvalidPresentation("frame is singular".into()))?;
        let mut s = s;
        s.sort_unstable();
        s.dedup();
        if s.iter().any(|&i| i >= n) {
            return Err(CoreError::InvalidPresentation("S index out of range".into()));
        }
        if !(s.len() + p <= n || s.len() == n) {
            return Err(CoreError::DimensionConstraint { dim_s: s.len(), n, p });
        }
        if omega.deg() != p as i32 + 1 && !omega.is_zero() {
            return Err(CoreError::DegreeMismatch { expected: p as i32 + 1, found: omega.deg() });
        }
        Ok(Presentation::Regular { p, frame, frame_inv, s, omega })
    }

    pub fn regular_coordinate(p: usize, s: Vec<usize>, omega: Form) -> Result<Presentation, CoreError> {
        let n = omega.dim();
        let frame = (0..n).map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect()).collect();
        Presentation::regular(p, frame, s, omega)
    }

    pub fn scaled_top(f: Poly, top: Form) -> Result<Presentation, CoreError> {
        let n = f.dim();
        if top.dim() != n {
            return Err(CoreError::ContextMismatch { left: n, right: top.dim() });
        }
        if top.is_zero() || top.deg() != n as i32 {
            return Err(CoreError::InvalidPresentation("top form must be a nonzero n-form".into()));
        }
        if f.is_zero() {
            return Err(CoreError::InvalidPresentation("scaling function must be nonzero".into()));
        }
        Ok(Presentation::ScaledTop { f, top })
    }

    /// Image under `X + a -> X + lambda a`.
    pub fn scaled(&self, lambda: &Rat) -> Result<Presentation, CoreError> {
        if lambda.is_zero() {
            return Err(CoreError::ZeroScale);
        }
        let mut out = self.clone();
        match &mut out {
            Presentation::GraphForm { omega, .. } | Presentation::Regular { omega, .. } => {
                *omega = omega.scale(lambda);
            }
            Presentation::GraphMultivector { pi, .. } => *pi = pi.scale(&lambda.recip()),
            Presentation::ScaledTop { top, .. } => *top = top.scale(lambda),
        }
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        match self {
            Presentation::GraphForm { omega, .. } | Presentation::Regular { omega, .. } => omega.dim(),
            Presentation::GraphMultivector { pi, .. } => pi.dim(),
            Presentation::ScaledTop { f, .. } => f.dim(),
        }
    }

    pub fn p(&self) -> usize {
        match self {
            Presentation::GraphForm { p, .. } | Presentation::GraphMultivector { p, .. } | Presentation::Regular { p, .. } => *p,
            Presentation::ScaledTop { f, .. } => f.dim() - 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Presentation::GraphForm { .. } => "graph-form",
            Presentation::GraphMultivector { .. } => "graph-multivector",
            Presentation::Regular { .. } => "regular",
            Presentation::ScaledTop { .. } => "scaled-top",
        }
    }

    fn s_fields(&self) -> Vec<VField> {
        match self {
            Presentation::Regular { frame, s, .. } => s.iter().map(|&i| frame_field(&frame[i])).collect(),
            _ => Vec::new(),
        }
    }

    /// Dual coframe `theta^j` for the non-`S` frame directions.
    fn annihilator_forms(&self, k: usize) -> Vec<Form> {
        match self {
            Presentation::Regular { frame, s, .. } => {
                let n = self.dim();
                let smat: Matrix = s.iter().map(|&i| frame[i].clone()).collect();
                if k == 0 {
                    return vec![Form::scalar(Poly::one(n))];
                }
                wedge_annihilator(n, &smat, k).into_iter().map(|v| Form::from_const_vector(n, k, &v)).collect()
            }
            _ => Vec::new(),
        }
    }

    /// Decision procedure for `X + a in L`.
    pub fn member(&self, e: &SectionEp) -> Result<bool, CoreError> {
        let n = self.dim();
        if e.dim() != n {
            return Err(CoreError::ContextMismatch { left: n, right: e.dim() });
        }
        if e.p != self.p() {
            return Err(CoreError::OrderMismatch { left: self.p(), right: e.p });
        }
        Ok(match self {
            Presentation::GraphForm { omega, .. } => e.alpha == -&omega.interior(&e.x),
            Presentation::GraphMultivector { pi, .. } => e.x == contract_into_multivector(&e.alpha, pi),
            Presentation::Regular { s, omega, frame_inv, .. } => {
                for (row_i, row) in frame_inv.iter().enumerate() {
                    if s.contains(&row_i) {
                        continue;
                    }
                    let mut comp = Poly::zero(n);
                    for (c, xc) in row.iter().zip(e.x.comps()) {
                        comp += &xc.scale(c);
                    }
                    if !comp.is_zero() {
                        return Ok(false);
                    }
                }
                let rest = &e.alpha - &omega.interior(&e.x);
                self.s_fields().iter().all(|sv| rest.interior(sv).is_zero())
            }
            Presentation::ScaledTop { f, top } => {
                let mut w = Vec::with_capacity(n);
                for c in e.x.comps() {
                    match c.divide_exact(f) {
                        Some(q) => w.push(q),
                        None => return Ok(false),
                    }
                }
                e.alpha == -&top.interior(&VField::from_comps(w))
            }
        })
    }

    /// Generators of `L` as a module over the polynomial ring.
    pub fn generators(&self) -> Vec<SectionEp> {
        let n = self.dim();
        let p = self.p();
        match self {
            Presentation::GraphForm { omega, .. } => (0..n)
                .map(|i| {
                    let x = VField::basis(n, i);
                    let a = -&omega.interior(&x);
                    SectionEp::new(p, x, a).expect("degree")
                })
                .collect(),
            Presentation::GraphMultivector { pi, .. } => subsets_lex(n, p)
                .into_iter()
                .map(|m| {
                    let a = Form::basis(n, &mask_indices(m));
                    SectionEp::new(p, contract_into_multivector(&a, pi), a).expect("degree")
                })
                .collect(),
            Presentation::Regular { omega, .. } => {
                let mut g: Vec<SectionEp> = self
                    .s_fields()
                    .into_iter()
                    .map(|x| {
                        let a = omega.interior(&x);
                        SectionEp::new(p, x, a).expect("degree")
                    })
                    .collect();
                g.extend(self.annihilator_forms(p).into_iter().map(|a| SectionEp::form(p, a)));
                g
            }
            Presentation::ScaledTop { f, top } => (0..n)
                .map(|i| {
                    let w = VField::basis(n, i);
                    SectionEp::new(p, w.mul_poly(f), -&top.interior(&w)).expect("degree")
                })
                .collect(),
        }
    }

    /// Polynomial combination of generators with random coefficients of degree `<= max_deg`.
    pub fn random_member<R: Rng>(&self, rng: &mut R, max_deg: u32) -> SectionEp {
        let gens = self.generators();
        let mut out = SectionEp::zero(self.dim(), self.p());
        for g in &gens {
            if rng.gen_bool(0.6) {
                out = &out + &g.mul_poly(&sample::poly_with(rng, self.dim(), max_deg, 2));
            }
        }
        out
    }
}

/// Pairings of all generator pairs (including each with itself); nonzero ones are witnesses.
pub fn isotropy_witnesses(gens: &[SectionEp]) -> Vec<String> {
    let mut w = Vec::new();
    for i in 0..gens.len() {
        for j in i..gens.len() {
            let v = pairing(&gens[i], &gens[j]).expect("same order");
            if !v.is_zero() {
                w.push(format!("<g{}, g{}> = {}", i + 1, j + 1, v));
            }
        }
    }
    w
}

pub fn verify_isotropic(pres: &Presentation) -> Report {
    Report::new("isotropic", isotropy_witnesses(&pres.generators()))
}

/// Dorfman brackets of generator pairs that leave `L`.
pub fn closure_witnesses(pres: &Presentation) -> Vec<String> {
    let gens = pres.generators();
    let mut w = Vec::new();
    for i in 0..gens.len() {
        for j in 0..gens.len() {
            let b = dorfman(&gens[i], &gens[j], None).expect("same order");
            if !pres.member(&b).expect("context") {
                w.push(format!("[[g{}, g{}]] = {} not in L", i + 1, j + 1, b));
            }
        }
    }
    w
}

pub fn verify_involutive(pres: &Presentation) -> Report {
    let witnesses = match pres {
        Presentation::GraphForm { omega, .. } => {
            let d = omega.d();
            if d.is_zero() {
                vec![]
            } else {
                vec![format!("d(omega) = {d}")]
            }
        }
        Presentation::Regular { omega, .. } => {
            let d = omega.d();
            let sf = pres.s_fields();
            let mut w = Vec::new();
            for a in 0..sf.len() {
                for b in a + 1..sf.len() {
                    for c in b + 1..sf.len() {
                        let r = d.interior(&sf[a]).interior(&sf[b]).interior(&sf[c]);
                        if !r.is_zero() {
                            w.push(format!("i(s{}) i(s{}) i(s{}) d(omega) = {r}", c + 1, b + 1, a + 1));
                        }
                    }
                }
            }
            w
        }
        Presentation::GraphMultivector { .. } | Presentation::ScaledTop { .. } => closure_witnesses(pres),
    };
    Report::new("involutive", witnesses)
}

/// `alpha` with a vector field `X` such that `X + d alpha` lies in `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamiltonianDatum {
    pub alpha: Form,
    pub x: VField,
}

impl HamiltonianDatum {
    pub fn new(pres: &Presentation, alpha: Form, x: VField) -> Result<HamiltonianDatum, CoreError> {
        if !hamiltonian_verify(pres, &alpha, &x)? {
            return Err(CoreError::Invalid(format!("{x} is not a Hamiltonian vector field of {alpha}")));
        }
        Ok(HamiltonianDatum { alpha, x })
    }

    /// Datum whose membership has been established by construction.
    pub fn trusted(alpha: Form, x: VField) -> HamiltonianDatum {
        HamiltonianDatum { alpha, x }
    }

    pub fn section(&self, p: usize) -> SectionEp {
        SectionEp::new(p, self.x.clone(), self.alpha.d()).expect("degree")
    }
}

pub fn hamiltonian_verify(pres: &Presentation, alpha: &Form, x: &VField) -> Result<bool, CoreError> {
    let p = pres.p();
    if alpha.deg() != p as i32 - 1 && !alpha.is_zero() {
        return Err(CoreError::DegreeMismatch { expected: p as i32 - 1, found: alpha.deg() });
    }
    let e = SectionEp::new(p, x.clone(), alpha.d())?;
    pres.member(&e)
}

/// Splits a form by monomial: `a = sum_m x^m c_m` with constant `c_m`.
fn by_monomial(a: &Form) -> BTreeMap<Exponents, Form> {
    let n = a.dim();
    let mut out: BTreeMap<Exponents, Form> = BTreeMap::new();
    for (&m, p) in a.comps() {
        for (e, c) in p.terms() {
            let entry = out.entry(e.clone()).or_insert_with(|| Form::zero(n, a.deg()));
            entry.add_comp(m, Poly::constant(n, c.clone()));
        }
    }
    out
}

/// Hamiltonian vector field of `alpha` for a graph or regular presentation with constant
/// form, by a constant linear solve per monomial of `d alpha`. `None` if `alpha` is not
/// Hamiltonian.
pub fn hamiltonian_solve(pres: &Presentation, alpha: &Form) -> Result<Option<VField>, CoreError> {
    let n = pres.dim();
    let p = pres.p();
    let (omega, span, sign): (&Form, Vec<VField>, i32) = match pres {
        Presentation::GraphForm { omega, .. } => (omega, (0..n).map(|i| VField::basis(n, i)).collect(), -1),
        Presentation::Regular { omega, .. } => (omega, pres.s_fields(), 1),
        _ => return Err(CoreError::VerificationOnly("solving needs a graph or regular presentation".into())),
    };
    if !omega.is_constant() {
        return Err(CoreError::VerificationOnly("form has non-constant coefficients; supply X".into()));
    }
    let da = alpha.d();
    let tests: Vec<VField> = match pres {
        Presentation::Regular { .. } => span.clone(),
        _ => Vec::new(),
    };
    // Column k: coordinates of the condition evaluated on X = span[k].
    let project = |f: &Form| -> Vector {
        if tests.is_empty() {
            padded(f, n, p)
        } else {
            tests.iter().flat_map(|t| padded(&f.interior(t), n, p - 1)).collect()
        }
    };
    let cols: Vec<Vector> = span.iter().map(|v| project(&omega.interior(v).scale(&Rat::from_integer(sign.into())))).collect();
    let rows = if cols.is_empty() { 0 } else { cols[0].len() };
    let mat: Matrix = (0..rows).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    let mut x = VField::zero(n);
    for (e, c) in by_monomial(&da) {
        // GraphForm: -i_X w = c. Regular: i_s(c - i_X w) = 0, i.e. i_s i_X w = i_s c.
        let rhs = project(&c);
        let rhs = if rhs.is_empty() { continue } else { rhs };
        let sol = if cols.is_empty() {
            if linalg::is_zero_vec(&rhs) {
                continue;
            }
            return Ok(None);
        } else {
            match linalg::solve(&mat, &rhs, cols.len()) {
                Some(s) => s,
                None => return Ok(None),
            }
        };
        let mono = Poly::monomial(n, e, Rat::one());
        for (k, coeff) in sol.iter().enumerate() {
            if !coeff.is_zero() {
                x = &x + &span[k].mul_poly(&mono.scale(coeff));
            }
        }
    }
    Ok(Some(x))
}

fn padded(f: &Form, n: usize, k: usize) -> Vector {
    if f.is_zero() {
        vec![Rat::zero(); crate::scalar::binomial_usize(n, k)]
    } else {
        f.const_vector()
    }
}

/// `{a, b} = i_{X_a} d b`.
pub fn ham_bracket(a: &HamiltonianDatum, b: &HamiltonianDatum) -> Form {
    b.alpha.d().interior(&a.x)
}

/// Hamiltonian vector field of `{a, b}`, namely `[X_a, X_b]`.
pub fn ham_bracket_datum(a: &HamiltonianDatum, b: &HamiltonianDatum) -> HamiltonianDatum {
    HamiltonianDatum { alpha: ham_bracket(a, b), x: a.x.bracket(&b.x) }
}

/// Basis of all pairs `(alpha, X)` with `X + d alpha` in `L`, `alpha` of coefficient degree
/// `<= deg_alpha` and `X` of degree `<= deg_x` (for scaled-top presentations `X = f W` with
/// `W` of degree `<= deg_x`).
#[derive(Clone, Debug)]
pub struct HamiltonianSpace {
    pub p: usize,
    pub basis: Vec<(Form, VField)>,
}

fn collect_keys(residual: &[Form], keys: &mut BTreeMap<(usize, Mask, Exponents), usize>, entries: &mut Vec<(usize, Rat)>) {
    for (slot, f) in residual.iter().enumerate() {
        for (&m, p) in f.comps() {
            for (e, c) in p.terms() {
                let len = keys.len();
                let idx = *keys.entry((slot, m, e.clone())).or_insert(len);
                entries.push((idx, c.clone()));
            }
        }
    }
}

impl HamiltonianSpace {
    pub fn new(pres: &Presentation, deg_alpha: u32, deg_x: u32) -> HamiltonianSpace {
        let n = pres.dim();
        let p = pres.p();
        let monos_a = monomials_up_to(n, deg_alpha);
        let monos_x = monomials_up_to(n, deg_x);
        let mut unknowns: Vec<(Form, VField)> = Vec::new();
        for m in subsets_lex(n, p - 1) {
            for e in &monos_a {
                if e.iter().all(|&k| k == 0) && p == 1 {
                    continue;
                }
                let f = Form::term(n, &mask_indices(m), Poly::monomial(n, e.clone(), Rat::one()));
                unknowns.push((f, VField::zero(n)));
            }
        }
        let directions: Vec<VField> = match pres {
            Presentation::Regular { .. } => pres.s_fields(),
            Presentation::ScaledTop { f, .. } => (0..n).map(|i| VField::basis(n, i).mul_poly(f)).collect(),
            _ => (0..n).map(|i| VField::basis(n, i)).collect(),
        };
        for d in &directions {
            for e in &monos_x {
                unknowns.push((Form::zero(n, p as i32 - 1), d.mul_poly(&Poly::monomial(n, e.clone(), Rat::one()))));
            }
        }
        let residual = |a: &Form, x: &VField| -> Vec<Form> {
            let da = a.d();
            match pres {
                Presentation::GraphForm { omega, .. } => vec![&da + &omega.interior(x)],
                Presentation::Regular { omega, .. } => {
                    let rest = &da - &omega.interior(x);
                    pres.s_fields().iter().map(|s| rest.interior(s)).collect()
                }
                Presentation::ScaledTop { f, top } => {
                    let w = VField::from_comps(x.comps().iter().map(|c| c.divide_exact(f).expect("built as f W")).collect());
                    vec![&da + &top.interior(&w)]
                }
                Presentation::GraphMultivector { pi, .. } => {
                    let v = x - &contract_into_multivector(&da, pi);
                    vec![Form::from_comps(n, 1, v.comps().iter().enumerate().map(|(i, c)| (1 << i, c.clone())))]
                }
            }
        };
        let mut keys = BTreeMap::new();
        let mut columns: Vec<Vec<(usize, Rat)>> = Vec::new();
        for (a, x) in &unknowns {
            let mut entries = Vec::new();
            collect_keys(&residual(a, x), &mut keys, &mut entries);
            columns.push(entries);
        }
        let mut mat: Matrix = vec![vec![Rat::zero(); unknowns.len()]; keys.len()];
        for (j, col) in columns.iter().enumerate() {
            for (i, c) in col {
                mat[*i][j] += c;
            }
        }
        let ker = linalg::kernel(&mat, unknowns.len());
        let basis = ker
            .iter()
            .map(|z| {
                let mut a = Form::zero(n, p as i32 - 1);
                let mut x = VField::zero(n);
                for (c, (ua, ux)) in z.iter().zip(&unknowns) {
                    if c.is_zero() {
                        continue;
                    }
                    a = &a + &ua.scale(c);
                    x = &x + &ux.scale(c);
                }
                (a, x)
            })
            .collect();
        HamiltonianSpace { p, basis }
    }

    /// Random integer combination of at most `terms` basis elements.
    pub fn sample<R: Rng>(&self, rng: &mut R, terms: usize) -> HamiltonianDatum {
        let n = self.basis.first().map(|(a, _)| a.dim()).unwrap_or(0);
        let mut a = Form::zero(n, self.p as i32 - 1);
        let mut x = VField::zero(n);
        if self.basis.is_empty() {
            return HamiltonianDatum { alpha: a, x };
        }
        for _ in 0..rng.gen_range(1..=terms) {
            let (ba, bx) = &self.basis[rng.gen_range(0..self.basis.len())];
            let c = sample::coefficient(rng);
            a = &a + &ba.scale(&c);
            x = &x + &bx.scale(&c);
        }
        HamiltonianDatum { alpha: a, x }
    }

    /// Elements with `alpha = 0`, i.e. vector fields in `L cap (T + 0)` of bounded degree.
    pub fn kernel_fields(&self) -> Vec<VField> {
        self.basis.iter().filter(|(a, x)| a.is_zero() && !x.is_zero()).map(|(_, x)| x.clone()).collect()
    }
}

/// Left side minus right side of the nested-contraction identity for `n >= 3` Hamiltonian
/// data (contractions `i_{X_n} ... i_{X_3}` apply `i_{X_3}` first).
pub fn nested_identity_residual(h: &[HamiltonianDatum]) -> Form {
    let n = h.len();
    assert!(n >= 3);
    let br = |a: &HamiltonianDatum, b: &HamiltonianDatum| ham_bracket_datum(a, b);
    let chain = |f: Form, skip: &[usize], from: usize| -> Form {
        let mut cur = f;
        for k in from..n {
            if !skip.contains(&k) {
                cur = cur.interior(&h[k].x);
            }
        }
        cur
    };
    let lhs = chain(ham_bracket(&h[0], &h[1]), &[], 2).d();
    let mut rhs = Form::zero(h[0].alpha.dim(), h[0].alpha.deg());
    let sign = |k: usize| if k.is_multiple_of(2) { Rat::one() } else { -Rat::one() };
    // Indices below are 0-based; the 1-based exponents i + j - 1 and j shift accordingly.
    for i in 1..n {
        for j in i + 1..n {
            let inner = ham_bracket(&br(&h[i], &h[j]), &h[0]);
            let t = chain(inner, &[i, j], 1);
            rhs = &rhs + &t.scale(&sign((i + 1) + (j + 1) - 1));
        }
    }
    for j in 2..n {
        let inner = ham_bracket(&br(&h[0], &h[j]), &h[1]);
        let t = chain(inner, &[j], 2);
        rhs = &rhs + &t.scale(&sign(j + 1));
    }
    let inner = ham_bracket(&br(&h[0], &h[1]), &h[2]);
    rhs = &rhs + &chain(inner, &[], 3);
    &lhs - &rhs.scale(&sign(n + 1))
}
