//! Constant-coefficient linear algebra of subspaces of `T + ^p T*` and of the tiers
//! `^r T + ^{p+1-r} T*`.
//!
//! A vector of `T + ^p T*` has coordinates `(X_1..X_n, a_I)` with `I` running over the
//! increasing `p`-tuples in lexicographic order.

use std::collections::{BTreeMap, HashMap};

use num::{One, Zero};

use crate::courant::SectionPr;
use crate::exterior::{mask_indices, subsets_lex, Form, Mask, MultiVec, VField};
use crate::linalg::{self, Matrix, Vector};
use crate::scalar::{binomial_usize, Rat};
use crate::CoreError;

/// Subspace of `T + ^p T*`, stored by its reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinSubspace {
    n: usize,
    p: usize,
    basis: Matrix,
}

impl LinSubspace {
    pub fn new(n: usize, p: usize, vectors: &[Vector]) -> LinSubspace {
        let d = ambient_dim(n, p);
        assert!(vectors.iter().all(|v| v.len() == d), "vector length must be n + C(n,p)");
        LinSubspace { n, p, basis: linalg::row_space(vectors, d) }
    }

    pub fn from_sections(n: usize, p: usize, sections: &[(VField, Form)]) -> LinSubspace {
        let vs: Vec<Vector> = sections.iter().map(|(x, a)| section_vector(n, p, x, a)).collect();
        LinSubspace::new(n, p, &vs)
    }

    pub fn zero(n: usize, p: usize) -> LinSubspace {
        LinSubspace::new(n, p, &[])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        ambient_dim(self.n, self.p)
    }

    pub fn contains(&self, other: &LinSubspace) -> bool {
        linalg::span_contains(&self.basis, &other.basis, self.ambient())
    }

    pub fn contains_vector(&self, v: &[Rat]) -> bool {
        linalg::span_contains(&self.basis, &[v.to_vec()], self.ambient())
    }

    pub fn sections(&self) -> Vec<(VField, Form)> {
        self.basis.iter().map(|v| vector_section(self.n, self.p, v)).collect()
    }

    /// Canonical basis of `pr_T(L)`.
    pub fn anchor_image(&self) -> Matrix {
        let t: Matrix = self.basis.iter().map(|v| v[..self.n].to_vec()).collect();
        linalg::row_space(&t, self.n)
    }

    /// `L` intersected with `0 + ^p T*`, as form coordinate vectors.
    pub fn form_part(&self) -> Matrix {
        let t = linalg::transpose(&self.basis.iter().map(|v| v[..self.n].to_vec()).collect(), self.n);
        let combos = linalg::kernel(&t, self.dim());
        let forms: Matrix = combos
            .iter()
            .map(|c| {
                let mut out = vec![Rat::zero(); self.ambient() - self.n];
                for (ci, b) in c.iter().zip(&self.basis) {
                    for (o, bv) in out.iter_mut().zip(&b[self.n..]) {
                        *o += ci * bv;
                    }
                }
                out
            })
            .collect();
        linalg::row_space(&forms, self.ambient() - self.n)
    }
}

pub fn ambient_dim(n: usize, p: usize) -> usize {
    n + binomial_usize(n, p)
}

pub fn section_vector(n: usize, p: usize, x: &VField, a: &Form) -> Vector {
    let mut v = x.const_vector();
    if a.is_zero() {
        v.extend(std::iter::repeat_n(Rat::zero(), binomial_usize(n, p)));
    } else {
        assert_eq!(a.deg(), p as i32);
        v.extend(a.const_vector());
    }
    v
}

pub fn vector_section(n: usize, p: usize, v: &[Rat]) -> (VField, Form) {
    (VField::from_const_vector(&v[..n]), Form::from_const_vector(n, p, &v[n..]))
}

/// Precomputed index data for the `^{p-1} T*`-valued pairing on coordinate vectors.
pub struct PairingTable {
    n: usize,
    p: usize,
    lower_len: usize,
    /// `(form index J, axis i in J, index of J \ i, sign of i_{e_i} dx_J)`
    entries: Vec<(usize, usize, usize, bool)>,
}

impl PairingTable {
    pub fn new(n: usize, p: usize) -> PairingTable {
        let upper = subsets_lex(n, p);
        let lower = subsets_lex(n, p - 1);
        let index: HashMap<Mask, usize> = lower.iter().enumerate().map(|(k, &m)| (m, k)).collect();
        let mut entries = Vec::new();
        for (j, &m) in upper.iter().enumerate() {
            for i in mask_indices(m) {
                let below = (m & ((1 << i) - 1)).count_ones();
                entries.push((j, i, index[&(m & !(1 << i))], below % 2 == 0));
            }
        }
        PairingTable { n, p, lower_len: lower.len(), entries }
    }

    /// Coordinates of `<u, v>` in `^{p-1} T*`.
    pub fn pair(&self, u: &[Rat], v: &[Rat]) -> Vector {
        let n = self.n;
        let mut out = vec![Rat::zero(); self.lower_len];
        for &(j, i, k, plus) in &self.entries {
            let t = &u[i] * &v[n + j] + &v[i] * &u[n + j];
            if plus {
                out[k] += t;
            } else {
                out[k] -= t;
            }
        }
        out
    }

    /// Rows expressing `e -> <e, b>` as a linear map on coordinates of `e`.
    fn rows_against(&self, b: &[Rat]) -> Matrix {
        let n = self.n;
        let d = ambient_dim(n, self.p);
        let mut rows = vec![vec![Rat::zero(); d]; self.lower_len];
        for &(j, i, k, plus) in &self.entries {
            let (ci, cj) = (b[n + j].clone(), b[i].clone());
            if plus {
                rows[k][i] += ci;
                rows[k][n + j] += cj;
            } else {
                rows[k][i] -= ci;
                rows[k][n + j] -= cj;
            }
        }
        rows
    }
}

/// `L^perp = {e : <e, L> = 0}`.
pub fn perp(l: &LinSubspace) -> LinSubspace {
    let table = PairingTable::new(l.n, l.p);
    perp_with(&table, l)
}

pub fn perp_with(table: &PairingTable, l: &LinSubspace) -> LinSubspace {
    let rows: Matrix = l.basis.iter().flat_map(|b| table.rows_against(b)).collect();
    let k = linalg::kernel(&rows, l.ambient());
    LinSubspace::new(l.n, l.p, &k)
}

pub fn is_isotropic_with(table: &PairingTable, l: &LinSubspace) -> bool {
    for (a, u) in l.basis.iter().enumerate() {
        for v in &l.basis[a..] {
            if !linalg::is_zero_vec(&table.pair(u, v)) {
                return false;
            }
        }
    }
    true
}

/// Basis of `S°` in `T*` for a subspace `S` of `T`.
pub fn annihilator(n: usize, s: &Matrix) -> Matrix {
    linalg::kernel(s, n)
}

/// Coordinate basis of `^k S°` in `^k T*`.
pub fn wedge_annihilator(n: usize, s: &Matrix, k: usize) -> Matrix {
    let ann = annihilator(n, s);
    if k == 0 {
        return vec![vec![Rat::one()]];
    }
    let covs: Vec<Form> = ann.iter().map(|c| Form::from_const_vector(n, 1, c)).collect();
    let mut out = Vec::new();
    for pick in subsets_lex(covs.len(), k) {
        let w = mask_indices(pick).into_iter().fold(None::<Form>, |acc, i| match acc {
            None => Some(covs[i].clone()),
            Some(f) => Some(f.wedge(&covs[i])),
        });
        let w = w.expect("k >= 1");
        out.push(if w.is_zero() { vec![Rat::zero(); binomial_usize(n, k)] } else { w.const_vector() });
    }
    linalg::row_space(&out, binomial_usize(n, k))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub isotropic: bool,
    pub lagrangian: bool,
    pub easychar: bool,
}

pub fn classify(l: &LinSubspace) -> Classification {
    classify_with(&PairingTable::new(l.n, l.p), l)
}

/// Lagrangian test computed twice: `perp(L) = L`, and isotropy together with
/// `L cap ^p T* = ^p S°` and `dim S <= n - p or S = T`.
pub fn classify_with(table: &PairingTable, l: &LinSubspace) -> Classification {
    let isotropic = is_isotropic_with(table, l);
    let lagrangian = isotropic && perp_with(table, l) == *l;
    let s = l.anchor_image();
    let ds = s.len();
    let dim_ok = ds + l.p <= l.n || ds == l.n;
    let easychar = isotropic && dim_ok && {
        let ann = wedge_annihilator(l.n, &s, l.p);
        let fp = l.form_part();
        ann == fp
    };
    Classification { isotropic, lagrangian, easychar }
}

/// `(S, Omega)` with `S` in reduced echelon form and `Omega(s_a, s_b) = i_{s_b} a_a` for
/// `X_a + a_a` in `L` with `X_a = s_a`, stored for `a < b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LagrangianPair {
    pub n: usize,
    pub p: usize,
    pub s: Matrix,
    pub omega: BTreeMap<(usize, usize), Form>,
}

impl LagrangianPair {
    pub fn omega_at(&self, a: usize, b: usize) -> Form {
        let zero = Form::zero(self.n, self.p as i32 - 1);
        if a == b {
            return zero;
        }
        let (lo, hi, neg) = if a < b { (a, b, false) } else { (b, a, true) };
        let v = self.omega.get(&(lo, hi)).cloned().unwrap_or(zero);
        if neg {
            -&v
        } else {
            v
        }
    }
}

/// For each anchor basis vector `s_a`, a form `a_a` with `s_a + a_a` in `L`.
fn lift_anchor(l: &LinSubspace, s: &Matrix) -> Result<Vec<Form>, CoreError> {
    let n = l.n;
    let t = linalg::transpose(&l.basis.iter().map(|v| v[..n].to_vec()).collect(), n);
    s.iter()
        .map(|sa| {
            let c = linalg::solve(&t, sa, l.dim()).ok_or(CoreError::Invalid("anchor vector not in pr_T L".into()))?;
            let mut v = vec![Rat::zero(); l.ambient()];
            for (ci, b) in c.iter().zip(&l.basis) {
                for (o, bv) in v.iter_mut().zip(b) {
                    *o += ci * bv;
                }
            }
            Ok(Form::from_const_vector(n, l.p, &v[n..]))
        })
        .collect()
}

pub fn to_pair(l: &LinSubspace) -> Result<LagrangianPair, CoreError> {
    if !classify(l).lagrangian {
        return Err(CoreError::NotLagrangian);
    }
    let s = l.anchor_image();
    let lifts = lift_anchor(l, &s)?;
    let mut omega = BTreeMap::new();
    for a in 0..s.len() {
        for b in a + 1..s.len() {
            let v = lifts[a].interior(&VField::from_const_vector(&s[b]));
            if !v.is_zero() {
                omega.insert((a, b), v);
            }
        }
    }
    Ok(LagrangianPair { n: l.n, p: l.p, s, omega })
}

/// Solves `i_{s_b} a = Omega(s_a, s_b)` for every `b`, giving `beta(s_a) = a`.
fn solve_beta(pair: &LagrangianPair) -> Result<Vec<Form>, CoreError> {
    let (n, p) = (pair.n, pair.p);
    let upper = binomial_usize(n, p);
    let svecs: Vec<VField> = pair.s.iter().map(|v| VField::from_const_vector(v)).collect();
    // Linear map a -> (i_{s_b} a)_b on coordinates of a.
    let mut rows: Matrix = Vec::new();
    let lower = binomial_usize(n, p - 1);
    let cols: Vec<Vec<Vector>> = (0..upper)
        .map(|j| {
            let mut unit = vec![Rat::zero(); upper];
            unit[j] = Rat::one();
            let f = Form::from_const_vector(n, p, &unit);
            svecs.iter().map(|s| padded(&f.interior(s), n, p - 1)).collect()
        })
        .collect();
    for b in 0..svecs.len() {
        for k in 0..lower {
            rows.push((0..upper).map(|j| cols[j][b][k].clone()).collect());
        }
    }
    (0..svecs.len())
        .map(|a| {
            let rhs: Vector = (0..svecs.len()).flat_map(|b| padded(&pair.omega_at(a, b), n, p - 1)).collect();
            let sol = linalg::solve(&rows, &rhs, upper)
                .ok_or_else(|| CoreError::NotExtendable(format!("no p-form restricts to Omega(s_{}, .)", a + 1)))?;
            Ok(Form::from_const_vector(n, p, &sol))
        })
        .collect()
}

fn padded(f: &Form, n: usize, k: usize) -> Vector {
    if f.is_zero() {
        vec![Rat::zero(); binomial_usize(n, k)]
    } else {
        f.const_vector()
    }
}

/// `L = {X + a : X in S, a|_{S x T..} = i_X Omega}`, after checking that `Omega` extends and
/// that `dim S` is admissible.
pub fn from_pair(pair: &LagrangianPair) -> Result<LinSubspace, CoreError> {
    let (n, p) = (pair.n, pair.p);
    let k = pair.s.len();
    let beta = solve_beta(pair)?;
    let omega = extend_to_form(n, p, &pair.s, &beta, None)?;
    for a in 0..k {
        for b in 0..k {
            let sb = VField::from_const_vector(&pair.s[b]);
            let sa = VField::from_const_vector(&pair.s[a]);
            if omega.interior(&sa).interior(&sb) != pair.omega_at(a, b) {
                return Err(CoreError::NotExtendable("extension does not restrict to Omega".into()));
            }
        }
    }
    if !(k + p <= n || k == n) {
        return Err(CoreError::DimensionConstraint { dim_s: k, n, p });
    }
    // Unknowns (c_1..c_k, a): X = sum c_a s_a and i_{s_b} a - sum_a c_a Omega(a,b) = 0.
    let upper = binomial_usize(n, p);
    let lower = binomial_usize(n, p - 1);
    let svecs: Vec<VField> = pair.s.iter().map(|v| VField::from_const_vector(v)).collect();
    let mut rows: Matrix = Vec::new();
    for b in 0..k {
        let mut block = vec![vec![Rat::zero(); k + upper]; lower];
        for a in 0..k {
            let om = padded(&pair.omega_at(a, b), n, p - 1);
            for (r, row) in block.iter_mut().enumerate() {
                row[a] = -om[r].clone();
            }
        }
        for j in 0..upper {
            let mut unit = vec![Rat::zero(); upper];
            unit[j] = Rat::one();
            let c = padded(&Form::from_const_vector(n, p, &unit).interior(&svecs[b]), n, p - 1);
            for (r, row) in block.iter_mut().enumerate() {
                row[k + j] = c[r].clone();
            }
        }
        rows.extend(block);
    }
    let sol = linalg::kernel(&rows, k + upper);
    let vectors: Vec<Vector> = sol
        .iter()
        .map(|z| {
            let mut v = vec![Rat::zero(); n];
            for a in 0..k {
                for (vi, si) in v.iter_mut().zip(&pair.s[a]) {
                    *vi += &z[a] * si;
                }
            }
            v.extend_from_slice(&z[k..]);
            v
        })
        .collect();
    Ok(LinSubspace::new(n, p, &vectors))
}

/// Extends `beta in S* x ^p T*` (given on a basis `s_a` of `S` by `beta[a]`) to
/// `w in ^{p+1} T*` with `w(s_a, ...) = beta[a]`, by the weighted skew-symmetrization in a
/// basis adapted to `S + C`. The complement defaults to the orthogonal complement of `S`.
pub fn extend_to_form(n: usize, p: usize, s: &[Vector], beta: &[Form], complement: Option<&[Vector]>) -> Result<Form, CoreError> {
    let k = s.len();
    assert_eq!(beta.len(), k);
    let svecs: Vec<VField> = s.iter().map(|v| VField::from_const_vector(v)).collect();
    for a in 0..k {
        for b in a..k {
            let sym = &beta[a].interior(&svecs[b]) + &beta[b].interior(&svecs[a]);
            if !sym.is_zero() {
                return Err(CoreError::NotExtendable(format!("beta not skew on S at ({}, {})", a + 1, b + 1)));
            }
        }
    }
    let comp: Matrix = match complement {
        Some(c) => c.to_vec(),
        None => annihilator(n, &s.to_vec()),
    };
    let mut frame: Matrix = s.to_vec();
    frame.extend(comp);
    if frame.len() != n || linalg::rank(&frame, n) != n {
        return Err(CoreError::Invalid("S and its complement do not span T".into()));
    }
    let fields: Vec<VField> = frame.iter().map(|v| VField::from_const_vector(v)).collect();
    // Columns of the frame matrix are the adapted basis; rows of its inverse are the dual basis.
    let a_mat = linalg::transpose(&frame, n);
    let inv = linalg::inverse(&a_mat).ok_or(CoreError::Degenerate)?;
    let dual: Vec<Form> = inv.iter().map(|row| Form::from_const_vector(n, 1, row)).collect();
    let mut omega = Form::zero(n, p as i32 + 1);
    for big in subsets_lex(n, p + 1) {
        let idx = mask_indices(big);
        let q = idx.iter().filter(|&&i| i < k).count();
        if q == 0 {
            continue;
        }
        let mut coeff = Rat::zero();
        for (t, &i) in idx.iter().enumerate() {
            if i >= k {
                continue;
            }
            let rest: Vec<VField> = idx.iter().filter(|&&j| j != i).map(|&j| fields[j].clone()).collect();
            let v = beta[i].eval_const(&rest);
            if t % 2 == 0 {
                coeff += v;
            } else {
                coeff -= v;
            }
        }
        if coeff.is_zero() {
            continue;
        }
        coeff /= Rat::from_integer((q as i64).into());
        let w = idx[1..].iter().fold(dual[idx[0]].clone(), |acc, &j| acc.wedge(&dual[j]));
        omega = &omega + &w.scale(&coeff);
    }
    Ok(omega)
}

fn check_dims(n: usize, p: usize, ds: usize) -> Result<(), CoreError> {
    if ds + p <= n || ds == n {
        Ok(())
    } else {
        Err(CoreError::DimensionConstraint { dim_s: ds, n, p })
    }
}

/// `L = {X + i_X w + a : X in S, a in ^p S°}`.
pub fn norom_subspace(n: usize, p: usize, s: &[Vector], omega: &Form) -> Result<LinSubspace, CoreError> {
    let s = linalg::row_space(s, n);
    check_dims(n, p, s.len())?;
    let mut vs: Vec<Vector> = s
        .iter()
        .map(|sv| {
            let x = VField::from_const_vector(sv);
            section_vector(n, p, &x, &omega.interior(&x))
        })
        .collect();
    for a in wedge_annihilator(n, &s, p) {
        let mut v = vec![Rat::zero(); n];
        v.extend(a);
        vs.push(v);
    }
    Ok(LinSubspace::new(n, p, &vs))
}

/// `graph(w) = {X - i_X w}` for a constant `(p+1)`-form.
pub fn graph_subspace(n: usize, p: usize, omega: &Form) -> LinSubspace {
    let vs: Vec<Vector> = (0..n)
        .map(|i| {
            let x = VField::basis(n, i);
            section_vector(n, p, &x, &-&omega.interior(&x))
        })
        .collect();
    LinSubspace::new(n, p, &vs)
}

/// A constant `(p+1)`-form describing `L` as `{X + i_X w + a : X in S, a in ^p S°}`.
pub fn describing_form(l: &LinSubspace) -> Result<Form, CoreError> {
    let s = l.anchor_image();
    let lifts = lift_anchor(l, &s)?;
    extend_to_form(l.n, l.p, &s, &lifts, None)
}

/// Subspace of `P_r = ^r T + ^{p+1-r} T*` for a fixed order `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TierSubspace {
    pub n: usize,
    pub p: usize,
    pub r: usize,
    basis: Matrix,
}

impl TierSubspace {
    pub fn new(n: usize, p: usize, r: usize, vectors: &[Vector]) -> TierSubspace {
        let d = tier_dim(n, p, r);
        TierSubspace { n, p, r, basis: linalg::row_space(vectors, d) }
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn elements(&self) -> Vec<SectionPr> {
        self.basis.iter().map(|v| tier_element(self.n, self.p, self.r, v)).collect()
    }

    pub fn from_lagrangian(l: &LinSubspace) -> TierSubspace {
        TierSubspace { n: l.n, p: l.p, r: 1, basis: l.basis.clone() }
    }

    /// `pr_{^r T}` of the subspace, as coordinate vectors.
    pub fn multivector_part(&self) -> Matrix {
        let m = binomial_usize(self.n, self.r);
        let v: Matrix = self.basis.iter().map(|b| b[..m].to_vec()).collect();
        linalg::row_space(&v, m)
    }
}

pub fn tier_dim(n: usize, p: usize, r: usize) -> usize {
    binomial_usize(n, r) + binomial_usize(n, p + 1 - r)
}

pub fn tier_element(n: usize, p: usize, r: usize, v: &[Rat]) -> SectionPr {
    let m = binomial_usize(n, r);
    let y = MultiVec::from_const_vector(n, r, &v[..m]);
    let eta = Form::from_const_vector(n, p + 1 - r, &v[m..]);
    SectionPr::new(p, r, y, eta).expect("tier element")
}

pub fn tier_vector(e: &SectionPr) -> Vector {
    let n = e.y.dim();
    let mut v = if e.y.is_zero() { vec![Rat::zero(); binomial_usize(n, e.r)] } else { e.y.const_vector() };
    v.extend(padded(&e.eta, n, e.p + 1 - e.r));
    v
}

/// `(V_s)^{perp, r} = {(Y, eta) in P_r : <<(Y, eta), V_s>> = 0}`.
pub fn tier_perp(v: &TierSubspace, r: usize) -> Result<TierSubspace, CoreError> {
    let (n, p, s) = (v.n, v.p, v.r);
    if r + s > p + 1 {
        return Err(CoreError::TierOverflow(format!("r + s = {} > p + 1", r + s)));
    }
    let d = tier_dim(n, p, r);
    let lower = binomial_usize(n, p + 1 - r - s);
    let units: Vec<SectionPr> = (0..d)
        .map(|j| {
            let mut u = vec![Rat::zero(); d];
            u[j] = Rat::one();
            tier_element(n, p, r, &u)
        })
        .collect();
    let mut rows: Matrix = Vec::new();
    for b in v.elements() {
        let cols: Vec<Vector> = units
            .iter()
            .map(|u| padded(&crate::courant::multi_pairing(u, &b).expect("tiers checked"), n, p + 1 - r - s))
            .collect();
        for k in 0..lower {
            rows.push(cols.iter().map(|c| c[k].clone()).collect());
        }
    }
    Ok(TierSubspace::new(n, p, r, &linalg::kernel(&rows, d)))
}

/// The tier `D_r` of a Lagrangian `L`, computed from `(S, w)` as
/// `{Y + i_Y w + xi : Y in S ^ (^{r-1} T), xi in ^{p+1-r} S°}` and independently as
/// `L^{perp, r}`; the two must agree.
pub fn multidirac_tier(l: &LinSubspace, r: usize) -> Result<TierSubspace, CoreError> {
    let (n, p) = (l.n, l.p);
    if r == 0 || r > p {
        return Err(CoreError::TierOverflow(format!("tier {r} outside 1..={p}")));
    }
    if !classify(l).lagrangian {
        return Err(CoreError::NotLagrangian);
    }
    let s = l.anchor_image();
    let omega = describing_form(l)?;
    let mut vs: Vec<Vector> = Vec::new();
    for sv in &s {
        let sm = VField::from_const_vector(sv).to_multivec();
        for rest in subsets_lex(n, r - 1) {
            let y = sm.wedge(&MultiVec::basis(n, &mask_indices(rest)));
            if y.is_zero() {
                continue;
            }
            let e = SectionPr::graph(p, y, &omega)?;
            vs.push(tier_vector(&e));
        }
    }
    let m = binomial_usize(n, r);
    for xi in wedge_annihilator(n, &s, p + 1 - r) {
        let mut v = vec![Rat::zero(); m];
        v.extend(xi);
        vs.push(v);
    }
    let formula = TierSubspace::new(n, p, r, &vs);
    let brute = tier_perp(&TierSubspace::from_lagrangian(l), r)?;
    if formula != brute {
        return Err(CoreError::Invalid(format!(
            "tier {r}: formula (dim {}) and perp (dim {}) disagree",
            formula.dim(),
            brute.dim()
        )));
    }
    Ok(formula)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NambuDirac {
    pub iso_weak: bool,
    pub hismax: bool,
}

/// Weak isotropy (pairings vanish on `^{p-1} pr_T L`) and the maximality condition
/// `^p pr_T L = pr_{^p T} L^{perp, p}`.
pub fn nambu_dirac_check(l: &LinSubspace) -> NambuDirac {
    let (n, p) = (l.n, l.p);
    let table = PairingTable::new(n, p);
    let s = l.anchor_image();
    let svecs: Vec<VField> = s.iter().map(|v| VField::from_const_vector(v)).collect();
    let tuples: Vec<Vec<VField>> = if p == 1 {
        vec![vec![]]
    } else {
        subsets_lex(svecs.len(), p - 1).into_iter().map(|m| mask_indices(m).into_iter().map(|i| svecs[i].clone()).collect()).collect()
    };
    let mut iso_weak = true;
    'outer: for (a, u) in l.basis.iter().enumerate() {
        for v in &l.basis[a..] {
            let f = Form::from_const_vector(n, p - 1, &table.pair(u, v));
            for t in &tuples {
                if !f.eval_const(t).is_zero() {
                    iso_weak = false;
                    break 'outer;
                }
            }
        }
    }
    let m = binomial_usize(n, p);
    let wedge_s: Matrix = subsets_lex(svecs.len(), p)
        .into_iter()
        .map(|pick| {
            let y = mask_indices(pick).into_iter().fold(MultiVec::scalar(crate::scalar::Poly::one(n)), |acc, i| acc.wedge(&svecs[i].to_multivec()));
            if y.is_zero() {
                vec![Rat::zero(); m]
            } else {
                y.const_vector()
            }
        })
        .collect();
    let wedge_s = linalg::row_space(&wedge_s, m);
    let perp_p = tier_perp(&TierSubspace::from_lagrangian(l), p).expect("p + 1 <= p + 1");
    let hismax = wedge_s == perp_p.multivector_part();
    NambuDirac { iso_weak, hismax }
}
