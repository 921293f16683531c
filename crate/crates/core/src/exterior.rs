//! Differential forms, vector fields and multivector fields on a coordinate patch of `R^n`.
//!
//! Index sets are stored as bitmasks (bit `i` is the axis `x_{i+1}`). Contraction of a
//! multivector into a form contracts the wedge factors first-to-last:
//! `i_{X1^...^Xq} = i_{Xq} o ... o i_{X1}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num::Zero;

use crate::scalar::{write_signed_terms, Poly, Rat};
use crate::CoreError;

pub type Mask = u32;

pub fn mask_of(idx: &[usize]) -> Mask {
    idx.iter().fold(0, |m, &i| m | (1 << i))
}

pub fn mask_indices(mask: Mask) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

fn below(mask: Mask, i: usize) -> u32 {
    (mask & ((1u32 << i) - 1)).count_ones()
}

/// Sign of `e_a ^ e_b` relative to the sorted basis element of `a | b` (disjoint masks).
pub fn wedge_sign(a: Mask, b: Mask) -> i32 {
    let mut inversions = 0u32;
    for j in mask_indices(b) {
        inversions += (a >> (j + 1)).count_ones();
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// All `k`-element index sets of `{0..n-1}` in lexicographic order of increasing tuples.
pub fn subsets_lex(n: usize, k: usize) -> Vec<Mask> {
    use itertools::Itertools;
    (0..n).combinations(k).map(|c| mask_of(&c)).collect()
}

/// Sign and sorted mask of an index sequence; `None` if an index repeats.
pub fn sort_indices(idx: &[usize]) -> Option<(i32, Mask)> {
    let mut sign = 1;
    let mut mask: Mask = 0;
    for &i in idx {
        if mask & (1 << i) != 0 {
            return None;
        }
        if (mask >> (i + 1)).count_ones() % 2 == 1 {
            sign = -sign;
        }
        mask |= 1 << i;
    }
    Some((sign, mask))
}

fn add_comp(comps: &mut BTreeMap<Mask, Poly>, m: Mask, p: Poly) {
    if p.is_zero() {
        return;
    }
    match comps.entry(m) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(p);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += &p;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn signed(p: &Poly, sign: i32) -> Poly {
    if sign > 0 {
        p.clone()
    } else {
        -p
    }
}

fn word(mask: Mask, prefix: &str) -> String {
    mask_indices(mask)
        .into_iter()
        .map(|i| if i < 9 { format!("{prefix}{}", i + 1) } else { format!("{prefix}{{{}}}", i + 1) })
        .collect::<Vec<_>>()
        .join("^")
}

fn write_comps(f: &mut fmt::Formatter<'_>, comps: &BTreeMap<Mask, Poly>, prefix: &str) -> fmt::Result {
    let mut keys: Vec<Mask> = comps.keys().copied().collect();
    keys.sort_by_key(|&m| mask_indices(m));
    let mut terms = Vec::new();
    for m in keys {
        let p = &comps[&m];
        if m == 0 {
            for (e, c) in p.ordered_terms() {
                terms.push((c.clone(), crate::scalar::monomial_text(e)));
            }
        } else {
            terms.extend(p.times_word(&word(m, prefix)));
        }
    }
    write_signed_terms(f, terms.into_iter())
}

/// Differential form of a fixed degree. Degrees outside `0..=n` hold only the zero value.
/// Zero forms compare equal regardless of their nominal degree.
#[derive(Clone)]
pub struct Form {
    n: usize,
    deg: i32,
    comps: BTreeMap<Mask, Poly>,
}

impl Form {
    pub fn zero(n: usize, deg: i32) -> Form {
        Form { n, deg, comps: BTreeMap::new() }
    }

    pub fn scalar(f: Poly) -> Form {
        let n = f.dim();
        let mut comps = BTreeMap::new();
        add_comp(&mut comps, 0, f);
        Form { n, deg: 0, comps }
    }

    /// `dx_{i1} ^ ... ^ dx_{ik}` for 0-based axes in the given order.
    pub fn basis(n: usize, idx: &[usize]) -> Form {
        Form::term(n, idx, Poly::one(n))
    }

    /// `f dx_{i1} ^ ... ^ dx_{ik}`; zero if an axis repeats.
    pub fn term(n: usize, idx: &[usize], f: Poly) -> Form {
        assert!(idx.iter().all(|&i| i < n), "axis out of range");
        let mut out = Form::zero(n, idx.len() as i32);
        if let Some((s, m)) = sort_indices(idx) {
            add_comp(&mut out.comps, m, signed(&f, s));
        }
        out
    }

    pub fn from_comps(n: usize, deg: i32, comps: impl IntoIterator<Item = (Mask, Poly)>) -> Form {
        let mut out = Form::zero(n, deg);
        for (m, p) in comps {
            assert_eq!(m.count_ones() as i32, deg, "component degree mismatch");
            out.add_comp(m, p);
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn deg(&self) -> i32 {
        self.deg
    }

    pub fn comps(&self) -> &BTreeMap<Mask, Poly> {
        &self.comps
    }

    pub fn coeff(&self, m: Mask) -> Poly {
        self.comps.get(&m).cloned().unwrap_or_else(|| Poly::zero(self.n))
    }

    pub fn add_comp(&mut self, m: Mask, p: Poly) {
        add_comp(&mut self.comps, m, p);
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.comps.values().all(Poly::is_constant)
    }

    /// Degree-0 value as a polynomial.
    pub fn as_poly(&self) -> Poly {
        assert!(self.deg == 0 || self.is_zero(), "not a 0-form");
        self.coeff(0)
    }

    fn check(&self, other: &Form) {
        assert_eq!(self.n, other.n, "form context mismatch");
        assert!(
            self.deg == other.deg || self.is_zero() || other.is_zero(),
            "form degree mismatch: {} vs {}",
            self.deg,
            other.deg
        );
    }

    pub fn scale(&self, c: &Rat) -> Form {
        Form::from_comps(self.n, self.deg, self.comps.iter().map(|(&m, p)| (m, p.scale(c))))
    }

    pub fn mul_poly(&self, f: &Poly) -> Form {
        Form::from_comps(self.n, self.deg, self.comps.iter().map(|(&m, p)| (m, p * f)))
    }

    pub fn wedge(&self, other: &Form) -> Form {
        assert_eq!(self.n, other.n, "form context mismatch");
        let mut out = Form::zero(self.n, self.deg + other.deg);
        for (&a, pa) in &self.comps {
            for (&b, pb) in &other.comps {
                if a & b != 0 {
                    continue;
                }
                out.add_comp(a | b, signed(&(pa * pb), wedge_sign(a, b)));
            }
        }
        out
    }

    /// Interior product with a vector field.
    pub fn interior(&self, x: &VField) -> Form {
        assert_eq!(self.n, x.n, "context mismatch");
        let mut out = Form::zero(self.n, self.deg - 1);
        for (&m, p) in &self.comps {
            for i in mask_indices(m) {
                if x.comps[i].is_zero() {
                    continue;
                }
                let s = if below(m, i).is_multiple_of(2) { 1 } else { -1 };
                out.add_comp(m & !(1 << i), signed(&(p * &x.comps[i]), s));
            }
        }
        out
    }

    /// `i_Y` for a multivector `Y`, first wedge factor contracted first.
    pub fn interior_multi(&self, y: &MultiVec) -> Form {
        assert_eq!(self.n, y.n, "context mismatch");
        let mut out = Form::zero(self.n, self.deg - y.deg);
        for (&j, py) in &y.comps {
            for (&m, pa) in &self.comps {
                if m & j != j {
                    continue;
                }
                let mut cur = m;
                let mut sign = 1;
                for i in mask_indices(j) {
                    if below(cur, i) % 2 == 1 {
                        sign = -sign;
                    }
                    cur &= !(1 << i);
                }
                out.add_comp(cur, signed(&(py * pa), sign));
            }
        }
        out
    }

    /// Exterior derivative.
    pub fn d(&self) -> Form {
        let mut out = Form::zero(self.n, self.deg + 1);
        for (&m, p) in &self.comps {
            for i in 0..self.n {
                if m & (1 << i) != 0 {
                    continue;
                }
                let dp = p.partial(i);
                if dp.is_zero() {
                    continue;
                }
                let s = if below(m, i).is_multiple_of(2) { 1 } else { -1 };
                out.add_comp(m | (1 << i), signed(&dp, s));
            }
        }
        out
    }

    /// Lie derivative by Cartan's formula `d i_X + i_X d`.
    pub fn lie(&self, x: &VField) -> Form {
        &self.interior(x).d() + &self.d().interior(x)
    }

    /// Coefficients of a constant form in lexicographic tuple order.
    pub fn const_vector(&self) -> Vec<Rat> {
        assert!(self.is_constant(), "form has non-constant coefficients");
        assert!(self.deg >= 0 && self.deg as usize <= self.n);
        subsets_lex(self.n, self.deg as usize).into_iter().map(|m| self.coeff(m).constant_term()).collect()
    }

    pub fn from_const_vector(n: usize, deg: usize, v: &[Rat]) -> Form {
        let basis = subsets_lex(n, deg);
        assert_eq!(basis.len(), v.len());
        Form::from_comps(n, deg as i32, basis.into_iter().zip(v).map(|(m, c)| (m, Poly::constant(n, c.clone()))))
    }

    /// Largest total degree among coefficients.
    pub fn coeff_degree(&self) -> Option<u32> {
        self.comps.values().filter_map(Poly::degree).max()
    }
}

macro_rules! graded_eq {
    ($t:ty) => {
        impl PartialEq for $t {
            fn eq(&self, other: &Self) -> bool {
                self.n == other.n && self.comps == other.comps && (self.deg == other.deg || self.comps.is_empty())
            }
        }

        impl Eq for $t {}

        impl std::hash::Hash for $t {
            fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
                self.n.hash(state);
                self.comps.hash(state);
            }
        }
    };
}

graded_eq!(Form);
graded_eq!(MultiVec);

impl Add for &Form {
    type Output = Form;
    fn add(self, rhs: &Form) -> Form {
        self.check(rhs);
        let mut out = if self.is_zero() { Form::zero(self.n, rhs.deg) } else { self.clone() };
        for (&m, p) in &rhs.comps {
            out.add_comp(m, p.clone());
        }
        out
    }
}

impl Sub for &Form {
    type Output = Form;
    fn sub(self, rhs: &Form) -> Form {
        self + &(-rhs)
    }
}

impl Neg for &Form {
    type Output = Form;
    fn neg(self) -> Form {
        Form { n: self.n, deg: self.deg, comps: self.comps.iter().map(|(&m, p)| (m, -p)).collect() }
    }
}

impl Add for Form {
    type Output = Form;
    fn add(self, rhs: Form) -> Form {
        &self + &rhs
    }
}

impl Sub for Form {
    type Output = Form;
    fn sub(self, rhs: Form) -> Form {
        &self - &rhs
    }
}

impl Neg for Form {
    type Output = Form;
    fn neg(self) -> Form {
        -&self
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_comps(f, &self.comps, "dx")
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form[n={},deg={}]({})", self.n, self.deg, self)
    }
}

/// Vector field `sum X^i d/dx_i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VField {
    n: usize,
    comps: Vec<Poly>,
}

impl VField {
    pub fn zero(n: usize) -> VField {
        VField { n, comps: vec![Poly::zero(n); n] }
    }

    pub fn basis(n: usize, i: usize) -> VField {
        let mut v = VField::zero(n);
        v.comps[i] = Poly::one(n);
        v
    }

    pub fn from_comps(comps: Vec<Poly>) -> VField {
        let n = comps.len();
        assert!(comps.iter().all(|p| p.dim() == n), "vector field context mismatch");
        VField { n, comps }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn comps(&self) -> &[Poly] {
        &self.comps
    }

    pub fn comp(&self, i: usize) -> &Poly {
        &self.comps[i]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }

    pub fn is_constant(&self) -> bool {
        self.comps.iter().all(Poly::is_constant)
    }

    /// Derivative `X(f)`.
    pub fn apply(&self, f: &Poly) -> Poly {
        assert_eq!(self.n, f.dim(), "context mismatch");
        let mut out = Poly::zero(self.n);
        for (i, xi) in self.comps.iter().enumerate() {
            if !xi.is_zero() {
                out += &(xi * &f.partial(i));
            }
        }
        out
    }

    /// Lie bracket `[X, Y]`.
    pub fn bracket(&self, other: &VField) -> VField {
        assert_eq!(self.n, other.n, "context mismatch");
        VField::from_comps((0..self.n).map(|i| &self.apply(&other.comps[i]) - &other.apply(&self.comps[i])).collect())
    }

    pub fn scale(&self, c: &Rat) -> VField {
        VField { n: self.n, comps: self.comps.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn mul_poly(&self, f: &Poly) -> VField {
        VField { n: self.n, comps: self.comps.iter().map(|p| p * f).collect() }
    }

    pub fn to_multivec(&self) -> MultiVec {
        MultiVec::from_comps(self.n, 1, self.comps.iter().enumerate().map(|(i, p)| (1 << i, p.clone())))
    }

    pub fn const_vector(&self) -> Vec<Rat> {
        assert!(self.is_constant());
        self.comps.iter().map(Poly::constant_term).collect()
    }

    pub fn from_const_vector(v: &[Rat]) -> VField {
        let n = v.len();
        VField::from_comps(v.iter().map(|c| Poly::constant(n, c.clone())).collect())
    }
}

impl Add for &VField {
    type Output = VField;
    fn add(self, rhs: &VField) -> VField {
        assert_eq!(self.n, rhs.n, "context mismatch");
        VField { n: self.n, comps: self.comps.iter().zip(&rhs.comps).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &VField {
    type Output = VField;
    fn sub(self, rhs: &VField) -> VField {
        assert_eq!(self.n, rhs.n, "context mismatch");
        VField { n: self.n, comps: self.comps.iter().zip(&rhs.comps).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &VField {
    type Output = VField;
    fn neg(self) -> VField {
        VField { n: self.n, comps: self.comps.iter().map(|p| -p).collect() }
    }
}

impl Add for VField {
    type Output = VField;
    fn add(self, rhs: VField) -> VField {
        &self + &rhs
    }
}

impl Sub for VField {
    type Output = VField;
    fn sub(self, rhs: VField) -> VField {
        &self - &rhs
    }
}

impl Neg for VField {
    type Output = VField;
    fn neg(self) -> VField {
        -&self
    }
}

impl fmt::Display for VField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_multivec())
    }
}

impl fmt::Debug for VField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VField[n={}]({})", self.n, self)
    }
}

/// Multivector field of a fixed degree, `sum Y^J d_J`.
#[derive(Clone)]
pub struct MultiVec {
    n: usize,
    deg: i32,
    comps: BTreeMap<Mask, Poly>,
}

impl MultiVec {
    pub fn zero(n: usize, deg: i32) -> MultiVec {
        MultiVec { n, deg, comps: BTreeMap::new() }
    }

    pub fn scalar(f: Poly) -> MultiVec {
        let n = f.dim();
        MultiVec::from_comps(n, 0, [(0, f)])
    }

    pub fn basis(n: usize, idx: &[usize]) -> MultiVec {
        MultiVec::term(n, idx, Poly::one(n))
    }

    pub fn term(n: usize, idx: &[usize], f: Poly) -> MultiVec {
        assert!(idx.iter().all(|&i| i < n), "axis out of range");
        let mut out = MultiVec::zero(n, idx.len() as i32);
        if let Some((s, m)) = sort_indices(idx) {
            add_comp(&mut out.comps, m, signed(&f, s));
        }
        out
    }

    pub fn from_comps(n: usize, deg: i32, comps: impl IntoIterator<Item = (Mask, Poly)>) -> MultiVec {
        let mut out = MultiVec::zero(n, deg);
        for (m, p) in comps {
            assert_eq!(m.count_ones() as i32, deg, "component degree mismatch");
            add_comp(&mut out.comps, m, p);
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn deg(&self) -> i32 {
        self.deg
    }

    pub fn comps(&self) -> &BTreeMap<Mask, Poly> {
        &self.comps
    }

    pub fn coeff(&self, m: Mask) -> Poly {
        self.comps.get(&m).cloned().unwrap_or_else(|| Poly::zero(self.n))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.comps.values().all(Poly::is_constant)
    }

    /// The degree-1 case as a vector field.
    pub fn to_vfield(&self) -> VField {
        assert!(self.deg == 1 || self.is_zero(), "not a vector field");
        VField::from_comps((0..self.n).map(|i| self.coeff(1 << i)).collect())
    }

    pub fn scale(&self, c: &Rat) -> MultiVec {
        MultiVec::from_comps(self.n, self.deg, self.comps.iter().map(|(&m, p)| (m, p.scale(c))))
    }

    pub fn mul_poly(&self, f: &Poly) -> MultiVec {
        MultiVec::from_comps(self.n, self.deg, self.comps.iter().map(|(&m, p)| (m, p * f)))
    }

    pub fn wedge(&self, other: &MultiVec) -> MultiVec {
        assert_eq!(self.n, other.n, "context mismatch");
        let mut out = MultiVec::zero(self.n, self.deg + other.deg);
        for (&a, pa) in &self.comps {
            for (&b, pb) in &other.comps {
                if a & b != 0 {
                    continue;
                }
                add_comp(&mut out.comps, a | b, signed(&(pa * pb), wedge_sign(a, b)));
            }
        }
        out
    }

    /// Each term `f d_{j1}^...^d_{jq}` as the factor list `(f d_{j1}, d_{j2}, ..., d_{jq})`.
    pub fn decomposable_terms(&self) -> Vec<Vec<VField>> {
        self.comps
            .iter()
            .map(|(&m, p)| {
                let idx = mask_indices(m);
                idx.iter()
                    .enumerate()
                    .map(|(k, &i)| if k == 0 { VField::basis(self.n, i).mul_poly(p) } else { VField::basis(self.n, i) })
                    .collect()
            })
            .collect()
    }

    pub fn wedge_all(n: usize, factors: &[VField]) -> MultiVec {
        factors.iter().fold(MultiVec::scalar(Poly::one(n)), |acc, x| acc.wedge(&x.to_multivec()))
    }

    /// Schouten bracket, expanded over decomposable terms:
    /// `[X1^..^Xr, Y1^..^Ys] = (-1)^{(r-1)(s-1)} sum (-1)^{a+b} [Xa,Yb] ^ X1..^Xa..^Xr ^ Y1..^Yb..^Ys`.
    /// The overall sign makes `i_{[Y,Z]} = L_Y i_Z - (-1)^{(r-1)s} i_Z L_Y` with
    /// `L_Y = i_Y d - (-1)^r d i_Y`.
    pub fn schouten(&self, other: &MultiVec) -> MultiVec {
        assert_eq!(self.n, other.n, "context mismatch");
        assert!(self.deg >= 1 && other.deg >= 1, "bracket needs degrees >= 1");
        let n = self.n;
        let mut out = MultiVec::zero(n, self.deg + other.deg - 1);
        for xs in self.decomposable_terms() {
            for ys in other.decomposable_terms() {
                for a in 0..xs.len() {
                    for b in 0..ys.len() {
                        let br = xs[a].bracket(&ys[b]);
                        if br.is_zero() {
                            continue;
                        }
                        let mut factors = vec![br];
                        factors.extend(xs.iter().enumerate().filter(|(k, _)| *k != a).map(|(_, v)| v.clone()));
                        factors.extend(ys.iter().enumerate().filter(|(k, _)| *k != b).map(|(_, v)| v.clone()));
                        let w = MultiVec::wedge_all(n, &factors);
                        let parity = a + b + ((self.deg - 1) * (other.deg - 1)) as usize;
                        out = if parity.is_multiple_of(2) { &out + &w } else { &out - &w };
                    }
                }
            }
        }
        out
    }

    pub fn const_vector(&self) -> Vec<Rat> {
        assert!(self.is_constant());
        subsets_lex(self.n, self.deg as usize).into_iter().map(|m| self.coeff(m).constant_term()).collect()
    }

    pub fn from_const_vector(n: usize, deg: usize, v: &[Rat]) -> MultiVec {
        let basis = subsets_lex(n, deg);
        assert_eq!(basis.len(), v.len());
        MultiVec::from_comps(n, deg as i32, basis.into_iter().zip(v).map(|(m, c)| (m, Poly::constant(n, c.clone()))))
    }
}

impl Add for &MultiVec {
    type Output = MultiVec;
    fn add(self, rhs: &MultiVec) -> MultiVec {
        assert_eq!(self.n, rhs.n, "context mismatch");
        assert!(self.deg == rhs.deg || self.is_zero() || rhs.is_zero(), "multivector degree mismatch");
        let mut out = if self.is_zero() { MultiVec::zero(self.n, rhs.deg) } else { self.clone() };
        for (&m, p) in &rhs.comps {
            add_comp(&mut out.comps, m, p.clone());
        }
        out
    }
}

impl Sub for &MultiVec {
    type Output = MultiVec;
    fn sub(self, rhs: &MultiVec) -> MultiVec {
        self + &(-rhs)
    }
}

impl Neg for &MultiVec {
    type Output = MultiVec;
    fn neg(self) -> MultiVec {
        MultiVec { n: self.n, deg: self.deg, comps: self.comps.iter().map(|(&m, p)| (m, -p)).collect() }
    }
}

impl fmt::Display for MultiVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_comps(f, &self.comps, "Dx")
    }
}

impl fmt::Debug for MultiVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiVec[n={},deg={}]({})", self.n, self.deg, self)
    }
}

fn same_dim(a: usize, b: usize) -> Result<(), CoreError> {
    if a == b {
        Ok(())
    } else {
        Err(CoreError::ContextMismatch { left: a, right: b })
    }
}

pub fn wedge(a: &Form, b: &Form) -> Result<Form, CoreError> {
    same_dim(a.dim(), b.dim())?;
    Ok(a.wedge(b))
}

pub fn contract(y: &MultiVec, a: &Form) -> Result<Form, CoreError> {
    same_dim(y.dim(), a.dim())?;
    Ok(a.interior_multi(y))
}

pub fn de_rham(a: &Form) -> Form {
    a.d()
}

pub fn lie_derivative(x: &VField, a: &Form) -> Result<Form, CoreError> {
    same_dim(x.dim(), a.dim())?;
    Ok(a.lie(x))
}

pub fn lie_bracket(x: &VField, y: &VField) -> Result<VField, CoreError> {
    same_dim(x.dim(), y.dim())?;
    Ok(x.bracket(y))
}

/// `X(f)` as a rational-coefficient check helper: true when all components vanish.
pub fn all_zero(forms: &[&Form]) -> bool {
    forms.iter().all(|f| f.is_zero())
}

impl Form {
    /// Value of a constant form on constant vectors, `alpha(v1, ..., vk)`.
    pub fn eval_const(&self, vs: &[VField]) -> Rat {
        let mut cur = self.clone();
        for v in vs {
            cur = cur.interior(v);
        }
        if cur.is_zero() {
            Rat::zero()
        } else {
            cur.as_poly().constant_term()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn x(n: usize, i: usize) -> Poly {
        Poly::var(n, i)
    }

    #[test]
    fn wedge_examples() {
        let n = 3;
        let dx1 = Form::basis(n, &[0]);
        let dx2 = Form::basis(n, &[1]);
        assert_eq!(wedge(&dx1, &dx2).unwrap(), Form::basis(n, &[0, 1]));
        assert!(wedge(&dx1, &dx1).unwrap().is_zero());
        let lhs = wedge(&dx1.mul_poly(&x(n, 1)), &dx2).unwrap();
        assert_eq!(lhs, Form::term(n, &[0, 1], x(n, 1)));
        assert_eq!(dx2.wedge(&dx1), -&Form::basis(n, &[0, 1]));
    }

    #[test]
    fn contract_examples() {
        let n = 3;
        let d12 = Form::basis(n, &[0, 1]);
        assert_eq!(d12.interior(&VField::basis(n, 1)), -&Form::basis(n, &[0]));
        let two = &d12 + &Form::term(n, &[1, 2], x(n, 0));
        let e1 = VField::basis(n, 0);
        assert!(two.interior(&e1).interior(&e1).is_zero());
        let d123 = Form::basis(n, &[0, 1, 2]);
        let y = MultiVec::basis(n, &[0, 1]);
        assert_eq!(contract(&y, &d123).unwrap(), Form::basis(n, &[2]));
        assert_eq!(contract(&y, &d123).unwrap(), d123.interior(&e1).interior(&VField::basis(n, 1)));
    }

    #[test]
    fn de_rham_examples() {
        let n = 3;
        let a = Form::term(n, &[1], x(n, 0));
        assert_eq!(a.d(), Form::basis(n, &[0, 1]));
        assert!(Form::basis(n, &[0, 1]).d().is_zero());
        let f = Form::scalar(&x(n, 0).pow(2) * &x(n, 1));
        assert!(f.d().d().is_zero());
    }

    #[test]
    fn lie_derivative_examples() {
        let n = 4;
        let beta = &Form::term(n, &[3], x(n, 0)) + &Form::term(n, &[0], x(n, 3));
        assert_eq!(beta.lie(&VField::basis(n, 3)), Form::basis(n, &[0]));
        let f = Form::scalar(&x(n, 1) * &x(n, 2));
        let xf = VField::basis(n, 1).mul_poly(&x(n, 0));
        assert_eq!(f.lie(&xf), f.d().interior(&xf));
        let e = VField::basis(n, 0).mul_poly(&x(n, 0));
        assert_eq!(Form::basis(n, &[0]).lie(&e), Form::basis(n, &[0]));
    }

    #[test]
    fn lie_bracket_examples() {
        let n = 2;
        let e1 = VField::basis(n, 0);
        let e2 = VField::basis(n, 1);
        assert!(lie_bracket(&e1, &e2).unwrap().is_zero());
        let x1e2 = e2.mul_poly(&x(n, 0));
        assert_eq!(lie_bracket(&x1e2, &e1).unwrap(), -&e2);
        assert!(x1e2.bracket(&x1e2).is_zero());
    }

    #[test]
    fn schouten_of_vector_fields_is_lie_bracket() {
        let n = 3;
        let a = VField::from_comps(vec![x(n, 1), Poly::one(n), &x(n, 0) * &x(n, 2)]);
        let b = VField::from_comps(vec![Poly::zero(n), x(n, 2).pow(2), x(n, 0)]);
        assert_eq!(a.to_multivec().schouten(&b.to_multivec()).to_vfield(), a.bracket(&b));
    }

    #[test]
    fn printing() {
        let n = 3;
        let f = &Form::term(n, &[0, 2], x(n, 1).scale(&int(2))) - &Form::basis(n, &[0, 1]);
        assert_eq!(f.to_string(), "-dx1^dx2 + 2*x2*dx1^dx3");
        assert_eq!(MultiVec::basis(n, &[1, 0]).to_string(), "-Dx1^Dx2");
    }
}
