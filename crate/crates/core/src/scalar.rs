//! Exact rationals, multivariate polynomials over them, and Bernoulli numbers.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::CoreError;

/// Exact rational scalar. Always kept in lowest terms with a positive denominator.
pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Canonical text of a rational: `p` or `p/q`.
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Bernoulli number `B_m` from the recurrence `sum_{k=0}^{m} C(m+1,k) B_k = 0`, `B_0 = 1`.
/// This gives `B_1 = -1/2`, `B_2 = 1/6`, `B_4 = -1/30` and zero for odd `m >= 3`.
pub fn bernoulli(m: usize) -> Rat {
    bernoulli_table(m).pop().unwrap()
}

/// `B_0 ..= B_m`.
pub fn bernoulli_table(m: usize) -> Vec<Rat> {
    let mut b: Vec<Rat> = vec![Rat::one()];
    for k in 1..=m {
        let mut acc = Rat::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += Rat::from_integer(binomial(k + 1, j)) * bj;
        }
        b.push(-acc / Rat::from_integer(BigInt::from(k + 1)));
    }
    b
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn binomial_usize(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, i| a * BigInt::from(i))
}

/// Exponent vector of a monomial in `x1..xn`.
pub type Exponents = Vec<u32>;

/// Polynomial in `x1..xn` with rational coefficients. No zero coefficient is ever stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    n: usize,
    terms: BTreeMap<Exponents, Rat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Mul,
    Neg,
}

/// Checked ring operation. For `Neg` the second operand only supplies the context check.
pub fn poly_arith(a: &Poly, b: &Poly, kind: ArithKind) -> Result<Poly, CoreError> {
    if a.n != b.n {
        return Err(CoreError::ContextMismatch { left: a.n, right: b.n });
    }
    Ok(match kind {
        ArithKind::Add => a + b,
        ArithKind::Mul => a * b,
        ArithKind::Neg => -a,
    })
}

/// All exponent vectors in `n` variables of total degree `<= d`, graded then lex.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Exponents> {
    fn rec(n: usize, left: u32, cur: &mut Exponents, out: &mut Vec<Exponents>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur.push(k);
            rec(n, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out.sort_by_key(|e| (e.iter().sum::<u32>(), e.clone()));
    out
}

/// Formal partial derivative along the 1-based axis `i`.
pub fn poly_partial(f: &Poly, i: usize) -> Result<Poly, CoreError> {
    if i == 0 || i > f.n {
        return Err(CoreError::AxisOutOfRange { axis: i, dim: f.n });
    }
    Ok(f.partial(i - 1))
}

impl Poly {
    pub fn zero(n: usize) -> Poly {
        Poly { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Poly {
        Poly::constant(n, Rat::one())
    }

    pub fn constant(n: usize, c: Rat) -> Poly {
        let mut p = Poly::zero(n);
        p.add_term(vec![0; n], c);
        p
    }

    pub fn from_int(n: usize, c: i64) -> Poly {
        Poly::constant(n, int(c))
    }

    /// The coordinate function `x_{i+1}` (0-based axis).
    pub fn var(n: usize, i: usize) -> Poly {
        assert!(i < n, "axis {i} out of range for dimension {n}");
        let mut e = vec![0; n];
        e[i] = 1;
        Poly::monomial(n, e, Rat::one())
    }

    pub fn monomial(n: usize, exps: Exponents, c: Rat) -> Poly {
        assert_eq!(exps.len(), n);
        let mut p = Poly::zero(n);
        p.add_term(exps, c);
        p
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    /// Constant term.
    pub fn constant_term(&self) -> Rat {
        self.terms.get(&vec![0; self.n]).cloned().unwrap_or_else(Rat::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn add_term(&mut self, exps: Exponents, c: Rat) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(exps.len(), self.n);
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.n);
        }
        Poly { n: self.n, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    /// Partial derivative along the 0-based axis `i`.
    pub fn partial(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.n);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                out.add_term(e2, c * int(e[i] as i64));
            }
        }
        out
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.n);
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.n);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    fn leading(&self) -> Option<(&Exponents, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / g` if `g` divides `self`, by lex-order long division.
    pub fn divide_exact(&self, g: &Poly) -> Option<Poly> {
        assert_eq!(self.n, g.n);
        let (glead_e, glead_c) = g.leading()?;
        let mut rem = self.clone();
        let mut q = Poly::zero(self.n);
        while let Some((e, c)) = rem.leading().map(|(e, c)| (e.clone(), c.clone())) {
            if e.iter().zip(glead_e).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Exponents = e.iter().zip(glead_e).map(|(a, b)| a - b).collect();
            let qc = c / glead_c;
            let t = Poly::monomial(self.n, qe, qc);
            rem = &rem - &(&t * g);
            q = &q + &t;
        }
        Some(q)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.n, rhs.n, "polynomial context mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        assert_eq!(self.n, rhs.n, "polynomial context mismatch");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        assert_eq!(self.n, rhs.n, "polynomial context mismatch");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), -c.clone());
        }
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= &rhs;
        self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { n: self.n, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect() }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.n, rhs.n, "polynomial context mismatch");
        let mut out = Poly::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

pub(crate) fn var_name(i: usize) -> String {
    if i < 9 {
        format!("x{}", i + 1)
    } else {
        format!("x{{{}}}", i + 1)
    }
}

/// Text of a monomial without coefficient, e.g. `x1^2*x3`; empty for the unit monomial.
pub(crate) fn monomial_text(e: &[u32]) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(var_name(i)),
            _ => parts.push(format!("{}^{}", var_name(i), k)),
        }
    }
    parts.join("*")
}

/// Writes `coef*rest` terms joined with ` + ` / ` - `. `rest` may be empty.
pub(crate) fn write_signed_terms(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (Rat, String)>,
) -> fmt::Result {
    let mut first = true;
    for (c, rest) in terms {
        let neg = c.is_negative();
        let a = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        first = false;
        if rest.is_empty() {
            write!(f, "{}", fmt_rat(&a))?;
        } else if a.is_one() {
            write!(f, "{rest}")?;
        } else {
            write!(f, "{}*{rest}", fmt_rat(&a))?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl Poly {
    /// Terms in printing order: descending total degree, then descending lex.
    pub(crate) fn ordered_terms(&self) -> Vec<(&Exponents, &Rat)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then(b.0.cmp(a.0))
        });
        t
    }

    /// Terms of `self * rest` for a nonempty basis word `rest`.
    pub(crate) fn times_word(&self, word: &str) -> Vec<(Rat, String)> {
        self.ordered_terms()
            .into_iter()
            .map(|(e, c)| {
                let m = monomial_text(e);
                let rest = if m.is_empty() { word.to_string() } else { format!("{m}*{word}") };
                (c.clone(), rest)
            })
            .collect()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.ordered_terms().into_iter().map(|(e, c)| (c.clone(), monomial_text(e)));
        write_signed_terms(f, terms)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.n, self)
    }
}
