//! Graded-commutative polynomials in `x_i` (degree 0), `v_i` (degree 1), `p_i` (degree `r-1`)
//! and `P_i` (degree `r`), with polynomial coefficients in the `x_i`.

use std::collections::BTreeMap;
use std::fmt;

use diracspace_core::{Poly, Rat};
use num::{One, Zero};

use crate::{OracleError, Result};

/// Odd-or-even generator. Ordering fixes the canonical order inside a monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    V(usize),
    LowP(usize),
    TopP(usize),
}

impl Gen {
    pub fn degree(self, r: usize) -> i32 {
        match self {
            Gen::V(_) => 1,
            Gen::LowP(_) => r as i32 - 1,
            Gen::TopP(_) => r as i32,
        }
    }
}

/// Monomial in the generators, stored in canonical order.
pub type Mono = Vec<Gen>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GPoly {
    pub r: usize,
    pub n: usize,
    terms: BTreeMap<Mono, Poly>,
}

fn odd(d: i32) -> bool {
    d.rem_euclid(2) == 1
}

/// Sorts a generator word into canonical order, returning the Koszul sign, or `None` when an
/// odd generator repeats.
pub fn normalize(word: &[Gen], r: usize) -> Option<(i32, Mono)> {
    let mut w = word.to_vec();
    let mut sign = 1;
    for i in 1..w.len() {
        let mut j = i;
        while j > 0 && w[j - 1] > w[j] {
            if odd(w[j - 1].degree(r)) && odd(w[j].degree(r)) {
                sign = -sign;
            }
            w.swap(j - 1, j);
            j -= 1;
        }
    }
    if w.windows(2).any(|p| p[0] == p[1] && odd(p[0].degree(r))) {
        return None;
    }
    Some((sign, w))
}

impl GPoly {
    pub fn zero(r: usize, n: usize) -> GPoly {
        GPoly { r, n, terms: BTreeMap::new() }
    }

    pub fn constant(r: usize, n: usize, f: Poly) -> GPoly {
        GPoly::monomial(r, n, &[], f)
    }

    /// `f * g_1 * ... * g_k` for a generator word in any order.
    pub fn monomial(r: usize, n: usize, word: &[Gen], f: Poly) -> GPoly {
        let mut out = GPoly::zero(r, n);
        if let Some((sign, m)) = normalize(word, r) {
            let f = if sign > 0 { f } else { -&f };
            out.add_term(m, f);
        }
        out
    }

    pub fn generator(r: usize, n: usize, g: Gen) -> GPoly {
        GPoly::monomial(r, n, &[g], Poly::one(n))
    }

    pub fn terms(&self) -> &BTreeMap<Mono, Poly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Mono, f: Poly) {
        if f.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&m) {
            Some(old) => &old + &f,
            None => f,
        };
        if !merged.is_zero() {
            self.terms.insert(m, merged);
        }
    }

    fn same_context(&self, other: &GPoly) -> Result<()> {
        if (self.r, self.n) != (other.r, other.n) {
            return Err(OracleError::ContextMismatch { left: (self.r, self.n), right: (other.r, other.n) });
        }
        Ok(())
    }

    pub fn mono_degree(&self, m: &[Gen]) -> i32 {
        m.iter().map(|g| g.degree(self.r)).sum()
    }

    /// Degree of a homogeneous element; `None` for zero.
    pub fn degree(&self) -> Result<Option<i32>> {
        let mut degs = self.terms.keys().map(|m| self.mono_degree(m));
        let Some(first) = degs.next() else { return Ok(None) };
        if degs.any(|d| d != first) {
            return Err(OracleError::Inhomogeneous);
        }
        Ok(Some(first))
    }

    /// Homogeneous component of the given degree.
    pub fn component(&self, degree: i32) -> GPoly {
        let mut out = GPoly::zero(self.r, self.n);
        for (m, f) in &self.terms {
            if self.mono_degree(m) == degree {
                out.add_term(m.clone(), f.clone());
            }
        }
        out
    }

    pub fn add(&self, other: &GPoly) -> Result<GPoly> {
        self.same_context(other)?;
        let mut out = self.clone();
        for (m, f) in &other.terms {
            out.add_term(m.clone(), f.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> GPoly {
        let mut out = GPoly::zero(self.r, self.n);
        if c.is_zero() {
            return out;
        }
        for (m, f) in &self.terms {
            out.add_term(m.clone(), f.scale(c));
        }
        out
    }

    pub fn neg(&self) -> GPoly {
        self.scale(&-Rat::one())
    }

    pub fn sub(&self, other: &GPoly) -> Result<GPoly> {
        self.add(&other.neg())
    }

    pub fn gmul(&self, other: &GPoly) -> Result<GPoly> {
        self.same_context(other)?;
        let mut out = GPoly::zero(self.r, self.n);
        for (ma, fa) in &self.terms {
            for (mb, fb) in &other.terms {
                let word: Vec<Gen> = ma.iter().chain(mb.iter()).copied().collect();
                if let Some((sign, m)) = normalize(&word, self.r) {
                    let f = fa * fb;
                    out.add_term(m, if sign > 0 { f } else { -&f });
                }
            }
        }
        Ok(out)
    }

    /// Degree `-r` Poisson bracket, extended from the generator relations as a biderivation.
    pub fn gbracket(&self, other: &GPoly) -> Result<GPoly> {
        self.same_context(other)?;
        let mut out = GPoly::zero(self.r, self.n);
        for (ma, fa) in &self.terms {
            for (mb, fb) in &other.terms {
                out = out.add(&self.bracket_terms(ma, fa, mb, fb))?;
            }
        }
        Ok(out)
    }

    /// Bracket of `fa * ma` and `fb * mb`, treating the coefficients as degree-0 atoms in
    /// front of the generator words.
    fn bracket_terms(&self, ma: &[Gen], fa: &Poly, mb: &[Gen], fb: &Poly) -> GPoly {
        let (r, n) = (self.r, self.n);
        let a: Vec<Atom> = std::iter::once(Atom::Coeff(fa.clone())).chain(ma.iter().map(|&g| Atom::G(g))).collect();
        let b: Vec<Atom> = std::iter::once(Atom::Coeff(fb.clone())).chain(mb.iter().map(|&g| Atom::G(g))).collect();
        let deg_b: i32 = b.iter().map(|x| x.degree(r)).sum();
        let mut out = GPoly::zero(r, n);
        for s in 0..a.len() {
            let after_s: i32 = a[s + 1..].iter().map(|x| x.degree(r)).sum();
            for t in 0..b.len() {
                let Some(core) = atom_bracket(&a[s], &b[t], r, n) else { continue };
                let before_t: i32 = b[..t].iter().map(|x| x.degree(r)).sum();
                let e = after_s * (deg_b - r as i32) + (a[s].degree(r) - r as i32) * before_t;
                let sign = if e.rem_euclid(2) == 0 { 1 } else { -1 };
                // a_1..a_{s-1} b_1..b_{t-1} {a_s, b_t} b_{t+1}..b_l a_{s+1}..a_k
                let mut coeff = if sign > 0 { core } else { -&core };
                let mut word = Vec::new();
                for x in a[..s].iter().chain(b[..t].iter()).chain(b[t + 1..].iter()).chain(a[s + 1..].iter()) {
                    match x {
                        Atom::Coeff(f) => coeff = &coeff * f,
                        Atom::G(g) => word.push(*g),
                    }
                }
                out = out.add(&GPoly::monomial(r, n, &word, coeff)).expect("same context");
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
enum Atom {
    Coeff(Poly),
    G(Gen),
}

impl Atom {
    fn degree(&self, r: usize) -> i32 {
        match self {
            Atom::Coeff(_) => 0,
            Atom::G(g) => g.degree(r),
        }
    }
}

/// `{P_i, f} = d_i f = -{f, P_i}`, `{p_i, v_i} = 1 = -(-1)^{r-1} {v_i, p_i}`; all other
/// pairs vanish.
fn atom_bracket(a: &Atom, b: &Atom, r: usize, n: usize) -> Option<Poly> {
    match (a, b) {
        (Atom::G(Gen::TopP(i)), Atom::Coeff(f)) => Some(f.partial(*i)).filter(|p| !p.is_zero()),
        (Atom::Coeff(f), Atom::G(Gen::TopP(i))) => Some(-&f.partial(*i)).filter(|p| !p.is_zero()),
        (Atom::G(Gen::LowP(i)), Atom::G(Gen::V(j))) if i == j => Some(Poly::one(n)),
        (Atom::G(Gen::V(i)), Atom::G(Gen::LowP(j))) if i == j => {
            Some(if (r - 1).is_multiple_of(2) { -Poly::one(n) } else { Poly::one(n) })
        }
        _ => None,
    }
}

impl fmt::Display for GPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for g in m {
                match g {
                    Gen::V(i) => write!(f, "*v{}", i + 1)?,
                    Gen::LowP(i) => write!(f, "*p{}", i + 1)?,
                    Gen::TopP(i) => write!(f, "*P{}", i + 1)?,
                }
            }
        }
        Ok(())
    }
}
