//! Text syntax for polynomials, forms, vector fields, multivectors and sections.
//!
//! Grammar (whitespace-insensitive):
//! `expr := [+|-] term ((+|-) term)*`, `term := factor (* factor)*`,
//! `factor := number [/ number] | var [^ int] | (expr) [^ int] | basis (^ basis)*`,
//! with `var := x1..x9 | x{k}`, `basis := dx<k> | Dx<k>` and `<k>` a digit or `{k}`.
//! Printing uses the `Display` implementations of the core types, which emit this syntax.

use std::collections::BTreeMap;
use std::fmt;

use diracspace_core::courant::SectionEp;
use diracspace_core::exterior::sort_indices;
use diracspace_core::{Form, MultiVec, Poly, Rat, VField};
use num::{BigInt, Zero};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Warning {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.msg)
    }
}

/// Declared context: dimension (inferred from the largest index when absent) and, for
/// sections, the order `p`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Context {
    pub dim: Option<usize>,
    pub p: Option<usize>,
}

impl Context {
    pub fn dim(n: usize) -> Context {
        Context { dim: Some(n), p: None }
    }

    pub fn section(n: usize, p: usize) -> Context {
        Context { dim: Some(n), p: Some(p) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parsed {
    Poly(Poly),
    Form(Form),
    VField(VField),
    MultiVec(MultiVec),
    Section(SectionEp),
}

impl Parsed {
    pub fn kind(&self) -> &'static str {
        match self {
            Parsed::Poly(_) => "poly",
            Parsed::Form(_) => "form",
            Parsed::VField(_) => "vfield",
            Parsed::MultiVec(_) => "multivector",
            Parsed::Section(_) => "section",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Parsed::Poly(p) => p.dim(),
            Parsed::Form(f) => f.dim(),
            Parsed::VField(x) => x.dim(),
            Parsed::MultiVec(m) => m.dim(),
            Parsed::Section(s) => s.dim(),
        }
    }

    /// Degree of the form or multivector part; the order `p` for sections.
    pub fn degree(&self) -> i32 {
        match self {
            Parsed::Poly(_) => 0,
            Parsed::Form(f) => f.deg(),
            Parsed::VField(_) => 1,
            Parsed::MultiVec(m) => m.deg(),
            Parsed::Section(s) => s.p as i32,
        }
    }
}

impl fmt::Display for Parsed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parsed::Poly(p) => write!(f, "{p}"),
            Parsed::Form(a) => write!(f, "{a}"),
            Parsed::VField(x) => write!(f, "{x}"),
            Parsed::MultiVec(m) => write!(f, "{m}"),
            Parsed::Section(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Dx(usize),
    Field(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(v) => write!(f, "number {v}"),
            Tok::Var(i) => write!(f, "variable x{}", i + 1),
            Tok::Dx(i) => write!(f, "dx{}", i + 1),
            Tok::Field(i) => write!(f, "Dx{}", i + 1),
            Tok::Plus => write!(f, "'+'"),
            Tok::Minus => write!(f, "'-'"),
            Tok::Star => write!(f, "'*'"),
            Tok::Slash => write!(f, "'/'"),
            Tok::Caret => write!(f, "'^'"),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn err<T>(line: usize, col: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, col, msg: msg.into() })
}

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let advance = |i: &mut usize, col: &mut usize, k: usize| {
        *i += k;
        *col += k;
    };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            advance(&mut i, &mut col, 1);
            continue;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Spanned { tok, line: l0, col: c0 });
            advance(&mut i, &mut col, 1);
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                advance(&mut i, &mut col, 1);
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Spanned { tok: Tok::Num(text.parse().expect("digits")), line: l0, col: c0 });
            continue;
        }
        let (prefix_len, make): (usize, fn(usize) -> Tok) = if c == 'x' {
            (1, Tok::Var)
        } else if c == 'd' && chars.get(i + 1) == Some(&'x') {
            (2, Tok::Dx)
        } else if c == 'D' && chars.get(i + 1) == Some(&'x') {
            (2, Tok::Field)
        } else {
            return err(l0, c0, format!("unexpected character '{c}'"));
        };
        advance(&mut i, &mut col, prefix_len);
        let index = match chars.get(i) {
            Some(d) if d.is_ascii_digit() && *d != '0' => {
                advance(&mut i, &mut col, 1);
                d.to_digit(10).expect("digit") as usize
            }
            Some('{') => {
                advance(&mut i, &mut col, 1);
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    advance(&mut i, &mut col, 1);
                }
                if chars.get(i) != Some(&'}') || start == i {
                    return err(line, col, "expected digits and '}' in braced index");
                }
                let text: String = chars[start..i].iter().collect();
                advance(&mut i, &mut col, 1);
                match text.parse::<usize>() {
                    Ok(k) if k >= 1 => k,
                    _ => return err(l0, c0, format!("invalid index {{{text}}}")),
                }
            }
            _ => return err(line, col, "expected an index 1-9 or {k} after a variable or basis name"),
        };
        out.push(Spanned { tok: make(index - 1), line: l0, col: c0 });
    }
    out.push(Spanned { tok: Tok::End, line, col });
    Ok(out)
}

/// Parsed value as homogeneous parts: forms by degree (degree 0 = scalars) and multivectors
/// by degree. Parts may be zero; their degrees are still recorded.
#[derive(Clone, Debug)]
struct Value {
    forms: BTreeMap<i32, Form>,
    multis: BTreeMap<i32, MultiVec>,
}

impl Value {
    fn scalar(p: Poly) -> Value {
        Value { forms: BTreeMap::from([(0, Form::scalar(p))]), multis: BTreeMap::new() }
    }

    fn scalar_part(&self) -> Option<Poly> {
        if self.multis.is_empty() && self.forms.keys().all(|&k| k == 0) {
            Some(self.forms.get(&0).map(|f| f.as_poly()).unwrap_or_else(|| Poly::zero(0)))
        } else {
            None
        }
    }

    fn add(mut self, other: Value) -> Value {
        for (k, f) in other.forms {
            let e = self.forms.entry(k).or_insert_with(|| Form::zero(f.dim(), k));
            *e = &*e + &f;
        }
        for (k, m) in other.multis {
            let e = self.multis.entry(k).or_insert_with(|| MultiVec::zero(m.dim(), k));
            *e = &*e + &m;
        }
        self
    }

    fn mul_poly(self, p: &Poly) -> Value {
        Value {
            forms: self.forms.into_iter().map(|(k, f)| (k, f.mul_poly(p))).collect(),
            multis: self.multis.into_iter().map(|(k, m)| (k, m.mul_poly(p))).collect(),
        }
    }

    fn neg(self) -> Value {
        let n = self.dim();
        self.mul_poly(&-Poly::one(n))
    }

    fn dim(&self) -> usize {
        self.forms.values().map(|f| f.dim()).chain(self.multis.values().map(|m| m.dim())).next().unwrap_or(0)
    }
}

struct Parser<'a> {
    toks: &'a [Spanned],
    pos: usize,
    n: usize,
    warnings: Vec<Warning>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn check_index(&self, t: &Spanned, i: usize) -> Result<(), ParseError> {
        if i >= self.n {
            return err(t.line, t.col, format!("unknown variable index {} in dimension {}", i + 1, self.n));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Value, ParseError> {
        let mut negate = false;
        match self.peek().tok {
            Tok::Plus => {
                self.next();
            }
            Tok::Minus => {
                self.next();
                negate = true;
            }
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { first.neg() } else { first };
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.next();
                    acc = acc.add(self.term()?);
                }
                Tok::Minus => {
                    self.next();
                    acc = acc.add(self.term()?.neg());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.factor()?;
        while self.peek().tok == Tok::Star {
            let star = self.next();
            let rhs = self.factor()?;
            acc = match (acc.scalar_part(), rhs.scalar_part()) {
                (Some(a), _) => rhs.mul_poly(&self.lift(a)),
                (None, Some(b)) => acc.mul_poly(&self.lift(b)),
                (None, None) => return err(star.line, star.col, "product of two non-scalar factors; use '^' for wedge products"),
            };
        }
        Ok(acc)
    }

    fn lift(&self, p: Poly) -> Poly {
        if p.dim() == self.n {
            p
        } else {
            Poly::zero(self.n)
        }
    }

    fn exponent(&mut self) -> Result<Option<u32>, ParseError> {
        if self.peek().tok != Tok::Caret {
            return Ok(None);
        }
        let caret = self.next();
        let t = self.next();
        match t.tok {
            Tok::Num(k) => match u32::try_from(k) {
                Ok(k) => Ok(Some(k)),
                Err(_) => err(t.line, t.col, "exponent too large"),
            },
            _ => err(caret.line, caret.col, format!("expected an integer exponent after '^', found {}", t.tok)),
        }
    }

    fn factor(&mut self) -> Result<Value, ParseError> {
        let t = self.next();
        match t.tok.clone() {
            Tok::Num(a) => {
                let mut r = Rat::from_integer(a);
                if self.peek().tok == Tok::Slash {
                    self.next();
                    let d = self.next();
                    match d.tok {
                        Tok::Num(b) if !b.is_zero() => r /= Rat::from_integer(b),
                        Tok::Num(_) => return err(d.line, d.col, "zero denominator"),
                        other => return err(d.line, d.col, format!("expected a denominator, found {other}")),
                    }
                }
                Ok(Value::scalar(Poly::constant(self.n, r)))
            }
            Tok::Var(i) => {
                self.check_index(&t, i)?;
                let k = self.exponent()?.unwrap_or(1);
                Ok(Value::scalar(Poly::var(self.n, i).pow(k)))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.next();
                if close.tok != Tok::RParen {
                    return err(close.line, close.col, format!("expected ')', found {}", close.tok));
                }
                match self.exponent()? {
                    None => Ok(inner),
                    Some(k) => match inner.scalar_part() {
                        Some(p) => Ok(Value::scalar(self.lift(p).pow(k))),
                        None => err(close.line, close.col, "only scalar expressions can be raised to a power"),
                    },
                }
            }
            Tok::Dx(_) | Tok::Field(_) => self.basis_word(t),
            other => err(t.line, t.col, format!("unexpected {other}")),
        }
    }

    fn basis_word(&mut self, first: Spanned) -> Result<Value, ParseError> {
        let is_form = matches!(first.tok, Tok::Dx(_));
        let mut idx = Vec::new();
        let mut cur = first.clone();
        loop {
            let i = match (&cur.tok, is_form) {
                (Tok::Dx(i), true) | (Tok::Field(i), false) => *i,
                (Tok::Dx(_), false) | (Tok::Field(_), true) => {
                    return err(cur.line, cur.col, "cannot wedge form and vector basis elements")
                }
                (other, _) => return err(cur.line, cur.col, format!("expected a basis element after '^', found {other}")),
            };
            self.check_index(&cur, i)?;
            idx.push(i);
            if self.peek().tok != Tok::Caret {
                break;
            }
            self.next();
            cur = self.next();
        }
        let k = idx.len() as i32;
        if idx.len() > self.n {
            return err(first.line, first.col, format!("degree {k} exceeds dimension {}", self.n));
        }
        let comps = match sort_indices(&idx) {
            Some((sign, m)) => vec![(m, Poly::from_int(self.n, sign as i64))],
            None => {
                self.warnings.push(Warning { line: first.line, col: first.col, msg: "repeated basis index; the product is zero".into() });
                vec![]
            }
        };
        let mut v = Value { forms: BTreeMap::new(), multis: BTreeMap::new() };
        if is_form {
            v.forms.insert(k, Form::from_comps(self.n, k, comps));
        } else {
            v.multis.insert(k, MultiVec::from_comps(self.n, k, comps));
        }
        Ok(v)
    }
}

/// Parses `src` and classifies the result. Returns the value with any warnings.
pub fn parse_expression(src: &str, ctx: Context) -> Result<(Parsed, Vec<Warning>), ParseError> {
    let toks = lex(src)?;
    let max_index = toks
        .iter()
        .filter_map(|t| match t.tok {
            Tok::Var(i) | Tok::Dx(i) | Tok::Field(i) => Some(i + 1),
            _ => None,
        })
        .max()
        .unwrap_or(1);
    let n = ctx.dim.unwrap_or(max_index);
    if n == 0 {
        return err(1, 1, "dimension must be positive");
    }
    let mut parser = Parser { toks: &toks, pos: 0, n, warnings: Vec::new() };
    let value = parser.expr()?;
    let end = parser.peek().clone();
    if end.tok != Tok::End {
        return err(end.line, end.col, format!("unexpected {}", end.tok));
    }
    let parsed = classify(value, n, ctx.p).map_err(|msg| ParseError { line: 1, col: 1, msg })?;
    Ok((parsed, parser.warnings))
}

fn classify(v: Value, n: usize, p: Option<usize>) -> Result<Parsed, String> {
    let scalar = v.forms.get(&0).cloned();
    let nonzero_scalar = scalar.as_ref().is_some_and(|f| !f.is_zero());
    let forms: Vec<(i32, Form)> = v.forms.into_iter().filter(|(k, _)| *k > 0).collect();
    let multis: Vec<(i32, MultiVec)> = v.multis.into_iter().collect();
    let field = || -> Result<VField, String> {
        match multis.as_slice() {
            [] => Ok(VField::zero(n)),
            [(1, m)] => Ok(m.to_vfield()),
            _ => Err("vector part must be a single vector field".into()),
        }
    };
    if let Some(p) = p {
        let alpha = match (forms.as_slice(), p) {
            ([], 0) => scalar.unwrap_or_else(|| Form::zero(n, 0)),
            ([], _) if !nonzero_scalar => Form::zero(n, p as i32),
            ([(k, f)], _) if *k == p as i32 && !nonzero_scalar => f.clone(),
            _ => return Err(format!("form part must have degree {p}")),
        };
        let alpha = if alpha.is_zero() { Form::zero(n, p as i32) } else { alpha };
        return SectionEp::new(p, field()?, alpha).map(Parsed::Section).map_err(|e| e.to_string());
    }
    match (forms.as_slice(), multis.as_slice()) {
        ([], []) => Ok(Parsed::Poly(scalar.map(|f| f.as_poly()).unwrap_or_else(|| Poly::zero(n)))),
        ([(_, f)], []) if !nonzero_scalar => Ok(Parsed::Form(f.clone())),
        ([], [(1, m)]) if !nonzero_scalar => Ok(Parsed::VField(m.to_vfield())),
        ([], [(_, m)]) if !nonzero_scalar => Ok(Parsed::MultiVec(m.clone())),
        ([], [(1, m)]) => Ok(Parsed::Section(SectionEp::new(0, m.to_vfield(), scalar.expect("nonzero scalar")).map_err(|e| e.to_string())?)),
        ([(k, f)], [(1, m)]) if !nonzero_scalar => {
            Ok(Parsed::Section(SectionEp::new(*k as usize, m.to_vfield(), f.clone()).map_err(|e| e.to_string())?))
        }
        _ => Err("inhomogeneous expression".into()),
    }
}

pub fn parse_poly(src: &str, n: usize) -> Result<Poly, ParseError> {
    match parse_expression(src, Context::dim(n))?.0 {
        Parsed::Poly(p) => Ok(p),
        other => err(1, 1, format!("expected a polynomial, found a {}", other.kind())),
    }
}

/// Form of degree `k`; a zero scalar is accepted as the zero `k`-form.
pub fn parse_form(src: &str, n: usize, k: usize) -> Result<Form, ParseError> {
    match parse_expression(src, Context::dim(n))?.0 {
        Parsed::Form(f) if f.deg() == k as i32 || f.is_zero() => Ok(if f.is_zero() { Form::zero(n, k as i32) } else { f }),
        Parsed::Poly(p) if k == 0 => Ok(Form::scalar(p)),
        Parsed::Poly(p) if p.is_zero() => Ok(Form::zero(n, k as i32)),
        other => err(1, 1, format!("expected a {k}-form, found a {} of degree {}", other.kind(), other.degree())),
    }
}

pub fn parse_vfield(src: &str, n: usize) -> Result<VField, ParseError> {
    match parse_expression(src, Context::dim(n))?.0 {
        Parsed::VField(x) => Ok(x),
        Parsed::Poly(p) if p.is_zero() => Ok(VField::zero(n)),
        other => err(1, 1, format!("expected a vector field, found a {}", other.kind())),
    }
}

pub fn parse_multivec(src: &str, n: usize, q: usize) -> Result<MultiVec, ParseError> {
    match parse_expression(src, Context::dim(n))?.0 {
        Parsed::MultiVec(m) if m.deg() == q as i32 || m.is_zero() => Ok(if m.is_zero() { MultiVec::zero(n, q as i32) } else { m }),
        Parsed::VField(x) if q == 1 => Ok(x.to_multivec()),
        Parsed::Poly(p) if p.is_zero() => Ok(MultiVec::zero(n, q as i32)),
        other => err(1, 1, format!("expected a {q}-vector, found a {} of degree {}", other.kind(), other.degree())),
    }
}

pub fn parse_section(src: &str, n: usize, p: usize) -> Result<SectionEp, ParseError> {
    match parse_expression(src, Context::section(n, p))?.0 {
        Parsed::Section(s) => Ok(s),
        other => err(1, 1, format!("expected a section, found a {}", other.kind())),
    }
}
