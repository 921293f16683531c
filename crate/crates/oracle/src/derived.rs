//! Checks of the derived-bracket dictionary: the basic brackets of fields and forms and the
//! vanishing pattern of nested brackets with `S` and with `H`.

use diracspace_core::courant::{dorfman, SectionEp};
use diracspace_core::sample::{self, SampleRng};
use diracspace_core::{Form, VField};

use crate::encode::{encode_form, encode_section, encode_vfield, symplectic_potential};
use crate::gpoly::GPoly;
use crate::Result;

pub const PIPELINE: &str = "derived-bracket";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedReport {
    pub fact: String,
    pub r: usize,
    pub dim: usize,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl DerivedReport {
    fn new(fact: &str, r: usize, dim: usize) -> DerivedReport {
        DerivedReport { fact: fact.to_string(), r, dim, checks: 0, failures: Vec::new() }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

const COEFF_DEG: u32 = 2;

/// Sign `(-1)^e`.
fn pm(e: i32) -> i32 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn signed_form(f: &Form, s: i32) -> Form {
    if s > 0 {
        f.clone()
    } else {
        -f
    }
}

fn encode_sum(r: usize, n: usize, forms: &[Form]) -> GPoly {
    forms.iter().fold(GPoly::zero(r, n), |acc, f| acc.add(&encode_form(r, f)).expect("same context"))
}

/// Field-form brackets: `{X1 + a1, X2 + a2} = i_{X1} a2 + (-1)^{r-1-k1} i_{X2} a1`.
pub fn check_pairing_bracket(r: usize, n: usize, trials: usize, seed: u64) -> Result<DerivedReport> {
    let mut rep = DerivedReport::new("field-form bracket", r, n);
    let mut rng = sample::rng(seed);
    for t in 0..trials {
        let k1 = t % (n + 1);
        let k2 = (t / (n + 1)) % (n + 1);
        let (x1, x2) = (sample::vfield(&mut rng, n, COEFF_DEG), sample::vfield(&mut rng, n, COEFF_DEG));
        let (a1, a2) = (sample::form(&mut rng, n, k1, COEFF_DEG), sample::form(&mut rng, n, k2, COEFF_DEG));
        let lhs = encode_vfield(r, &x1).add(&encode_form(r, &a1))?.gbracket(&encode_vfield(r, &x2).add(&encode_form(r, &a2))?)?;
        let rhs = encode_sum(r, n, &[a2.interior(&x1), signed_form(&a1.interior(&x2), pm(r as i32 - 1 - k1 as i32))]);
        rep.record(lhs == rhs, || format!("k1 = {k1}, k2 = {k2}: {lhs} vs {rhs}"));
    }
    Ok(rep)
}

/// `{S, a} = da` for forms of every degree, and `{S, S} = 0`.
pub fn check_differential(r: usize, n: usize, trials: usize, seed: u64) -> Result<DerivedReport> {
    let mut rep = DerivedReport::new("bracket with S is d", r, n);
    let s = symplectic_potential(r, n);
    let ss = s.gbracket(&s)?;
    rep.record(ss.is_zero(), || format!("{{S, S}} = {ss}"));
    let mut rng = sample::rng(seed);
    for t in 0..trials {
        let k = t % (n + 1);
        let a = sample::form(&mut rng, n, k, COEFF_DEG);
        let lhs = s.gbracket(&encode_form(r, &a))?;
        let rhs = encode_form(r, &a.d());
        rep.record(lhs == rhs, || format!("k = {k}: {lhs} vs {rhs}"));
    }
    Ok(rep)
}

/// Second derived brackets: `[X, Y]`, `L_X b`, `-(-1)^{r-1-k} i_Y da`, `0` on two forms, and the
/// Dorfman bracket on sections of `E^{r-1}`.
pub fn check_derived_binary(r: usize, n: usize, trials: usize, seed: u64) -> Result<DerivedReport> {
    let mut rep = DerivedReport::new("second derived bracket", r, n);
    let s = symplectic_potential(r, n);
    let mut rng = sample::rng(seed);
    let derived = |a: &GPoly, b: &GPoly| -> Result<GPoly> { s.gbracket(a)?.gbracket(b) };
    for t in 0..trials {
        let k = t % (n + 1);
        let (x, y) = (sample::vfield(&mut rng, n, COEFF_DEG), sample::vfield(&mut rng, n, COEFF_DEG));
        let (a, b) = (sample::form(&mut rng, n, k, COEFF_DEG), sample::form(&mut rng, n, (k + 1) % (n + 1), COEFF_DEG));
        let (ex, ey, ea, eb) = (encode_vfield(r, &x), encode_vfield(r, &y), encode_form(r, &a), encode_form(r, &b));
        let fields = derived(&ex, &ey)?;
        let want = encode_vfield(r, &x.bracket(&y));
        rep.record(fields == want, || format!("fields: {fields} vs {want}"));
        let lie = derived(&ex, &eb)?;
        let want = encode_form(r, &b.lie(&x));
        rep.record(lie == want, || format!("field-form: {lie} vs {want}"));
        let contr = derived(&ea, &ey)?;
        let want = encode_form(r, &signed_form(&a.d().interior(&y), -pm(r as i32 - 1 - k as i32)));
        rep.record(contr == want, || format!("form-field, k = {k}: {contr} vs {want}"));
        let forms = derived(&ea, &eb)?;
        rep.record(forms.is_zero(), || format!("form-form: {forms}"));
        let e1 = SectionEp::new(r - 1, x.clone(), sample::form(&mut rng, n, r - 1, COEFF_DEG))?;
        let e2 = SectionEp::new(r - 1, y.clone(), sample::form(&mut rng, n, r - 1, COEFF_DEG))?;
        let lhs = derived(&encode_section(r, &e1), &encode_section(r, &e2))?;
        let want = encode_section(r, &dorfman(&e1, &e2, None)?);
        rep.record(lhs == want, || format!("sections: {lhs} vs {want}"));
    }
    Ok(rep)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Field,
    Form(usize),
}

fn slot_value(rng: &mut SampleRng, r: usize, n: usize, slot: Slot) -> GPoly {
    match slot {
        Slot::Field => encode_vfield(r, &sample::vfield(rng, n, COEFF_DEG)),
        Slot::Form(k) => encode_form(r, &sample::form(rng, n, k, COEFF_DEG)),
    }
}

fn patterns(len: usize, r: usize) -> Vec<Vec<Slot>> {
    let choices: Vec<Slot> = std::iter::once(Slot::Field).chain((0..r).map(Slot::Form)).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|p: Vec<Slot>| {
                choices.iter().map(move |&c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}

/// For `m >= 3`, `{..{{S, a_1}, a_2}.., a_m}` vanishes unless exactly one of `a_1, a_2, a_3` is a form and
/// all other entries are fields. Runs over every pattern of fields and forms of degree
/// below `r`, for `3 <= m <= max_len`.
pub fn check_nested_vanishing(r: usize, n: usize, max_len: usize, seed: u64) -> Result<DerivedReport> {
    let mut rep = DerivedReport::new("nested brackets with S vanish", r, n);
    let s = symplectic_potential(r, n);
    let mut rng = sample::rng(seed);
    for len in 3..=max_len {
        for pat in patterns(len, r) {
            let forms: Vec<usize> = (0..len).filter(|&i| pat[i] != Slot::Field).collect();
            let may_survive = forms.len() == 1 && forms[0] < 3;
            if may_survive {
                continue;
            }
            let mut acc = s.clone();
            for &slot in &pat {
                acc = acc.gbracket(&slot_value(&mut rng, r, n, slot))?;
            }
            rep.record(acc.is_zero(), || format!("{pat:?}: {acc}"));
        }
    }
    Ok(rep)
}

/// `{..{H, X_1}.., X_m} = (-1)^{m(m-1)/2} i_{X_m} .. i_{X_1} H`, and any form entry kills it.
pub fn check_twist_nesting(r: usize, n: usize, trials: usize, seed: u64) -> Result<DerivedReport> {
    let mut rep = DerivedReport::new("nested brackets with H", r, n);
    let mut rng = sample::rng(seed);
    for t in 0..trials {
        let h = sample::form(&mut rng, n, r + 1, COEFF_DEG);
        let m = 1 + t % (r + 1);
        let xs: Vec<VField> = (0..m).map(|_| sample::vfield(&mut rng, n, COEFF_DEG)).collect();
        let mut acc = encode_form(r, &h);
        let mut contracted = h.clone();
        for x in &xs {
            acc = acc.gbracket(&encode_vfield(r, x))?;
            contracted = contracted.interior(x);
        }
        let want = encode_form(r, &signed_form(&contracted, pm((m * (m - 1) / 2) as i32)));
        rep.record(acc == want, || format!("m = {m}: {acc} vs {want}"));
        let k = t % r;
        let killed = encode_form(r, &h).gbracket(&encode_form(r, &sample::form(&mut rng, n, k, COEFF_DEG)))?;
        rep.record(killed.is_zero(), || format!("form entry of degree {k}: {killed}"));
    }
    Ok(rep)
}

/// `{S - H, S - H} = -2 dH`, which vanishes exactly when `H` is closed.
pub fn master_equation(r: usize, h: &Form) -> Result<(GPoly, GPoly)> {
    let theta = crate::multibracket::differential_potential(r, h.dim(), Some(h));
    let lhs = theta.gbracket(&theta)?;
    let want = encode_form(r, &h.d()).scale(&diracspace_core::scalar::int(-2));
    Ok((lhs, want))
}

/// All dictionary checks for one `(r, dim)`.
pub fn derived_check(r: usize, n: usize, trials: usize, seed: u64) -> Result<Vec<DerivedReport>> {
    Ok(vec![
        check_pairing_bracket(r, n, trials, seed)?,
        check_differential(r, n, trials, seed.wrapping_add(1))?,
        check_derived_binary(r, n, trials, seed.wrapping_add(2))?,
        check_nested_vanishing(r, n, 4, seed.wrapping_add(3))?,
        check_twist_nesting(r, n, trials, seed.wrapping_add(4))?,
    ])
}
