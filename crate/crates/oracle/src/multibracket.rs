//! Multibrackets computed as symmetrized nested derived brackets inside the function
//! algebra, then converted to the graded conventions of the truncated complex.

use diracspace_core::scalar::{bernoulli, factorial};
use diracspace_core::{Form, Rat};
use diracspace_linfty::GradedElem;

use crate::encode::{decode_elem, encode_elem, encode_form, symplectic_potential};
use crate::gpoly::GPoly;
use crate::{OracleError, Result};

pub const MAX_ARITY: usize = 5;

fn sign_of(e: i64) -> i32 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Sign of reordering graded-symmetric entries with the given (shifted) degrees into the
/// order `sigma` (entry `k` of the result is input `sigma[k]`), one adjacent swap at a time.
pub fn symmetric_sign(sigma: &[usize], degrees: &[i32]) -> i32 {
    let mut word: Vec<usize> = (0..sigma.len()).collect();
    let mut sign = 1;
    for (k, &target) in sigma.iter().enumerate() {
        let mut pos = word.iter().position(|&w| w == target).expect("permutation");
        while pos > k {
            let (a, b) = (word[pos - 1], word[pos]);
            sign *= sign_of(degrees[a] as i64 * degrees[b] as i64);
            word.swap(pos - 1, pos);
            pos -= 1;
        }
    }
    sign
}

/// `(-1)^{(n+1)n/2} B_{n-1} / (n-1)!`, the weight of the `n`-fold nested bracket.
pub fn nesting_weight(n: usize) -> Rat {
    let b = bernoulli(n - 1) / Rat::from_integer(factorial(n - 1));
    if sign_of((n * (n + 1) / 2) as i64) > 0 {
        b
    } else {
        -b
    }
}

/// `(-1)^{(n-1)(n-2)/2}`, the global sign between the symmetric and the graded conventions.
pub fn convention_sign(n: usize) -> i32 {
    sign_of(((n - 1) * n.saturating_sub(2) / 2) as i64)
}

/// `(-1)^{sum_i d_i (n - i)}` for complex degrees `d_1, ..., d_n`.
pub fn reorder_sign(degrees: &[i32]) -> i32 {
    let n = degrees.len() as i64;
    sign_of(degrees.iter().enumerate().map(|(i, &d)| d as i64 * (n - 1 - i as i64)).sum())
}

/// `Theta = S - H` for an optional `(r+1)`-form `H`.
pub fn differential_potential(r: usize, n: usize, h: Option<&Form>) -> GPoly {
    let s = symplectic_potential(r, n);
    match h {
        Some(h) => s.sub(&encode_form(r, h)).expect("same context"),
        None => s,
    }
}

/// Symmetrized sum `c_{n-1} sum_sigma eps(sigma) {..{{D a_s1, a_s2}, a_s3}.., a_sn}`, where
/// `D a = {Theta, a}` on the top algebra degree `r - 1` and `D a = 0` below it.
pub fn symmetrized_nested(theta: &GPoly, inputs: &[GPoly], alg_degrees: &[i32]) -> Result<GPoly> {
    let (r, n_dim) = (theta.r, theta.n);
    let n = inputs.len();
    let shifted: Vec<i32> = alg_degrees.iter().map(|d| d - r as i32).collect();
    let mut total = GPoly::zero(r, n_dim);
    let mut prefix = Vec::with_capacity(n);
    let mut used = vec![false; n];
    let mut stack = Vec::with_capacity(n);
    nested_dfs(theta, inputs, alg_degrees, &shifted, &mut prefix, &mut used, &mut stack, &mut total)?;
    Ok(total.scale(&nesting_weight(n)))
}

#[allow(clippy::too_many_arguments)]
fn nested_dfs(
    theta: &GPoly,
    inputs: &[GPoly],
    alg_degrees: &[i32],
    shifted: &[i32],
    prefix: &mut Vec<usize>,
    used: &mut Vec<bool>,
    stack: &mut Vec<GPoly>,
    total: &mut GPoly,
) -> Result<()> {
    let n = inputs.len();
    if prefix.len() == n {
        let value = stack.last().expect("nonempty");
        let signed = if symmetric_sign(prefix, shifted) > 0 { value.clone() } else { value.neg() };
        *total = total.add(&signed)?;
        return Ok(());
    }
    for i in 0..n {
        if used[i] {
            continue;
        }
        let next = match stack.last() {
            None if alg_degrees[i] == theta.r as i32 - 1 => theta.gbracket(&inputs[i])?,
            None => GPoly::zero(theta.r, theta.n),
            Some(acc) => acc.gbracket(&inputs[i])?,
        };
        if next.is_zero() {
            continue;
        }
        used[i] = true;
        prefix.push(i);
        stack.push(next);
        nested_dfs(theta, inputs, alg_degrees, shifted, prefix, used, stack, total)?;
        stack.pop();
        prefix.pop();
        used[i] = false;
    }
    Ok(())
}

/// `l_n` of the derived-bracket algebra evaluated on graded elements of the truncated
/// complex over an `n_dim`-dimensional patch.
pub fn oracle_multibracket(r: usize, h: Option<&Form>, n_dim: usize, elems: &[GradedElem]) -> Result<GradedElem> {
    oracle_multibracket_with(r, h, n_dim, elems, true)
}

/// As [`oracle_multibracket`], optionally omitting the reordering sign.
pub fn oracle_multibracket_with(
    r: usize,
    h: Option<&Form>,
    n_dim: usize,
    elems: &[GradedElem],
    apply_reorder_sign: bool,
) -> Result<GradedElem> {
    let n = elems.len();
    if n == 0 || n > MAX_ARITY {
        return Err(OracleError::ArityBound(n));
    }
    let degrees: Vec<i32> = elems.iter().map(|e| e.degree).collect();
    let out_degree = degrees.iter().sum::<i32>() + 2 - n as i32;
    if out_degree < 1 - r as i32 || out_degree > 0 {
        return Ok(GradedElem::zero(out_degree));
    }
    let theta = differential_potential(r, n_dim, h);
    let inputs: Vec<GPoly> = elems.iter().map(|e| encode_elem(r, n_dim, e)).collect::<Result<_>>()?;
    let alg: Vec<i32> = degrees.iter().map(|d| r as i32 - 1 + d).collect();
    let value = if n == 1 {
        if degrees[0] < 0 {
            theta.gbracket(&inputs[0])?
        } else {
            GPoly::zero(r, n_dim)
        }
    } else {
        let g = symmetrized_nested(&theta, &inputs, &alg)?;
        let mut sign = convention_sign(n);
        if apply_reorder_sign {
            sign *= reorder_sign(&degrees);
        }
        if sign > 0 {
            g
        } else {
            g.neg()
        }
    };
    decode_elem(&value, out_degree)
}

