//! Permutations acting on graded tuples: unshuffles and Koszul signs of the odd
//! representation.

use itertools::Itertools;

/// Permutation of `0..n` written as the list `sigma[k]` of source indices, so that the
/// permuted tuple is `(v[sigma[0]], v[sigma[1]], ...)`.
pub type Perm = Vec<usize>;

/// `(i, j)`-unshuffles: order-preserving on the first `i` and the last `j` slots.
pub fn unshuffles(i: usize, j: usize) -> Vec<Perm> {
    let n = i + j;
    (0..n)
        .combinations(i)
        .map(|head| {
            let tail = (0..n).filter(|k| !head.contains(k));
            head.iter().copied().chain(tail).collect()
        })
        .collect()
}

/// Sign `chi` with `v_1 ^ ... ^ v_n = chi * v_sigma(1) ^ ... ^ v_sigma(n)` in the graded
/// exterior algebra: each inversion of `a`, `b` contributes `-(-1)^{|a||b|}`.
pub fn koszul_sign(sigma: &[usize], degrees: &[i32]) -> i32 {
    assert_eq!(sigma.len(), degrees.len(), "permutation and degree list lengths differ");
    let mut sign = 1;
    for a in 0..sigma.len() {
        for b in a + 1..sigma.len() {
            if sigma[a] > sigma[b] && (degrees[sigma[a]] * degrees[sigma[b]]).rem_euclid(2) == 0 {
                sign = -sign;
            }
        }
    }
    sign
}

/// Ordinary sign of a permutation.
pub fn parity_sign(sigma: &[usize]) -> i32 {
    koszul_sign(sigma, &vec![0; sigma.len()])
}

pub fn permute<T: Clone>(sigma: &[usize], items: &[T]) -> Vec<T> {
    sigma.iter().map(|&k| items[k].clone()).collect()
}

/// `(sigma . tau)[k] = sigma[tau[k]]`: permuting by `sigma` and then by `tau`.
pub fn compose(sigma: &[usize], tau: &[usize]) -> Perm {
    tau.iter().map(|&k| sigma[k]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unshuffle_counts() {
        assert_eq!(unshuffles(2, 1).len(), 3);
        assert_eq!(unshuffles(0, 4), vec![vec![0, 1, 2, 3]]);
        assert_eq!(unshuffles(2, 2).len(), 6);
    }

    #[test]
    fn sign_examples() {
        assert_eq!(koszul_sign(&[1, 0], &[0, 0]), -1);
        assert_eq!(koszul_sign(&[1, 0], &[-1, -1]), 1);
        assert_eq!(koszul_sign(&[0, 1, 2], &[-1, 0, -2]), 1);
        assert_eq!(parity_sign(&[1, 2, 0]), 1);
    }
}
