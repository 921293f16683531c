//! Dense exact linear algebra over the rationals: reduced row echelon form, kernels,
//! particular solutions and inverses.

use num::{One, Zero};

use crate::scalar::Rat;

pub type Vector = Vec<Rat>;
pub type Matrix = Vec<Vec<Rat>>;

/// In-place reduced row echelon form over the first `cols` columns (extra columns are
/// carried along); returns the pivot columns.
pub fn rref(m: &mut Matrix, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row >= m.len() {
            break;
        }
        let Some(pr) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, pr);
        let inv = Rat::one() / &m[row][col];
        for v in m[row].iter_mut() {
            *v *= &inv;
        }
        for r in 0..m.len() {
            if r == row || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..m[r].len() {
                let delta = &factor * &m[row][c];
                m[r][c] -= delta;
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(vectors: &[Vector], cols: usize) -> usize {
    let mut m = vectors.to_vec();
    rref(&mut m, cols).len()
}

/// Canonical basis of the row space: the nonzero rows of the reduced echelon form.
pub fn row_space(vectors: &[Vector], cols: usize) -> Matrix {
    let mut m = vectors.to_vec();
    let r = rref(&mut m, cols).len();
    m.truncate(r);
    m
}

/// Basis of `{x : M x = 0}` for an `rows x cols` matrix, one vector per free column.
pub fn kernel(m: &Matrix, cols: usize) -> Matrix {
    let mut a = m.clone();
    let pivots = rref(&mut a, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); cols];
            v[f] = Rat::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

/// A particular solution of `M x = b`, with free variables set to zero.
pub fn solve(m: &Matrix, b: &[Rat], cols: usize) -> Option<Vector> {
    let mut a: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut a, cols + 1);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = a[r][cols].clone();
    }
    Some(x)
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut a: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut a, n);
    if pivots.len() < n {
        return None;
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_vec(m: &Matrix, v: &[Rat]) -> Vector {
    m.iter().map(|row| dot(row, v)).collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn transpose(m: &Matrix, cols: usize) -> Matrix {
    (0..cols).map(|c| m.iter().map(|row| row[c].clone()).collect()).collect()
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// True when every vector of `a` lies in the span of `b`.
pub fn span_contains(b: &[Vector], a: &[Vector], cols: usize) -> bool {
    let rb = rank(b, cols);
    let mut both = b.to_vec();
    both.extend_from_slice(a);
    rank(&both, cols) == rb
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn kernel_and_solve() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(is_zero_vec(&mat_vec(&a, v)));
        }
        let x = solve(&a, &[int(1), int(2)], 3).unwrap();
        assert_eq!(mat_vec(&a, &x), vec![int(1), int(2)]);
        assert!(solve(&a, &[int(1), int(3)], 3).is_none());
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_vec(&inv, &mat_vec(&a, &[int(3), int(-5)])), vec![int(3), int(-5)]);
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
    }
}
