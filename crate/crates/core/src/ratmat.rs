//! Dense exact linear algebra over the rationals, used by the geometric
//! layers (posets, cones, flags, degree engine).

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type QVec = Vec<BigRational>;
pub type QMat = Vec<QVec>;

pub fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn scale(v: &[BigRational], c: &BigRational) -> QVec {
    v.iter().map(|x| x * c).collect()
}

pub fn add(a: &[BigRational], b: &[BigRational]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[BigRational], b: &[BigRational]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn is_zero_vec(v: &[BigRational]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut QMat) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].clone().recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let d = &m[r][j] * &f;
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rank(m: &QMat) -> usize {
    let mut work = m.clone();
    rref(&mut work).len()
}

/// Basis of the right kernel {x : Mx = 0}.
pub fn nullspace(m: &QMat) -> Vec<QVec> {
    if m.is_empty() {
        return vec![];
    }
    let cols = m[0].len();
    let mut work = m.clone();
    let pivots = rref(&mut work);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![BigRational::zero(); cols];
        v[free] = BigRational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -work[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// One solution of Mx = b, or None if inconsistent.
pub fn solve(m: &QMat, b: &[BigRational]) -> Option<QVec> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut aug: QMat = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    // Inconsistent iff a pivot lands in the augmented column.
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][cols].clone();
    }
    Some(x)
}

/// Extends `basis` (assumed independent) by those vectors of `candidates`
/// that increase the rank, in order.
pub fn extend_basis(basis: &mut Vec<QVec>, candidates: &[QVec]) {
    for cand in candidates {
        let mut trial: QMat = basis.clone();
        trial.push(cand.clone());
        if rank(&trial) > basis.len() {
            basis.push(cand.clone());
        }
    }
}

/// Is `v` in the row span of `basis`?
pub fn in_span(basis: &[QVec], v: &[BigRational]) -> bool {
    if is_zero_vec(v) {
        return true;
    }
    let mut trial: QMat = basis.to_vec();
    trial.push(v.to_vec());
    rank(&trial) == rank(&basis.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn mat(rows: &[&[i64]]) -> QMat {
        rows.iter()
            .map(|r| r.iter().map(|&x| q(x)).collect())
            .collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let m = mat(&[&[1, 1, 0], &[1, 0, 1], &[0, 1, -1]]);
        assert_eq!(rank(&m), 2);
        let ns = nullspace(&m);
        assert_eq!(ns.len(), 1);
        for row in &m {
            assert!(dot(row, &ns[0]).is_zero());
        }
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = mat(&[&[1, 0], &[0, 1], &[1, 1]]);
        let b = vec![q(2), q(3), q(5)];
        let x = solve(&m, &b).unwrap();
        assert_eq!(x, vec![q(2), q(3)]);
        let b_bad = vec![q(2), q(3), q(4)];
        assert!(solve(&m, &b_bad).is_none());
    }

    #[test]
    fn span_tests() {
        let basis = mat(&[&[1, 0, 0], &[0, 1, 0]]);
        assert!(in_span(&basis, &[q(3), q(-2), q(0)]));
        assert!(!in_span(&basis, &[q(0), q(0), q(1)]));
    }
}
