//! Smith normal form of integer matrices with unimodular transforms.
//!
//! Pivot choice: minimal absolute value among the remaining entries, ties
//! broken by (row, col) index, followed by row/column gcd reduction. This
//! makes the output deterministic and keeps entries small at desk scale.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMat = Vec<Vec<BigInt>>;

pub fn int_identity(n: usize) -> IntMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn int_mul(a: &IntMat, b: &IntMat) -> IntMat {
    let rows = a.len();
    let inner = if rows == 0 { 0 } else { a[0].len() };
    let cols = if b.is_empty() { 0 } else { b[0].len() };
    assert_eq!(inner, b.len());
    (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| (0..inner).map(|k| &a[i][k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Fraction-free Bareiss elimination; exact for any square integer matrix.
pub fn integer_determinant(m: &IntMat) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    assert!(m.iter().all(|r| r.len() == n), "square matrix");
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss divisions are exact");
                a[i][j] = q;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// U * M * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ...
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: IntMat,
    pub d: IntMat,
    pub v: IntMat,
}

impl SnfResult {
    /// Diagonal entries, including zeros, of length min(rows, cols).
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self
            .d
            .len()
            .min(self.d.first().map(|r| r.len()).unwrap_or(0));
        (0..n).map(|i| self.d[i][i].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

pub fn smith_normal_form(m: &IntMat) -> SnfResult {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut d = m.clone();
    let mut u = int_identity(rows);
    let mut v = int_identity(cols);

    let limit = rows.min(cols);
    let mut t = 0;
    while t < limit {
        let Some((pi, pj)) = min_abs_pivot(&d, t) else {
            break;
        };
        swap_rows(&mut d, &mut u, t, pi);
        swap_cols(&mut d, &mut v, t, pj);

        loop {
            // Clear column t with nearest-integer quotients.
            let mut clean = true;
            for i in t + 1..rows {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = rounded_div(&d[i][t], &d[t][t]);
                if !q.is_zero() {
                    row_axpy(&mut d, &mut u, i, t, &q);
                }
                if !d[i][t].is_zero() {
                    // Remainder smaller in absolute value: make it the pivot.
                    swap_rows(&mut d, &mut u, t, i);
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            for j in t + 1..cols {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = rounded_div(&d[t][j], &d[t][t]);
                if !q.is_zero() {
                    col_axpy(&mut d, &mut v, j, t, &q);
                }
                if !d[t][j].is_zero() {
                    swap_cols(&mut d, &mut v, t, j);
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: pivot must divide every remaining entry.
            let mut fixed = false;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&d[i][j] % &d[t][t]).is_zero() {
                        // Fold row i into row t and restart the reduction.
                        add_row(&mut d, &mut u, t, i);
                        fixed = true;
                        break 'scan;
                    }
                }
            }
            if !fixed {
                break;
            }
        }

        if d[t][t].is_negative() {
            negate_row(&mut d, &mut u, t);
        }
        t += 1;
    }
    SnfResult { u, d, v }
}

/// Lattice basis of {x in Z^cols : Mx = 0}: the columns of V matched with
/// zero diagonal entries. Unimodularity of V makes this basis saturated.
pub fn kernel_lattice(m: &IntMat, cols: usize) -> Vec<Vec<BigInt>> {
    if m.is_empty() {
        return int_identity(cols);
    }
    let snf = smith_normal_form(m);
    let diag = snf.diagonal();
    let mut basis = Vec::new();
    for j in 0..cols {
        let zero_diag = j >= diag.len() || diag[j].is_zero();
        if zero_diag {
            basis.push((0..cols).map(|i| snf.v[i][j].clone()).collect());
        }
    }
    basis
}

fn min_abs_pivot(d: &IntMat, t: usize) -> Option<(usize, usize)> {
    let rows = d.len();
    let cols = if rows == 0 { 0 } else { d[0].len() };
    let mut best: Option<(usize, usize)> = None;
    for i in t..rows {
        for j in t..cols {
            if d[i][j].is_zero() {
                continue;
            }
            match best {
                None => best = Some((i, j)),
                Some((bi, bj)) => {
                    if d[i][j].abs() < d[bi][bj].abs() {
                        best = Some((i, j));
                    }
                }
            }
        }
    }
    best
}

fn rounded_div(a: &BigInt, b: &BigInt) -> BigInt {
    // Quotient with remainder in (-|b|/2, |b|/2].
    let (mut q, r) = a.div_rem(b);
    let two_r = BigInt::from(2) * r.abs();
    if two_r > b.abs() {
        if (a.is_negative()) != (b.is_negative()) {
            q -= BigInt::one();
        } else {
            q += BigInt::one();
        }
    }
    q
}

fn swap_rows(d: &mut IntMat, u: &mut IntMat, a: usize, b: usize) {
    if a != b {
        d.swap(a, b);
        u.swap(a, b);
    }
}

fn swap_cols(d: &mut IntMat, v: &mut IntMat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in d.iter_mut() {
        row.swap(a, b);
    }
    for row in v.iter_mut() {
        row.swap(a, b);
    }
}

/// row_i -= q * row_t, mirrored on U.
fn row_axpy(d: &mut IntMat, u: &mut IntMat, i: usize, t: usize, q: &BigInt) {
    let cols = d[0].len();
    for j in 0..cols {
        let delta = q * &d[t][j];
        d[i][j] -= delta;
    }
    for j in 0..u[0].len() {
        let delta = q * &u[t][j];
        u[i][j] -= delta;
    }
}

/// col_j -= q * col_t, mirrored on V.
fn col_axpy(d: &mut IntMat, v: &mut IntMat, j: usize, t: usize, q: &BigInt) {
    for row in d.iter_mut() {
        let delta = q * &row[t];
        row[j] -= delta;
    }
    for row in v.iter_mut() {
        let delta = q * &row[t];
        row[j] -= delta;
    }
}

fn add_row(d: &mut IntMat, u: &mut IntMat, t: usize, i: usize) {
    let cols = d[0].len();
    for j in 0..cols {
        let x = d[i][j].clone();
        d[t][j] += x;
    }
    for j in 0..u[0].len() {
        let x = u[i][j].clone();
        u[t][j] += x;
    }
}

fn negate_row(d: &mut IntMat, u: &mut IntMat, t: usize) {
    for x in d[t].iter_mut() {
        *x = -x.clone();
    }
    for x in u[t].iter_mut() {
        *x = -x.clone();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> IntMat {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn check(m: &IntMat) {
        let rows = m.len();
        let cols = if rows == 0 { 0 } else { m[0].len() };
        let snf = smith_normal_form(m);
        // U M V = D exactly.
        assert_eq!(int_mul(&int_mul(&snf.u, m), &snf.v), snf.d);
        // Unimodularity.
        assert!(integer_determinant(&snf.u).abs().is_one());
        assert!(integer_determinant(&snf.v).abs().is_one());
        // Diagonal, nonnegative, divisibility chain.
        for i in 0..rows {
            for j in 0..cols {
                if i != j {
                    assert!(snf.d[i][j].is_zero());
                }
            }
        }
        let diag = snf.diagonal();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }

    #[test]
    fn identity_is_fixed() {
        let m = int_identity(3);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.d, m);
        check(&m);
    }

    #[test]
    fn two_by_two_example() {
        let m = mat(&[&[2, 4], &[6, 8]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
        check(&m);
    }

    #[test]
    fn zero_matrix() {
        let m = mat(&[&[0, 0], &[0, 0], &[0, 0]]);
        let snf = smith_normal_form(&m);
        assert!(snf.diagonal().iter().all(|d| d.is_zero()));
        check(&m);
    }

    #[test]
    fn seeded_random_matrices() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let rows = rng.gen_range(0..5);
            let cols = rng.gen_range(1..5);
            let m: IntMat = (0..rows)
                .map(|_| {
                    (0..cols)
                        .map(|_| BigInt::from(rng.gen_range(-9i64..=9)))
                        .collect()
                })
                .collect();
            check(&m);
        }
    }

    #[test]
    fn kernel_lattice_of_rank_deficient() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6]]);
        let basis = kernel_lattice(&m, 3);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            for row in &m {
                let s: BigInt = row.iter().zip(v).map(|(a, b)| a * b).sum();
                assert!(s.is_zero());
            }
        }
    }
}
