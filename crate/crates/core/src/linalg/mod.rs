//! Exact matrix algebra over the supported rings.

mod cohomology;
mod snf;

use std::sync::Arc;

use num_bigint::{BigInt, Sign};
use serde::{Deserialize, Serialize};

use crate::ring::{build_ring, parse_ring_spec, Ring, RingElement, RingOps, RingSpec};
use crate::{Error, Result};

pub use cohomology::{complex_cohomology, CohomologyGroup};
pub use snf::{
    int_identity, int_mul, integer_determinant, kernel_lattice, smith_normal_form, IntMat,
    SnfResult,
};

/// A dense matrix with entries in one coefficient ring. Rows act on column
/// vectors: an (r x c) matrix is a map R^c -> R^r.
#[derive(Clone)]
pub struct Matrix {
    ring: Arc<dyn Ring>,
    rows: usize,
    cols: usize,
    entries: Vec<RingElement>,
}

impl Matrix {
    pub fn zero(ring: Arc<dyn Ring>, rows: usize, cols: usize) -> Self {
        let entries = vec![ring.zero(); rows * cols];
        Matrix {
            ring,
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(ring: Arc<dyn Ring>, n: usize) -> Self {
        let mut m = Matrix::zero(ring, n, n);
        for i in 0..n {
            let one = m.ring.one();
            m.set(i, i, one);
        }
        m
    }

    pub fn from_fn(
        ring: Arc<dyn Ring>,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> RingElement,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix {
            ring,
            rows,
            cols,
            entries,
        }
    }

    pub fn ring(&self) -> &Arc<dyn Ring> {
        &self.ring
    }

    pub fn spec(&self) -> &RingSpec {
        self.ring.spec()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RingElement) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.ring.is_zero(e))
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.spec() != other.spec() {
            return Err(Error::RingMismatch(self.spec().descriptor()));
        }
        let ring = self.ring.clone();
        let mut out = Matrix::zero(ring.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = ring.zero();
                for k in 0..self.cols {
                    acc = ring.add(&acc, &ring.mul(self.get(i, k), other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[RingElement]) -> Vec<RingElement> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.ring.zero();
                for j in 0..self.cols {
                    acc = self.ring.add(&acc, &self.ring.mul(self.get(i, j), &v[j]));
                }
                acc
            })
            .collect()
    }

    /// Row-major entry strings, for reports and tests.
    pub fn entry_strings(&self) -> Vec<String> {
        self.entries.iter().map(|e| self.ring.format(e)).collect()
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            ring: self.spec().descriptor(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entry_strings(),
        }
    }

    pub fn from_json(json: &MatrixJson) -> Result<Matrix> {
        let spec = parse_ring_spec(&json.ring)?;
        let ring = build_ring(&spec);
        if json.entries.len() != json.rows * json.cols {
            return Err(Error::Shape(format!(
                "{} entries for a {}x{} matrix",
                json.entries.len(),
                json.rows,
                json.cols
            )));
        }
        let entries: Result<Vec<RingElement>> =
            json.entries.iter().map(|s| ring.parse(s)).collect();
        Ok(Matrix {
            ring,
            rows: json.rows,
            cols: json.cols,
            entries: entries?,
        })
    }

    /// Integer entry matrix, for SNF; entries must be integers.
    pub fn to_int_mat(&self) -> Result<IntMat> {
        if self.spec() != &RingSpec::Integers {
            return Err(Error::UnsupportedMode(format!(
                "integer matrix required, got {}",
                self.spec()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j).as_int().expect("integer entry").clone())
                    .collect()
            })
            .collect())
    }
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.spec())?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| self.ring.format(self.get(i, j)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Matrices serialize as entry strings with a ring descriptor header.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub ring: String,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<String>,
}

/// Row echelon data over a field: rank and a right-kernel basis.
pub fn rank_kernel(m: &Matrix) -> Result<(usize, Vec<Vec<RingElement>>)> {
    let ring = m.ring();
    if !ring.is_field() {
        return Err(Error::NotAField(m.spec().descriptor()));
    }
    let rows = m.rows();
    let cols = m.cols();
    let mut work: Vec<Vec<RingElement>> = (0..rows)
        .map(|i| (0..cols).map(|j| m.get(i, j).clone()).collect())
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !ring.is_zero(&work[i][c])) else {
            continue;
        };
        work.swap(r, p);
        let inv = ring.inverse(&work[r][c]).expect("nonzero field element");
        for x in work[r].iter_mut() {
            *x = ring.mul(x, &inv);
        }
        for i in 0..rows {
            if i != r && !ring.is_zero(&work[i][c]) {
                let f = work[i][c].clone();
                for j in 0..cols {
                    let d = ring.mul(&work[r][j], &f);
                    work[i][j] = ring.sub(&work[i][j], &d);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut kernel = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![ring.zero(); cols];
        v[free] = ring.one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = ring.neg(&work[i][free]);
        }
        kernel.push(v);
    }
    Ok((pivots.len(), kernel))
}

/// Exact determinant. Bareiss over the integers (also used for Z/m and F_p
/// by lifting residues), Gaussian elimination with division for the fields
/// Q and Q(zeta_n).
pub fn determinant(m: &Matrix) -> Result<RingElement> {
    if m.rows() != m.cols() {
        return Err(Error::Shape(format!(
            "{}x{} not square",
            m.rows(),
            m.cols()
        )));
    }
    let ring = m.ring();
    let n = m.rows();
    if n == 0 {
        return Ok(ring.one());
    }
    match m.spec() {
        RingSpec::Integers => {
            let d = integer_determinant(&m.to_int_mat()?);
            Ok(ring.embed_int(&d))
        }
        RingSpec::Modular { .. } | RingSpec::PrimeField { .. } => {
            // Lift canonical residues, run Bareiss over Z, reduce back.
            let lifted: IntMat = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let r = m.get(i, j).as_res().expect("residue entry");
                            BigInt::from_biguint(Sign::Plus, r.clone())
                        })
                        .collect()
                })
                .collect();
            Ok(ring.embed_int(&integer_determinant(&lifted)))
        }
        RingSpec::Rationals | RingSpec::Cyclotomic { .. } => {
            let mut work: Vec<Vec<RingElement>> = (0..n)
                .map(|i| (0..n).map(|j| m.get(i, j).clone()).collect())
                .collect();
            let mut det = ring.one();
            for c in 0..n {
                let Some(p) = (c..n).find(|&i| !ring.is_zero(&work[i][c])) else {
                    return Ok(ring.zero());
                };
                if p != c {
                    work.swap(p, c);
                    det = ring.neg(&det);
                }
                det = ring.mul(&det, &work[c][c]);
                let inv = ring.inverse(&work[c][c]).expect("nonzero field element");
                for i in (c + 1)..n {
                    if ring.is_zero(&work[i][c]) {
                        continue;
                    }
                    let f = ring.mul(&work[i][c], &inv);
                    for j in c..n {
                        let d = ring.mul(&work[c][j], &f);
                        work[i][j] = ring.sub(&work[i][j], &d);
                    }
                }
            }
            Ok(det)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::ring_from_descriptor;

    fn int_matrix(rows: &[&[i64]]) -> Matrix {
        let ring = ring_from_descriptor("Z").unwrap();
        Matrix::from_fn(ring.clone(), rows.len(), rows[0].len(), |i, j| {
            ring.int(rows[i][j])
        })
    }

    #[test]
    fn determinant_examples() {
        let ring = ring_from_descriptor("Z").unwrap();
        let one_by_one = Matrix::from_fn(ring.clone(), 1, 1, |_, _| ring.int(7));
        assert_eq!(determinant(&one_by_one).unwrap(), ring.int(7));
        let diag = int_matrix(&[&[2, 0], &[0, 4]]);
        assert_eq!(determinant(&diag).unwrap(), ring.int(8));
    }

    #[test]
    fn determinant_cofactor_oracle_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for descriptor in ["Z", "Q", "Z/12", "F_5", "Q(zeta_4)"] {
            let ring = ring_from_descriptor(descriptor).unwrap();
            for _ in 0..15 {
                let vals: Vec<i64> = (0..4).map(|_| rng.gen_range(-5..=5)).collect();
                let m = Matrix::from_fn(ring.clone(), 2, 2, |i, j| ring.int(vals[2 * i + j]));
                // ad - bc by hand.
                let expect = ring.sub(
                    &ring.mul(&ring.int(vals[0]), &ring.int(vals[3])),
                    &ring.mul(&ring.int(vals[1]), &ring.int(vals[2])),
                );
                assert_eq!(determinant(&m).unwrap(), expect, "{descriptor}");
            }
        }
    }

    #[test]
    fn rank_kernel_examples() {
        let q = ring_from_descriptor("Q").unwrap();
        let m = Matrix::identity(q.clone(), 3);
        let (rank, kernel) = rank_kernel(&m).unwrap();
        assert_eq!((rank, kernel.len()), (3, 0));

        // Columns (1,1,0),(1,0,1),(0,1,1) over F_2: rank 2, kernel (1,1,1).
        let f2 = ring_from_descriptor("F_2").unwrap();
        let cols = [[1, 1, 0], [1, 0, 1], [0, 1, 1]];
        let m = Matrix::from_fn(f2.clone(), 3, 3, |i, j| f2.int(cols[j][i]));
        let (rank, kernel) = rank_kernel(&m).unwrap();
        assert_eq!(rank, 2);
        assert_eq!(kernel.len(), 1);
        assert!(m.apply(&kernel[0]).iter().all(|x| f2.is_zero(x)));
        assert_eq!(kernel[0], vec![f2.one(), f2.one(), f2.one()]);

        // 0 x n matrix: rank 0, kernel is everything.
        let empty = Matrix::zero(q.clone(), 0, 4);
        let (rank, kernel) = rank_kernel(&empty).unwrap();
        assert_eq!((rank, kernel.len()), (0, 4));
    }

    #[test]
    fn rank_plus_kernel_is_cols() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for descriptor in ["Q", "F_3", "Q(zeta_3)"] {
            let ring = ring_from_descriptor(descriptor).unwrap();
            for _ in 0..10 {
                let rows = rng.gen_range(0..5);
                let cols = rng.gen_range(0..5);
                let m = Matrix::from_fn(ring.clone(), rows, cols, |_, _| {
                    ring.int(rng.gen_range(-3..=3))
                });
                let (rank, kernel) = rank_kernel(&m).unwrap();
                assert_eq!(rank + kernel.len(), cols);
                for v in &kernel {
                    assert!(m.apply(v).iter().all(|x| ring.is_zero(x)));
                }
            }
        }
    }

    #[test]
    fn matrix_json_round_trip() {
        let m = int_matrix(&[&[1, -2], &[3, 4]]);
        let json = m.to_json();
        let back = Matrix::from_json(&json).unwrap();
        assert_eq!(back.entry_strings(), m.entry_strings());
        let bad = MatrixJson {
            ring: "Q".into(),
            rows: 1,
            cols: 1,
            entries: vec!["1/0".into()],
        };
        assert!(Matrix::from_json(&bad).is_err());
    }
}
