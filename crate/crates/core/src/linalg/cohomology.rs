//! Cohomology of cochain complexes of finite free modules.
//!
//! Full isomorphism classes are computed over fields (dimensions) and over
//! Z (free rank plus torsion via Smith normal form). Z/m goes through the
//! unit-determinant certificate route instead, which is recorded in the
//! optional `vanishing_certificate` field by the callers that produce it.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::snf::{kernel_lattice, smith_normal_form, IntMat};
use super::{rank_kernel, Matrix};
use crate::ring::RingSpec;
use crate::{Error, Result};

/// Isomorphism class of one cohomology group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CohomologyGroup {
    pub ring: RingSpec,
    pub free_rank: usize,
    /// Invariant factors d_1 | d_2 | ... (> 1); empty over fields.
    pub torsion: Vec<BigUint>,
    /// For rings where the full class is not computed directly
    /// (Z/m certificates), a machine-checkable witness.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vanishing_certificate: Option<serde_json::Value>,
}

impl CohomologyGroup {
    pub fn free(ring: RingSpec, free_rank: usize) -> Self {
        CohomologyGroup {
            ring,
            free_rank,
            torsion: vec![],
            vanishing_certificate: None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Render like `0`, `Z^2`, `Z + Z/2`, `F_5^3`.
    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let base = self.ring.descriptor();
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            if self.free_rank == 1 {
                parts.push(base.clone());
            } else {
                parts.push(format!("{base}^{}", self.free_rank));
            }
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        parts.join(" + ")
    }
}

/// Cohomology of `0 -> R^{r_0} -> R^{r_1} -> ... -> R^{r_L} -> 0` given the
/// coboundaries `deltas[k] : R^{r_k} -> R^{r_{k+1}}` as (r_{k+1} x r_k)
/// matrices. Checks that consecutive maps compose to zero.
pub fn complex_cohomology(deltas: &[Matrix]) -> Result<Vec<CohomologyGroup>> {
    if deltas.is_empty() {
        return Ok(vec![]);
    }
    let spec = deltas[0].spec().clone();
    for (k, pair) in deltas.windows(2).enumerate() {
        if pair[0].spec() != pair[1].spec() {
            return Err(Error::RingMismatch(spec.descriptor()));
        }
        if pair[1].cols() != pair[0].rows() {
            return Err(Error::Shape(format!(
                "delta^{} is {}x{} but delta^{} is {}x{}",
                k,
                pair[0].rows(),
                pair[0].cols(),
                k + 1,
                pair[1].rows(),
                pair[1].cols()
            )));
        }
        if !pair[1].mul(&pair[0])?.is_zero() {
            return Err(Error::CompositionNotZero { degree: k });
        }
    }

    let ranks: Vec<usize> = deltas
        .iter()
        .map(|d| d.cols())
        .chain(std::iter::once(deltas.last().unwrap().rows()))
        .collect();

    if spec.is_field() {
        let mut rk = Vec::with_capacity(deltas.len());
        for d in deltas {
            rk.push(rank_kernel(d)?.0);
        }
        let mut out = Vec::with_capacity(ranks.len());
        for k in 0..ranks.len() {
            let rank_out = if k < rk.len() { rk[k] } else { 0 };
            let rank_in = if k > 0 { rk[k - 1] } else { 0 };
            out.push(CohomologyGroup::free(
                spec.clone(),
                ranks[k] - rank_out - rank_in,
            ));
        }
        return Ok(out);
    }

    if spec != RingSpec::Integers {
        return Err(Error::UnsupportedMode(format!(
            "full cohomology classes over {spec}; use the certificate route"
        )));
    }

    let int_deltas: Vec<IntMat> = deltas
        .iter()
        .map(|d| d.to_int_mat())
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(ranks.len());
    for k in 0..ranks.len() {
        let outgoing: IntMat = if k < int_deltas.len() {
            int_deltas[k].clone()
        } else {
            vec![]
        };
        let kernel = kernel_lattice(&outgoing, ranks[k]);
        let incoming = if k > 0 {
            Some(&int_deltas[k - 1])
        } else {
            None
        };
        out.push(integer_quotient(&spec, ranks[k], kernel, incoming)?);
    }
    Ok(out)
}

/// ker/im over Z: express each image generator in the saturated kernel
/// basis and read invariant factors off the Smith normal form.
fn integer_quotient(
    spec: &RingSpec,
    ambient: usize,
    kernel: Vec<Vec<BigInt>>,
    incoming: Option<&IntMat>,
) -> Result<CohomologyGroup> {
    let kdim = kernel.len();
    let Some(delta_in) = incoming else {
        return Ok(CohomologyGroup::free(spec.clone(), kdim));
    };
    if kdim == 0 {
        return Ok(CohomologyGroup::free(spec.clone(), 0));
    }
    // Solve K y = c over Q for each image column c; solutions are integral
    // because the kernel lattice is saturated and im lies inside ker.
    let kmat_q: Vec<Vec<BigRational>> = (0..ambient)
        .map(|i| {
            kernel
                .iter()
                .map(|v| BigRational::from_integer(v[i].clone()))
                .collect()
        })
        .collect();
    let src = if delta_in.is_empty() {
        0
    } else {
        delta_in[0].len()
    };
    let mut image_in_kernel: IntMat = Vec::new();
    for c in 0..src {
        let col: Vec<BigRational> = (0..ambient)
            .map(|i| BigRational::from_integer(delta_in[i][c].clone()))
            .collect();
        let y = crate::ratmat::solve(&kmat_q, &col).ok_or_else(|| {
            Error::Internal("image vector escapes the kernel of the next map".into())
        })?;
        let y_int: Vec<BigInt> = y
            .iter()
            .map(|q| {
                if q.denom().is_one() {
                    Ok(q.numer().clone())
                } else {
                    Err(Error::Internal(
                        "non-integral coordinates in saturated kernel basis".into(),
                    ))
                }
            })
            .collect::<Result<_>>()?;
        image_in_kernel.push(y_int);
    }
    // image_in_kernel rows are generators; transpose into column form.
    let rel: IntMat = (0..kdim)
        .map(|i| image_in_kernel.iter().map(|g| g[i].clone()).collect())
        .collect();
    let has_relations = !image_in_kernel.is_empty();
    let (free_rank, torsion) = if !has_relations {
        (kdim, vec![])
    } else {
        let snf = smith_normal_form(&rel);
        let diag = snf.diagonal();
        let rank = diag.iter().filter(|d| !d.is_zero()).count();
        let torsion: Vec<BigUint> = diag
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .map(|d| d.magnitude().clone())
            .collect();
        (kdim - rank, torsion)
    };
    Ok(CohomologyGroup {
        ring: spec.clone(),
        free_rank,
        torsion,
        vanishing_certificate: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{ring_from_descriptor, RingOps};
    use std::sync::Arc;

    fn delta(descriptor: &str, rows: usize, cols: usize, vals: &[i64]) -> Matrix {
        let ring = ring_from_descriptor(descriptor).unwrap();
        Matrix::from_fn(ring.clone(), rows, cols, |i, j| {
            ring.int(vals[i * cols + j])
        })
    }

    #[test]
    fn zero_complex_is_free() {
        let ring = ring_from_descriptor("Q").unwrap();
        let d0 = Matrix::zero(Arc::clone(&ring), 3, 2);
        let d1 = Matrix::zero(Arc::clone(&ring), 1, 3);
        let h = complex_cohomology(&[d0, d1]).unwrap();
        let dims: Vec<usize> = h.iter().map(|g| g.free_rank).collect();
        assert_eq!(dims, vec![2, 3, 1]);
    }

    #[test]
    fn composition_check_fires() {
        let d0 = delta("Q", 1, 1, &[1]);
        let d1 = delta("Q", 1, 1, &[1]);
        assert!(matches!(
            complex_cohomology(&[d0, d1]),
            Err(Error::CompositionNotZero { degree: 0 })
        ));
    }

    #[test]
    fn integer_torsion_detected() {
        // 0 -> Z -(0)-> Z -(x2)-> Z -> 0 has H^2 = Z/2... built as
        // delta0 = 0 (1x1), delta1 = [2] (1x1).
        let d0 = delta("Z", 1, 1, &[0]);
        let d1 = delta("Z", 1, 1, &[2]);
        let h = complex_cohomology(&[d0, d1]).unwrap();
        assert_eq!(h[0].free_rank, 1); // ker(0) = Z
        assert_eq!(h[1].free_rank, 0);
        assert!(h[1].torsion.is_empty()); // ker(x2) = 0
        assert_eq!(h[2].free_rank, 0);
        assert_eq!(h[2].torsion, vec![BigUint::from(2u32)]);
        assert_eq!(h[2].display(), "Z/2");
    }

    #[test]
    fn euler_characteristic_identity() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let ring = ring_from_descriptor("F_5").unwrap();
        for _ in 0..10 {
            // Random 3-term complex: build d1 first, then d0 inside ker d1.
            let r0 = rng.gen_range(1..4usize);
            let r1 = rng.gen_range(1..4usize);
            let r2 = rng.gen_range(1..4usize);
            let d1 = Matrix::from_fn(ring.clone(), r2, r1, |_, _| ring.int(rng.gen_range(-2..=2)));
            let (_, kernel) = rank_kernel(&d1).unwrap();
            let d0 = Matrix::from_fn(ring.clone(), r1, r0, |i, j| {
                if kernel.is_empty() {
                    ring.zero()
                } else {
                    kernel[j % kernel.len()][i].clone()
                }
            });
            let h = complex_cohomology(&[d0, d1]).unwrap();
            let lhs: i64 = [r0, r1, r2]
                .iter()
                .enumerate()
                .map(|(k, &r)| if k % 2 == 0 { r as i64 } else { -(r as i64) })
                .sum();
            let rhs: i64 = h
                .iter()
                .enumerate()
                .map(|(k, g)| {
                    let d = g.free_rank as i64;
                    if k % 2 == 0 {
                        d
                    } else {
                        -d
                    }
                })
                .sum();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn basis_relabel_invariance_over_q() {
        use rand::{seq::SliceRandom, Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let ring = ring_from_descriptor("Q").unwrap();
        // A fixed small complex with d1 d0 = 0.
        let d0 = delta("Q", 3, 1, &[1, 1, 1]);
        let d1 = delta("Q", 2, 3, &[1, -1, 0, 0, 1, -1]);
        assert!(d1.mul(&d0).unwrap().is_zero());
        let h = complex_cohomology(&[d0.clone(), d1.clone()]).unwrap();
        for _ in 0..5 {
            let mut perm: Vec<usize> = (0..3).collect();
            perm.shuffle(&mut rng);
            let _ = rng.gen_range(0..2);
            let pd0 = Matrix::from_fn(ring.clone(), 3, 1, |i, j| d0.get(perm[i], j).clone());
            let pd1 = Matrix::from_fn(ring.clone(), 2, 3, |i, j| d1.get(i, perm[j]).clone());
            let hp = complex_cohomology(&[pd0, pd1]).unwrap();
            let dims: Vec<usize> = h.iter().map(|g| g.free_rank).collect();
            let dimsp: Vec<usize> = hp.iter().map(|g| g.free_rank).collect();
            assert_eq!(dims, dimsp);
        }
    }
}
