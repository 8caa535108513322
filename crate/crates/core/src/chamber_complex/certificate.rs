//! Restricted-block certificates: the map R[bch^k] -> R[uch^{k+1}] in the
//! dim-X ordering, its triangularity, and the unit-determinant test that
//! drives the vanishing theorems. Blocks below the top level are computed
//! in the generic section by F^{k+1}, where they are the top-level blocks
//! of the sectioned arrangement (chambers keep their sign vectors).

use serde::{Deserialize, Serialize};

use super::{ChamberComplex, Coefficients};
use crate::arrangement::infinity_span;
use crate::linalg::{determinant, Matrix};
use crate::poly::{poly_det, Poly};
use crate::ring::RingOps;
use crate::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiagonalEntry {
    pub chamber: String,
    pub opposite: String,
    pub dim_x: usize,
    pub deg: i64,
    /// (-1)^(k - dim X(C)) in the complex the block was computed in.
    pub expected_deg: i64,
    /// lambda_Sep(C, C-vee) or Delta(C, C-vee).
    pub sep_value: String,
    /// lambda_X(C) (weights) or q_X(C) (local systems).
    pub flat_value: String,
    pub unit: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inverse: Option<String>,
}

/// Machine-checkable transcript of one restricted block.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BlockCertificate {
    pub level: usize,
    pub ring: String,
    /// Row chambers C_1..C_b, weakly decreasing dim X, lex tie-break;
    /// column j is iota(C_j) = C_j-vee.
    pub ordering: Vec<String>,
    pub diagonal: Vec<DiagonalEntry>,
    /// Entries below the diagonal vanish in R.
    pub triangular: bool,
    /// The stronger statement: the degrees themselves vanish below the
    /// diagonal.
    pub degree_triangular: bool,
    pub det: String,
    pub det_is_unit: bool,
}

pub fn restricted_block(
    cx: &ChamberComplex,
    coeffs: &Coefficients,
    k: usize,
) -> Result<BlockCertificate> {
    let dim = cx.dim();
    if k >= dim {
        return Err(Error::DegreeUnsupported(k));
    }
    if k + 1 == dim {
        return top_level_block(cx, coeffs, k);
    }
    let sub = cx.section_complex(k + 1)?;
    let mut block = top_level_block(sub, coeffs, k)?;
    block.level = k;
    Ok(block)
}

fn ordered_top_bch(cx: &ChamberComplex) -> Result<Vec<(usize, usize, usize)>> {
    let k = cx.dim() - 1;
    let mut rows: Vec<(usize, usize, usize)> = Vec::new(); // (chamber, opposite, dim_x)
    for &c in &cx.strat.levels[k].bch {
        let opp = *cx.strat.levels[k]
            .opposite
            .get(&c)
            .ok_or_else(|| Error::Internal("missing opposite in stratification".into()))?;
        let d = cx.chambers[c]
            .dim_x()
            .ok_or_else(|| Error::Internal("bounded chamber in bch^{dim-1}".into()))?;
        rows.push((c, opp, d));
    }
    // Weakly decreasing dim X(C), lexicographic sign-vector tie-break.
    rows.sort_by(|a, b| {
        b.2.cmp(&a.2)
            .then_with(|| cx.chambers[a.0].signs.cmp(&cx.chambers[b.0].signs))
    });
    Ok(rows)
}

fn top_level_block(
    cx: &ChamberComplex,
    coeffs: &Coefficients,
    k: usize,
) -> Result<BlockCertificate> {
    debug_assert_eq!(k, cx.dim() - 1);
    let ring = coeffs.ring().clone();
    let rows = ordered_top_bch(cx)?;
    let b = rows.len();

    let mut matrix = Matrix::zero(ring.clone(), b, b);
    let mut degs = vec![vec![0i64; b]; b];
    for (i, &(ci, _, _)) in rows.iter().enumerate() {
        for (j, &(_, cj_opp, _)) in rows.iter().enumerate() {
            let deg = cx.degree(ci, cj_opp)?;
            degs[i][j] = deg;
            if deg != 0 {
                let sep = crate::arrangement::separating_set(
                    &cx.chambers[ci].signs,
                    &cx.chambers[cj_opp].signs,
                );
                matrix.set(i, j, ring.scale_int(&deg.into(), &coeffs.sep_value(&sep)));
            }
        }
    }

    let mut triangular = true;
    let mut degree_triangular = true;
    for i in 0..b {
        for j in 0..i {
            if !ring.is_zero(matrix.get(i, j)) {
                triangular = false;
            }
            if degs[i][j] != 0 {
                degree_triangular = false;
            }
        }
    }

    let det = determinant(&matrix)?;
    let det_is_unit = ring.is_unit(&det);

    let mut diagonal = Vec::with_capacity(b);
    for (i, &(ci, opp, d)) in rows.iter().enumerate() {
        let sep =
            crate::arrangement::separating_set(&cx.chambers[ci].signs, &cx.chambers[opp].signs);
        let sep_value = coeffs.sep_value(&sep);
        let x = infinity_span(cx.arrangement(), &cx.chambers[ci])
            .ok_or_else(|| Error::Internal("bounded chamber in bch^{dim-1}".into()))?;
        let flat_value = coeffs.flat_value(&x);
        let entry = matrix.get(i, i).clone();
        let unit = ring.is_unit(&entry);
        diagonal.push(DiagonalEntry {
            chamber: cx.chambers[ci].signs.to_string(),
            opposite: cx.chambers[opp].signs.to_string(),
            dim_x: d,
            deg: degs[i][i],
            expected_deg: if (k - d).is_multiple_of(2) { 1 } else { -1 },
            sep_value: ring.format(&sep_value),
            flat_value: ring.format(&flat_value),
            unit,
            inverse: ring.inverse(&entry).map(|v| ring.format(&v)),
        });
    }

    Ok(BlockCertificate {
        level: k,
        ring: ring.spec().descriptor(),
        ordering: rows
            .iter()
            .map(|&(c, _, _)| cx.chambers[c].signs.to_string())
            .collect(),
        diagonal,
        triangular,
        degree_triangular,
        det: ring.format(&det),
        det_is_unit,
    })
}

/// Outcome of the symbolic determinant identity: with entries as
/// polynomials in the weights over Q, det of the block must equal
/// +-prod deg(C, C-vee) * lambda_X(C).
#[derive(Clone, Debug, Serialize)]
pub struct SymbolicBlockCheck {
    pub level: usize,
    pub triangular: bool,
    pub det: String,
    pub product: String,
    pub matches: bool,
    /// +1 or -1 when it matches.
    pub sign: i8,
}

pub fn symbolic_block_identity(cx: &ChamberComplex, k: usize) -> Result<SymbolicBlockCheck> {
    let dim = cx.dim();
    if k >= dim {
        return Err(Error::DegreeUnsupported(k));
    }
    if k + 1 < dim {
        let sub = cx.section_complex(k + 1)?;
        let mut check = symbolic_top_identity(sub)?;
        check.level = k;
        return Ok(check);
    }
    symbolic_top_identity(cx)
}

fn symbolic_top_identity(cx: &ChamberComplex) -> Result<SymbolicBlockCheck> {
    let k = cx.dim() - 1;
    let n = cx.arrangement().n();
    let rows = ordered_top_bch(cx)?;
    let b = rows.len();

    let lambda_sum = |indices: &dyn Fn(usize) -> bool| -> Poly {
        let mut acc = Poly::zero(n);
        for i in 0..n {
            if indices(i) {
                acc = acc.add(&Poly::var(n, i));
            }
        }
        acc
    };

    let mut matrix: Vec<Vec<Poly>> = vec![vec![Poly::zero(n); b]; b];
    let mut triangular = true;
    for (i, &(ci, _, _)) in rows.iter().enumerate() {
        for (j, &(_, cj_opp, _)) in rows.iter().enumerate() {
            let deg = cx.degree(ci, cj_opp)?;
            if deg == 0 {
                continue;
            }
            let sep = crate::arrangement::separating_set(
                &cx.chambers[ci].signs,
                &cx.chambers[cj_opp].signs,
            );
            let entry = Poly::int(n, deg).mul(&lambda_sum(&|x| sep.contains(&x)));
            if j < i && !entry.is_zero() {
                triangular = false;
            }
            matrix[i][j] = entry;
        }
    }

    let det = poly_det(&matrix);

    // prod deg(C, C-vee) * lambda_X(C), with lambda_infinity = -sum lambda_i.
    let mut product = Poly::int(n, 1);
    for &(ci, opp, _) in &rows {
        let deg = cx.degree(ci, opp)?;
        let x = infinity_span(cx.arrangement(), &cx.chambers[ci])
            .ok_or_else(|| Error::Internal("bounded chamber in bch^{dim-1}".into()))?;
        let mut lam_x = lambda_sum(&|i| x.support.hyperplanes.contains(&i));
        if x.support.infinity {
            lam_x = lam_x.sub(&lambda_sum(&|_| true));
        }
        product = product.mul(&Poly::int(n, deg)).mul(&lam_x);
    }

    let (matches, sign) = if det == product {
        (true, 1)
    } else if det == product.neg() {
        (true, -1)
    } else {
        (false, 0)
    };
    Ok(SymbolicBlockCheck {
        level: k,
        triangular,
        det: det.to_string(),
        product: product.to_string(),
        matches,
        sign,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chamber_complex::ChamberCohomologyMode;
    use crate::corpus;
    use crate::flag::build_flag;
    use crate::os::WeightVector;

    fn complex_of(name: &str) -> ChamberComplex {
        let arr = corpus::builtin(name).unwrap();
        let flag = build_flag(&arr, corpus::DEFAULT_SEED).unwrap();
        ChamberComplex::new(&arr, &flag).unwrap()
    }

    #[test]
    fn e1_block_level_one() {
        let cx = complex_of("e1");
        let w = WeightVector::from_strings("Q", &["2".into(), "3".into(), "5".into()]).unwrap();
        let block = cx.restricted_block(&Coefficients::Weights(w), 1).unwrap();
        assert_eq!(block.diagonal.len(), 2);
        assert!(block.triangular);
        assert!(block.degree_triangular);
        // Both diagonal chambers have dim X = 1: deg = +1 and the entry is
        // lambda_1 + lambda_2 + lambda_3 = -lambda_inf = 10.
        for d in &block.diagonal {
            assert_eq!(d.dim_x, 1);
            assert_eq!(d.deg, 1);
            assert_eq!(d.expected_deg, 1);
            assert_eq!(d.sep_value, "10");
            assert_eq!(d.flat_value, "-10");
        }
        assert_eq!(block.det, "100");
        assert!(block.det_is_unit);
    }

    #[test]
    fn e1_block_level_zero() {
        let cx = complex_of("e1");
        let w = WeightVector::from_strings("Q", &["2".into(), "3".into(), "5".into()]).unwrap();
        let block = cx.restricted_block(&Coefficients::Weights(w), 0).unwrap();
        assert_eq!(block.diagonal.len(), 1);
        assert_eq!(block.det, "10");
    }

    #[test]
    fn e4_block_carries_the_xv_factor() {
        let cx = complex_of("e4");
        let w = WeightVector::from_strings("Q", &["1".into(), "7".into(), "3".into()]).unwrap();
        let block = cx.restricted_block(&Coefficients::Weights(w), 1).unwrap();
        assert!(block.triangular);
        // lambda_inf = -11; lambda_Xv = -lambda_3 = -3. The diagonal must
        // mention both kinds of factors.
        let values: Vec<&str> = block
            .diagonal
            .iter()
            .map(|d| d.flat_value.as_str())
            .collect();
        assert!(values.contains(&"-11"));
        assert!(values.contains(&"-3"));
    }

    #[test]
    fn certificate_mode_on_e1_mod4() {
        let cx = complex_of("e1");
        let w = WeightVector::from_strings("Z/4", &["1".into(), "1".into(), "1".into()]).unwrap();
        let out = cx
            .cohomology(
                &Coefficients::Weights(w),
                ChamberCohomologyMode::Certificate,
            )
            .unwrap();
        assert!(out.groups[0].is_zero());
        assert!(out.groups[1].is_zero());
        assert_eq!(out.groups[2].free_rank, 1);
        assert_eq!(out.groups[2].ring.descriptor(), "Z/4");
        assert!(out.groups[2].vanishing_certificate.is_some());
    }

    #[test]
    fn certificate_refused_on_e4_mod3() {
        let cx = complex_of("e4");
        let w = WeightVector::from_strings("F_3", &["1".into(), "1".into(), "1".into()]).unwrap();
        match cx.cohomology(
            &Coefficients::Weights(w),
            ChamberCohomologyMode::Certificate,
        ) {
            Err(Error::CertificateRefused { witness, .. }) => {
                assert!(witness.contains('0'), "{witness}");
            }
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn symbolic_identity_on_builtins() {
        for name in corpus::BUILTIN_NAMES {
            let cx = complex_of(name);
            for k in 0..cx.dim() {
                let check = symbolic_block_identity(&cx, k).unwrap();
                assert!(check.triangular, "{name} level {k}");
                assert!(check.matches, "{name} level {k}: det = {}", check.det);
            }
        }
    }
}
