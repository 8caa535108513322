//! Hyperplanes, arrangements, and their combinatorial substrate.

mod chamber;
mod matroid;
mod poset;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rat;
use crate::{Error, Result};

pub use chamber::{
    cone_span, enumerate_chambers, infinity_span, realize, Chamber, Sign, SignVector,
};
pub use matroid::{
    dense_edges, dense_edges_checked, dense_edges_matroid, dense_infinity_supports_from_chambers,
    matroid_is_indecomposable, DenseWhere,
};
pub use poset::{
    betti_euler, intersection_poset, AffinePoset, BettiData, Flat, FlatWitness, ProjectivePoset,
};

/// An affine hyperplane {x : a.x = b}, stored in primitive integer form.
/// Only positive rescaling is applied, so the sign of `a.x - b` is part of
/// the input data (it orients the two sides).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    normal: Vec<BigInt>,
    offset: BigInt,
}

impl Hyperplane {
    pub fn new(normal: Vec<BigRational>, offset: BigRational) -> Result<Self> {
        if normal.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroNormal(0));
        }
        // Positive scaling to coprime integers.
        let mut lcm = BigInt::one();
        for c in normal.iter().chain(std::iter::once(&offset)) {
            lcm = lcm.lcm(c.denom());
        }
        let lcm_q = BigRational::from_integer(lcm);
        let mut ints: Vec<BigInt> = normal.iter().map(|c| (c * &lcm_q).to_integer()).collect();
        let off = (&offset * &lcm_q).to_integer();
        let mut gcd = off.clone();
        for c in &ints {
            gcd = gcd.gcd(c);
        }
        if !gcd.is_zero() && !gcd.is_one() {
            for c in ints.iter_mut() {
                *c /= &gcd;
            }
        }
        let off = if gcd.is_zero() || gcd.is_one() {
            off
        } else {
            off / &gcd
        };
        Ok(Hyperplane {
            normal: ints,
            offset: off,
        })
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn normal(&self) -> Vec<BigRational> {
        self.normal
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect()
    }

    pub fn offset(&self) -> BigRational {
        BigRational::from_integer(self.offset.clone())
    }

    /// a.x - b at a rational point.
    pub fn eval(&self, x: &[BigRational]) -> BigRational {
        debug_assert_eq!(x.len(), self.normal.len());
        let mut acc = -BigRational::from_integer(self.offset.clone());
        for (c, xi) in self.normal.iter().zip(x) {
            acc += BigRational::from_integer(c.clone()) * xi;
        }
        acc
    }

    /// a.v for a direction v (no offset).
    pub fn eval_dir(&self, v: &[BigRational]) -> BigRational {
        self.normal
            .iter()
            .zip(v)
            .map(|(c, vi)| BigRational::from_integer(c.clone()) * vi)
            .sum()
    }

    /// The homogenized functional (a, -b) on coordinates (x_1..x_l, x_0).
    pub fn homogeneous(&self) -> Vec<BigRational> {
        let mut f = self.normal();
        f.push(-self.offset());
        f
    }

    /// Same hyperplane as a set: proportional up to any nonzero scalar.
    pub fn same_set(&self, other: &Hyperplane) -> bool {
        if self.normal == other.normal && self.offset == other.offset {
            return true;
        }
        let neg: Vec<BigInt> = other.normal.iter().map(|c| -c).collect();
        self.normal == neg && self.offset == -other.offset.clone()
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.normal.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                write!(f, "{c}*x{}", i + 1)?;
                first = false;
            } else if c.is_negative() {
                write!(f, " - {}*x{}", -c, i + 1)?;
            } else {
                write!(f, " + {c}*x{}", i + 1)?;
            }
        }
        write!(f, " = {}", self.offset)
    }
}

/// A finite ordered list of pairwise distinct hyperplanes in R^dim.
#[derive(Clone, Debug)]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
}

impl Arrangement {
    pub fn new(dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self> {
        for (i, h) in hyperplanes.iter().enumerate() {
            if h.dim() != dim {
                return Err(Error::Shape(format!(
                    "hyperplane {} has {} coefficients, ambient dimension is {dim}",
                    i + 1,
                    h.dim()
                )));
            }
            for (j, g) in hyperplanes.iter().enumerate().take(i) {
                if h.same_set(g) {
                    return Err(Error::DuplicateHyperplane(j + 1, i + 1));
                }
            }
        }
        Ok(Arrangement { dim, hyperplanes })
    }

    /// Parse integer coefficient rows [a_1, .., a_l, b].
    pub fn from_rows(dim: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let hyperplanes: Result<Vec<Hyperplane>> = rows
            .iter()
            .map(|row| {
                let (b, a) = row
                    .split_last()
                    .ok_or_else(|| Error::Parse("hyperplane row must contain [a..., b]".into()))?;
                Hyperplane::new(
                    a.iter()
                        .map(|&c| BigRational::from_integer(c.into()))
                        .collect(),
                    BigRational::from_integer((*b).into()),
                )
            })
            .collect();
        Arrangement::new(dim, hyperplanes?)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn hyperplane(&self, i: usize) -> &Hyperplane {
        &self.hyperplanes[i]
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    /// True iff the normals span R^dim, equivalently L_0 is nonempty.
    pub fn is_essential(&self) -> bool {
        let rows: Vec<Vec<BigRational>> = self.hyperplanes.iter().map(|h| h.normal()).collect();
        crate::ratmat::rank(&rows) == self.dim
    }

    /// Sign vector of a point off every hyperplane.
    pub fn signs_at(&self, x: &[BigRational]) -> Option<SignVector> {
        let mut signs = Vec::with_capacity(self.n());
        for h in &self.hyperplanes {
            match rat::sign(&h.eval(x)) {
                1 => signs.push(Sign::Plus),
                -1 => signs.push(Sign::Minus),
                _ => return None,
            }
        }
        Some(SignVector(signs))
    }
}

/// Indices of hyperplanes separating two chambers: where the sign vectors
/// differ.
pub fn separating_set(c1: &SignVector, c2: &SignVector) -> BTreeSet<usize> {
    assert_eq!(c1.0.len(), c2.0.len());
    c1.0.iter()
        .zip(&c2.0)
        .enumerate()
        .filter(|(_, (a, b))| a != b)
        .map(|(i, _)| i)
        .collect()
}

/// Hyperplane index set of a flat, with the hyperplane at infinity tracked
/// separately. Indices are 0-based internally, 1-based in displays.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Support {
    pub hyperplanes: BTreeSet<usize>,
    pub infinity: bool,
}

impl Support {
    pub fn finite(idx: impl IntoIterator<Item = usize>) -> Self {
        Support {
            hyperplanes: idx.into_iter().collect(),
            infinity: false,
        }
    }

    pub fn with_infinity(idx: impl IntoIterator<Item = usize>) -> Self {
        Support {
            hyperplanes: idx.into_iter().collect(),
            infinity: true,
        }
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len() + usize::from(self.infinity)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_subset(&self, other: &Support) -> bool {
        (!self.infinity || other.infinity) && self.hyperplanes.is_subset(&other.hyperplanes)
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .hyperplanes
            .iter()
            .map(|i| (i + 1).to_string())
            .collect();
        if self.infinity {
            parts.push("inf".to_string());
        }
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for Support {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut parts: Vec<String> = self
            .hyperplanes
            .iter()
            .map(|i| (i + 1).to_string())
            .collect();
        if self.infinity {
            parts.push("inf".to_string());
        }
        parts.serialize(s)
    }
}

/// Wire format for arrangements, plus the optional weight/monodromy/seed
/// payload a file may carry.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArrangementFile {
    pub dim: usize,
    pub hyperplanes: Vec<Vec<serde_json::Value>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ring: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q_sqrt: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl ArrangementFile {
    pub fn to_arrangement(&self) -> Result<Arrangement> {
        let mut planes = Vec::with_capacity(self.hyperplanes.len());
        for (idx, row) in self.hyperplanes.iter().enumerate() {
            if row.len() != self.dim + 1 {
                return Err(Error::Parse(format!(
                    "hyperplane {} must have {} entries [a..., b], got {}",
                    idx + 1,
                    self.dim + 1,
                    row.len()
                )));
            }
            let coeffs: Result<Vec<BigRational>> = row.iter().map(json_rational).collect();
            let mut coeffs = coeffs?;
            let b = coeffs.pop().expect("checked length");
            planes.push(Hyperplane::new(coeffs, b).map_err(|_| Error::ZeroNormal(idx + 1))?);
        }
        Arrangement::new(self.dim, planes)
    }
}

fn json_rational(v: &serde_json::Value) -> Result<BigRational> {
    match v {
        serde_json::Value::Number(n) => {
            let i = n
                .as_i64()
                .ok_or_else(|| Error::Parse(format!("non-integer numeric entry {n}")))?;
            Ok(BigRational::from_integer(i.into()))
        }
        serde_json::Value::String(s) => rat::parse_rational(s),
        other => Err(Error::Parse(format!("invalid coefficient entry {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn canonical_primitive_form_keeps_orientation() {
        let h = Hyperplane::new(
            vec![
                rat::parse_rational("-2/3").unwrap(),
                rat::parse_rational("4/3").unwrap(),
            ],
            rat::parse_rational("2").unwrap(),
        )
        .unwrap();
        assert_eq!(h.normal, vec![BigInt::from(-1), BigInt::from(2)]);
        assert_eq!(h.offset, BigInt::from(3));
    }

    #[test]
    fn duplicates_rejected_even_with_flipped_sign() {
        let rows = vec![vec![1, 0, 0], vec![-2, 0, 0]];
        match Arrangement::from_rows(2, &rows) {
            Err(Error::DuplicateHyperplane(1, 2)) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn essentiality() {
        assert!(corpus::e1().is_essential());
        let parallels = Arrangement::from_rows(2, &[vec![1, 0, 0], vec![1, 0, 1]]).unwrap();
        assert!(!parallels.is_essential());
        let empty = Arrangement::from_rows(0, &[]).unwrap();
        assert!(empty.is_essential());
    }

    #[test]
    fn separating_sets_on_e1() {
        let a = SignVector::parse("++-").unwrap();
        let b = SignVector::parse("+--").unwrap();
        assert_eq!(separating_set(&a, &a), BTreeSet::new());
        assert_eq!(separating_set(&a, &b), BTreeSet::from([1]));
        let c = SignVector::parse("---").unwrap();
        let d = SignVector::parse("+++").unwrap();
        assert_eq!(separating_set(&c, &d), BTreeSet::from([0, 1, 2]));
    }

    #[test]
    fn file_parsing_errors() {
        let bad: ArrangementFile =
            serde_json::from_str(r#"{"dim": 2, "hyperplanes": [["1/0", 0, 0]]}"#).unwrap();
        assert!(bad.to_arrangement().is_err());
        let dup: ArrangementFile =
            serde_json::from_str(r#"{"dim": 2, "hyperplanes": [[1, 0, 0], [1, 0, 0]]}"#).unwrap();
        assert!(matches!(
            dup.to_arrangement(),
            Err(Error::DuplicateHyperplane(1, 2))
        ));
    }
}
