//! Sparse multivariate polynomials over Q, used for symbolic identities in
//! the weight variables (one variable per hyperplane).

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::Zero;

use crate::rat::format_rational;

type Mono = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Mono, BigRational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn int(nvars: usize, c: i64) -> Self {
        Poly::constant(nvars, BigRational::from_integer(c.into()))
    }

    /// The variable lambda_i.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut mono = vec![0; nvars];
        mono[i] = 1;
        let mut p = Poly::zero(nvars);
        p.terms.insert(mono, BigRational::from_integer(1.into()));
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let entry = terms.entry(m.clone()).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(m);
            }
        }
        Poly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut terms: BTreeMap<Mono, BigRational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m: Mono = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                let entry = terms.entry(m.clone()).or_insert_with(BigRational::zero);
                *entry += ca * cb;
                if entry.is_zero() {
                    terms.remove(&m);
                }
            }
        }
        Poly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn to_string_in(&self, names: &dyn Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, c) in &self.terms {
            let mut factors = Vec::new();
            let coeff = format_rational(c);
            if coeff != "1" || m.iter().all(|&e| e == 0) {
                factors.push(coeff);
            }
            for (i, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names(i)),
                    _ => factors.push(format!("{}^{}", names(i), e)),
                }
            }
            parts.push(factors.join("*"));
        }
        parts.join(" + ")
    }
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_string_in(&|i| format!("l{}", i + 1)))
    }
}

/// Determinant by Laplace expansion along columns with memoization on the
/// surviving row set. Fast on the nearly-triangular blocks it is used for.
pub fn poly_det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    assert!(n <= 63, "determinant size");
    let nvars = if n == 0 { 0 } else { m[0][0].nvars };
    if n == 0 {
        return Poly::int(nvars, 1);
    }
    assert!(m.iter().all(|r| r.len() == n));
    let mut memo: HashMap<u64, Poly> = HashMap::new();
    let full: u64 = if n == 64 { !0 } else { (1 << n) - 1 };

    fn go(
        m: &[Vec<Poly>],
        n: usize,
        mask: u64,
        memo: &mut HashMap<u64, Poly>,
        nvars: usize,
    ) -> Poly {
        if mask == 0 {
            return Poly::int(nvars, 1);
        }
        if let Some(p) = memo.get(&mask) {
            return p.clone();
        }
        let col = n - mask.count_ones() as usize;
        let mut acc = Poly::zero(nvars);
        let mut pos = 0u32;
        for i in 0..n {
            if mask & (1 << i) == 0 {
                continue;
            }
            let entry = &m[i][col];
            if !entry.is_zero() {
                let minor = go(m, n, mask & !(1 << i), memo, nvars);
                let term = entry.mul(&minor);
                acc = if pos % 2 == 0 {
                    acc.add(&term)
                } else {
                    acc.sub(&term)
                };
            }
            pos += 1;
        }
        memo.insert(mask, acc.clone());
        acc
    }

    go(m, n, full, &mut memo, nvars)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_identities() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let lhs = x.add(&y).mul(&x.sub(&y));
        let rhs = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(lhs, rhs);
        assert!(x.sub(&x).is_zero());
    }

    #[test]
    fn det_two_by_two() {
        let a = Poly::var(4, 0);
        let b = Poly::var(4, 1);
        let c = Poly::var(4, 2);
        let d = Poly::var(4, 3);
        let m = vec![vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]];
        assert_eq!(poly_det(&m), a.mul(&d).sub(&b.mul(&c)));
    }

    #[test]
    fn det_triangular_is_diagonal_product() {
        let n = 4;
        let nv = n;
        let m: Vec<Vec<Poly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if j > i {
                            Poly::int(nv, ((i + j) % 3) as i64)
                        } else if i == j {
                            Poly::var(nv, i)
                        } else {
                            Poly::zero(nv)
                        }
                    })
                    .collect()
            })
            .collect();
        let mut expect = Poly::int(nv, 1);
        for i in 0..n {
            expect = expect.mul(&Poly::var(nv, i));
        }
        assert_eq!(poly_det(&m), expect);
    }
}
