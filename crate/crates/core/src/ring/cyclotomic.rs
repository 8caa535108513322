//! Q(zeta_n): polynomial arithmetic modulo the n-th cyclotomic polynomial.
//!
//! Elements are coefficient vectors of length deg Phi_n. Phi_n is obtained
//! once by exact integer division of x^n - 1 by the proper cyclotomic
//! factors; everything downstream is rational arithmetic in the quotient.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Ring, RingElement, RingSpec};
use crate::rat;
use crate::{Error, Result};

/// Integer polynomial, ascending coefficients, no trailing zeros.
fn trim(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.len() > 1 && p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
    p
}

/// Exact division of integer polynomials; the divisor must be monic and the
/// division must leave no remainder (both hold for cyclotomic factors).
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    assert!(
        den.last().map(|c| c.is_one()).unwrap_or(false),
        "monic divisor"
    );
    let mut rem: Vec<BigInt> = num.to_vec();
    let dn = den.len() - 1;
    if rem.len() <= dn {
        assert!(rem.iter().all(|c| c.is_zero()), "exact division");
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dn].clone();
        if c.is_zero() {
            continue;
        }
        quot[k] = c.clone();
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "exact division");
    trim(quot)
}

/// The n-th cyclotomic polynomial as ascending integer coefficients.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Phi_d for all proper divisors d of n.
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    let mut result = num;
    for d in 1..n {
        if n.is_multiple_of(d) {
            result = poly_div_exact(&result, &cyclotomic_polynomial(d));
        }
    }
    cache.lock().unwrap().insert(n, result.clone());
    result
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycOp {
    Add,
    Mul,
    Invert,
    Power,
}

pub struct CyclotomicField {
    spec: RingSpec,
    order: u32,
    /// Phi_n, monic, integer coefficients.
    modulus: Vec<BigInt>,
    degree: usize,
}

impl CyclotomicField {
    pub fn new(order: u32) -> Self {
        assert!(order >= 1);
        let modulus = cyclotomic_polynomial(order);
        let degree = modulus.len() - 1;
        CyclotomicField {
            spec: RingSpec::Cyclotomic { order },
            order,
            modulus,
            degree,
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// zeta_n as a canonical element.
    pub fn zeta(&self) -> RingElement {
        self.zeta_pow(1)
    }

    /// zeta_n^k for any integer k.
    pub fn zeta_pow(&self, k: i64) -> RingElement {
        let e = k.rem_euclid(self.order as i64) as usize;
        let mut raw = vec![BigRational::zero(); e + 1];
        raw[e] = BigRational::one();
        RingElement::Cyc(self.reduce(raw))
    }

    fn lift<'a>(&self, x: &'a RingElement) -> &'a [BigRational] {
        x.as_cyc().expect("cyclotomic element")
    }

    /// Reduce an arbitrary-length coefficient vector modulo Phi_n and pad to
    /// the canonical length.
    fn reduce(&self, mut p: Vec<BigRational>) -> Vec<BigRational> {
        for k in (self.degree..p.len()).rev() {
            let c = std::mem::replace(&mut p[k], BigRational::zero());
            if c.is_zero() {
                continue;
            }
            // x^k = x^(k-deg) * (x^deg - Phi_n) since Phi_n is monic.
            for j in 0..self.degree {
                let m = &self.modulus[j];
                if !m.is_zero() {
                    let delta = &c * BigRational::from_integer(m.clone());
                    p[k - self.degree + j] -= delta;
                }
            }
        }
        p.truncate(self.degree.max(1));
        p.resize(self.degree.max(1), BigRational::zero());
        p
    }

    /// Extended Euclid in Q[x] against Phi_n; Phi_n is irreducible over Q so
    /// every nonzero residue is invertible.
    fn invert_poly(&self, a: &[BigRational]) -> Option<Vec<BigRational>> {
        if a.iter().all(|c| c.is_zero()) {
            return None;
        }
        let modulus: Vec<BigRational> = self
            .modulus
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let (mut r0, mut r1) = (modulus, qtrim(a.to_vec()));
        let (mut s0, mut s1) = (vec![BigRational::zero()], vec![BigRational::one()]);
        while !is_qzero(&r1) {
            let (q, r) = qdivrem(&r0, &r1);
            let s = qsub(&s0, &qmul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 = gcd = nonzero constant; inverse of a is s0 / r0.
        debug_assert!(r0.len() == 1 && !r0[0].is_zero());
        let g = r0[0].clone();
        let inv: Vec<BigRational> = s0.into_iter().map(|c| c / &g).collect();
        Some(self.reduce(inv))
    }
}

fn qtrim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
    p
}

fn is_qzero(p: &[BigRational]) -> bool {
    p.iter().all(|c| c.is_zero())
}

fn qmul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    qtrim(out)
}

fn qsub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, ai) in a.iter().enumerate() {
        out[i] += ai;
    }
    for (i, bi) in b.iter().enumerate() {
        out[i] -= bi;
    }
    qtrim(out)
}

fn qdivrem(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let den = qtrim(den.to_vec());
    let lead = den.last().expect("nonzero divisor").clone();
    assert!(!lead.is_zero());
    let mut rem = num.to_vec();
    if rem.len() < den.len() {
        return (vec![BigRational::zero()], qtrim(rem));
    }
    let mut quot = vec![BigRational::zero(); rem.len() - den.len() + 1];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + den.len() - 1] / &lead;
        if c.is_zero() {
            continue;
        }
        quot[k] = c.clone();
        for (j, dj) in den.iter().enumerate() {
            let delta = &c * dj;
            rem[k + j] -= delta;
        }
    }
    (qtrim(quot), qtrim(rem))
}

impl Ring for CyclotomicField {
    fn spec(&self) -> &RingSpec {
        &self.spec
    }

    fn zero(&self) -> RingElement {
        RingElement::Cyc(vec![BigRational::zero(); self.degree.max(1)])
    }

    fn one(&self) -> RingElement {
        let mut v = vec![BigRational::zero(); self.degree.max(1)];
        v[0] = BigRational::one();
        RingElement::Cyc(self.reduce(v))
    }

    fn embed_int(&self, n: &BigInt) -> RingElement {
        let mut v = vec![BigRational::zero(); self.degree.max(1)];
        v[0] = BigRational::from_integer(n.clone());
        RingElement::Cyc(self.reduce(v))
    }

    fn contains(&self, x: &RingElement) -> bool {
        match x {
            RingElement::Cyc(c) => c.len() == self.degree.max(1),
            _ => false,
        }
    }

    fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let (a, b) = (self.lift(a), self.lift(b));
        RingElement::Cyc(a.iter().zip(b).map(|(x, y)| x + y).collect())
    }

    fn neg(&self, a: &RingElement) -> RingElement {
        RingElement::Cyc(self.lift(a).iter().map(|x| -x).collect())
    }

    fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let prod = qmul(self.lift(a), self.lift(b));
        RingElement::Cyc(self.reduce(prod))
    }

    fn inverse(&self, a: &RingElement) -> Option<RingElement> {
        self.invert_poly(self.lift(a)).map(RingElement::Cyc)
    }

    fn is_zero(&self, a: &RingElement) -> bool {
        self.lift(a).iter().all(|c| c.is_zero())
    }

    fn is_field(&self) -> bool {
        true
    }

    /// Accepts `zeta`, `zeta^k`, a rational constant, or a coefficient list
    /// `[c0,c1,...]`.
    fn parse(&self, text: &str) -> Result<RingElement> {
        let t = text.trim();
        if t == "zeta" {
            return Ok(self.zeta());
        }
        if let Some(exp) = t.strip_prefix("zeta^") {
            let k: i64 = exp
                .parse()
                .map_err(|_| Error::Parse(format!("invalid zeta power `{t}`")))?;
            return Ok(self.zeta_pow(k));
        }
        if let Some(inner) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let coeffs: Result<Vec<BigRational>> =
                inner.split(',').map(rat::parse_rational).collect();
            return Ok(RingElement::Cyc(self.reduce(coeffs?)));
        }
        let c = rat::parse_rational(t)?;
        let mut v = vec![BigRational::zero(); self.degree.max(1)];
        v[0] = c;
        Ok(RingElement::Cyc(self.reduce(v)))
    }

    fn format(&self, a: &RingElement) -> String {
        let c = self.lift(a);
        if c.iter().skip(1).all(|x| x.is_zero()) {
            rat::format_rational(&c[0])
        } else {
            let parts: Vec<String> = c.iter().map(rat::format_rational).collect();
            format!("[{}]", parts.join(","))
        }
    }
}

/// Direct entry point for arithmetic in Q(zeta_n): add, mul, invert, power.
/// `Power` takes the exponent as a second, integer argument.
pub fn cyclotomic_arith(n: u32, op: CycOp, args: &[RingElement]) -> Result<RingElement> {
    let field = CyclotomicField::new(n);
    let check = |x: &RingElement| -> Result<()> {
        if field.contains(x) {
            Ok(())
        } else {
            Err(Error::RingMismatch(field.spec().descriptor()))
        }
    };
    match op {
        CycOp::Add => {
            let [a, b] = args else {
                return Err(Error::Parse("add expects two operands".into()));
            };
            check(a)?;
            check(b)?;
            Ok(field.add(a, b))
        }
        CycOp::Mul => {
            let [a, b] = args else {
                return Err(Error::Parse("mul expects two operands".into()));
            };
            check(a)?;
            check(b)?;
            Ok(field.mul(a, b))
        }
        CycOp::Invert => {
            let [a] = args else {
                return Err(Error::Parse("invert expects one operand".into()));
            };
            check(a)?;
            field.inverse(a).ok_or(Error::NotInvertible)
        }
        CycOp::Power => {
            let [a, k] = args else {
                return Err(Error::Parse("power expects operand and exponent".into()));
            };
            check(a)?;
            let e = k
                .as_int()
                .ok_or_else(|| Error::Parse("power exponent must be an integer".into()))?;
            let e: i64 = e
                .try_into()
                .map_err(|_| Error::Parse("exponent out of range".into()))?;
            use crate::ring::RingOps;
            field.pow(a, e)
        }
    }
}
