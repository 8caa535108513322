use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

/// A value in one of the supported rings. Canonical forms are unique:
/// reduced fractions, residues in `[0, m)`, cyclotomic coefficient vectors
/// of length `deg Phi_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingElement {
    Int(BigInt),
    Rat(BigRational),
    Res(BigUint),
    Cyc(Vec<BigRational>),
}

impl RingElement {
    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            RingElement::Int(n) => Some(n),
            _ => None,
        }
    }

    pub fn as_rat(&self) -> Option<&BigRational> {
        match self {
            RingElement::Rat(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_res(&self) -> Option<&BigUint> {
        match self {
            RingElement::Res(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_cyc(&self) -> Option<&[BigRational]> {
        match self {
            RingElement::Cyc(c) => Some(c),
            _ => None,
        }
    }
}
