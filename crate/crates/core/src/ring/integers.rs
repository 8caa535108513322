use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Ring, RingElement, RingSpec};
use crate::Result;

/// The ring of integers; arbitrary precision, so overflow cannot occur.
pub struct IntegerRing;

static SPEC: RingSpec = RingSpec::Integers;

impl IntegerRing {
    fn lift<'a>(&self, x: &'a RingElement) -> &'a BigInt {
        x.as_int().expect("integer element")
    }
}

impl Ring for IntegerRing {
    fn spec(&self) -> &RingSpec {
        &SPEC
    }

    fn zero(&self) -> RingElement {
        RingElement::Int(BigInt::zero())
    }

    fn one(&self) -> RingElement {
        RingElement::Int(BigInt::one())
    }

    fn embed_int(&self, n: &BigInt) -> RingElement {
        RingElement::Int(n.clone())
    }

    fn contains(&self, x: &RingElement) -> bool {
        matches!(x, RingElement::Int(_))
    }

    fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        RingElement::Int(self.lift(a) + self.lift(b))
    }

    fn neg(&self, a: &RingElement) -> RingElement {
        RingElement::Int(-self.lift(a))
    }

    fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        RingElement::Int(self.lift(a) * self.lift(b))
    }

    fn inverse(&self, a: &RingElement) -> Option<RingElement> {
        let n = self.lift(a);
        (n.abs().is_one()).then(|| RingElement::Int(n.clone()))
    }

    fn is_zero(&self, a: &RingElement) -> bool {
        self.lift(a).is_zero()
    }

    fn is_field(&self) -> bool {
        false
    }

    fn parse(&self, text: &str) -> Result<RingElement> {
        crate::rat::parse_bigint(text).map(RingElement::Int)
    }

    fn format(&self, a: &RingElement) -> String {
        self.lift(a).to_string()
    }
}

impl std::fmt::Debug for IntegerRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("Z")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingOps;

    #[test]
    fn units_are_plus_minus_one() {
        let r = IntegerRing;
        assert!(r.is_unit(&r.int(1)));
        assert!(r.is_unit(&r.int(-1)));
        assert!(!r.is_unit(&r.int(0)));
        assert!(!r.is_unit(&r.int(2)));
        assert!(r.parse("1/2").is_err());
    }
}
