use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Ring, RingElement, RingSpec};
use crate::rat;
use crate::Result;

/// The field of rationals, reduced-fraction canonical form.
pub struct RationalField;

static SPEC: RingSpec = RingSpec::Rationals;

impl RationalField {
    fn lift<'a>(&self, x: &'a RingElement) -> &'a BigRational {
        x.as_rat().expect("rational element")
    }
}

impl Ring for RationalField {
    fn spec(&self) -> &RingSpec {
        &SPEC
    }

    fn zero(&self) -> RingElement {
        RingElement::Rat(BigRational::zero())
    }

    fn one(&self) -> RingElement {
        RingElement::Rat(BigRational::one())
    }

    fn embed_int(&self, n: &BigInt) -> RingElement {
        RingElement::Rat(BigRational::from_integer(n.clone()))
    }

    fn contains(&self, x: &RingElement) -> bool {
        matches!(x, RingElement::Rat(_))
    }

    fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        RingElement::Rat(self.lift(a) + self.lift(b))
    }

    fn neg(&self, a: &RingElement) -> RingElement {
        RingElement::Rat(-self.lift(a))
    }

    fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        RingElement::Rat(self.lift(a) * self.lift(b))
    }

    fn inverse(&self, a: &RingElement) -> Option<RingElement> {
        let q = self.lift(a);
        (!q.is_zero()).then(|| RingElement::Rat(q.recip()))
    }

    fn is_zero(&self, a: &RingElement) -> bool {
        self.lift(a).is_zero()
    }

    fn is_field(&self) -> bool {
        true
    }

    fn parse(&self, text: &str) -> Result<RingElement> {
        rat::parse_rational(text).map(RingElement::Rat)
    }

    fn format(&self, a: &RingElement) -> String {
        rat::format_rational(self.lift(a))
    }
}
