use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Ring, RingElement, RingSpec};
use crate::Result;

fn canonical_residue(n: &BigInt, m: &BigUint) -> BigUint {
    let m_int = BigInt::from_biguint(Sign::Plus, m.clone());
    let r = n.mod_floor(&m_int);
    r.to_biguint().expect("mod_floor is nonnegative")
}

fn residue_add(a: &BigUint, b: &BigUint, m: &BigUint) -> BigUint {
    (a + b) % m
}

fn residue_neg(a: &BigUint, m: &BigUint) -> BigUint {
    if a.is_zero() {
        BigUint::zero()
    } else {
        m - a
    }
}

fn residue_mul(a: &BigUint, b: &BigUint, m: &BigUint) -> BigUint {
    (a * b) % m
}

/// Extended Euclid on lifts; Some(x) with a*x = 1 (mod m) iff gcd(a, m) = 1.
fn residue_inverse(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    let a = BigInt::from_biguint(Sign::Plus, a.clone());
    let m_int = BigInt::from_biguint(Sign::Plus, m.clone());
    let ext = a.extended_gcd(&m_int);
    if ext.gcd.is_one() {
        Some(canonical_residue(&ext.x, m))
    } else {
        None
    }
}

macro_rules! residue_ring {
    ($name:ident, $is_field:expr, $doc:literal) => {
        #[doc = $doc]
        pub struct $name {
            spec: RingSpec,
            modulus: BigUint,
        }

        impl $name {
            pub fn new(spec: RingSpec) -> Self {
                let modulus = match &spec {
                    RingSpec::Modular { modulus, .. } => modulus.clone(),
                    RingSpec::PrimeField { p } => p.clone(),
                    other => panic!("not a residue ring spec: {other}"),
                };
                Self { spec, modulus }
            }

            pub fn modulus(&self) -> &BigUint {
                &self.modulus
            }

            fn lift<'a>(&self, x: &'a RingElement) -> &'a BigUint {
                x.as_res().expect("residue element")
            }
        }

        impl Ring for $name {
            fn spec(&self) -> &RingSpec {
                &self.spec
            }

            fn zero(&self) -> RingElement {
                RingElement::Res(BigUint::zero())
            }

            fn one(&self) -> RingElement {
                RingElement::Res(BigUint::one() % &self.modulus)
            }

            fn embed_int(&self, n: &BigInt) -> RingElement {
                RingElement::Res(canonical_residue(n, &self.modulus))
            }

            fn contains(&self, x: &RingElement) -> bool {
                match x {
                    RingElement::Res(r) => r < &self.modulus,
                    _ => false,
                }
            }

            fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
                RingElement::Res(residue_add(self.lift(a), self.lift(b), &self.modulus))
            }

            fn neg(&self, a: &RingElement) -> RingElement {
                RingElement::Res(residue_neg(self.lift(a), &self.modulus))
            }

            fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
                RingElement::Res(residue_mul(self.lift(a), self.lift(b), &self.modulus))
            }

            fn inverse(&self, a: &RingElement) -> Option<RingElement> {
                residue_inverse(self.lift(a), &self.modulus).map(RingElement::Res)
            }

            fn is_zero(&self, a: &RingElement) -> bool {
                self.lift(a).is_zero()
            }

            fn is_field(&self) -> bool {
                $is_field
            }

            fn parse(&self, text: &str) -> Result<RingElement> {
                let n = crate::rat::parse_bigint(text)?;
                Ok(self.embed_int(&n))
            }

            fn format(&self, a: &RingElement) -> String {
                self.lift(a).to_string()
            }
        }
    };
}

residue_ring!(
    ModularRing,
    false,
    "Z/m for arbitrary m >= 2; units are residues coprime to m."
);
residue_ring!(
    PrimeField,
    true,
    "The prime field F_p; every nonzero residue is a unit."
);
