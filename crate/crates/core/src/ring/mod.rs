//! Coefficient rings with exact arithmetic and a decidable unit predicate.
//!
//! Every ring lives behind the [`Ring`] trait. The supported families are
//! registered by name in [`RING_FAMILIES`]; a descriptor string such as
//! `Z`, `Q`, `Z/6`, `F_5` or `Q(zeta_8)` selects one at runtime.

mod cyclotomic;
mod element;
mod integers;
mod modular;
mod rationals;

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

pub use cyclotomic::{cyclotomic_arith, cyclotomic_polynomial, CycOp, CyclotomicField};
pub use element::RingElement;
pub use integers::IntegerRing;
pub use modular::{ModularRing, PrimeField};
pub use rationals::RationalField;

/// Canonical description of a supported coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingSpec {
    Integers,
    Rationals,
    /// Z/m with m >= 2 kept in factored form.
    Modular {
        modulus: BigUint,
        factors: Vec<(BigUint, u32)>,
    },
    PrimeField {
        p: BigUint,
    },
    Cyclotomic {
        order: u32,
    },
}

impl RingSpec {
    pub fn modular(m: BigUint) -> Result<Self> {
        if m < BigUint::from(2u32) {
            return Err(Error::ModulusTooSmall(m.to_string()));
        }
        let factors = factorize(&m);
        Ok(RingSpec::Modular {
            modulus: m,
            factors,
        })
    }

    pub fn prime_field(p: BigUint) -> Result<Self> {
        if !is_prime(&p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        Ok(RingSpec::PrimeField { p })
    }

    pub fn cyclotomic(order: u32) -> Result<Self> {
        if order == 0 {
            return Err(Error::BadCyclotomicOrder);
        }
        Ok(RingSpec::Cyclotomic { order })
    }

    /// The descriptor string this spec parses back from.
    pub fn descriptor(&self) -> String {
        match self {
            RingSpec::Integers => "Z".to_string(),
            RingSpec::Rationals => "Q".to_string(),
            RingSpec::Modular { modulus, .. } => format!("Z/{modulus}"),
            RingSpec::PrimeField { p } => format!("F_{p}"),
            RingSpec::Cyclotomic { order } => format!("Q(zeta_{order})"),
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(
            self,
            RingSpec::Rationals | RingSpec::PrimeField { .. } | RingSpec::Cyclotomic { .. }
        )
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

impl Serialize for RingSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.descriptor())
    }
}

impl<'de> Deserialize<'de> for RingSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_ring_spec(&text).map_err(serde::de::Error::custom)
    }
}

/// A commutative ring with 1, exact arithmetic, canonical element forms and
/// a decidable unit predicate. Implementations are immutable and shareable.
pub trait Ring: Send + Sync {
    fn spec(&self) -> &RingSpec;
    fn zero(&self) -> RingElement;
    fn one(&self) -> RingElement;
    fn embed_int(&self, n: &BigInt) -> RingElement;
    /// True iff `x` is a canonical element of this ring.
    fn contains(&self, x: &RingElement) -> bool;
    fn add(&self, a: &RingElement, b: &RingElement) -> RingElement;
    fn neg(&self, a: &RingElement) -> RingElement;
    fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement;
    /// The multiplicative inverse, when `a` is a unit. This is the witness
    /// behind `is_unit`.
    fn inverse(&self, a: &RingElement) -> Option<RingElement>;
    fn is_zero(&self, a: &RingElement) -> bool;
    fn is_field(&self) -> bool;
    fn parse(&self, text: &str) -> Result<RingElement>;
    fn format(&self, a: &RingElement) -> String;
}

/// Derived operations shared by every ring.
pub trait RingOps: Ring {
    fn sub(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.add(a, &self.neg(b))
    }

    fn int(&self, v: i64) -> RingElement {
        self.embed_int(&BigInt::from(v))
    }

    fn is_unit(&self, a: &RingElement) -> bool {
        self.inverse(a).is_some()
    }

    fn is_one(&self, a: &RingElement) -> bool {
        self.is_zero(&self.sub(a, &self.one()))
    }

    fn sum<'a, I: IntoIterator<Item = &'a RingElement>>(&self, items: I) -> RingElement {
        let mut acc = self.zero();
        for x in items {
            acc = self.add(&acc, x);
        }
        acc
    }

    fn product<'a, I: IntoIterator<Item = &'a RingElement>>(&self, items: I) -> RingElement {
        let mut acc = self.one();
        for x in items {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// `a^k` for integer `k`; negative exponents require `a` to be a unit.
    fn pow(&self, a: &RingElement, k: i64) -> Result<RingElement> {
        let base = if k < 0 {
            self.inverse(a).ok_or(Error::NotInvertible)?
        } else {
            a.clone()
        };
        let mut e = k.unsigned_abs();
        let mut acc = self.one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            sq = self.mul(&sq, &sq);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Scale by an integer, e.g. NBC reduction coefficients.
    fn scale_int(&self, c: &BigInt, a: &RingElement) -> RingElement {
        self.mul(&self.embed_int(c), a)
    }
}

impl<R: Ring + ?Sized> RingOps for R {}

/// One registered coefficient-ring family: how to recognize its descriptor
/// and how to instantiate the arithmetic behind it.
pub struct RingFamily {
    pub name: &'static str,
    parse: fn(&str) -> Option<Result<RingSpec>>,
    build: fn(&RingSpec) -> Option<Arc<dyn Ring>>,
}

pub static RING_FAMILIES: &[RingFamily] = &[
    RingFamily {
        name: "Z",
        parse: |t| (t == "Z").then_some(Ok(RingSpec::Integers)),
        build: |s| matches!(s, RingSpec::Integers).then(|| Arc::new(IntegerRing) as Arc<dyn Ring>),
    },
    RingFamily {
        name: "Q",
        parse: |t| (t == "Q").then_some(Ok(RingSpec::Rationals)),
        build: |s| {
            matches!(s, RingSpec::Rationals).then(|| Arc::new(RationalField) as Arc<dyn Ring>)
        },
    },
    RingFamily {
        name: "Z/m",
        parse: |t| {
            let rest = t.strip_prefix("Z/")?;
            Some(
                rest.parse::<BigUint>()
                    .map_err(|_| Error::Parse(format!("invalid modulus `{rest}`")))
                    .and_then(RingSpec::modular),
            )
        },
        build: |s| match s {
            RingSpec::Modular { .. } => Some(Arc::new(ModularRing::new(s.clone()))),
            _ => None,
        },
    },
    RingFamily {
        name: "F_p",
        parse: |t| {
            let rest = t.strip_prefix("F_")?;
            Some(
                rest.parse::<BigUint>()
                    .map_err(|_| Error::Parse(format!("invalid prime `{rest}`")))
                    .and_then(RingSpec::prime_field),
            )
        },
        build: |s| match s {
            RingSpec::PrimeField { .. } => Some(Arc::new(PrimeField::new(s.clone()))),
            _ => None,
        },
    },
    RingFamily {
        name: "Q(zeta_n)",
        parse: |t| {
            let rest = t.strip_prefix("Q(zeta_")?.strip_suffix(')')?;
            Some(
                rest.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("invalid cyclotomic order `{rest}`")))
                    .and_then(RingSpec::cyclotomic),
            )
        },
        build: |s| match s {
            RingSpec::Cyclotomic { order } => Some(Arc::new(CyclotomicField::new(*order))),
            _ => None,
        },
    },
];

/// Parse a ring descriptor: `Z | Q | Z/<m> | F_<p> | Q(zeta_<n>)`.
pub fn parse_ring_spec(text: &str) -> Result<RingSpec> {
    let t = text.trim();
    for family in RING_FAMILIES {
        if let Some(res) = (family.parse)(t) {
            return res;
        }
    }
    Err(Error::UnknownRing(text.to_string()))
}

/// Instantiate the arithmetic for a spec.
pub fn build_ring(spec: &RingSpec) -> Arc<dyn Ring> {
    for family in RING_FAMILIES {
        if let Some(ring) = (family.build)(spec) {
            return ring;
        }
    }
    unreachable!("every RingSpec variant is registered")
}

pub fn ring_from_descriptor(text: &str) -> Result<Arc<dyn Ring>> {
    Ok(build_ring(&parse_ring_spec(text)?))
}

/// Decides membership in R^x. The inverse witness is available through
/// [`Ring::inverse`].
pub fn is_unit(ring: &dyn Ring, x: &RingElement) -> Result<bool> {
    if !ring.contains(x) {
        return Err(Error::RingMismatch(ring.spec().descriptor()));
    }
    Ok(ring.inverse(x).is_some())
}

fn is_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    let mut d = two.clone();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            return false;
        }
        d += BigUint::one();
    }
    true
}

fn factorize(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut n = n.clone();
    let mut factors = Vec::new();
    let mut d = BigUint::from(2u32);
    while &d * &d <= n {
        let mut e = 0u32;
        while (&n % &d).is_zero() {
            n /= &d;
            e += 1;
        }
        if e > 0 {
            factors.push((d.clone(), e));
        }
        d += BigUint::one();
    }
    if n > BigUint::one() {
        factors.push((n, 1));
    }
    factors
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_grammar() {
        assert_eq!(parse_ring_spec("Z").unwrap(), RingSpec::Integers);
        assert_eq!(parse_ring_spec("Q").unwrap(), RingSpec::Rationals);
        let z6 = parse_ring_spec("Z/6").unwrap();
        match &z6 {
            RingSpec::Modular { modulus, factors } => {
                assert_eq!(modulus, &BigUint::from(6u32));
                assert_eq!(
                    factors,
                    &vec![(BigUint::from(2u32), 1), (BigUint::from(3u32), 1)]
                );
            }
            _ => panic!("expected Z/6"),
        }
        assert!(parse_ring_spec("F_4").is_err());
        assert!(parse_ring_spec("Z/1").is_err());
        assert!(parse_ring_spec("Q(zeta_0)").is_err());
        assert!(parse_ring_spec("nonsense").is_err());
        for d in ["Z", "Q", "Z/12", "F_7", "Q(zeta_8)"] {
            assert_eq!(parse_ring_spec(d).unwrap().descriptor(), d);
        }
    }

    #[test]
    fn unit_predicate_examples() {
        let z = ring_from_descriptor("Z").unwrap();
        assert!(is_unit(&*z, &z.int(1)).unwrap());
        assert!(is_unit(&*z, &z.int(-1)).unwrap());
        assert!(!is_unit(&*z, &z.int(2)).unwrap());

        let z6 = ring_from_descriptor("Z/6").unwrap();
        assert!(is_unit(&*z6, &z6.int(5)).unwrap());
        assert!(!is_unit(&*z6, &z6.int(3)).unwrap());

        let f5 = ring_from_descriptor("F_5").unwrap();
        assert!(!is_unit(&*f5, &f5.zero()).unwrap());
        assert!(is_unit(&*f5, &f5.int(4)).unwrap());
    }

    #[test]
    fn inverse_is_a_witness() {
        for d in ["Z", "Q", "Z/35", "F_13", "Q(zeta_5)"] {
            let ring = ring_from_descriptor(d).unwrap();
            for v in -6i64..=6 {
                let x = ring.int(v);
                if let Some(inv) = ring.inverse(&x) {
                    assert!(ring.is_one(&ring.mul(&x, &inv)), "{d}: {v}");
                }
            }
        }
    }

    #[test]
    fn ring_axioms_on_seeded_triples() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for d in ["Z", "Q", "Z/12", "F_7", "Q(zeta_6)"] {
            let ring = ring_from_descriptor(d).unwrap();
            for _ in 0..40 {
                let x = ring.int(rng.gen_range(-50..50));
                let y = ring.int(rng.gen_range(-50..50));
                let z = ring.int(rng.gen_range(-50..50));
                assert_eq!(ring.add(&x, &y), ring.add(&y, &x));
                assert_eq!(ring.mul(&x, &y), ring.mul(&y, &x));
                assert_eq!(
                    ring.add(&ring.add(&x, &y), &z),
                    ring.add(&x, &ring.add(&y, &z))
                );
                assert_eq!(
                    ring.mul(&ring.mul(&x, &y), &z),
                    ring.mul(&x, &ring.mul(&y, &z))
                );
                assert_eq!(
                    ring.mul(&x, &ring.add(&y, &z)),
                    ring.add(&ring.mul(&x, &y), &ring.mul(&x, &z))
                );
                assert!(ring.is_zero(&ring.add(&x, &ring.neg(&x))));
            }
        }
    }
}
