//! Parsing and formatting of exact rationals ("a", "-a/b").

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::{Error, Result};

pub fn parse_bigint(s: &str) -> Result<BigInt> {
    s.trim()
        .parse::<BigInt>()
        .map_err(|_| Error::Parse(format!("invalid integer `{s}`")))
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    match t.split_once('/') {
        None => Ok(BigRational::from_integer(parse_bigint(t)?)),
        Some((num, den)) => {
            let n = parse_bigint(num)?;
            let d = parse_bigint(den)?;
            if d.is_zero() {
                return Err(Error::Parse(format!(
                    "invalid rational `{s}`: zero denominator"
                )));
            }
            Ok(BigRational::new(n, d))
        }
    }
}

pub fn format_rational(q: &BigRational) -> String {
    if q.denom() == &BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn sign(q: &BigRational) -> i8 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "7", "-3", "3/4", "-22/7"] {
            let q = parse_rational(s).unwrap();
            assert_eq!(format_rational(&q), s);
        }
    }

    #[test]
    fn reduces_to_canonical_form() {
        let q = parse_rational("6/4").unwrap();
        assert_eq!(format_rational(&q), "3/2");
        let q = parse_rational("2/-4").unwrap();
        assert_eq!(format_rational(&q), "-1/2");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(parse_rational("1/0").is_err());
    }
}
