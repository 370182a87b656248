//! Exact rational scalars.
//!
//! Every computation in the crate runs over ℚ with arbitrary-precision
//! numerators and denominators. The textual form is `p` or `p/q`
//! (e.g. `-3/7`), which is what all file formats and reports use.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::str::FromStr;
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {input:?} as a rational number")]
pub struct ParseRationalError {
    pub input: String,
}

/// Parses `p` or `p/q`. Surrounding whitespace is ignored; a zero denominator
/// is rejected.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError { input: s.to_string() };
    let t = s.trim();
    match t.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| err())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(p, q))
        }
        None => BigInt::from_str(t).map(Rational::from_integer).map_err(|_| err()),
    }
}

pub fn render_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Bit size of numerator plus denominator; used to rank pivot candidates.
pub fn bit_size(q: &Rational) -> u64 {
    q.numer().bits() + q.denom().bits()
}

/// Serde adapters that keep rationals in their `p/q` string form.
pub mod serde_str {
    use super::{parse_rational, render_rational, Rational};
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&render_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rational(&raw).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rational("5").unwrap(), int(5));
        assert_eq!(parse_rational(" -3/7 ").unwrap(), frac(-3, 7));
        assert_eq!(parse_rational("4/-6").unwrap(), frac(-2, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn canonical_form() {
        let q = frac(6, -4);
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
        assert_eq!(render_rational(&q), "-3/2");
        assert_eq!(render_rational(&int(7)), "7");
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(p in -10_000i64..10_000, q in 1i64..10_000) {
            let x = frac(p, q);
            prop_assert_eq!(parse_rational(&render_rational(&x)).unwrap(), x);
        }

        #[test]
        fn addition_is_exact(a in -500i64..500, b in 1i64..500, c in -500i64..500, d in 1i64..500) {
            let s = frac(a, b) + frac(c, d);
            prop_assert_eq!(s, frac(a * d + c * b, b * d));
        }
    }
}
