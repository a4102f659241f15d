//! Arbitrary-precision rationals and their text encoding.
//!
//! Every scalar in the crate (weights, intersection numbers, divisor
//! coefficients, decomposition coefficients) is a [`Rational`]. The type is
//! `num_rational::BigRational`, which keeps values in lowest terms with a
//! positive denominator after every operation.
//!
//! The text form is `"p/q"`, or `"p"` when `q = 1`, with an optional leading
//! `-`. [`fmt_q`] and [`parse_q`] are the only encode/decode routines used by
//! the CLI.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::ParseError;

pub type Rational = num_rational::BigRational;

/// Shorthand constructor: `q(3, 7)` is 3/7. Panics on a zero denominator.
pub fn q(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Integer as a rational.
pub fn qi(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Canonical `"p/q"` encoding.
pub fn fmt_q(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Parse `"p/q"` or `"p"` (optional leading `-`, surrounding whitespace ignored).
pub fn parse_q(text: &str) -> Result<Rational, ParseError> {
    let t = text.trim();
    let bad = || ParseError::Rational(text.to_string());
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let valid_int = |s: &str, allow_sign: bool| {
        let digits = if allow_sign {
            s.strip_prefix('-').unwrap_or(s)
        } else {
            s
        };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid_int(num, true) || !valid_int(den, false) {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Parse a comma-separated list of rationals.
pub fn parse_q_list(text: &str) -> Result<Vec<Rational>, ParseError> {
    text.split(',').map(parse_q).collect()
}

pub fn fmt_q_list(values: &[Rational]) -> Vec<String> {
    values.iter().map(fmt_q).collect()
}

/// `floor(value)` as an i64. Panics if the result does not fit.
pub fn floor_i64(value: &Rational) -> i64 {
    let f = value.floor().to_integer();
    i64::try_from(f).expect("floor does not fit in i64")
}

/// Least common multiple of the denominators of `values` (1 for an empty slice).
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub fn is_negative(value: &Rational) -> bool {
    value.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn encodes_integers_without_slash() {
        assert_eq!(fmt_q(&q(6, 3)), "2");
        assert_eq!(fmt_q(&q(-3, 7)), "-3/7");
        assert_eq!(fmt_q(&q(3, -7)), "-3/7");
        assert_eq!(fmt_q(&zero()), "0");
    }

    #[test]
    fn parses_both_forms() {
        assert_eq!(parse_q("3/7").unwrap(), q(3, 7));
        assert_eq!(parse_q("-1").unwrap(), qi(-1));
        assert_eq!(parse_q(" 4/6 ").unwrap(), q(2, 3));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("abc").is_err());
        assert!(parse_q("1/-2").is_err());
        assert!(parse_q("").is_err());
        assert!(parse_q("0.5").is_err());
    }

    proptest! {
        #[test]
        fn canonical_form_ignores_common_factor(p in -10_000i64..10_000, d in 1i64..10_000, k in 1i64..500) {
            let a = q(p, d);
            let b = q(p * k, d * k);
            prop_assert_eq!(a.numer(), b.numer());
            prop_assert_eq!(a.denom(), b.denom());
            prop_assert!(b.denom() > &BigInt::zero());
        }

        #[test]
        fn text_roundtrip(p in any::<i64>(), d in 1i64..i64::MAX) {
            let v = q(p, d);
            prop_assert_eq!(parse_q(&fmt_q(&v)).unwrap(), v);
        }
    }
}
