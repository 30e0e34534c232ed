//! Canonical text form for exact rationals: `"numerator/denominator"`,
//! fully reduced, positive denominator, no redundant signs or zeros.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("expected \"numerator/denominator\", got {0:?}")]
    Shape(String),
    #[error("malformed integer {0:?}")]
    Digits(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("{0:?} is not in canonical reduced form")]
    NotCanonical(String),
}

pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn parse_digits(s: &str, allow_sign: bool) -> Result<BigInt, ParseRationalError> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) if allow_sign => (true, rest),
        _ => (false, s),
    };
    let ok = !body.is_empty()
        && body.bytes().all(|b| b.is_ascii_digit())
        && (body == "0" || !body.starts_with('0'))
        && !(neg && body == "0");
    if !ok {
        return Err(ParseRationalError::Digits(s.to_string()));
    }
    let magnitude: BigInt = body
        .parse()
        .map_err(|_| ParseRationalError::Digits(s.to_string()))?;
    Ok(if neg { -magnitude } else { magnitude })
}

/// Parses the canonical form only, so that `format_rational(parse_rational(s)?) == s`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let (num, den) = s
        .split_once('/')
        .ok_or_else(|| ParseRationalError::Shape(s.to_string()))?;
    let num = parse_digits(num, true)?;
    let den = parse_digits(den, false)?;
    if den.is_zero() {
        return Err(ParseRationalError::ZeroDenominator);
    }
    if !num.gcd(&den).is_one() && !(num.is_zero() && den.is_one()) {
        return Err(ParseRationalError::NotCanonical(s.to_string()));
    }
    Ok(Rational::new_raw(num, den))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A bit count `b` with `|q| < 2^b`.
pub(crate) fn magnitude_bits(q: &Rational) -> u64 {
    let ceil = q.abs().ceil().to_integer();
    ceil.bits()
}
