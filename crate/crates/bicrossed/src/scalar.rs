//! Exact rational scalars.
//!
//! Every algebraic identity in this crate is checked over arbitrary-precision
//! rationals, so structure constants, actions and cocycles are stored as
//! [`Q`] values. Floating-point enters only in the numerical group-level
//! modules, via [`q_to_f64`].

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational scalar, always kept in reduced canonical form.
pub type Q = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("empty scalar literal")]
    Empty,
    #[error("invalid scalar literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Builds the rational n/d.
///
/// Panics if `d == 0`; use [`parse_ratio`] for fallible construction.
pub fn q(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds an integer rational.
pub fn qi(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `p`, `p/q` or a plain decimal such as `-0.25` into a rational.
pub fn parse_ratio(text: &str) -> Result<Q, ScalarError> {
    let t = text.trim();
    if t.is_empty() {
        return Err(ScalarError::Empty);
    }
    if let Some((num, den)) = t.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| ScalarError::Invalid(text.to_string()))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| ScalarError::Invalid(text.to_string()))?;
        if d.is_zero() {
            return Err(ScalarError::ZeroDenominator(text.to_string()));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int_part, frac_part)) = t.split_once('.') {
        let negative = int_part.trim_start().starts_with('-');
        let int_digits = if int_part == "-" || int_part.is_empty() {
            "0".to_string()
        } else {
            int_part.trim_start_matches('-').to_string()
        };
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ScalarError::Invalid(text.to_string()));
        }
        let ip: BigInt = int_digits
            .parse()
            .map_err(|_| ScalarError::Invalid(text.to_string()))?;
        let fp: BigInt = frac_part
            .parse()
            .map_err(|_| ScalarError::Invalid(text.to_string()))?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let mut value = BigRational::new(ip * &scale + fp, scale);
        if negative {
            value = -value;
        }
        return Ok(value);
    }
    let n: BigInt = t
        .parse()
        .map_err(|_| ScalarError::Invalid(text.to_string()))?;
    Ok(BigRational::from_integer(n))
}

/// Formats a rational as `p` or `p/q`, matching the JSON wire format.
pub fn fmt_ratio(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Converts to the nearest double.
pub fn q_to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        let n = x.numer().to_f64().unwrap_or(f64::NAN);
        let d = x.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// True if the value is zero.
pub fn is_zero(x: &Q) -> bool {
    x.is_zero()
}

/// Absolute value.
pub fn q_abs(x: &Q) -> Q {
    x.abs()
}
