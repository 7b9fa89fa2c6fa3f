//! Exact rational helpers.
//!
//! Every probability, mass and belief value in this crate is a
//! [`Rational`]: an arbitrary-precision fraction kept in lowest terms with
//! a positive denominator. Nothing is ever rounded except when rendering
//! a decimal approximation for display.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den`, reduced.
///
/// Panics when `den == 0`; callers pass literal denominators.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn in_unit_interval(r: &Rational) -> bool {
    !r.is_negative() && *r <= Rational::one()
}

/// Parses `"p/q"`, an integer, or a terminating decimal such as `"0.125"`.
///
/// Decimal strings are converted exactly, so `"0.1"` is `1/10`. Exponent
/// notation is rejected.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not an exact rational: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, digits)) = s.split_once('.') {
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if digits.is_empty() && whole_digits.is_empty() {
            return Err(bad());
        }
        if !whole_digits.chars().all(|c| c.is_ascii_digit())
            || !digits.chars().all(|c| c.is_ascii_digit())
        {
            return Err(bad());
        }
        let mut all = String::with_capacity(whole_digits.len() + digits.len());
        all.push_str(whole_digits);
        all.push_str(digits);
        if all.is_empty() {
            return Err(bad());
        }
        let mut numer: BigInt = all.parse().map_err(|_| bad())?;
        if negative {
            numer = -numer;
        }
        let denom = num::pow(BigInt::from(10), digits.len());
        return Ok(Rational::new(numer, denom));
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// Canonical text form: `"p/q"`, or the bare integer when `q == 1`.
pub fn render(r: &Rational) -> String {
    r.to_string()
}

/// Decimal approximation with `digits` fractional digits, rounded half
/// away from zero.
pub fn to_decimal(r: &Rational, digits: usize) -> String {
    let scale = num::pow(BigInt::from(10), digits);
    let scaled = r.abs() * Rational::from_integer(scale.clone());
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let rounded = (scaled + half).floor().to_integer();
    let int_part = &rounded / &scale;
    let frac_part = &rounded % &scale;
    let sign = if r.is_negative() && !rounded.is_zero() {
        "-"
    } else {
        ""
    };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!(
            "{sign}{int_part}.{:0>width$}",
            frac_part.to_string(),
            width = digits
        )
    }
}
