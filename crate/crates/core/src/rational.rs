//! Exact rational helpers on top of `num_rational::BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::str::FromStr;

pub type Rational = BigRational;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("cannot parse `{0}` as an exact rational")]
pub struct ParseRationalError(pub String);

/// `n/d` as a reduced rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn half() -> Rational {
    rat(1, 2)
}

/// Fractional part, always in `[0,1)`.
pub fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

pub fn ceil_to_usize(x: &Rational) -> usize {
    x.ceil().to_integer().to_usize().unwrap_or(usize::MAX)
}

/// Parses `p/q`, an integer, or a terminating decimal such as `0.825`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let t = s.trim();
    if t.is_empty() {
        return Err(err());
    }
    if let Some((p, q)) = t.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| err())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| err())?;
        if q.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((ip, fp)) = t.split_once('.') {
        let neg = ip.starts_with('-');
        let ip_digits = ip.trim_start_matches(['-', '+']);
        if fp.is_empty() && ip_digits.is_empty() {
            return Err(err());
        }
        if !ip_digits.chars().all(|c| c.is_ascii_digit()) || !fp.chars().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let digits = format!("{}{}", ip_digits, fp);
        let num = if digits.is_empty() { BigInt::zero() } else { BigInt::from_str(&digits).map_err(|_| err())? };
        let den = num_traits::pow(BigInt::from(10), fp.len());
        let r = Rational::new(num, den);
        return Ok(if neg { -r } else { r });
    }
    let n = BigInt::from_str(t).map_err(|_| err())?;
    Ok(Rational::from_integer(n))
}

/// Exact fraction string: `3/4`, `2`, `-1/3`.
pub fn fmt_rational(x: &Rational) -> String {
    x.to_string()
}

/// Decimal approximation rounded to `places` digits, for display columns only.
pub fn approx_decimal(x: &Rational, places: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), places);
    let scaled = x * Rational::from_integer(scale.clone());
    // round half away from zero
    let r = scaled.round().to_integer();
    let neg = r.is_negative();
    let a = r.abs();
    let (ip, fp) = a.div_rem(&scale);
    let s = if places == 0 {
        ip.to_string()
    } else {
        format!("{}.{:0>width$}", ip, fp.to_string(), width = places)
    };
    if neg { format!("-{s}") } else { s }
}

/// Nearest `f64`, for display and sampling parameters only.
pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Least common multiple of all denominators, as an `i64`. `None` on overflow.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> Option<i64> {
    let mut l = BigInt::one();
    for x in xs {
        l = l.lcm(x.denom());
    }
    l.to_i64()
}

/// `x * scale` as an exact `i64`; `None` if not integral or too large.
pub fn to_units(x: &Rational, scale: i64) -> Option<i64> {
    let y = x * Rational::from_integer(BigInt::from(scale));
    if !y.is_integer() {
        return None;
    }
    y.to_integer().to_i64()
}

pub fn from_units(u: i64, scale: i64) -> Rational {
    rat(u, scale)
}
