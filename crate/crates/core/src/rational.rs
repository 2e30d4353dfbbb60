//! Exact rationals and their textual form.

use std::fmt;

use num::{BigInt, BigRational, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `p`, `p/q` or a terminating decimal such as `0.25`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, decimals)) = s.split_once('.') {
        if decimals.is_empty() || !decimals.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.trim_start().starts_with('-');
        let whole: BigInt = match whole {
            "" | "-" | "+" => BigInt::zero(),
            w => w.parse().map_err(|_| bad())?,
        };
        let digits: BigInt = decimals.parse().map_err(|_| bad())?;
        let scale = num::pow(BigInt::from(10), decimals.len());
        let frac_part = Rational::new(digits, scale);
        let whole = Rational::from_integer(whole);
        return Ok(if negative {
            whole - frac_part
        } else {
            whole + frac_part
        });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// Display adaptor that always renders `num/den`, including `0/1` and `3/1`.
pub struct Exact<'a>(pub &'a Rational);

impl fmt::Display for Exact<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

pub fn format_rational(q: &Rational) -> String {
    Exact(q).to_string()
}

/// Least integer `≥ q`.
pub fn ceil_int(q: &Rational) -> BigInt {
    q.ceil().to_integer()
}
