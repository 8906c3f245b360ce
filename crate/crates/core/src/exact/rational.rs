use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ExactError;

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `"n"` or `"n/d"` with an optional sign.
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let err = |msg: &str| ExactError::Parse { pos: 0, msg: format!("{msg}: {s:?}") };
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err("bad numerator"))?;
    let d: BigInt = d.parse().map_err(|_| err("bad denominator"))?;
    if d.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(BigRational::new(n, d))
}

fn scaled(x: &Rational, digits: u32) -> Rational {
    x * BigRational::from_integer(BigInt::from(10).pow(digits))
}

fn render(n: &BigInt, digits: u32) -> String {
    let neg = n.is_negative();
    let s = n.abs().to_string();
    let d = digits as usize;
    let body = if d == 0 {
        s
    } else if s.len() <= d {
        format!("0.{}{}", "0".repeat(d - s.len()), s)
    } else {
        format!("{}.{}", &s[..s.len() - d], &s[s.len() - d..])
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Largest decimal with `digits` fractional digits that is `<= x`.
pub fn floor_decimal(x: &Rational, digits: u32) -> String {
    let y = scaled(x, digits);
    render(&y.numer().div_floor(y.denom()), digits)
}

/// Smallest decimal with `digits` fractional digits that is `>= x`.
pub fn ceil_decimal(x: &Rational, digits: u32) -> String {
    let y = scaled(x, digits);
    let (q, r) = y.numer().div_mod_floor(y.denom());
    let q = if r.is_zero() { q } else { q + BigInt::one() };
    render(&q, digits)
}

/// Serde adapter storing a rational as the string `"n/d"`.
pub mod rational_str {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{parse_rational, Rational};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}
