//! Helpers around `BigRational`: text form "p/q", checked division and
//! integer powers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(p: i64, q: i64) -> Result<Rational> {
    if q == 0 {
        return Err(Error::ZeroDivision(format!(" in {p}/0")));
    }
    Ok(Rational::new(BigInt::from(p), BigInt::from(q)))
}

/// Parses "p", "p/q" or "-p/q". The result is normalized.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (p, q) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (t, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(Error::ZeroDivision(format!(" in {s:?}")));
    }
    Ok(Rational::new(p, q))
}

/// "p/q", or "p" when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn checked_div(a: &Rational, b: &Rational) -> Result<Rational> {
    if b.is_zero() {
        return Err(Error::ZeroDivision(String::new()));
    }
    Ok(a / b)
}

/// `a^e` for any integer `e`; negative powers of zero are an error.
pub fn pow(a: &Rational, e: i64) -> Result<Rational> {
    let mag = u32::try_from(e.unsigned_abs())
        .map_err(|_| Error::ExponentTooLarge(e.to_string()))?;
    let p = num_traits::pow::Pow::pow(a, mag);
    if e < 0 {
        checked_div(&Rational::one(), &p)
    } else {
        Ok(p)
    }
}

pub fn pow_big(a: &Rational, e: &BigInt) -> Result<Rational> {
    let e = i64::try_from(e).map_err(|_| Error::ExponentTooLarge(e.to_string()))?;
    pow(a, e)
}

pub fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}

/// Random positive rational with numerator and denominator in `1..=max`.
pub fn random_positive<R: Rng + ?Sized>(rng: &mut R, max: i64) -> Rational {
    let p = rng.gen_range(1..=max);
    let q = rng.gen_range(1..=max);
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub mod serde_str {
    //! Serialize rationals as "p/q" strings.
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}
