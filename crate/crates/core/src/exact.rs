//! Small exact-arithmetic helpers shared across modules: conversions, integer
//! square roots of rationals, and the `p/q` text form used in reports.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

pub fn to_i64(x: &BigInt, what: &str) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::input(format!("{what} = {x} does not fit in a 64-bit integer")))
}

/// `floor(sqrt(x))` for a non-negative rational.
pub fn isqrt_floor(x: &BigRational) -> BigInt {
    debug_assert!(!x.is_negative());
    x.floor().to_integer().sqrt()
}

/// Integers `y` with `(y - center)^2 <= radius_sq`, in increasing order.
pub fn integers_within(center: &BigRational, radius_sq: &BigRational) -> Vec<BigInt> {
    if radius_sq.is_negative() {
        return Vec::new();
    }
    let slack = rat_int(&(isqrt_floor(radius_sq) + 1u32));
    let lo = (center - &slack).floor().to_integer();
    let hi = (center + &slack).ceil().to_integer();
    let mut out = Vec::new();
    let mut y = lo;
    while y <= hi {
        let d = rat_int(&y) - center;
        if &(&d * &d) <= radius_sq {
            out.push(y.clone());
        }
        y += 1;
    }
    out
}

/// Exact square root of a non-negative integer, if it is a perfect square.
pub fn exact_sqrt(x: &BigInt) -> Option<BigInt> {
    if x.is_negative() {
        return None;
    }
    let r = x.sqrt();
    (&r * &r == *x).then_some(r)
}

/// `p/q` in lowest terms, or just `p` for integers.
pub fn fmt_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse `p/q` or `p`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::input(format!("`{s}` is not a rational of the form p/q"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::input(format!("`{s}` has zero denominator")));
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(rat_int(&s.parse::<BigInt>().map_err(|_| bad())?)),
    }
}

/// Truncated decimal expansion with `digits` fractional digits, suffixed by
/// `…` when the expansion does not terminate within them.
pub fn fmt_decimal(x: &BigRational, digits: usize) -> String {
    let neg = x.is_negative();
    let a = x.abs();
    let (int_part, mut rem) = a.numer().div_rem(a.denom());
    let mut s = String::new();
    if neg {
        s.push('-');
    }
    s.push_str(&int_part.to_string());
    if rem.is_zero() {
        return s;
    }
    s.push('.');
    for _ in 0..digits {
        rem *= 10;
        let (d, r) = rem.div_rem(a.denom());
        s.push_str(&d.to_string());
        rem = r;
        if rem.is_zero() {
            return s;
        }
    }
    s.push('…');
    s
}

/// Serde adapter storing a [`BigRational`] as its `p/q` string.
pub mod rational_string {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigRational, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::String(s) => parse_rational(&s).map_err(serde::de::Error::custom),
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(|i| rat(i, 1))
                .ok_or_else(|| serde::de::Error::custom("rational must be an integer or a p/q string")),
            _ => Err(serde::de::Error::custom("rational must be an integer or a p/q string")),
        }
    }
}

/// Same as [`rational_string`] for vectors.
pub mod rational_vec {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&fmt_rational(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigRational>, D::Error> {
        #[derive(Deserialize)]
        struct W(#[serde(with = "super::rational_string")] BigRational);
        let v: Vec<W> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|w| w.0).collect())
    }
}
