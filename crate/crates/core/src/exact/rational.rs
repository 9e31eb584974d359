//! Exact rational scalars.
//!
//! Scalars are `num_rational::BigRational`, which already keeps every value in
//! lowest terms with a positive denominator. This module only adds the textual
//! `"p/q"` convention used by every file format of the crate.

use std::cmp::Ordering;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `"p/q"`, `"p"`, or `"-p/q"`; rejects decimals and zero denominators.
pub fn parse(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::parse("rational", format!("expected \"p/q\", got {text:?}"));
    if t.is_empty() || t.contains('.') {
        return Err(bad());
    }
    match t.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::parse("rational", format!("zero denominator in {text:?}")));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(t).map_err(|_| bad())?)),
    }
}

pub fn to_string(q: &Rational) -> String {
    q.to_string()
}

/// Sign as -1, 0 or +1.
pub fn signum(q: &Rational) -> i32 {
    match q.cmp(&Rational::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// Exact `k`-th root of a rational number, when it is rational.
pub fn exact_root(q: &Rational, k: u32) -> Option<Rational> {
    if k == 0 {
        return None;
    }
    if q.is_negative() {
        if k % 2 == 0 {
            return None;
        }
        return exact_root(&-q, k).map(|r| -r);
    }
    let n = q.numer().nth_root(k);
    let d = q.denom().nth_root(k);
    let r = Rational::new(n, d);
    if num_traits::pow(r.clone(), k as usize) == *q {
        Some(r)
    } else {
        None
    }
}

/// Serde adapter: a single rational as a `"p/q"` string.
pub mod serde_str {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter: a vector of rationals as a list of `"p/q"` strings.
pub mod serde_str_vec {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for q in v {
            seq.serialize_element(&q.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints_canonical_text() {
        assert_eq!(to_string(&parse("-3/7").unwrap()), "-3/7");
        assert_eq!(to_string(&parse("10/2").unwrap()), "5");
        assert_eq!(to_string(&parse("3/-6").unwrap()), "-1/2");
        assert_eq!(to_string(&parse("0/9").unwrap()), "0");
        assert!(parse("1.5").is_err());
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn exact_roots() {
        assert_eq!(exact_root(&int(4), 2), Some(int(2)));
        assert_eq!(exact_root(&frac(-8, 27), 3), Some(frac(-2, 3)));
        assert_eq!(exact_root(&int(2), 2), None);
        assert_eq!(exact_root(&int(-4), 2), None);
    }
}
