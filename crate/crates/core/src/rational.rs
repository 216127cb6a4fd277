//! Exact rationals and their `"p/q"` text form.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational with a positive, coprime denominator.
pub type Rational = num_rational::Ratio<i128>;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n as i128)
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n as i128, d as i128)
}

/// Parses `"p/q"` or a bare integer. Decimals and exponents are rejected.
pub fn parse(s: &str) -> Result<Rational> {
    let bad = || Error::BadRational(s.to_string());
    let t = s.trim();
    let parse_int = |x: &str| -> Result<i128> {
        let x = x.trim();
        let digits = x.strip_prefix(['-', '+']).unwrap_or(x);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        x.parse::<i128>().map_err(|_| bad())
    };
    match t.split_once('/') {
        Some((p, q)) => {
            let p = parse_int(p)?;
            let q = parse_int(q)?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(parse_int(t)?)),
    }
}

/// Canonical `"p/q"` form; integers are written with denominator 1.
pub fn format(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> i128 {
    xs.into_iter().fold(1i128, |acc, x| acc.lcm(x.denom()))
}

/// Representative of `x` modulo 1 in `[0, 1)`.
pub fn fract_mod1(x: &Rational) -> Rational {
    x - x.floor()
}

/// Representative of `x` modulo 1 in `(-1/2, 1/2]`.
pub fn centered_mod1(x: &Rational) -> Rational {
    let half = Rational::new(1, 2);
    let mut y = fract_mod1(x);
    if y > half {
        y -= Rational::from_integer(1);
    }
    y
}

pub(crate) fn to_i64(x: i128) -> i64 {
    i64::try_from(x).expect("scaled lattice coordinate does not fit in i64")
}

pub(crate) fn is_positive(x: &Rational) -> bool {
    x.is_positive() && !x.is_zero()
}

/// Serde adapter writing a rational as `"p/q"`.
pub mod serde_pq {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}
