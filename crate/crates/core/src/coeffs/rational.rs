//! String encoding of rationals: `"p/q"`, or `"p"` when `q = 1`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serializer};

use crate::error::{Error, Result};
use crate::Rational;

pub fn parse(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim()).map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
}

pub fn format(r: &Rational) -> String {
    r.to_string()
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn floor(r: &Rational) -> i64 {
    r.floor().to_integer().to_i64().expect("floor fits in i64")
}

pub fn ceil(r: &Rational) -> i64 {
    r.ceil().to_integer().to_i64().expect("ceil fits in i64")
}

/// Fractional part `{r} = r - floor(r)`, in `[0, 1)`.
pub fn fract(r: &Rational) -> Rational {
    r - r.floor()
}

/// Whether `r * m` is an integer.
pub fn denominator_divides(r: &Rational, m: u64) -> bool {
    (r * int(m as i64)).is_integer()
}

pub fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}

pub fn is_zero(r: &Rational) -> bool {
    r.is_zero()
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format(r))
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
    let s = String::deserialize(d)?;
    parse(&s).map_err(serde::de::Error::custom)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_strings() {
        for s in ["0", "1", "-1/2", "5/3", "12"] {
            assert_eq!(format(&parse(s).unwrap()), s);
        }
        assert_eq!(format(&parse("4/2").unwrap()), "2");
        assert!(parse("1/0").is_err());
        assert!(parse("abc").is_err());
    }

    #[test]
    fn floor_ceil_fract() {
        assert_eq!(floor(&frac(-1, 2)), -1);
        assert_eq!(ceil(&frac(-1, 2)), 0);
        assert_eq!(fract(&frac(-1, 2)), frac(1, 2));
        assert_eq!(fract(&int(-2)), int(0));
    }
}
