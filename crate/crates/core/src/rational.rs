//! Exact rational values and their text encoding.
//!
//! Values are encoded as `"p/q"` strings (always with a denominator) in CSV and
//! JSON output; [`parse_fraction`] also accepts a bare integer.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational in lowest terms with a positive denominator.
pub type ExactRational = BigRational;

pub fn int(n: impl Into<BigInt>) -> ExactRational {
    ExactRational::from_integer(n.into())
}

pub fn frac(num: i64, den: i64) -> ExactRational {
    ExactRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> ExactRational {
    ExactRational::zero()
}

pub fn one() -> ExactRational {
    ExactRational::one()
}

/// `p/q` form, denominator always written.
pub fn to_fraction_string(r: &ExactRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_fraction(s: &str) -> Result<ExactRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed rational '{s}'"));
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in '{s}'")));
    }
    Ok(ExactRational::new(num, den))
}

/// Lossy conversion used by the floating-point series layer.
pub fn to_f64(r: &ExactRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Serde adapter writing a rational as a `"p/q"` string.
pub mod serde_fraction {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &ExactRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&to_fraction_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<ExactRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_fraction(&s).map_err(serde::de::Error::custom)
    }
}

/// Same as [`serde_fraction`] for sequences.
pub mod serde_fraction_vec {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[ExactRational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&to_fraction_string(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<ExactRational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter().map(|s| parse_fraction(s).map_err(serde::de::Error::custom)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fraction_text() {
        assert_eq!(to_fraction_string(&frac(-3, 12)), "-1/4");
        assert_eq!(to_fraction_string(&int(92)), "92/1");
        assert_eq!(parse_fraction("6/-4").unwrap(), frac(-3, 2));
        assert_eq!(parse_fraction(" 7 ").unwrap(), int(7));
        assert!(parse_fraction("1/0").is_err());
        assert!(parse_fraction("a/2").is_err());
        assert!(parse_fraction("").is_err());
    }

    #[test]
    fn huge_to_f64() {
        let big = ExactRational::new(BigInt::from(10).pow(400), BigInt::from(10).pow(399));
        assert!((to_f64(&big) - 10.0).abs() < 1e-12);
    }
}
