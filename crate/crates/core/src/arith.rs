//! Small helpers around `BigRational`: exact parsing, `p/q` formatting and
//! serde adapters.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serializer};

use crate::error::{Error, Result};

/// Parses `"7"`, `"-3/2"` or `"1.5"` into an exact rational. Decimals are read
/// digit by digit, so no binary floating point is involved.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Input(format!("not a rational number: {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        if !int_digits.chars().all(|c| c.is_ascii_digit())
            || !frac.chars().all(|c| c.is_ascii_digit())
            || (int_digits.is_empty() && frac.is_empty())
        {
            return Err(bad());
        }
        let digits = format!("{int_digits}{frac}");
        let mut num: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().map_err(|_| bad())?
        };
        if neg {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(BigRational::new(num, den));
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

/// Formats as `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// `p`-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    debug_assert!(!n.is_zero());
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

pub(crate) mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

pub(crate) mod serde_rational_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&format_rational(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Integers serialized as decimal strings (JSON numbers lose precision past 2^53).
pub(crate) mod serde_bigint_str {
    use super::*;

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals_exactly() {
        assert_eq!(parse_rational("3/2").unwrap(), rat_frac(3, 2));
        assert_eq!(parse_rational("1.5").unwrap(), rat_frac(3, 2));
        assert_eq!(parse_rational("-0.25").unwrap(), rat_frac(-1, 4));
        assert_eq!(parse_rational("7").unwrap(), rat(7));
        assert_eq!(parse_rational(" 1 ").unwrap(), rat(1));
        assert_eq!(parse_rational(".5").unwrap(), rat_frac(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.2.3").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn formats_lowest_terms() {
        assert_eq!(format_rational(&rat_frac(6, 4)), "3/2");
        assert_eq!(format_rational(&rat_frac(-8, 4)), "-2");
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(&BigInt::from(-48), &BigInt::from(2)), 4);
        assert_eq!(valuation(&BigInt::from(7), &BigInt::from(2)), 0);
    }
}
