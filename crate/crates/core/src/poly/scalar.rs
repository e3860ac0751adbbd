//! Helpers for the exact scalar type used throughout the crate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::PolyError;

pub type Scalar = BigRational;

pub fn rat(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact conversion of a finite double (every double is a dyadic rational).
pub fn from_f64(v: f64) -> Scalar {
    BigRational::from_float(v).unwrap_or_else(BigRational::zero)
}

pub fn to_f64(v: &Scalar) -> f64 {
    v.to_f64().unwrap_or_else(|| {
        // Ratio<BigInt>::to_f64 only fails on overflow.
        if v.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

pub fn sign(v: &Scalar) -> i8 {
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// Parses `"p/q"`, integers and decimal literals (optionally with exponent) exactly.
pub fn parse_scalar(text: &str) -> Result<Scalar, PolyError> {
    let s = text.trim();
    let err = || PolyError::ParseScalar(text.to_string());
    if s.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i64 = s[pos + 1..].parse().map_err(|_| err())?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(err());
    }
    let all: String = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(all.parse::<BigInt>().map_err(|_| err())?);
    let scale = exponent - frac_part.len() as i64;
    if scale.unsigned_abs() > 4096 {
        return Err(err());
    }
    let ten = BigInt::from(10u32);
    let factor = BigRational::from_integer(num_traits::pow(ten, scale.unsigned_abs() as usize));
    if scale >= 0 {
        value *= factor;
    } else {
        value /= factor;
    }
    Ok(if negative { -value } else { value })
}

/// Canonical text form: integers as `"n"`, everything else as `"p/q"`.
pub fn format_scalar(v: &Scalar) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// The rational with the smallest denominator in the closed interval `[lo, hi]`.
pub fn simplest_between(lo: &Scalar, hi: &Scalar) -> Scalar {
    debug_assert!(lo <= hi);
    if lo.is_positive() {
        simplest_positive(lo, hi)
    } else if hi.is_negative() {
        -simplest_positive(&-hi, &-lo)
    } else {
        Scalar::zero()
    }
}

fn simplest_positive(lo: &Scalar, hi: &Scalar) -> Scalar {
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    let next = &fl + Scalar::one();
    if &next <= hi {
        return next;
    }
    // lo and hi share the integer part; recurse on the reciprocals of the fractional parts.
    let inner = simplest_positive(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Scalar>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Serializes an optional exact value in the `format_scalar` text form.
pub fn serialize_opt<S: serde::Serializer>(v: &Option<Scalar>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_some(&format_scalar(v)),
        None => s.serialize_none(),
    }
}

pub fn serialize<S: serde::Serializer>(v: &Scalar, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_scalar(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_scalar("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_scalar("-1.5e-3").unwrap(), rat(-3, 2000));
        assert_eq!(parse_scalar("7/21").unwrap(), rat(1, 3));
        assert_eq!(parse_scalar("12").unwrap(), int(12));
        assert_eq!(
            parse_scalar("0.5394212632").unwrap(),
            rat(5394212632, 10_000_000_000)
        );
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("abc").is_err());
        assert!(parse_scalar(".").is_err());
    }

    #[test]
    fn simplest_rational() {
        assert_eq!(simplest_between(&rat(3, 10), &rat(4, 10)), rat(1, 3));
        assert_eq!(simplest_between(&rat(-4, 10), &rat(-3, 10)), rat(-1, 3));
        assert_eq!(simplest_between(&rat(-1, 10), &rat(3, 10)), int(0));
        let third = rat(1, 3);
        let eps = from_f64(1e-12);
        assert_eq!(simplest_between(&(&third - &eps), &(&third + &eps)), third);
    }

    #[test]
    fn format_round_trips() {
        for v in [rat(-3, 7), int(5), rat(1, 1 << 40)] {
            assert_eq!(parse_scalar(&format_scalar(&v)).unwrap(), v);
        }
    }
}
