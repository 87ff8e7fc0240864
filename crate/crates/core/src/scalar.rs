//! Exact rational scalars.
//!
//! Every linear-algebra routine in this crate works over arbitrary-precision
//! rationals, so subspace equality and rank are decidable exactly. The type
//! is a plain alias for [`num::BigRational`]; the helpers below cover the
//! small amount of formatting and parsing the rest of the crate needs.

use num::{BigInt, BigRational, One, Zero};
use std::str::FromStr;

pub type Scalar = BigRational;

/// Integer scalar.
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational scalar `p/q`. Panics on `q == 0`.
pub fn ratio(p: i64, q: i64) -> Scalar {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise, with the
/// denominator always positive. This is the form used in JSON reports.
pub fn fmt_scalar(s: &Scalar) -> String {
    if s.denom().is_one() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

/// Parse the canonical text form back into a scalar. Rejects zero
/// denominators instead of panicking.
pub fn parse_scalar(text: &str) -> Option<Scalar> {
    let text = text.trim();
    match text.split_once('/') {
        None => BigInt::from_str(text).ok().map(BigRational::from_integer),
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).ok()?;
            let q = BigInt::from_str(q.trim()).ok()?;
            if q.is_zero() {
                None
            } else {
                Some(BigRational::new(p, q))
            }
        }
    }
}

/// Dense zero vector.
pub fn zero_vec(len: usize) -> Vec<Scalar> {
    vec![Scalar::zero(); len]
}

/// Standard basis vector `e_i` of the given length.
pub fn unit_vec(len: usize, i: usize) -> Vec<Scalar> {
    let mut v = zero_vec(len);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(|c| c.is_zero())
}

pub fn add_vec(u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

pub fn sub_vec(u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

pub fn scale_vec(c: &Scalar, v: &[Scalar]) -> Vec<Scalar> {
    v.iter().map(|a| c * a).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_integers_without_denominator() {
        assert_eq!(fmt_scalar(&int(7)), "7");
        assert_eq!(fmt_scalar(&int(-3)), "-3");
        assert_eq!(fmt_scalar(&ratio(1, 2)), "1/2");
        assert_eq!(fmt_scalar(&ratio(2, -4)), "-1/2");
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["0", "5", "-5", "1/2", "-7/3"] {
            let v = parse_scalar(s).unwrap();
            assert_eq!(fmt_scalar(&v), s);
        }
        assert!(parse_scalar("1/0").is_none());
        assert!(parse_scalar("x").is_none());
    }
}
