//! Helpers for arbitrary-precision rationals.
//!
//! The crate uses [`num_rational::BigRational`] throughout: reduced
//! fractions with a positive denominator. This module adds construction,
//! parsing and square-detection helpers shared by the rest of the crate.
//! The wire format for rationals is the string `"num/den"`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Shorthand for `n/d` as a `BigRational`.
///
/// # Panics
///
/// Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for the integer `n` as a `BigRational`.
pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `"num/den"` or a bare integer string.
pub fn parse_rat(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::BadCurveDescription(format!("cannot parse rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
    }
}

/// Formats a rational in the `"num/den"` wire format, denominator always
/// present and positive: `-357/16`, `7/1`.
pub fn format_rat(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Integer square root test: `Some(r)` with `r ≥ 0` and `r² = n`.
pub fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Rational square root test: `Some(r)` with `r ≥ 0` and `r² = q`.
///
/// A reduced fraction is a square iff its numerator and denominator are.
pub fn rat_sqrt_exact(q: &BigRational) -> Option<BigRational> {
    let n = int_sqrt_exact(q.numer())?;
    let d = int_sqrt_exact(q.denom())?;
    Some(BigRational::new(n, d))
}

/// `q^k` for a signed exponent; errors on `0^k` with `k < 0`.
pub fn rat_pow(q: &BigRational, k: i64) -> Result<BigRational> {
    if k == 0 {
        return Ok(BigRational::one());
    }
    if q.is_zero() && k < 0 {
        return Err(Error::DivisionByZero);
    }
    let mut base = if k < 0 { q.recip() } else { q.clone() };
    let mut e = k.unsigned_abs();
    let mut acc = BigRational::one();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            let b = base.clone();
            base *= b;
        }
    }
    Ok(acc)
}

/// Height of a rational: `max(|num|, den)`.
pub fn height(q: &BigRational) -> BigInt {
    q.numer().abs().max(q.denom().clone())
}

/// Least common multiple of the denominators of a coefficient list.
pub fn denominator_lcm<'a, I: IntoIterator<Item = &'a BigRational>>(coeffs: I) -> BigInt {
    let mut l = BigInt::one();
    for c in coeffs {
        l = l.lcm(c.denom());
    }
    l
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        let q = parse_rat("-357/16").unwrap();
        assert_eq!(q, rat(-357, 16));
        assert_eq!(format_rat(&q), "-357/16");
        assert_eq!(parse_rat("7").unwrap(), rat_int(7));
        assert_eq!(format_rat(&rat_int(7)), "7/1");
        // non-normalized input is reduced on parse
        assert_eq!(parse_rat("4/8").unwrap(), rat(1, 2));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rat("a/b").is_err());
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("").is_err());
    }

    #[test]
    fn sqrt_detection() {
        assert_eq!(rat_sqrt_exact(&rat(4, 9)), Some(rat(2, 3)));
        assert_eq!(rat_sqrt_exact(&rat(2, 1)), None);
        assert_eq!(rat_sqrt_exact(&rat(-4, 9)), None);
        assert_eq!(rat_sqrt_exact(&rat(0, 1)), Some(rat_int(0)));
    }

    #[test]
    fn pow_signed() {
        assert_eq!(rat_pow(&rat(2, 3), 3).unwrap(), rat(8, 27));
        assert_eq!(rat_pow(&rat(2, 3), -2).unwrap(), rat(9, 4));
        assert_eq!(rat_pow(&rat_int(0), 5).unwrap(), rat_int(0));
        assert!(rat_pow(&rat_int(0), -1).is_err());
    }
}
