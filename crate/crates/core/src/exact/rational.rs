//! Arbitrary-precision rationals.
//!
//! The numerator/denominator plumbing is `num_rational::BigRational`; this
//! module adds the handful of helpers the rest of the crate leans on.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = num_rational::BigRational;

/// `n/d` as a reduced rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Positive part `[x]_+`.
pub fn pos(x: i64) -> i64 {
    x.max(0)
}

/// Sign with the convention `sgn(0) = +1`.
pub fn sgn(x: i64) -> i64 {
    if x < 0 {
        -1
    } else {
        1
    }
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub fn lcm_i64(a: i64, b: i64) -> i64 {
    a.lcm(&b)
}

/// Renders `a` or `a/b`.
pub fn fmt_rat(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `a` or `a/b`.
pub fn parse_rat(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            if b.is_zero() {
                None
            } else {
                Some(Rational::new(a, b))
            }
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

pub fn to_i64(r: &Rational) -> Option<i64> {
    if r.denom().is_one() {
        r.numer().to_i64()
    } else {
        None
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_on_construction() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
    }

    #[test]
    fn round_trip_text() {
        for r in [rat(1, 2), rat(-7, 3), int(5), int(0)] {
            assert_eq!(parse_rat(&fmt_rat(&r)).unwrap(), r);
        }
        assert!(parse_rat("1/0").is_none());
    }

    #[test]
    fn sign_convention() {
        assert_eq!(sgn(0), 1);
        assert_eq!(sgn(-3), -1);
        assert_eq!(pos(-2), 0);
        assert_eq!(pos(2), 2);
    }
}
