//! Arbitrary-precision rationals and the handful of helpers the rest of the
//! crate leans on.

use alloc::string::String;
use core::fmt::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

/// `n / d` as a rational. Panics if `d == 0`.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn big(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

pub fn floor(x: &Rational) -> BigInt {
    x.numer().div_floor(x.denom())
}

pub fn ceil(x: &Rational) -> BigInt {
    -((-x.numer()).div_floor(x.denom()))
}

pub fn is_integral(x: &Rational) -> bool {
    x.denom().is_one()
}

/// Converts an integral rational to `i64`, if it fits.
pub fn to_i64(x: &Rational) -> Option<i64> {
    if !is_integral(x) {
        return None;
    }
    i64::try_from(x.numer()).ok()
}

/// Renders `x` as `n` or `n/d`.
pub fn fmt_rational(x: &Rational) -> String {
    let mut s = String::new();
    if x.denom().is_one() {
        let _ = write!(s, "{}", x.numer());
    } else {
        let _ = write!(s, "{}/{}", x.numer(), x.denom());
    }
    s
}

/// Parses `n`, `-n` or `n/d`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => text.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

pub fn sign(x: &Rational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}
