//! Exact rationals and their canonical `"num/den"` text form.

use alloc::format;
use alloc::string::{String, ToString};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Error;

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num/den`, reduced. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Canonical text: lowest terms, positive denominator, always with a slash.
pub fn to_text(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"num/den"` or a bare integer.
pub fn parse(s: &str) -> Result<Rational, Error> {
    let bad = || Error::BadRational(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => BigInt::from_str(s).map(Rational::from_integer).map_err(|_| bad()),
    }
}

pub fn floor_u64(r: &Rational) -> Option<u64> {
    if r.is_negative() {
        return None;
    }
    r.floor().to_integer().to_u64()
}

/// Common denominator of a list of nonnegative rationals, and the scaled
/// integer numerators. Fails if any scaled value does not fit in `u128`.
pub fn scale_to_integers(values: &[Rational]) -> Result<(BigInt, alloc::vec::Vec<u128>), Error> {
    let mut lcm = BigInt::one();
    for v in values {
        lcm = lcm.lcm(v.denom());
    }
    let mut out = alloc::vec::Vec::with_capacity(values.len());
    for v in values {
        if v.is_negative() {
            return Err(Error::InvalidWeights("negative weight".into()));
        }
        let scaled = v.numer() * (&lcm / v.denom());
        out.push(scaled.to_u128().ok_or(Error::Overflow)?);
    }
    Ok((lcm, out))
}
