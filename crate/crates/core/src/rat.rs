//! Exact rational scalars: thin helpers around `num_rational::BigRational`.
//!
//! All coordinates in this crate are arbitrary-precision fractions kept in
//! lowest terms (the `Ratio` constructor reduces). Text form is `p/q`, or just
//! `p` for integers, matching the class vector serialization.

use alloc::string::{String, ToString};
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::Error;

pub type Rat = num_rational::BigRational;

/// Integer as a rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Fraction from an integer pair. Panics on zero denominator; use
/// [`parse_rat`] for untrusted input.
pub fn frac(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Parse `p`, `p/q`, with optional surrounding whitespace. Rejects a zero
/// denominator instead of panicking.
pub fn parse_rat(text: &str) -> Result<Rat, Error> {
    let s = text.trim();
    let parse_int = |part: &str| -> Result<BigInt, Error> {
        BigInt::from_str(part.trim()).map_err(|_| Error::Parse {
            text: text.to_string(),
            msg: "not an integer or p/q fraction".to_string(),
        })
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let p = parse_int(p)?;
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(Error::ZeroDenominator { text: text.to_string() });
            }
            Ok(Rat::new(p, q))
        }
    }
}

/// Canonical text form: `p/q` in lowest terms, `p` when integral.
pub fn fmt_rat(r: &Rat) -> String {
    r.to_string()
}

/// True when the rational has no fractional part.
pub fn is_integer(r: &Rat) -> bool {
    r.is_integer()
}

/// Sign tests used by the positivity probes.
pub fn is_negative(r: &Rat) -> bool {
    r.is_negative()
}
