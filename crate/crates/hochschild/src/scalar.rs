//! Exact rational scalars.
//!
//! Every computation in this crate runs over the rationals with arbitrary
//! precision; there are no floats and no tolerances anywhere. `Rat` is kept
//! in canonical form (reduced, positive denominator) by `num-rational`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

/// Exact rational scalar. Canonical form is maintained on every operation.
pub type Rat = BigRational;

/// Error for rational parsing: empty input, non-integer parts, or a zero
/// denominator.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {input:?}: {reason}")]
pub struct RatParseError {
    pub input: String,
    pub reason: String,
}

/// Builds a rational from an integer pair. Panics on zero denominator; use
/// [`parse_rat`] for fallible input paths.
pub fn rat(num: i64, den: i64) -> Rat {
    assert!(den != 0, "zero denominator");
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integer rational.
pub fn rint(num: i64) -> Rat {
    Rat::from_integer(BigInt::from(num))
}

/// Parses `"p"` or `"p/q"` with optional sign into a canonical rational.
///
/// Whitespace around the number and around `/` is accepted. A zero
/// denominator is rejected.
pub fn parse_rat(s: &str) -> Result<Rat, RatParseError> {
    let err = |reason: &str| RatParseError {
        input: s.to_string(),
        reason: reason.to_string(),
    };
    let body = s.trim();
    if body.is_empty() {
        return Err(err("empty string"));
    }
    let mut parts = body.splitn(2, '/');
    let num_part = parts.next().unwrap().trim();
    let num = BigInt::from_str(num_part).map_err(|_| err("numerator is not an integer"))?;
    match parts.next() {
        None => Ok(Rat::from_integer(num)),
        Some(den_part) => {
            let den = BigInt::from_str(den_part.trim())
                .map_err(|_| err("denominator is not an integer"))?;
            if den.is_zero() {
                return Err(err("zero denominator"));
            }
            Ok(Rat::new(num, den))
        }
    }
}

/// Formats a rational canonically: `"p"` for integers, `"p/q"` with `q > 1`
/// otherwise. The sign always sits on the numerator.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// True if `r` is a (possibly negative) integer.
pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Exact factorial as a rational, for symbol-level coefficient arithmetic.
pub fn factorial(n: usize) -> Rat {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rat::from_integer(acc)
}

/// `(-1)^k` with `k` given as a signed parity-carrying exponent.
pub fn neg_one_pow(k: i64) -> Rat {
    if k.rem_euclid(2) == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

/// Sum of a slice of rationals.
pub fn rat_sum<'a, I: IntoIterator<Item = &'a Rat>>(items: I) -> Rat {
    let mut acc = Rat::zero();
    for x in items {
        acc += x;
    }
    acc
}

/// Absolute value helper (`num_traits::Signed` re-exposed for callers that
/// only import this module).
pub fn rat_abs(r: &Rat) -> Rat {
    r.abs()
}
