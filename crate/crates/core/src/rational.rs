//! Exact rational scalars and their textual form.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed};

use crate::error::{Error, Result};

/// Arbitrary-precision fraction, always normalized to lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn ratio(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Rational {
    Rational::new(numer.into(), denom.into())
}

pub fn integer(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

pub fn from_biguint(n: BigUint) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders as `num/den`, always with an explicit denominator.
pub fn format_fraction(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `num/den` (or a bare integer). Rejects anything not already in
/// lowest terms with a positive denominator, so that parsing is the exact
/// inverse of [`format_fraction`].
pub fn parse_fraction(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidArgument(format!("malformed fraction {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.trim().parse().map_err(|_| bad())?;
    let den: BigInt = den.trim().parse().map_err(|_| bad())?;
    if !den.is_positive() {
        return Err(bad());
    }
    let q = Rational::new_raw(num.clone(), den.clone());
    let reduced = Rational::new(num, den);
    if q.numer() != reduced.numer() || q.denom() != reduced.denom() {
        return Err(Error::InvalidArgument(format!("fraction {s:?} is not in lowest terms")));
    }
    Ok(reduced)
}

/// Serde adapter writing a [`Rational`] in the `num/den` form.
pub fn serialize_fraction<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_fraction(q))
}

pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, i| acc * i)
}
