//! Binary floating-point numbers of arbitrary, explicitly tracked precision.
//!
//! Only what volume evaluation needs is here: exact construction from a
//! rational times a power of pi, and correctly rounded decimal rendering of
//! the stored binary value.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub const MIN_PRECISION_BITS: u32 = 64;

/// `mantissa * 2^exponent`, with `|mantissa| < 2^precision_bits`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigReal {
    mantissa: BigInt,
    exponent: i64,
    precision_bits: u32,
}

impl BigReal {
    /// Rounds `num / den * 2^exp2` to `precision_bits` significant bits.
    pub(crate) fn from_scaled(num: BigInt, den: BigInt, exp2: i64, precision_bits: u32) -> Self {
        debug_assert!(den.is_positive());
        if num.is_zero() {
            return Self {
                mantissa: BigInt::zero(),
                exponent: 0,
                precision_bits,
            };
        }
        let negative = num.is_negative();
        let num = num.abs();
        // Enough quotient bits that the final rounding dominates truncation.
        let want = i64::from(precision_bits) + 8;
        let have = num.bits() as i64 - den.bits() as i64;
        let shift = (want - have + 1).max(0);
        let quotient = (num << shift as usize) / &den;
        let excess = quotient.bits() as i64 - i64::from(precision_bits);
        let (mantissa, exponent) = if excess > 0 {
            (round_shift(&quotient, excess as u64), exp2 - shift + excess)
        } else {
            (quotient, exp2 - shift)
        };
        let mantissa = if negative { -mantissa } else { mantissa };
        Self::normalized(mantissa, exponent, precision_bits)
    }

    fn normalized(mantissa: BigInt, exponent: i64, precision_bits: u32) -> Self {
        // Rounding up can carry into one extra bit.
        if mantissa.bits() > u64::from(precision_bits) {
            let m = round_shift(&mantissa, 1);
            return Self {
                mantissa: m,
                exponent: exponent + 1,
                precision_bits,
            };
        }
        Self {
            mantissa,
            exponent,
            precision_bits,
        }
    }

    pub fn from_rational(q: &Rational, precision_bits: u32) -> Result<Self> {
        check_precision(precision_bits)?;
        Ok(Self::from_scaled(
            q.numer().clone(),
            q.denom().clone(),
            0,
            precision_bits,
        ))
    }

    /// `coeff * pi^pi_exp` (negative exponents allowed) at the requested
    /// precision. The result is within a relative `2^-(precision_bits - 8)`
    /// of the true value.
    pub fn from_pi_power(coeff: &Rational, pi_exp: i64, precision_bits: u32) -> Result<Self> {
        check_precision(precision_bits)?;
        let e = pi_exp.unsigned_abs();
        // Relative error of the fixed-point pi grows by a factor |e| under
        // exponentiation; pay for it with log2(|e|) extra bits plus margin.
        let work = u64::from(precision_bits) + 64 - (e + 1).leading_zeros() as u64 + 16;
        let pi = pi_fixed_point(work);
        let pi_power = num_traits::pow(pi, e as usize);
        let scale = (work * e) as i64;
        let (num, den, exp2) = if pi_exp >= 0 {
            (coeff.numer() * pi_power, coeff.denom().clone(), -scale)
        } else {
            (coeff.numer().clone(), coeff.denom() * pi_power, scale)
        };
        Ok(Self::from_scaled(num, den, exp2, precision_bits))
    }

    pub fn pi(precision_bits: u32) -> Result<Self> {
        Self::from_pi_power(&Rational::one(), 1, precision_bits)
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    /// The stored binary value, exactly.
    pub fn to_rational(&self) -> Rational {
        let two = BigInt::from(2u32);
        if self.exponent >= 0 {
            Rational::from_integer(&self.mantissa * num_traits::pow(two, self.exponent as usize))
        } else {
            Rational::new(
                self.mantissa.clone(),
                num_traits::pow(two, self.exponent.unsigned_abs() as usize),
            )
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_scientific(17).parse().unwrap_or(f64::NAN)
    }

    /// Decimal digits of the precision, rounded down: the most that can be
    /// meaningfully printed.
    pub fn decimal_digits(&self) -> usize {
        ((f64::from(self.precision_bits) - 8.0) * std::f64::consts::LOG10_2).floor() as usize
    }

    /// `d.ddd…e<exp>` with `sig_digits` significant digits, rounded half away
    /// from zero.
    pub fn to_scientific(&self, sig_digits: usize) -> String {
        let sig_digits = sig_digits.max(1);
        if self.is_zero() {
            return format!("{}e0", pad_zero(sig_digits));
        }
        let value = self.to_rational();
        let negative = value.is_negative();
        let value = value.abs();
        let mut exp10 = self.estimate_log10();
        let lower = num_traits::pow(BigInt::from(10u32), sig_digits - 1);
        let upper = &lower * 10u32;
        let digits = loop {
            let scaled = round_half_up(&(value.clone() * pow10(sig_digits as i64 - 1 - exp10)));
            if scaled >= upper {
                exp10 += 1;
            } else if scaled < lower {
                exp10 -= 1;
            } else {
                break scaled;
            }
        };
        let text = digits.to_string();
        let (head, tail) = text.split_at(1);
        let sign = if negative { "-" } else { "" };
        if tail.is_empty() {
            format!("{sign}{head}e{exp10}")
        } else {
            format!("{sign}{head}.{tail}e{exp10}")
        }
    }

    /// Fixed-point rendering with `decimals` digits after the point.
    pub fn to_fixed(&self, decimals: usize) -> String {
        let value = self.to_rational();
        let negative = value.is_negative();
        let scaled = round_half_up(&(value.abs() * pow10(decimals as i64)));
        let text = scaled.to_string();
        let text = if text.len() <= decimals {
            format!("{}{}", "0".repeat(decimals + 1 - text.len()), text)
        } else {
            text
        };
        let (int_part, frac_part) = text.split_at(text.len() - decimals);
        let sign = if negative && !scaled.is_zero() { "-" } else { "" };
        if decimals == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        }
    }

    fn estimate_log10(&self) -> i64 {
        let log2 = self.mantissa.bits() as f64 - 1.0 + self.exponent as f64;
        (log2 * std::f64::consts::LOG10_2).floor() as i64
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or_else(|| self.decimal_digits().max(1));
        f.write_str(&self.to_scientific(digits))
    }
}

fn check_precision(bits: u32) -> Result<()> {
    if bits < MIN_PRECISION_BITS {
        return Err(Error::PrecisionTooLow(bits));
    }
    Ok(())
}

fn pad_zero(sig_digits: usize) -> String {
    if sig_digits == 1 {
        "0".to_owned()
    } else {
        format!("0.{}", "0".repeat(sig_digits - 1))
    }
}

fn pow10(e: i64) -> Rational {
    let p = num_traits::pow(BigInt::from(10u32), e.unsigned_abs() as usize);
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// Nearest integer to a nonnegative rational, ties upward.
fn round_half_up(q: &Rational) -> BigInt {
    (q.numer() * 2u32 + q.denom()).div_floor(&(q.denom() * 2u32))
}

/// `x / 2^shift` rounded to nearest, ties away from zero.
fn round_shift(x: &BigInt, shift: u64) -> BigInt {
    let magnitude = x.magnitude();
    let half = num_bigint::BigUint::one() << (shift - 1);
    let rounded = (magnitude + half) >> shift;
    BigInt::from_biguint(
        if x.sign() == Sign::Minus { Sign::Minus } else { Sign::Plus },
        rounded,
    )
}

/// `floor(pi * 2^bits)` up to a few units in the last place, from Machin's
/// formula `pi = 16 atan(1/5) - 4 atan(1/239)` in fixed point.
pub(crate) fn pi_fixed_point(bits: u64) -> BigInt {
    const GUARD: u64 = 32;
    let scale = BigInt::one() << (bits + GUARD) as usize;
    let pi = arctan_inverse(5, &scale) * 16u32 - arctan_inverse(239, &scale) * 4u32;
    pi >> GUARD as usize
}

/// `atan(1/x) * scale` by its Taylor series, truncating each term.
fn arctan_inverse(x: u32, scale: &BigInt) -> BigInt {
    let x_squared = BigInt::from(x) * x;
    let mut power = scale / x;
    let mut sum = power.clone();
    let mut n = 1u64;
    let mut subtract = true;
    loop {
        power /= &x_squared;
        let term = &power / (2 * n + 1);
        if term.is_zero() {
            break;
        }
        if subtract {
            sum -= term;
        } else {
            sum += term;
        }
        subtract = !subtract;
        n += 1;
    }
    sum
}
