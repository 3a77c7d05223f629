//! Masur-Veech volumes `V(g, n)` of the principal stratum
//! `Q(1^(4g-4+n), -1^n)` of meromorphic quadratic differentials.
//!
//! Every volume is a rational multiple of `pi^(6g-6+2n)`. The rational part
//! is assembled exactly; floating point only appears when a [`PiMultiple`]
//! is evaluated into a [`BigReal`].
//!
//! Admissible inputs are `g = 0, n >= 4`, `g = 1, n >= 1` and `g >= 2,
//! n >= 0`. At the boundary `(0, 4)` the closed form gives `2 pi^2`; this is
//! returned as the formula value without any claim about how that
//! degenerate stratum is normalized.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bigreal::BigReal;
use crate::error::{Error, Result};
use crate::hodge::{double_factorial, normalized_tau2_lambda, reduction_factor};
use crate::rational::{factorial, format_fraction, from_biguint, integer, parse_fraction, Rational};
use crate::recursion::CTable;

pub const DEFAULT_PRECISION_BITS: u32 = 256;

/// Upper bound for automatic precision escalation.
pub const MAX_PRECISION_BITS: u32 = 1 << 16;

/// Exact value `coeff * pi^pi_exp`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PiMultiple {
    pub coeff: Rational,
    pub pi_exp: u32,
}

impl PiMultiple {
    pub fn new(coeff: Rational, pi_exp: u32) -> Self {
        Self { coeff, pi_exp }
    }
}

/// `<num>/<den> * pi^<exp>`.
impl fmt::Display for PiMultiple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} * pi^{}", format_fraction(&self.coeff), self.pi_exp)
    }
}

impl FromStr for PiMultiple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("expected `<num>/<den> * pi^<exp>`, got {s:?}"));
        let (coeff, power) = s.split_once(" * pi^").ok_or_else(bad)?;
        let pi_exp = power.parse().map_err(|_| bad())?;
        Ok(Self::new(parse_fraction(coeff)?, pi_exp))
    }
}

fn check_domain(g: u32, n: u32) -> Result<()> {
    let reason = match g {
        0 if n < 4 => "genus zero needs n >= 4",
        1 if n < 1 => "genus one needs n >= 1",
        _ => return Ok(()),
    };
    Err(Error::UnstableStratum { g, n, reason })
}

fn two_pow(e: u32) -> BigInt {
    BigInt::one() << e as usize
}

/// `V(g, n)` exactly.
///
/// Genus 0 and 1 use the closed forms
/// `V(0,n) = pi^(2n-6) / 2^(n-5)` and
/// `V(1,n) = pi^(2n) n! / (3 (2n-1)!) * ((2n-3)!! + (2n-2)!!)`;
/// higher genus sums the reduced Hodge integrals over `k`, with the
/// string/dilaton factor `(5g-7+2n-k)!!/(5g-7-k)!!` applied per `k`.
pub fn volume_exact(table: &CTable, g: u32, n: u32) -> Result<PiMultiple> {
    check_domain(g, n)?;
    match g {
        0 => {
            let coeff = if n <= 5 {
                integer(two_pow(5 - n))
            } else {
                Rational::new(BigInt::one(), two_pow(n - 5))
            };
            Ok(PiMultiple::new(coeff, 2 * n - 6))
        }
        1 => {
            let n64 = i64::from(n);
            let prefactor = Rational::new(
                factorial(n.into()).into(),
                BigInt::from(factorial(2 * u64::from(n) - 1)) * 3u32,
            );
            let doubles = double_factorial(2 * n64 - 3)? + double_factorial(2 * n64 - 2)?;
            Ok(PiMultiple::new(prefactor * from_biguint(doubles), 2 * n))
        }
        _ => {
            table.require(g)?;
            let mut sum = Rational::zero();
            for k in 0..=g {
                let reduction = from_biguint(reduction_factor(g, k, n)?);
                sum += normalized_tau2_lambda(table, g, k)? * reduction;
            }
            Ok(PiMultiple::new(
                higher_genus_prefactor(g, n) * sum,
                6 * g - 6 + 2 * n,
            ))
        }
    }
}

/// `2^(2g+1) (4g-4+n)! / (6g-7+2n)!`
fn higher_genus_prefactor(g: u32, n: u32) -> Rational {
    let (g, n) = (u64::from(g), u64::from(n));
    Rational::new(
        two_pow(2 * g as u32 + 1) * BigInt::from(factorial(4 * g - 4 + n)),
        factorial(6 * g - 7 + 2 * n).into(),
    )
}

/// `V(g, 0)` straight from the table:
/// `2^(2g+1) pi^(6g-6) (4g-4)!/(6g-7)! * sum_k c[g][k] / ((5g-3-k)(5g-5-k))`.
pub fn volume_g0_form(table: &CTable, g: u32) -> Result<PiMultiple> {
    if g < 2 {
        return Err(Error::InvalidArgument(format!(
            "closed-surface form needs g >= 2, got {g}"
        )));
    }
    table.require(g)?;
    let gi = i64::from(g);
    let mut sum = Rational::zero();
    for (k, c) in table.row(g).unwrap_or_default().iter().enumerate() {
        let k = k as i64;
        sum += c / integer((5 * gi - 3 - k) * (5 * gi - 5 - k));
    }
    let g64 = u64::from(g);
    let prefactor = Rational::new(
        two_pow(2 * g + 1) * BigInt::from(factorial(4 * g64 - 4)),
        factorial(6 * g64 - 7).into(),
    );
    Ok(PiMultiple::new(prefactor * sum, 6 * g - 6))
}

/// Evaluates `coeff * pi^pi_exp` to `precision_bits` bits; the relative
/// error is below `2^-(precision_bits - 8)`.
pub fn to_big_real(v: &PiMultiple, precision_bits: u32) -> Result<BigReal> {
    BigReal::from_pi_power(&v.coeff, i64::from(v.pi_exp), precision_bits)
}

/// Rational part `q` of the conjectured large-genus value
/// `V(g, 0) ~ (4/pi) (8/3)^(4g-4) = q / pi`.
pub fn conjectural_coefficient(g: u32) -> Result<Rational> {
    if g < 1 {
        return Err(Error::InvalidArgument("conjectural value needs g >= 1".into()));
    }
    let e = 4 * (g as usize) - 4;
    Ok(integer(4) * Rational::new(num_traits::pow(BigInt::from(8), e), num_traits::pow(BigInt::from(3), e)))
}

pub fn conjectural_value(g: u32, precision_bits: u32) -> Result<BigReal> {
    BigReal::from_pi_power(&conjectural_coefficient(g)?, -1, precision_bits)
}

/// `V(g, 0) / ((4/pi)(8/3)^(4g-4))` as an exact multiple of a power of pi.
pub fn asymptotic_ratio_exact(table: &CTable, g: u32) -> Result<PiMultiple> {
    if g < 2 {
        return Err(Error::InvalidArgument(format!(
            "asymptotic ratio needs g >= 2, got {g}"
        )));
    }
    let volume = volume_exact(table, g, 0)?;
    Ok(PiMultiple::new(
        volume.coeff / conjectural_coefficient(g)?,
        volume.pi_exp + 1,
    ))
}

/// The ratio of `V(g, 0)` to its conjectured asymptotic value, evaluated
/// starting at `precision_bits` and escalated until six significant digits
/// no longer move.
pub fn asymptotic_ratio(table: &CTable, g: u32, precision_bits: u32) -> Result<BigReal> {
    let exact = asymptotic_ratio_exact(table, g)?;
    evaluate_stable(6, precision_bits, |bits| to_big_real(&exact, bits))
}

/// Calls `eval` at doubling precisions from `start_bits` until two
/// consecutive results agree on `sig_digits` significant decimal digits,
/// and returns the more precise one.
pub fn evaluate_stable<F>(sig_digits: usize, start_bits: u32, mut eval: F) -> Result<BigReal>
where
    F: FnMut(u32) -> Result<BigReal>,
{
    // The digits requested must fit within the starting precision.
    let needed = ((sig_digits as f64 + 2.0) / std::f64::consts::LOG10_2).ceil() as u32 + 8;
    let mut bits = start_bits.max(needed);
    let mut previous = eval(bits)?;
    while bits < MAX_PRECISION_BITS {
        bits = bits.saturating_mul(2).min(MAX_PRECISION_BITS);
        let current = eval(bits)?;
        if current.to_scientific(sig_digits) == previous.to_scientific(sig_digits) {
            return Ok(current);
        }
        previous = current;
    }
    Err(Error::PrecisionExhausted {
        max_bits: MAX_PRECISION_BITS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::recursion::build_table;

    fn pm(num: i64, den: i64, e: u32) -> PiMultiple {
        PiMultiple::new(ratio(num, den), e)
    }

    #[test]
    fn genus_zero_closed_form() {
        let table = build_table(1).unwrap();
        assert_eq!(volume_exact(&table, 0, 5).unwrap(), pm(1, 1, 4));
        assert_eq!(volume_exact(&table, 0, 4).unwrap(), pm(2, 1, 2));
        assert_eq!(volume_exact(&table, 0, 7).unwrap(), pm(1, 4, 8));
    }

    #[test]
    fn genus_one_closed_form() {
        let table = build_table(1).unwrap();
        assert_eq!(volume_exact(&table, 1, 1).unwrap(), pm(2, 3, 2));
        // n=2: 2!/(3*3!) * (1!! + 2!!) = 1/9 * 3
        assert_eq!(volume_exact(&table, 1, 2).unwrap(), pm(1, 3, 4));
    }

    #[test]
    fn genus_two() {
        let table = build_table(3).unwrap();
        assert_eq!(volume_exact(&table, 2, 0).unwrap(), pm(1, 15, 6));
        assert_eq!(volume_g0_form(&table, 2).unwrap(), pm(1, 15, 6));
        assert_eq!(volume_exact(&table, 2, 1).unwrap(), pm(29, 840, 8));
        assert_eq!(volume_exact(&table, 3, 0).unwrap(), pm(115, 33264, 12));
        assert_eq!(volume_g0_form(&table, 3).unwrap(), volume_exact(&table, 3, 0).unwrap());
    }

    #[test]
    fn domain_guards() {
        let table = build_table(2).unwrap();
        for (g, n) in [(0, 0), (0, 3), (1, 0)] {
            assert!(matches!(
                volume_exact(&table, g, n),
                Err(Error::UnstableStratum { .. })
            ));
        }
        assert_eq!(
            volume_exact(&table, 3, 0),
            Err(Error::GenusBeyondTable { g: 3, gmax: 2 })
        );
        assert!(volume_g0_form(&table, 1).is_err());
        assert!(volume_g0_form(&table, 3).is_err());
        assert!(asymptotic_ratio(&table, 1, 128).is_err());
    }

    #[test]
    fn pi_exponent_law() {
        let table = build_table(4).unwrap();
        for g in 0..=4u32 {
            for n in 0..6u32 {
                if let Ok(v) = volume_exact(&table, g, n) {
                    assert_eq!(i64::from(v.pi_exp), 6 * i64::from(g) - 6 + 2 * i64::from(n));
                    assert!(v.coeff > Rational::zero());
                }
            }
        }
    }

    #[test]
    fn display_grammar() {
        assert_eq!(pm(1, 15, 6).to_string(), "1/15 * pi^6");
        assert_eq!(pm(1, 1, 4).to_string(), "1/1 * pi^4");
        assert_eq!("29/840 * pi^8".parse::<PiMultiple>().unwrap(), pm(29, 840, 8));
        assert!("29/840 pi^8".parse::<PiMultiple>().is_err());
    }

    #[test]
    fn numeric_values() {
        assert_eq!(to_big_real(&pm(1, 1, 0), 64).unwrap().to_rational(), Rational::one());
        let v20 = to_big_real(&pm(1, 15, 6), 128).unwrap();
        assert_eq!(v20.to_scientific(12), "6.40926129050e1");
        let v11 = to_big_real(&pm(2, 3, 2), 128).unwrap();
        assert_eq!(v11.to_scientific(12), "6.57973626739e0");
        assert!(to_big_real(&pm(1, 1, 1), 32).is_err());
    }

    #[test]
    fn conjectural_denominator_at_genus_one() {
        assert_eq!(conjectural_coefficient(1).unwrap(), integer(4));
        let value = conjectural_value(1, 128).unwrap();
        assert_eq!(value.to_scientific(10), "1.273239545e0");
        assert!(conjectural_coefficient(0).is_err());
    }

    #[test]
    fn ratio_genus_two_is_exact_pi_power() {
        let table = build_table(2).unwrap();
        let exact = asymptotic_ratio_exact(&table, 2).unwrap();
        // pi^7 * 3^4 / (15 * 4 * 8^4)
        assert_eq!(exact, PiMultiple::new(ratio(81, 15 * 4 * 4096), 7));
        let r = asymptotic_ratio(&table, 2, 128).unwrap();
        assert_eq!(r.to_fixed(6), "0.995458");
    }
}
