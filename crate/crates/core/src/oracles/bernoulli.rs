//! Exact Bernoulli numbers and the lambda_g evaluation of the diagonal
//! `c[g][g]`.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{factorial, from_biguint, integer, ratio, Rational};

/// `B_0 ..= B_upto`, with the convention `B_1 = -1/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernoulliCache {
    values: Vec<Rational>,
}

impl BernoulliCache {
    pub fn get(&self, n: usize) -> Option<&Rational> {
        self.values.get(n)
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn upto(&self) -> usize {
        self.values.len() - 1
    }
}

/// Bernoulli numbers from `sum_{j=0}^{m} C(m+1, j) B_j = 0`.
pub fn bernoulli(upto: usize) -> Result<BernoulliCache> {
    if upto < 2 || !upto.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "bernoulli bound must be even and >= 2, got {upto}"
        )));
    }
    let mut values: Vec<Rational> = Vec::with_capacity(upto + 1);
    values.push(Rational::one());
    for m in 1..=upto {
        if m > 1 && m % 2 == 1 {
            values.push(Rational::zero());
            continue;
        }
        let m_big = BigInt::from(m + 1);
        let mut acc = Rational::zero();
        for (j, b) in values.iter().enumerate() {
            if !b.is_zero() {
                acc += Rational::from_integer(binomial(m_big.clone(), BigInt::from(j))) * b;
            }
        }
        values.push(-acc / integer(m as i64 + 1));
    }
    Ok(BernoulliCache { values })
}

/// `<tau_{2g-2} lambda_g>_g = (2^(2g-1) - 1) / 2^(2g-1) * |B_2g| / (2g)!`.
pub fn lambda_g_one_point(g: u32, bernoulli: &BernoulliCache) -> Result<Rational> {
    if g < 1 {
        return Err(Error::InvalidArgument(format!("genus must be >= 1, got {g}")));
    }
    let b = bernoulli
        .get(2 * g as usize)
        .ok_or_else(|| Error::InvalidArgument(format!("bernoulli cache too short for g={g}")))?;
    let power = BigInt::one() << (2 * g as usize - 1);
    let weight = Rational::new(&power - 1, power);
    Ok(weight * b.abs() / from_biguint(factorial(2 * u64::from(g))))
}

/// The diagonal entry `c[g][g]` predicted by the lambda_g formula
/// `<tau_d1 ... tau_dn lambda_g> = (2g-3+n)! / prod d_i! * <tau_{2g-2} lambda_g>`.
///
/// For `g >= 2` this is `(4g-3)(4g-5) <tau_2^(2g-3) lambda_g> / (2g-3)!`
/// with multinomial `(4g-6)! / 2^(2g-3)`; genus one is `<tau_0 lambda_1> = 1/24`.
pub fn lambda_g_diagonal(g: u32) -> Result<Rational> {
    match g {
        0 => Err(Error::InvalidArgument("genus must be >= 1".into())),
        1 => Ok(ratio(1, 24)),
        _ => {
            let cache = bernoulli(2 * g as usize)?;
            lambda_g_diagonal_with(g, &cache)
        }
    }
}

pub(crate) fn lambda_g_diagonal_with(g: u32, cache: &BernoulliCache) -> Result<Rational> {
    if g == 1 {
        return Ok(ratio(1, 24));
    }
    let g64 = u64::from(g);
    let one_point = lambda_g_one_point(g, cache)?;
    let multinomial = Rational::new(
        factorial(4 * g64 - 6).into(),
        BigInt::one() << (2 * g as usize - 3),
    );
    let correlator = multinomial * one_point;
    let gi = i64::from(g);
    Ok(correlator * integer((4 * gi - 3) * (4 * gi - 5)) / from_biguint(factorial(2 * g64 - 3)))
}
