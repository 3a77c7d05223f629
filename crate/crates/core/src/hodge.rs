//! Raw linear Hodge integrals recovered from the normalized table, and the
//! string/dilaton reduction that relates `<tau_0^n tau_2^m lambda_k>` to the
//! pure `tau_2` correlator.

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::error::{Error, Result};
use crate::rational::{factorial, from_biguint, integer, Rational};
use crate::recursion::CTable;

/// `m!! = m (m-2) (m-4) ...`, with `(-1)!! = 0!! = 1`.
pub fn double_factorial(m: i64) -> Result<BigUint> {
    if m < -1 {
        return Err(Error::NegativeDoubleFactorial(m));
    }
    let mut acc = BigUint::one();
    let mut i = m;
    while i > 1 {
        acc *= i as u64;
        i -= 2;
    }
    Ok(acc)
}

/// A correlator `<tau_0^n tau_2^(3g-3+n-k) lambda_k>` in genus `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HodgeQuery {
    g: u32,
    k: u32,
    n: u32,
}

impl HodgeQuery {
    pub fn new(g: u32, k: u32, n: u32) -> Result<Self> {
        if g < 1 {
            return Err(Error::InvalidArgument(format!("genus must be >= 1, got {g}")));
        }
        if k > g {
            return Err(Error::InvalidArgument(format!(
                "lambda index {k} exceeds genus {g}"
            )));
        }
        if 3 * g + n < 3 + k {
            return Err(Error::InvalidArgument(format!(
                "negative tau_2 exponent for g={g}, k={k}, n={n}"
            )));
        }
        // M_{1,0} does not exist.
        if g == 1 && (n == 0 || n < k) {
            return Err(Error::InvalidArgument(format!(
                "genus one correlator with n={n}, k={k} lives on no moduli space"
            )));
        }
        Ok(Self { g, k, n })
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Exponent of `tau_2`, `3g - 3 + n - k`.
    pub fn tau2_exponent(&self) -> u32 {
        3 * self.g + self.n - 3 - self.k
    }
}

fn require_genus_two(g: u32) -> Result<()> {
    if g < 2 {
        return Err(Error::InvalidArgument(format!(
            "string/dilaton reduction needs g >= 2, got {g}"
        )));
    }
    Ok(())
}

/// `(5g-7+2n-k)!! / (5g-7-k)!!`, i.e. `prod_{j<n} (5g-5-k+2j)`.
///
/// Multiplying `<tau_2^(3g-3-k) lambda_k>/(3g-3-k)!` by this factor yields
/// `<tau_0^n tau_2^(3g-3+n-k) lambda_k>/(3g-3+n-k)!`.
pub fn reduction_factor(g: u32, k: u32, n: u32) -> Result<BigUint> {
    require_genus_two(g)?;
    if k > g {
        return Err(Error::InvalidArgument(format!(
            "lambda index {k} exceeds genus {g}"
        )));
    }
    let base = u64::from(5 * g - 5 - k);
    Ok((0..u64::from(n)).fold(BigUint::one(), |acc, j| acc * (base + 2 * j)))
}

/// `c[g][k] / ((5g-3-k)(5g-5-k))`, the normalized pure correlator
/// `<tau_2^(3g-3-k) lambda_k> / (3g-3-k)!`.
pub(crate) fn normalized_tau2_lambda(table: &CTable, g: u32, k: u32) -> Result<Rational> {
    require_genus_two(g)?;
    table.require(g)?;
    let (gi, ki) = (i64::from(g), i64::from(k));
    let c = table.lookup(gi, ki)?;
    Ok(c / integer((5 * gi - 3 - ki) * (5 * gi - 5 - ki)))
}

/// The raw integral `<tau_2^(3g-3-k) lambda_k>` over `M_{g, 3g-3-k}`.
pub fn tau2_lambda(table: &CTable, g: u32, k: u32) -> Result<Rational> {
    let normalized = normalized_tau2_lambda(table, g, k)?;
    Ok(normalized * from_biguint(factorial(u64::from(3 * g - 3 - k))))
}

/// The raw integral `<tau_0^n tau_2^(3g-3+n-k) lambda_k>`.
pub fn general_correlator(table: &CTable, q: &HodgeQuery) -> Result<Rational> {
    let normalized = normalized_tau2_lambda(table, q.g, q.k)?;
    let reduction = reduction_factor(q.g, q.k, q.n)?;
    let m = factorial(u64::from(q.tau2_exponent()));
    Ok(normalized * Rational::from_integer(BigInt::from(reduction * m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::recursion::build_table;
    use proptest::prelude::*;

    #[test]
    fn double_factorial_conventions() {
        assert_eq!(double_factorial(-1).unwrap(), BigUint::one());
        assert_eq!(double_factorial(0).unwrap(), BigUint::one());
        assert_eq!(double_factorial(1).unwrap(), BigUint::one());
        assert_eq!(double_factorial(5).unwrap(), BigUint::from(15u32));
        assert_eq!(double_factorial(6).unwrap(), BigUint::from(48u32));
        assert_eq!(double_factorial(-2), Err(Error::NegativeDoubleFactorial(-2)));
    }

    #[test]
    fn reduction_factor_examples() {
        assert_eq!(reduction_factor(2, 0, 0).unwrap(), BigUint::one());
        assert_eq!(reduction_factor(2, 0, 2).unwrap(), BigUint::from(35u32));
        assert_eq!(reduction_factor(2, 1, 1).unwrap(), BigUint::from(4u32));
        assert!(reduction_factor(1, 0, 1).is_err());
        assert!(reduction_factor(2, 3, 1).is_err());
    }

    #[test]
    fn tau2_lambda_genus_two() {
        let table = build_table(2).unwrap();
        assert_eq!(tau2_lambda(&table, 2, 2).unwrap(), ratio(7, 5760));
        assert_eq!(tau2_lambda(&table, 2, 0).unwrap(), ratio(7, 240));
        assert_eq!(tau2_lambda(&table, 2, 1).unwrap(), ratio(5, 576));
        assert!(tau2_lambda(&table, 1, 0).is_err());
        assert!(tau2_lambda(&table, 3, 0).is_err());
    }

    #[test]
    fn general_correlator_genus_two() {
        let table = build_table(2).unwrap();
        let q = |k, n| HodgeQuery::new(2, k, n).unwrap();
        assert_eq!(general_correlator(&table, &q(0, 0)).unwrap(), ratio(7, 240));
        assert_eq!(general_correlator(&table, &q(0, 2)).unwrap(), ratio(245, 12));
        assert_eq!(general_correlator(&table, &q(2, 1)).unwrap(), ratio(7, 960));
    }

    #[test]
    fn query_guards() {
        assert!(HodgeQuery::new(0, 0, 3).is_err());
        assert!(HodgeQuery::new(2, 3, 0).is_err());
        assert!(HodgeQuery::new(1, 0, 0).is_err());
        assert!(HodgeQuery::new(1, 1, 0).is_err());
        assert_eq!(HodgeQuery::new(1, 1, 1).unwrap().tau2_exponent(), 0);
        let table = build_table(1).unwrap();
        let q = HodgeQuery::new(1, 0, 2).unwrap();
        assert!(general_correlator(&table, &q).is_err());
    }

    #[test]
    fn round_trip_to_table() {
        let table = build_table(12).unwrap();
        for g in 2..=12u32 {
            for k in 0..=g {
                let q = HodgeQuery::new(g, k, 2).unwrap();
                let corr = general_correlator(&table, &q).unwrap();
                let back = corr / from_biguint(factorial(u64::from(3 * g - 1 - k)));
                assert_eq!(back, table.lookup(g.into(), k.into()).unwrap(), "g={g} k={k}");
            }
        }
    }

    proptest! {
        #[test]
        fn double_factorial_product(m in 0i64..200) {
            let odd = double_factorial(2 * m + 1).unwrap();
            let even = double_factorial(2 * m).unwrap();
            prop_assert_eq!(odd * even, factorial(2 * m as u64 + 1));
        }

        #[test]
        fn reduction_telescopes(g in 2u32..200, k_frac in 0.0f64..=1.0, n in 0u32..60) {
            let k = (f64::from(g) * k_frac) as u32;
            let next = reduction_factor(g, k, n + 1).unwrap();
            let cur = reduction_factor(g, k, n).unwrap();
            prop_assert_eq!(next, cur * u64::from(5 * g - 5 - k + 2 * n));
        }

        #[test]
        fn reduction_is_double_factorial_ratio(g in 2u32..150, k_frac in 0.0f64..=1.0, n in 0u32..40) {
            let k = (f64::from(g) * k_frac) as u32;
            let top = double_factorial(i64::from(5 * g + 2 * n) - 7 - i64::from(k)).unwrap();
            let bottom = double_factorial(i64::from(5 * g) - 7 - i64::from(k)).unwrap();
            prop_assert_eq!(reduction_factor(g, k, n).unwrap() * bottom, top);
        }
    }
}
