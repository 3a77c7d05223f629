//! Exact linear Hodge integrals `<tau_0^2 tau_2^(3g-1-k) lambda_k>` via a
//! quadratic recursion, and the Masur-Veech volumes of principal strata of
//! quadratic differentials built from them.
//!
//! ```
//! use hodge_volumes::{build_table, volume_exact};
//!
//! let table = build_table(2).unwrap();
//! assert_eq!(volume_exact(&table, 2, 0).unwrap().to_string(), "1/15 * pi^6");
//! ```

pub mod bigreal;
pub mod error;
pub mod hodge;
pub mod oracles;
pub mod rational;
pub mod recursion;
pub mod volumes;

pub use bigreal::BigReal;
pub use error::{Error, Result};
pub use hodge::{double_factorial, general_correlator, reduction_factor, tau2_lambda, HodgeQuery};
pub use rational::Rational;
pub use recursion::{build_table, CTable};
pub use volumes::{
    asymptotic_ratio, conjectural_value, to_big_real, volume_exact, volume_g0_form, PiMultiple,
    DEFAULT_PRECISION_BITS,
};
