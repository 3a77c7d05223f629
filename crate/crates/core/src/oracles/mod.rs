//! Independent checks of the recursion table: the DVV/Virasoro recursion
//! for pure psi intersection numbers (the `k = 0` column) and the
//! lambda_g formula through Bernoulli numbers (the `k = g` diagonal).

pub mod bernoulli;
pub mod dvv;
pub mod verify;

pub use bernoulli::{bernoulli, lambda_g_diagonal, lambda_g_one_point, BernoulliCache};
pub use dvv::{psi_intersection, CorrelatorKey, PsiOracle, Seeds, DEFAULT_MAX_INSERTIONS};
pub use verify::{
    validate_anchors, verify_table, verify_table_with, AnchorResult, CheckKind, CheckResult,
    VerificationReport,
};
