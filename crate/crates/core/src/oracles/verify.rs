//! Cross-checks of a [`CTable`] against the two independent oracles.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracles::bernoulli::{bernoulli, lambda_g_diagonal_with};
use crate::oracles::dvv::PsiOracle;
use crate::rational::{factorial, format_fraction, from_biguint, ratio, Rational};
use crate::recursion::CTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// `<tau_0^2 tau_2^(3g-1)>_g / (3g-1)!` from DVV against `c[g][0]`.
    DvvColumn,
    /// lambda_g prediction against `c[g][g]`.
    LambdaGDiagonal,
}

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::DvvColumn => "dvv_column",
            CheckKind::LambdaGDiagonal => "lambda_g_diagonal",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check: CheckKind,
    pub g: u32,
    pub k: u32,
    #[serde(serialize_with = "crate::rational::serialize_fraction")]
    pub expected: Rational,
    #[serde(serialize_with = "crate::rational::serialize_fraction")]
    pub actual: Rational,
    /// `actual - expected`
    #[serde(serialize_with = "crate::rational::serialize_fraction")]
    pub delta: Rational,
    pub passed: bool,
}

impl CheckResult {
    fn new(check: CheckKind, g: u32, k: u32, expected: Rational, actual: Rational) -> Self {
        let delta = &actual - &expected;
        let passed = actual == expected;
        Self {
            check,
            g,
            k,
            expected,
            actual,
            delta,
            passed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnchorResult {
    pub name: &'static str,
    #[serde(serialize_with = "crate::rational::serialize_fraction")]
    pub expected: Rational,
    #[serde(serialize_with = "crate::rational::serialize_fraction")]
    pub actual: Rational,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub anchors: Vec<AnchorResult>,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.anchors.iter().all(|a| a.passed) && self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for a in &self.anchors {
            let _ = writeln!(
                out,
                "{} anchor {}: expected {}, got {}",
                status(a.passed),
                a.name,
                format_fraction(&a.expected),
                format_fraction(&a.actual)
            );
        }
        for c in &self.checks {
            let _ = write!(
                out,
                "{} {} g={} k={}: expected {}, got {}",
                status(c.passed),
                c.check.name(),
                c.g,
                c.k,
                format_fraction(&c.expected),
                format_fraction(&c.actual)
            );
            if !c.passed {
                let _ = write!(out, " (delta {})", format_fraction(&c.delta));
            }
            out.push('\n');
        }
        let failed = self.failures().count();
        let _ = writeln!(
            out,
            "{} of {} checks passed",
            self.checks.len() - failed,
            self.checks.len()
        );
        out
    }
}

fn status(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Known correlators that pin the oracle's normalization.
const ANCHORS: [(&str, u32, &[u32], i64, i64); 5] = [
    ("<tau_0^3>_0", 0, &[0, 0, 0], 1, 1),
    ("<tau_1>_1", 1, &[1], 1, 24),
    ("<tau_0 tau_2>_1", 1, &[0, 2], 1, 24),
    ("<tau_4>_2", 2, &[4], 1, 1152),
    ("<tau_2^3>_2", 2, &[2, 2, 2], 7, 240),
];

/// Evaluates every anchor; fails on the first mismatch.
pub fn validate_anchors(oracle: &mut PsiOracle) -> Result<Vec<AnchorResult>> {
    let mut results = Vec::with_capacity(ANCHORS.len());
    for (name, g, indices, num, den) in ANCHORS {
        let expected = ratio(num, den);
        let actual = oracle.evaluate(g, indices)?;
        if actual != expected {
            return Err(Error::AnchorValidation {
                name,
                expected: format_fraction(&expected),
                actual: format_fraction(&actual),
            });
        }
        results.push(AnchorResult {
            name,
            expected,
            actual,
            passed: true,
        });
    }
    Ok(results)
}

/// Runs the k = 0 column check for `2 <= g <= dvv_gmax` and the diagonal
/// check for `1 <= g <= diag_gmax` with a fresh default oracle.
pub fn verify_table(table: &CTable, dvv_gmax: u32, diag_gmax: u32) -> Result<VerificationReport> {
    let mut oracle = PsiOracle::new();
    verify_table_with(table, &mut oracle, dvv_gmax, diag_gmax)
}

pub fn verify_table_with(
    table: &CTable,
    oracle: &mut PsiOracle,
    dvv_gmax: u32,
    diag_gmax: u32,
) -> Result<VerificationReport> {
    let needed = dvv_gmax.max(diag_gmax);
    if !table.covers(needed) {
        return Err(Error::GenusBeyondTable {
            g: needed,
            gmax: table.gmax(),
        });
    }
    let anchors = validate_anchors(oracle)?;

    let mut checks = Vec::new();
    for g in 2..=dvv_gmax {
        let twos = 3 * g - 1;
        let mut indices = vec![0, 0];
        indices.extend(std::iter::repeat_n(2, twos as usize));
        let correlator = oracle.evaluate(g, &indices)?;
        let expected = correlator / from_biguint(factorial(twos.into()));
        let actual = table.lookup(g.into(), 0)?;
        checks.push(CheckResult::new(CheckKind::DvvColumn, g, 0, expected, actual));
    }

    if diag_gmax >= 1 {
        let cache = bernoulli(2 * diag_gmax.max(1) as usize)?;
        for g in 1..=diag_gmax {
            let expected = lambda_g_diagonal_with(g, &cache)?;
            let actual = table.lookup(g.into(), g.into())?;
            checks.push(CheckResult::new(CheckKind::LambdaGDiagonal, g, g, expected, actual));
        }
    }

    Ok(VerificationReport { anchors, checks })
}
