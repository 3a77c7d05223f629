//! The triangular table of normalized linear Hodge integrals
//! `c[g][k] = <tau_0^2 tau_2^(3g-1-k) lambda_k> / (3g-1-k)!`.
//!
//! Entries are produced by the quadratic recursion
//!
//! ```text
//! c[g][k] = (g+1-k)/(5g-2-k) * c[g][k-1]
//!         + (5g-6-k)(5g-4-k)/12 * c[g-1][k]
//!         + 1/2 * sum_{g1+g2=g, k1+k2=k} c[g1][k1] * c[g2][k2]
//! ```
//!
//! seeded by `c[1][0] = 1/12`, where every reference outside the triangle
//! `1 <= g`, `0 <= k <= g` is zero.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{ratio, Rational};

/// Immutable triangle of `c[g][k]` for `1 <= g <= gmax`, `0 <= k <= g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CTable {
    gmax: u32,
    // rows[g - 1][k]
    rows: Vec<Vec<Rational>>,
}

impl CTable {
    /// Reassembles a table from explicit rows, e.g. after deserialization.
    ///
    /// Row `i` must hold genus `i + 1` and have exactly `i + 2` entries, all
    /// strictly positive. The values themselves are not rechecked against the
    /// recursion; that is what [`crate::oracles::verify_table`] is for.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidGmax(0));
        }
        for (i, row) in rows.iter().enumerate() {
            let g = i + 1;
            if row.len() != g + 1 {
                return Err(Error::InvalidArgument(format!(
                    "row for genus {g} has {} entries, expected {}",
                    row.len(),
                    g + 1
                )));
            }
            if let Some(k) = row.iter().position(|c| !c.is_positive()) {
                return Err(Error::InvalidArgument(format!(
                    "entry c[{g}][{k}] is not strictly positive"
                )));
            }
        }
        Ok(Self {
            gmax: rows.len() as u32,
            rows,
        })
    }

    pub fn gmax(&self) -> u32 {
        self.gmax
    }

    /// Returns `c[g][k]`, or exact zero outside the triangle.
    ///
    /// Fails only when `g > gmax`: a value that was never computed is not the
    /// same thing as a value that is identically zero.
    pub fn lookup(&self, g: i64, k: i64) -> Result<Rational> {
        if g > i64::from(self.gmax) {
            return Err(Error::GenusBeyondTable {
                g: g as u32,
                gmax: self.gmax,
            });
        }
        Ok(self.get(g, k).cloned().unwrap_or_else(Rational::zero))
    }

    /// Borrowing variant of [`lookup`](Self::lookup) that yields `None`
    /// off the triangle (including `g > gmax`).
    pub fn get(&self, g: i64, k: i64) -> Option<&Rational> {
        if g < 1 || k < 0 || k > g {
            return None;
        }
        self.rows.get(g as usize - 1)?.get(k as usize)
    }

    pub fn row(&self, g: u32) -> Option<&[Rational]> {
        if g == 0 {
            return None;
        }
        self.rows.get(g as usize - 1).map(Vec::as_slice)
    }

    /// Rows in increasing genus, each paired with its genus.
    pub fn rows(&self) -> impl Iterator<Item = (u32, &[Rational])> + '_ {
        self.rows
            .iter()
            .enumerate()
            .map(|(i, row)| (i as u32 + 1, row.as_slice()))
    }

    /// The sub-table for genus `<= gmax`.
    pub fn truncated(&self, gmax: u32) -> Result<Self> {
        if gmax < 1 {
            return Err(Error::InvalidGmax(gmax));
        }
        if gmax > self.gmax {
            return Err(Error::GenusBeyondTable {
                g: gmax,
                gmax: self.gmax,
            });
        }
        Ok(Self {
            gmax,
            rows: self.rows[..gmax as usize].to_vec(),
        })
    }

    pub fn covers(&self, g: u32) -> bool {
        g <= self.gmax
    }

    /// `Ok(())` when the table reaches genus `g`.
    pub(crate) fn require(&self, g: u32) -> Result<()> {
        if self.covers(g) {
            Ok(())
        } else {
            Err(Error::GenusBeyondTable { g, gmax: self.gmax })
        }
    }
}

/// A finished row over a common denominator: `c[g][k] = numers[k] / denom`.
struct ScaledRow {
    denom: BigInt,
    numers: Vec<BigInt>,
}

impl ScaledRow {
    fn new(row: &[Rational]) -> Self {
        let denom = row
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let numers = row
            .iter()
            .map(|c| c.numer() * (&denom / c.denom()))
            .collect();
        Self { denom, numers }
    }
}

/// Builds the table up to genus `gmax`.
///
/// The quadratic term is evaluated in integers: each finished row is kept
/// over a common denominator, and for a fixed genus all ordered pairs
/// `(g1, g - g1)` are brought to one shared denominator, so the whole
/// convolution for an entry costs one rational normalization.
pub fn build_table(gmax: u32) -> Result<CTable> {
    if gmax < 1 {
        return Err(Error::InvalidGmax(gmax));
    }
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(gmax as usize);
    let mut scaled: Vec<ScaledRow> = Vec::with_capacity(gmax as usize);

    for g in 1..=gmax {
        let convolution = convolution_row(g, &scaled);
        let mut row: Vec<Rational> = Vec::with_capacity(g as usize + 1);
        for k in 0..=g {
            if (g, k) == (1, 0) {
                row.push(ratio(1, 12));
                continue;
            }
            let (gi, ki) = (i64::from(g), i64::from(k));
            let mut value = convolution[k as usize].clone();
            if k >= 1 {
                value += ratio(gi + 1 - ki, 5 * gi - 2 - ki) * &row[k as usize - 1];
            }
            if g >= 2 && k < g {
                let below = &rows[g as usize - 2][k as usize];
                value += ratio((5 * gi - 6 - ki) * (5 * gi - 4 - ki), 12) * below;
            }
            row.push(value);
        }
        scaled.push(ScaledRow::new(&row));
        rows.push(row);
    }

    Ok(CTable { gmax, rows })
}

/// `1/2 * sum c[g1][k1] c[g2][k2]` over ordered pairs with `g1 + g2 = g`,
/// `g1, g2 >= 1`, for every `k` in `0..=g`.
fn convolution_row(g: u32, scaled: &[ScaledRow]) -> Vec<Rational> {
    let len = g as usize + 1;
    if g < 2 {
        return vec![Rational::zero(); len];
    }
    let pairs: Vec<(&ScaledRow, &ScaledRow)> = (1..g)
        .map(|g1| (&scaled[g1 as usize - 1], &scaled[(g - g1) as usize - 1]))
        .collect();
    let pair_denoms: Vec<BigInt> = pairs.iter().map(|(a, b)| &a.denom * &b.denom).collect();
    let common = pair_denoms
        .iter()
        .fold(BigInt::one(), |acc, d| acc.lcm(d));
    let multipliers: Vec<BigInt> = pair_denoms.iter().map(|d| &common / d).collect();

    let mut sums = vec![BigInt::zero(); len];
    for ((left, right), mult) in pairs.iter().zip(&multipliers) {
        let (g1, g2) = (left.numers.len() - 1, right.numers.len() - 1);
        for (k, sum) in sums.iter_mut().enumerate() {
            let lo = k.saturating_sub(g2);
            let hi = k.min(g1);
            if lo > hi {
                continue;
            }
            let mut partial = BigInt::zero();
            for k1 in lo..=hi {
                partial += &left.numers[k1] * &right.numers[k - k1];
            }
            *sum += partial * mult;
        }
    }

    let denom = common * 2u32;
    sums.into_iter()
        .map(|s| Rational::new(s, denom.clone()))
        .collect()
}
