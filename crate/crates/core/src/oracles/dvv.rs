//! Pure psi-class intersection numbers `<tau_d1 ... tau_dn>_g` from the
//! string and dilaton equations and the DVV form of the Virasoro
//! constraints, memoized over sorted index multisets.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hodge::double_factorial;
use crate::rational::{from_biguint, integer, ratio, Rational};

/// Enough for the k = 0 column check up to genus 4, `<tau_0^2 tau_2^11>_4`.
pub const DEFAULT_MAX_INSERTIONS: usize = 13;

/// A pure psi correlator: genus plus the sorted multiset of psi exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CorrelatorKey {
    g: u32,
    indices: Vec<u32>,
}

impl CorrelatorKey {
    /// Rejects the unstable `(g, n)` in `{(0,0), (0,1), (0,2), (1,0)}`.
    pub fn new(g: u32, mut indices: Vec<u32>) -> Result<Self> {
        if !is_stable(g, indices.len()) {
            return Err(Error::UnstableCorrelator {
                g,
                n: indices.len(),
            });
        }
        indices.sort_unstable();
        Ok(Self { g, indices })
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn n(&self) -> usize {
        self.indices.len()
    }

    /// `sum d_i = 3g - 3 + n`
    pub fn satisfies_dimension(&self) -> bool {
        let total: u64 = self.indices.iter().map(|&d| u64::from(d)).sum();
        total + 3 == 3 * u64::from(self.g) + self.n() as u64
    }
}

fn is_stable(g: u32, n: usize) -> bool {
    2 * g as usize + n > 2
}

/// Normalization fixed by the two seed values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seeds {
    /// `<tau_0^3>_0`
    pub tau0_cubed: Rational,
    /// `<tau_1>_1`
    pub tau1: Rational,
}

impl Default for Seeds {
    fn default() -> Self {
        Self {
            tau0_cubed: Rational::one(),
            tau1: ratio(1, 24),
        }
    }
}

/// Evaluator for `<tau_d1 ... tau_dn>_g`.
///
/// Evaluation takes `&mut self`: the memo table lives in a single execution
/// context.
#[derive(Debug, Clone)]
pub struct PsiOracle {
    seeds: Seeds,
    max_insertions: usize,
    memoize: bool,
    memo: HashMap<CorrelatorKey, Rational>,
}

impl Default for PsiOracle {
    fn default() -> Self {
        Self::new()
    }
}

impl PsiOracle {
    pub fn new() -> Self {
        Self::with_seeds(Seeds::default())
    }

    pub fn with_seeds(seeds: Seeds) -> Self {
        Self {
            seeds,
            max_insertions: DEFAULT_MAX_INSERTIONS,
            memoize: true,
            memo: HashMap::new(),
        }
    }

    /// Cap on the number of insertions accepted by
    /// [`psi_intersection`](Self::psi_intersection). Intermediate
    /// correlators produced by the recursion are not subject to it.
    pub fn max_insertions(mut self, cap: usize) -> Self {
        self.max_insertions = cap;
        self
    }

    /// Disables the memo table; every call recomputes from the seeds.
    pub fn without_memo(mut self) -> Self {
        self.memoize = false;
        self.memo.clear();
        self
    }

    pub fn cached_entries(&self) -> usize {
        self.memo.len()
    }

    pub fn psi_intersection(&mut self, key: &CorrelatorKey) -> Result<Rational> {
        if key.n() > self.max_insertions {
            return Err(Error::TooManyInsertions {
                n: key.n(),
                cap: self.max_insertions,
            });
        }
        Ok(self.eval(key.g, &key.indices))
    }

    /// Convenience wrapper building the key from raw parts.
    pub fn evaluate(&mut self, g: u32, indices: &[u32]) -> Result<Rational> {
        let key = CorrelatorKey::new(g, indices.to_vec())?;
        self.psi_intersection(&key)
    }

    /// `indices` must be sorted. Unstable or dimension-violating
    /// correlators are zero.
    fn eval(&mut self, g: u32, indices: &[u32]) -> Rational {
        let n = indices.len();
        if !is_stable(g, n) {
            return Rational::zero();
        }
        let total: u64 = indices.iter().map(|&d| u64::from(d)).sum();
        if total + 3 != 3 * u64::from(g) + n as u64 {
            return Rational::zero();
        }
        let key = CorrelatorKey {
            g,
            indices: indices.to_vec(),
        };
        if self.memoize {
            if let Some(v) = self.memo.get(&key) {
                return v.clone();
            }
        }
        let value = self.compute(g, indices);
        if self.memoize {
            self.memo.insert(key, value.clone());
        }
        value
    }

    fn compute(&mut self, g: u32, indices: &[u32]) -> Rational {
        if g == 0 && indices == [0, 0, 0] {
            return self.seeds.tau0_cubed.clone();
        }
        if g == 1 && indices == [1] {
            return self.seeds.tau1.clone();
        }

        // Sorted, so a tau_0 or tau_1 would sit in front.
        match indices[0] {
            0 => {
                // string: <tau_0 X> = sum_j <tau_{d_j - 1} X \ d_j>
                let rest = &indices[1..];
                let mut sum = Rational::zero();
                for j in distinct_positions(rest) {
                    if rest[j] == 0 {
                        continue;
                    }
                    let mult = rest.iter().filter(|&&d| d == rest[j]).count();
                    let mut lowered = rest.to_vec();
                    lowered[j] -= 1;
                    lowered.sort_unstable();
                    sum += self.eval(g, &lowered) * integer(mult as i64);
                }
                sum
            }
            1 => {
                // dilaton: <tau_1 X>_g = (2g - 2 + |X|) <X>_g
                let rest = &indices[1..];
                let factor = 2 * i64::from(g) - 2 + rest.len() as i64;
                self.eval(g, rest) * integer(factor)
            }
            _ => self.dvv(g, indices),
        }
    }

    /// DVV on the largest index `k + 1 >= 2`:
    ///
    /// ```text
    /// (2k+3)!! <tau_{k+1} X>_g
    ///   = sum_j (2(k+d_j)+1)!! / (2d_j-1)!! <tau_{k+d_j} X \ d_j>_g
    ///   + 1/2 sum_{a+b=k-1} (2a+1)!! (2b+1)!! [ <tau_a tau_b X>_{g-1}
    ///       + sum_{g1+g2=g, I+J=X} <tau_a I>_{g1} <tau_b J>_{g2} ]
    /// ```
    fn dvv(&mut self, g: u32, indices: &[u32]) -> Rational {
        let (&top, rest) = indices.split_last().expect("stable correlator is nonempty");
        let k = i64::from(top) - 1;

        let mut linear = Rational::zero();
        for j in distinct_positions(rest) {
            let dj = i64::from(rest[j]);
            let mult = rest.iter().filter(|&&d| d == rest[j]).count();
            let coeff = Rational::new(
                double_factorial(2 * (k + dj) + 1).expect("odd, positive").into(),
                double_factorial(2 * dj - 1).expect(">= -1").into(),
            );
            let mut merged = rest.to_vec();
            merged[j] = (k + dj) as u32;
            merged.sort_unstable();
            linear += coeff * self.eval(g, &merged) * integer(mult as i64);
        }

        let groups = multiplicities(rest);
        let mut quadratic = Rational::zero();
        for a in 0..k {
            let b = k - 1 - a;
            let weight = from_biguint(
                double_factorial(2 * a + 1).expect("odd") * double_factorial(2 * b + 1).expect("odd"),
            );
            let (a, b) = (a as u32, b as u32);

            let mut bracket = Rational::zero();
            if g >= 1 {
                let mut joined = rest.to_vec();
                joined.push(a);
                joined.push(b);
                joined.sort_unstable();
                bracket += self.eval(g - 1, &joined);
            }
            for (left, right, count) in splittings(&groups) {
                for g1 in 0..=g {
                    let lhs = self.eval(g1, &with_index(&left, a));
                    if lhs.is_zero() {
                        continue;
                    }
                    let rhs = self.eval(g - g1, &with_index(&right, b));
                    bracket += lhs * rhs * from_biguint(count.clone());
                }
            }
            quadratic += weight * bracket;
        }

        let norm = from_biguint(double_factorial(2 * k + 3).expect("odd"));
        (linear + quadratic * ratio(1, 2)) / norm
    }
}

/// One position per distinct value of a sorted slice.
fn distinct_positions(sorted: &[u32]) -> impl Iterator<Item = usize> + '_ {
    (0..sorted.len()).filter(move |&i| i == 0 || sorted[i] != sorted[i - 1])
}

fn multiplicities(sorted: &[u32]) -> Vec<(u32, usize)> {
    let mut groups: Vec<(u32, usize)> = Vec::new();
    for &d in sorted {
        match groups.last_mut() {
            Some((v, c)) if *v == d => *c += 1,
            _ => groups.push((d, 1)),
        }
    }
    groups
}

/// All ordered splittings of a multiset into `(I, J)`, each with the number
/// of subsets of positions realizing it.
fn splittings(groups: &[(u32, usize)]) -> Vec<(Vec<u32>, Vec<u32>, BigUint)> {
    let mut out = vec![(Vec::new(), Vec::new(), BigUint::one())];
    for &(value, count) in groups {
        let mut next = Vec::with_capacity(out.len() * (count + 1));
        for (left, right, ways) in &out {
            for take in 0..=count {
                let mut l = left.clone();
                let mut r = right.clone();
                l.extend(std::iter::repeat_n(value, take));
                r.extend(std::iter::repeat_n(value, count - take));
                let choose = binomial(BigUint::from(count), BigUint::from(take));
                next.push((l, r, ways * choose));
            }
        }
        out = next;
    }
    out
}

fn with_index(sorted: &[u32], d: u32) -> Vec<u32> {
    let mut v = sorted.to_vec();
    let pos = v.partition_point(|&x| x < d);
    v.insert(pos, d);
    v
}

/// Evaluates a single correlator with a fresh default oracle.
pub fn psi_intersection(key: &CorrelatorKey) -> Result<Rational> {
    PsiOracle::new().psi_intersection(key)
}
