//! Nonincreasing probability vectors, the majorization preorder, and the
//! convergent weight sequence p(m).
//!
//! Invariants maintained here:
//! - a [`WeightVector`] has nonnegative, nonincreasing entries summing to
//!   one within `1e-12`;
//! - `uniform(n)` is majorized by every other vector of the same length;
//! - `sequence(n, m)` entries obey `p_i(m) - 1/n = ((n+1)/2 - i) / a_n(m)`
//!   with `a_n(m) = n*m + n*(n+1)/2`, and the vector flattens toward
//!   uniform as `m` grows.

use serde::Serialize;

use crate::error::{Error, Result};

/// Absolute tolerance for the sum constraint and for partial-sum
/// comparisons in [`is_majorized`].
pub const MAJORIZATION_TOL: f64 = 1e-12;

/// A probability vector with nonnegative, nonincreasing entries summing to
/// one. This is the admissible weight class for the mixture bounds: the
/// envelope inequalities hold exactly for vectors in this set.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    /// Validates raw weights. Ordering is checked exactly; the sum may
    /// deviate from one by at most [`MAJORIZATION_TOL`].
    pub fn new(raw: &[f64]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyInput);
        }
        for (index, &w) in raw.iter().enumerate() {
            if !w.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "weight w[{index}] = {w} is not finite"
                )));
            }
            if w < 0.0 {
                return Err(Error::NegativeWeight { index, value: w });
            }
        }
        for index in 0..raw.len() - 1 {
            if raw[index] < raw[index + 1] {
                return Err(Error::UnorderedWeights {
                    index,
                    prev: raw[index],
                    next: raw[index + 1],
                });
            }
        }
        let sum = kahan_sum(raw);
        if (sum - 1.0).abs() > MAJORIZATION_TOL {
            return Err(Error::WeightSum {
                sum,
                tol: MAJORIZATION_TOL,
            });
        }
        Ok(Self(raw.to_vec()))
    }

    /// Constructor for weights produced by internal formulas that satisfy
    /// the invariants by construction.
    pub(crate) fn new_unchecked(w: Vec<f64>) -> Self {
        debug_assert!(!w.is_empty());
        debug_assert!(w.windows(2).all(|p| p[0] >= p[1]));
        debug_assert!((kahan_sum(&w) - 1.0).abs() <= 1e-9);
        Self(w)
    }

    /// The uniform vector `(1/n, ..., 1/n)`, the minimum of the weight
    /// class under majorization. Its mixture bounds collapse to F itself.
    ///
    /// # Panics
    /// Panics if `n == 0`.
    pub fn uniform(n: usize) -> Self {
        assert!(n >= 1, "weight vector length must be at least 1");
        Self(vec![1.0 / n as f64; n])
    }

    /// The convergent weight sequence
    /// `p_i(m) = (m + n - i + 1) / a_n(m)` with
    /// `a_n(m) = n*m + n*(n+1)/2`. Entries decrease linearly in `i` and
    /// tend to `1/n` as `m` grows; `sequence(n, m + 1)` is majorized by
    /// `sequence(n, m)`.
    ///
    /// # Panics
    /// Panics if `n == 0`.
    pub fn sequence(n: usize, m: u64) -> Self {
        assert!(n >= 1, "weight vector length must be at least 1");
        let a = normalizer(n, m);
        let w = (1..=n)
            .map(|i| (m as u128 + (n - i) as u128 + 1) as f64 / a)
            .collect();
        Self(w)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The entries, nonincreasing, summing to one.
    pub fn weights(&self) -> &[f64] {
        &self.0
    }

    /// Entry at zero-based position `idx`.
    pub fn get(&self, idx: usize) -> f64 {
        self.0[idx]
    }
}

impl AsRef<[f64]> for WeightVector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// The normalizing constant `a_n(m) = n*m + n*(n+1)/2` of the weight
/// sequence, exact in f64 for every reachable `(n, m)`.
pub fn normalizer(n: usize, m: u64) -> f64 {
    let n = n as u128;
    (n * m as u128 + n * (n + 1) / 2) as f64
}

/// Tests whether `a` is majorized by `b`: with both vectors sorted in
/// decreasing order, every prefix sum of `a` is at most the matching
/// prefix sum of `b`, and the totals agree. All comparisons carry an
/// absolute slack of [`MAJORIZATION_TOL`].
///
/// Majorized means "flatter": the uniform vector is majorized by every
/// vector with the same total.
pub fn is_majorized(a: &[f64], b: &[f64]) -> Result<bool> {
    if a.is_empty() {
        return Err(Error::EmptyInput);
    }
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let mut sa = a.to_vec();
    let mut sb = b.to_vec();
    sa.sort_unstable_by(|x, y| y.total_cmp(x));
    sb.sort_unstable_by(|x, y| y.total_cmp(x));

    let n = sa.len();
    let mut pa = 0.0;
    let mut pb = 0.0;
    for k in 0..n - 1 {
        pa += sa[k];
        pb += sb[k];
        if pa > pb + MAJORIZATION_TOL {
            return Ok(false);
        }
    }
    pa += sa[n - 1];
    pb += sb[n - 1];
    Ok((pa - pb).abs() <= MAJORIZATION_TOL)
}

/// Compensated summation; keeps the sum constraint meaningful at the
/// 1e-12 tolerance for long vectors.
pub(crate) fn kahan_sum(xs: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for &x in xs {
        let y = x - c;
        let t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    sum
}
