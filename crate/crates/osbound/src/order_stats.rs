//! Order-statistic CDFs, the two-sided mixture envelope, signature
//! mixtures, and order-statistic means.
//!
//! For a sample of size n from F, the i-th order statistic has CDF
//! `F_{i:n}(x) = I_{F(x)}(i, n-i+1)` (regularized incomplete beta).
//! Mixing the reversed ranks with nonincreasing weights w gives a lower
//! bound `H(x) = sum_i w_i F_{n-i+1:n}(x)` and mixing the ranks directly
//! gives an upper bound `K(x) = sum_i w_i F_{i:n}(x)`, with
//! `H <= F <= K` pointwise and equality exactly at uniform weights.

use statrs::function::beta::beta_reg;

use crate::dist::Distribution;
use crate::error::{Error, Result};
use crate::majorization::{kahan_sum, WeightVector, MAJORIZATION_TOL};
use crate::quad::{integrate, QuadratureConfig};

/// An underlying distribution paired with an admissible weight vector;
/// the unit evaluated by the envelope and distance functions.
#[derive(Debug, Clone)]
pub struct MixtureSpec {
    pub dist: Distribution,
    pub weights: WeightVector,
}

impl MixtureSpec {
    pub fn new(dist: Distribution, weights: WeightVector) -> Self {
        Self { dist, weights }
    }

    /// The implied sample size n (the weight count).
    pub fn n(&self) -> usize {
        self.weights.len()
    }
}

/// The envelope values at one point: `lower <= F(x) <= upper`.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct BoundPair {
    pub lower: f64,
    pub upper: f64,
}

/// A probability vector without a monotonicity requirement, as arises
/// from system signatures. Mixtures with these weights are exact mixture
/// CDFs but carry no envelope guarantee.
#[derive(Debug, Clone, PartialEq)]
pub struct SignatureVector(Vec<f64>);

impl SignatureVector {
    /// Validates nonnegative entries summing to one within `1e-12`.
    pub fn new(raw: &[f64]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyInput);
        }
        for (index, &w) in raw.iter().enumerate() {
            if !w.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "signature entry s[{index}] = {w} is not finite"
                )));
            }
            if w < 0.0 {
                return Err(Error::NegativeWeight { index, value: w });
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

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[f64] {
        &self.0
    }
}

fn check_rank(i: usize, n: usize) -> Result<()> {
    if n == 0 || i == 0 || i > n {
        return Err(Error::RankOutOfRange { i, n });
    }
    Ok(())
}

/// `F_{i:n}(x)`, the CDF of the i-th smallest of n draws from `dist`,
/// through the regularized incomplete beta function.
pub fn order_stat_cdf(dist: &Distribution, i: usize, n: usize, x: f64) -> Result<f64> {
    check_rank(i, n)?;
    Ok(order_stat_cdf_from_prob(dist.cdf(x), i, n))
}

/// `F_{i:n}` for every rank at one point, sharing the single `F(x)`
/// evaluation. Entry `[i-1]` is rank i; entries are nonincreasing in i.
pub fn order_stat_cdf_all(dist: &Distribution, n: usize, x: f64) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::RankOutOfRange { i: 1, n });
    }
    Ok(order_stat_cdf_all_from_prob(dist.cdf(x), n))
}

pub(crate) fn order_stat_cdf_from_prob(prob: f64, i: usize, n: usize) -> f64 {
    let p = prob.clamp(0.0, 1.0);
    if p == 0.0 {
        return 0.0;
    }
    if p == 1.0 {
        return 1.0;
    }
    beta_reg(i as f64, (n - i + 1) as f64, p)
}

pub(crate) fn order_stat_cdf_all_from_prob(prob: f64, n: usize) -> Vec<f64> {
    (1..=n)
        .map(|i| order_stat_cdf_from_prob(prob, i, n))
        .collect()
}

/// Independent route to `F_{i:n}(x)`: the binomial tail sum
/// `sum_{k=i..n} C(n,k) F^k (1-F)^{n-k}`. Exact-rational structure in
/// f64; intended as a cross-check oracle for n up to about 30.
pub fn order_stat_cdf_oracle(dist: &Distribution, i: usize, n: usize, x: f64) -> Result<f64> {
    check_rank(i, n)?;
    let p = dist.cdf(x).clamp(0.0, 1.0);
    let q = 1.0 - p;

    // C(n, i) by the multiplicative formula, then the ratio recurrence.
    let mut binom = 1.0f64;
    for k in 0..i {
        binom = binom * (n - k) as f64 / (k + 1) as f64;
    }
    let mut sum = 0.0;
    for k in i..=n {
        sum += binom * p.powi(k as i32) * q.powi((n - k) as i32);
        binom = binom * (n - k) as f64 / (k + 1) as f64;
    }
    Ok(sum.clamp(0.0, 1.0))
}

pub(crate) fn pair_from_osc(w: &[f64], osc: &[f64]) -> BoundPair {
    let n = w.len();
    let mut upper = 0.0;
    let mut lower = 0.0;
    for i in 0..n {
        upper += w[i] * osc[i];
        lower += w[i] * osc[n - 1 - i];
    }
    BoundPair {
        lower: lower.clamp(0.0, 1.0),
        upper: upper.clamp(0.0, 1.0),
    }
}

/// Both envelope values at `x`, sharing one CDF evaluation.
pub fn bound_pair(spec: &MixtureSpec, x: f64) -> BoundPair {
    let osc = order_stat_cdf_all_from_prob(spec.dist.cdf(x), spec.n());
    pair_from_osc(spec.weights.weights(), &osc)
}

/// `H(x) = sum_i w_i F_{n-i+1:n}(x)`, the lower envelope.
pub fn lower_bound(spec: &MixtureSpec, x: f64) -> f64 {
    bound_pair(spec, x).lower
}

/// `K(x) = sum_i w_i F_{i:n}(x)`, the upper envelope.
pub fn upper_bound(spec: &MixtureSpec, x: f64) -> f64 {
    bound_pair(spec, x).upper
}

/// Mixture CDF `sum_i s_i F_{i:n}(x)` for a signature vector `s`.
pub fn signature_cdf(dist: &Distribution, signature: &SignatureVector, x: f64) -> f64 {
    let osc = order_stat_cdf_all_from_prob(dist.cdf(x), signature.len());
    let mut acc = 0.0;
    for (s, g) in signature.entries().iter().zip(&osc) {
        acc += s * g;
    }
    acc.clamp(0.0, 1.0)
}

/// `E[X_{i:n}]` for `dist`. Empirical kinds are summed exactly over the
/// step CDF; continuous kinds integrate the upper-tail identity
/// `E[X_{i:n}] = lo + integral over [lo, hi] of (1 - F_{i:n})` on the
/// truncated support window.
pub fn order_stat_mean(
    dist: &Distribution,
    i: usize,
    n: usize,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    check_rank(i, n)?;
    cfg.validate()?;

    if let Some(samples) = dist.empirical_samples() {
        // Jump decomposition: each sample index contributes its value
        // times the beta-CDF increment over its 1/N slice. Ties split one
        // jump across equal values, leaving the total unchanged.
        let count = samples.len() as f64;
        let mut acc = 0.0;
        let mut prev = 0.0;
        for (j, &v) in samples.iter().enumerate() {
            let next = order_stat_cdf_from_prob((j + 1) as f64 / count, i, n);
            acc += v * (next - prev);
            prev = next;
        }
        return Ok(acc);
    }

    let (lo, hi) = dist.support_window(cfg.truncation_prob);
    let tail = |x: f64| 1.0 - order_stat_cdf_from_prob(dist.cdf(x), i, n);
    let q = integrate(tail, lo, hi, cfg.abs_tol, cfg.max_depth)?;
    Ok(lo + q.value)
}

/// `E[X_{i:n}]` for every rank i = 1..=n, sorted ascending by rank.
pub fn order_stat_means(dist: &Distribution, n: usize, cfg: &QuadratureConfig) -> Result<Vec<f64>> {
    (1..=n).map(|i| order_stat_mean(dist, i, n, cfg)).collect()
}
