//! Distances between the envelope bounds, convergence-rate constants,
//! distance tables over the weight sequence, and weight selection.
//!
//! Core facts exercised here:
//! - `Delta_m = integral of (K - H)` for `sequence(n, m)` satisfies
//!   `Delta_m * a_n(m)` constant in m, because every weight's excess over
//!   `1/n` scales as `1/a_n(m)`;
//! - `Delta_m <= rate_bound(n, m) = (n-1)/(2 a_n(m)) * c_n` where
//!   `c_n = sum_i |E[X_{n-i+1:n}] - E[X_{i:n}]|`;
//! - distances vanish exactly at uniform weights.

use rayon::prelude::*;

use crate::dist::Distribution;
use crate::error::{Error, Result};
use crate::majorization::{normalizer, WeightVector};
use crate::order_stats::{
    order_stat_cdf_all_from_prob, order_stat_means, pair_from_osc, MixtureSpec,
};
use crate::quad::{integrate, Estimate, QuadratureConfig};

/// `K(x) - H(x)` expressed through the underlying probability
/// `prob = F(x)`; the envelope gap depends on x only through F(x).
fn gap_at_prob(w: &[f64], prob: f64) -> f64 {
    let osc = order_stat_cdf_all_from_prob(prob, w.len());
    let pair = pair_from_osc(w, &osc);
    (pair.upper - pair.lower).max(0.0)
}

fn envelope_gap_distance(
    spec: &MixtureSpec,
    cfg: &QuadratureConfig,
    square: bool,
) -> Result<Estimate> {
    cfg.validate()?;
    let w = spec.weights.weights();

    if let Some(samples) = spec.dist.empirical_samples() {
        // Step CDF: the gap is constant between consecutive sample
        // values, so the integral is a finite sum, exact up to the
        // special-function evaluations.
        let count = samples.len();
        let mut acc = 0.0;
        for j in 1..count {
            let width = samples[j] - samples[j - 1];
            if width == 0.0 {
                continue;
            }
            let gap = gap_at_prob(w, j as f64 / count as f64);
            acc += width * if square { gap * gap } else { gap };
        }
        return Ok(Estimate {
            value: acc,
            abs_error: 0.0,
        });
    }

    let (lo, hi) = spec.dist.support_window(cfg.truncation_prob);
    let f = |x: f64| {
        let gap = gap_at_prob(w, spec.dist.cdf(x));
        if square {
            gap * gap
        } else {
            gap
        }
    };
    let q = integrate(f, lo, hi, cfg.abs_tol, cfg.max_depth)?;
    // Outside the window the gap is at most n times the remaining tail
    // mass of F (and the squared gap is smaller still).
    let tail = spec.n() as f64 * spec.dist.tail_mass_bound(cfg.truncation_prob);
    Ok(Estimate {
        value: q.value,
        abs_error: q.abs_error + tail,
    })
}

/// `integral of |K - H|` over the support: the L1 envelope width.
pub fn l1_distance(spec: &MixtureSpec, cfg: &QuadratureConfig) -> Result<Estimate> {
    envelope_gap_distance(spec, cfg, false)
}

/// `integral of (K - H)^2` over the support: the squared-L2 envelope
/// width used by the weight optimizer.
pub fn l2_distance(spec: &MixtureSpec, cfg: &QuadratureConfig) -> Result<Estimate> {
    envelope_gap_distance(spec, cfg, true)
}

/// `c_n = sum_i |E[X_{n-i+1:n}] - E[X_{i:n}]|`, the distribution-specific
/// constant in the convergence rate.
pub fn c_constant(dist: &Distribution, n: usize, cfg: &QuadratureConfig) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let means = order_stat_means(dist, n, cfg)?;
    Ok((1..=n).map(|i| (means[n - i] - means[i - 1]).abs()).sum())
}

/// The head-weight excess `p_1(m) - 1/n = (n-1) / (2 a_n(m))` that
/// multiplies `c_n` in the rate bound.
fn head_excess(n: usize, m: u64) -> f64 {
    (n as f64 - 1.0) / (2.0 * normalizer(n, m))
}

/// `rate_bound(n, m) = (n-1)/(2 a_n(m)) * c_n`, an upper bound for the
/// L1 distance of `sequence(n, m)`. Zero when n = 1, where the envelope
/// is degenerate.
pub fn rate_bound(dist: &Distribution, n: usize, m: u64, cfg: &QuadratureConfig) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if n == 1 {
        return Ok(0.0);
    }
    Ok(head_excess(n, m) * c_constant(dist, n, cfg)?)
}

/// One row of a convergence table for the weight sequence.
#[derive(Debug, Clone, serde::Serialize)]
pub struct DistanceRow {
    pub m: u64,
    /// L1 distance of `sequence(n, m)`.
    pub delta: f64,
    /// `(n-1)/(2 a_n(m)) * c_n`.
    pub rate_bound: f64,
    /// `delta * m^(1 - alpha)`; vanishing ratios certify `o(1/m^(1-alpha))`.
    pub ratio: f64,
}

/// Convergence table over a list of sequence indices m.
#[derive(Debug, Clone, serde::Serialize)]
pub struct DistanceReport {
    pub n: usize,
    pub alpha: f64,
    pub rows: Vec<DistanceRow>,
}

/// Tabulates `Delta_m`, its rate bound, and the decay ratio for each
/// requested m (rows sorted ascending). `alpha` must lie in (0, 1); the
/// order-statistic means behind `c_n` are computed once and shared.
pub fn delta_table(
    dist: &Distribution,
    n: usize,
    m_list: &[u64],
    alpha: f64,
    cfg: &QuadratureConfig,
) -> Result<DistanceReport> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    if m_list.is_empty() {
        return Err(Error::EmptyInput);
    }
    let c = if n == 1 {
        0.0
    } else {
        c_constant(dist, n, cfg)?
    };
    let mut ms = m_list.to_vec();
    ms.sort_unstable();
    let rows = ms
        .par_iter()
        .map(|&m| -> Result<DistanceRow> {
            let spec = MixtureSpec::new(dist.clone(), WeightVector::sequence(n, m));
            let delta = l1_distance(&spec, cfg)?.value;
            Ok(DistanceRow {
                m,
                delta,
                rate_bound: head_excess(n, m) * c,
                ratio: delta * (m as f64).powf(1.0 - alpha),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DistanceReport { n, alpha, rows })
}

/// Smallest m with `rate_bound(n, m) <= eps`. Closed-form seed from the
/// affine normalizer, then local adjustment so the minimality contract
/// survives floating-point edges.
pub fn best_m(dist: &Distribution, n: usize, eps: f64, cfg: &QuadratureConfig) -> Result<u64> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "eps must be positive and finite, got {eps}"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if n == 1 {
        return Ok(0);
    }
    let c = c_constant(dist, n, cfg)?;
    if c <= 0.0 {
        return Ok(0);
    }
    // rate <= eps  <=>  a_n(m) >= (n-1) c / (2 eps).
    let target = (n as f64 - 1.0) * c / (2.0 * eps);
    let seed = ((target - (n * (n + 1) / 2) as f64) / n as f64)
        .ceil()
        .max(0.0);
    if seed >= 9.0e15 {
        return Err(Error::InvalidParameter(format!(
            "eps = {eps} needs an m beyond the exactly representable range"
        )));
    }
    let rate = |m: u64| head_excess(n, m) * c;
    let mut m = seed as u64;
    while rate(m) > eps {
        m += 1;
    }
    while m > 0 && rate(m - 1) <= eps {
        m -= 1;
    }
    Ok(m)
}

/// Exhaustive grid search for the weight vector minimizing the squared-L2
/// envelope width subject to a minimum spread `w_1 - w_n >= gap`, over
/// vectors with entries `k_i / denominator`. Supports n up to 4 and
/// denominators up to 60; ties resolve to the lexicographically smallest
/// vector.
pub fn min_distance_weights(
    dist: &Distribution,
    n: usize,
    gap: f64,
    denominator: u32,
    cfg: &QuadratureConfig,
) -> Result<WeightVector> {
    if !(1..=4).contains(&n) {
        return Err(Error::InvalidParameter(format!(
            "grid search supports n in 1..=4, got {n}"
        )));
    }
    if !(1..=60).contains(&denominator) {
        return Err(Error::InvalidParameter(format!(
            "grid denominator must lie in 1..=60, got {denominator}"
        )));
    }
    if !(gap.is_finite() && gap >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "gap must be nonnegative and finite, got {gap}"
        )));
    }
    cfg.validate()?;

    let mut candidates = Vec::new();
    let mut current = Vec::with_capacity(n);
    enumerate_grid(n, denominator, denominator, &mut current, &mut candidates);

    // Spread constraint in integer numerators, with float slack for the
    // gap * denominator product.
    let need = gap * denominator as f64 - 1e-9;
    let feasible: Vec<Vec<u32>> = candidates
        .into_iter()
        .filter(|k| (k[0] - k[n - 1]) as f64 >= need)
        .collect();
    if feasible.is_empty() {
        return Err(Error::InfeasibleGap { gap, denominator });
    }

    let scored = feasible
        .par_iter()
        .enumerate()
        .map(|(idx, k)| -> Result<(f64, usize)> {
            let spec = MixtureSpec::new(dist.clone(), grid_vector(k, denominator));
            Ok((l2_distance(&spec, cfg)?.value, idx))
        })
        .collect::<Result<Vec<_>>>()?;
    let (_, idx) = scored
        .into_iter()
        .min_by(|a, b| a.partial_cmp(b).expect("distances are finite"))
        .expect("feasible set is non-empty");
    Ok(grid_vector(&feasible[idx], denominator))
}

/// All nonincreasing tuples of `slots` nonnegative numerators summing to
/// `remaining`, each at most `cap`, pushed in ascending lexicographic
/// order.
fn enumerate_grid(
    slots: usize,
    remaining: u32,
    cap: u32,
    current: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if slots == 1 {
        if remaining <= cap {
            current.push(remaining);
            out.push(current.clone());
            current.pop();
        }
        return;
    }
    let max_k = cap.min(remaining);
    // Later slots each hold at most k, so k * slots must cover the rest.
    let min_k = remaining.div_ceil(slots as u32);
    for k in min_k..=max_k {
        current.push(k);
        enumerate_grid(slots - 1, remaining - k, k, current, out);
        current.pop();
    }
}

fn grid_vector(k: &[u32], denominator: u32) -> WeightVector {
    WeightVector::new_unchecked(k.iter().map(|&v| v as f64 / denominator as f64).collect())
}
