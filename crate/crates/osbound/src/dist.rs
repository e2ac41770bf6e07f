//! Underlying distributions: CDF evaluation, generalized-inverse
//! quantiles, means, and deterministic inverse-transform sampling.
//!
//! Four kinds are supported: uniform on `[a, b]`, the standard normal,
//! exponential with a rate parameter, and the empirical distribution of a
//! stored sample (right-continuous step CDF, jumps of `1/N` at each
//! point). Every CDF is nondecreasing and right-continuous with values in
//! `[0, 1]`; `quantile` is the generalized inverse, so
//! `cdf(quantile(u)) >= u` always, with equality for continuous kinds.

use std::fmt;
use std::path::Path;

use rand::distributions::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::function::erf;

use crate::error::{Error, Result};
use crate::majorization::kahan_sum;

const SQRT_2: f64 = std::f64::consts::SQRT_2;
/// sqrt(2*pi), the normal density normalizer.
const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

/// Seed for the deterministic ChaCha8 generator used by all sampling in
/// this crate. Equal seeds give byte-identical sample streams on every
/// platform and thread count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomSeed(pub u64);

impl From<u64> for RandomSeed {
    fn from(seed: u64) -> Self {
        Self(seed)
    }
}

#[derive(Debug, Clone)]
enum Kind {
    Uniform {
        a: f64,
        b: f64,
    },
    StdNormal,
    Exponential {
        rate: f64,
    },
    /// Samples sorted ascending; ties allowed.
    Empirical {
        samples: Vec<f64>,
    },
}

/// A fully specified underlying distribution F.
#[derive(Debug, Clone)]
pub struct Distribution {
    kind: Kind,
}

impl Distribution {
    /// Uniform on `[a, b]`. Requires `a < b`, both finite.
    pub fn uniform(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidParameter(format!(
                "uniform endpoints must be finite with a < b, got a = {a}, b = {b}"
            )));
        }
        Ok(Self {
            kind: Kind::Uniform { a, b },
        })
    }

    /// The standard normal N(0, 1).
    pub fn std_normal() -> Self {
        Self {
            kind: Kind::StdNormal,
        }
    }

    /// Exponential with the given rate (mean `1/rate`). Requires a
    /// positive, finite rate.
    pub fn exponential(rate: f64) -> Result<Self> {
        if !(rate.is_finite() && rate > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "exponential rate must be positive and finite, got {rate}"
            )));
        }
        Ok(Self {
            kind: Kind::Exponential { rate },
        })
    }

    /// Empirical distribution of `samples` (unsorted input accepted,
    /// stored sorted). Requires at least one finite value; ties allowed.
    pub fn empirical(mut samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(bad) = samples.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "empirical sample value {bad} is not finite"
            )));
        }
        samples.sort_unstable_by(|x, y| x.total_cmp(y));
        Ok(Self {
            kind: Kind::Empirical { samples },
        })
    }

    /// Reads an empirical sample from a text file with one decimal value
    /// per line. Blank (or whitespace-only) lines are skipped; any other
    /// unparsable or non-finite line aborts with its 1-based line number.
    pub fn empirical_from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut samples = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            match t.parse::<f64>() {
                Ok(v) if v.is_finite() => samples.push(v),
                _ => {
                    return Err(Error::SampleParse {
                        line: idx + 1,
                        content: t.to_string(),
                    })
                }
            }
        }
        Self::empirical(samples)
    }

    /// F(x). Nondecreasing, right-continuous, in `[0, 1]`.
    pub fn cdf(&self, x: f64) -> f64 {
        match &self.kind {
            Kind::Uniform { a, b } => {
                if x <= *a {
                    0.0
                } else if x >= *b {
                    1.0
                } else {
                    (x - a) / (b - a)
                }
            }
            Kind::StdNormal => 0.5 * erf::erfc(-x / SQRT_2),
            Kind::Exponential { rate } => {
                if x <= 0.0 {
                    0.0
                } else {
                    -(-rate * x).exp_m1()
                }
            }
            Kind::Empirical { samples } => {
                let count = samples.partition_point(|&s| s <= x);
                count as f64 / samples.len() as f64
            }
        }
    }

    /// Generalized inverse `inf {x : F(x) >= u}`. Continuous kinds accept
    /// `u` in the open interval `(0, 1)`; the empirical kind accepts
    /// `(0, 1]` and returns an observed sample value.
    pub fn quantile(&self, u: f64) -> Result<f64> {
        match &self.kind {
            Kind::Empirical { samples } => {
                if !(u > 0.0 && u <= 1.0) {
                    return Err(Error::QuantileOutOfRange { u });
                }
                let n = samples.len() as f64;
                // Smallest j with j/N >= u; the ceil can land one off at
                // representation boundaries, so nudge.
                let mut j = (u * n).ceil();
                if j >= 2.0 && (j - 1.0) / n >= u {
                    j -= 1.0;
                } else if j / n < u {
                    j += 1.0;
                }
                Ok(samples[(j as usize).clamp(1, samples.len()) - 1])
            }
            _ => {
                if !(u > 0.0 && u < 1.0) {
                    return Err(Error::QuantileOutOfRange { u });
                }
                Ok(match &self.kind {
                    Kind::Uniform { a, b } => a + u * (b - a),
                    Kind::StdNormal => normal_quantile(u),
                    Kind::Exponential { rate } => -(-u).ln_1p() / rate,
                    Kind::Empirical { .. } => unreachable!(),
                })
            }
        }
    }

    /// E(X). Exact for all four kinds.
    pub fn mean(&self) -> f64 {
        match &self.kind {
            Kind::Uniform { a, b } => 0.5 * (a + b),
            Kind::StdNormal => 0.0,
            Kind::Exponential { rate } => 1.0 / rate,
            Kind::Empirical { samples } => kahan_sum(samples) / samples.len() as f64,
        }
    }

    /// Draws `count` values by inverse-transform sampling from a ChaCha8
    /// stream seeded with `seed`. Deterministic: equal inputs give equal
    /// output on every platform.
    pub fn sample(&self, seed: RandomSeed, count: usize) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.0);
        (0..count).map(|_| self.sample_one(&mut rng)).collect()
    }

    /// One inverse-transform draw from the supplied generator.
    pub(crate) fn sample_one(&self, rng: &mut impl Rng) -> f64 {
        let u: f64 = rng.sample(Open01);
        self.quantile(u).expect("Open01 draws lie in (0, 1)")
    }

    /// Upper bound on the CDF mass integrals left outside the support
    /// window: `integral of F below lo` plus `integral of (1 - F) above
    /// hi`. Zero for bounded kinds; envelope-gap integrals truncated at
    /// the window miss at most n times this value.
    pub(crate) fn tail_mass_bound(&self, tail_prob: f64) -> f64 {
        match &self.kind {
            Kind::Uniform { .. } | Kind::Empirical { .. } => 0.0,
            Kind::StdNormal => {
                // Each tail integral is phi(hi) - hi * tail_prob <= phi(hi).
                let hi = normal_quantile(1.0 - tail_prob);
                2.0 * (-0.5 * hi * hi).exp() / SQRT_2PI
            }
            Kind::Exponential { rate } => tail_prob / rate,
        }
    }

    /// Window `[lo, hi]` carrying all but at most `2 * tail_prob` of the
    /// probability: the exact support for bounded kinds, quantile-based
    /// truncation otherwise. The exponential window starts at 0 exactly.
    pub fn support_window(&self, tail_prob: f64) -> (f64, f64) {
        debug_assert!(tail_prob > 0.0 && tail_prob < 0.5);
        match &self.kind {
            Kind::Uniform { a, b } => (*a, *b),
            Kind::Empirical { samples } => (samples[0], samples[samples.len() - 1]),
            Kind::StdNormal => {
                let hi = normal_quantile(1.0 - tail_prob);
                (-hi, hi)
            }
            Kind::Exponential { rate } => (0.0, -tail_prob.ln() / rate),
        }
    }

    /// Sorted sample values when the kind is empirical.
    pub fn empirical_samples(&self) -> Option<&[f64]> {
        match &self.kind {
            Kind::Empirical { samples } => Some(samples),
            _ => None,
        }
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            Kind::Uniform { a, b } => write!(f, "uniform({a}, {b})"),
            Kind::StdNormal => write!(f, "normal"),
            Kind::Exponential { rate } => write!(f, "exp({rate})"),
            Kind::Empirical { samples } => write!(f, "empirical(n = {})", samples.len()),
        }
    }
}

/// Standard normal quantile: Boost-grade inverse complementary error
/// function, then one Newton step against the exact CDF to pin the
/// round-trip error near machine precision.
fn normal_quantile(u: f64) -> f64 {
    let x = -SQRT_2 * erf::erfc_inv(2.0 * u);
    let pdf = (-0.5 * x * x).exp() / SQRT_2PI;
    if pdf > 1e-300 {
        x - (0.5 * erf::erfc(-x / SQRT_2) - u) / pdf
    } else {
        x
    }
}

/// One-sample Kolmogorov-Smirnov statistic `sup_x |F_n(x) - F(x)|`
/// between the empirical CDF of `sample` and `dist`.
pub fn ks_statistic(dist: &Distribution, sample: &[f64]) -> f64 {
    let mut xs = sample.to_vec();
    xs.sort_unstable_by(|x, y| x.total_cmp(y));
    let n = xs.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in xs.iter().enumerate() {
        let f = dist.cdf(x);
        d = d.max((f - i as f64 / n).abs());
        d = d.max(((i + 1) as f64 / n - f).abs());
    }
    d
}
