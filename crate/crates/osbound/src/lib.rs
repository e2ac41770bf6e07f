//! Two-sided envelope bounds for a distribution function F, built from
//! weighted mixtures of order-statistic CDFs.
//!
//! Any nonincreasing probability vector w yields the pointwise bracket
//!
//! ```text
//! H(x) = sum_i w_i F_{n-i+1:n}(x)  <=  F(x)  <=  sum_i w_i F_{i:n}(x) = K(x)
//! ```
//!
//! with equality exactly at uniform weights, and flatter weight vectors
//! (in the majorization order) give nested, tighter brackets. The crate
//! provides:
//!
//! - the weight simplex, majorization test, and the convergent weight
//!   sequence p(m) ([`majorization`]);
//! - uniform, standard normal, exponential, and empirical underlying
//!   distributions with deterministic inverse-transform sampling
//!   ([`dist`]);
//! - order-statistic CDFs, the envelope, signature mixtures, and
//!   order-statistic means ([`order_stats`]);
//! - L1/L2 envelope widths, convergence-rate constants and tables, and
//!   an exhaustive grid optimizer for constrained weights ([`analysis`]);
//! - almost-sure bounds on sample means and two-sided bounds on E(X)
//!   ([`sample_bounds`]).
//!
//! # Example
//!
//! ```
//! use osbound::{
//!     analysis::l2_distance,
//!     dist::Distribution,
//!     majorization::WeightVector,
//!     order_stats::{bound_pair, MixtureSpec},
//!     quad::QuadratureConfig,
//! };
//!
//! let spec = MixtureSpec::new(
//!     Distribution::uniform(0.0, 1.0).unwrap(),
//!     WeightVector::new(&[5.0 / 9.0, 3.0 / 9.0, 1.0 / 9.0]).unwrap(),
//! );
//! let pair = bound_pair(&spec, 0.5);
//! assert!(pair.lower <= 0.5 && 0.5 <= pair.upper);
//!
//! let width = l2_distance(&spec, &QuadratureConfig::default()).unwrap();
//! assert!((width.value - 8.0 / 135.0).abs() < 1e-8);
//! ```

pub mod analysis;
pub mod dist;
pub mod error;
pub mod majorization;
pub mod order_stats;
pub mod quad;
pub mod sample_bounds;

pub use analysis::{
    best_m, c_constant, delta_table, l1_distance, l2_distance, min_distance_weights, rate_bound,
    DistanceReport, DistanceRow,
};
pub use dist::{ks_statistic, Distribution, RandomSeed};
pub use error::{Error, Result};
pub use majorization::{is_majorized, normalizer, WeightVector, MAJORIZATION_TOL};
pub use order_stats::{
    bound_pair, lower_bound, order_stat_cdf, order_stat_cdf_all, order_stat_cdf_oracle,
    order_stat_mean, order_stat_means, signature_cdf, upper_bound, BoundPair, MixtureSpec,
    SignatureVector,
};
pub use quad::{integrate, Estimate, QuadratureConfig};
pub use sample_bounds::{
    moment_bounds, sample_mean_bounds, verify_sample_bounds, MomentBoundReport, SampleBoundReport,
};
