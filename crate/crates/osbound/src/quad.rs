//! Adaptive Simpson quadrature on a finite interval.
//!
//! The integrator subdivides until the Richardson error estimate of each
//! leaf fits its share of the tolerance, accumulates those estimates, and
//! reports failure only when the accumulated estimate exceeds the request
//! (possible only after the depth budget runs out somewhere).

use crate::error::{Error, Result};

/// Tolerances shared by every integral-backed quantity in the crate.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureConfig {
    /// Absolute error budget for one integral.
    pub abs_tol: f64,
    /// Maximum bisection depth per subinterval. Also the runtime cap for
    /// unattainable tolerances: a tolerance the integrand cannot meet
    /// forces the full 2^max_depth leaves before the failure is reported.
    pub max_depth: u32,
    /// Probability mass dropped at each unbounded tail; integration
    /// windows are cut at the corresponding quantiles.
    pub truncation_prob: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-9,
            max_depth: 20,
            truncation_prob: 1e-9,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol.is_finite() && self.abs_tol > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "abs_tol must be positive and finite, got {}",
                self.abs_tol
            )));
        }
        if self.max_depth == 0 {
            return Err(Error::InvalidParameter(
                "max_depth must be at least 1".into(),
            ));
        }
        if !(self.truncation_prob > 0.0 && self.truncation_prob < 0.01) {
            return Err(Error::InvalidParameter(format!(
                "truncation_prob must lie in (0, 0.01), got {}",
                self.truncation_prob
            )));
        }
        Ok(())
    }
}

/// A computed value with an a-posteriori absolute error estimate.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct Estimate {
    pub value: f64,
    pub abs_error: f64,
}

struct Leaf {
    x: f64,
    fx: f64,
}

/// Integrates `f` over `[a, b]` to absolute tolerance `abs_tol`.
///
/// Returns the value together with the accumulated error estimate.
/// Errs with the partial value and achieved estimate when subdivision
/// depth runs out before the estimate fits the budget.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    max_depth: u32,
) -> Result<Estimate> {
    if !(a.is_finite() && b.is_finite() && a <= b) {
        return Err(Error::InvalidParameter(format!(
            "integration interval [{a}, {b}] must be finite and ordered"
        )));
    }
    if a == b {
        return Ok(Estimate {
            value: 0.0,
            abs_error: 0.0,
        });
    }

    let m = 0.5 * (a + b);
    let left = Leaf { x: a, fx: f(a) };
    let mid = Leaf { x: m, fx: f(m) };
    let right = Leaf { x: b, fx: f(b) };
    let whole = simpson(&left, &mid, &right);

    let mut acc_error = 0.0;
    let value = refine(
        &f,
        &left,
        &mid,
        &right,
        whole,
        abs_tol,
        max_depth,
        &mut acc_error,
    );
    if acc_error > abs_tol {
        return Err(Error::QuadratureNonConvergence {
            value,
            achieved: acc_error,
            requested: abs_tol,
        });
    }
    Ok(Estimate {
        value,
        abs_error: acc_error,
    })
}

fn simpson(l: &Leaf, m: &Leaf, r: &Leaf) -> f64 {
    (r.x - l.x) / 6.0 * (l.fx + 4.0 * m.fx + r.fx)
}

/// One adaptive step over [l, r] with midpoint m and Simpson value
/// `whole`. The two-sided refinement differs from `whole` by roughly 15x
/// the remaining error, so `delta / 15` is both the acceptance test and
/// the Richardson correction.
#[allow(clippy::too_many_arguments)]
fn refine<F: Fn(f64) -> f64>(
    f: &F,
    l: &Leaf,
    m: &Leaf,
    r: &Leaf,
    whole: f64,
    tol: f64,
    depth_left: u32,
    acc_error: &mut f64,
) -> f64 {
    let lm = Leaf {
        x: 0.5 * (l.x + m.x),
        fx: f(0.5 * (l.x + m.x)),
    };
    let rm = Leaf {
        x: 0.5 * (m.x + r.x),
        fx: f(0.5 * (m.x + r.x)),
    };
    let left = simpson(l, &lm, m);
    let right = simpson(m, &rm, r);
    let delta = left + right - whole;

    if delta.abs() <= 15.0 * tol || depth_left == 0 {
        *acc_error += delta.abs() / 15.0;
        return left + right + delta / 15.0;
    }
    refine(f, l, &lm, m, left, 0.5 * tol, depth_left - 1, acc_error)
        + refine(f, m, &rm, r, right, 0.5 * tol, depth_left - 1, acc_error)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn integrates_polynomials_exactly() {
        // Simpson is exact through cubics; the correction handles these
        // without subdivision.
        let q = integrate(|x| x * x * x - 2.0 * x + 1.0, 0.0, 2.0, 1e-9, 40).unwrap();
        assert_abs_diff_eq!(q.value, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn integrates_quartic_within_tolerance() {
        // integral of x^4 over [0,1] = 1/5.
        let q = integrate(|x| x.powi(4), 0.0, 1.0, 1e-9, 40).unwrap();
        assert_abs_diff_eq!(q.value, 0.2, epsilon = 1e-10);
        assert!(q.abs_error <= 1e-9);
    }

    #[test]
    fn integrates_transcendental_reference() {
        let q = integrate(f64::sin, 0.0, std::f64::consts::PI, 1e-10, 40).unwrap();
        assert_abs_diff_eq!(q.value, 2.0, epsilon = 1e-9);

        let q = integrate(|x| (-x).exp(), 0.0, 30.0, 1e-10, 40).unwrap();
        assert_abs_diff_eq!(q.value, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn handles_a_kink() {
        let q = integrate(|x: f64| x.abs(), -1.0, 1.0, 1e-9, 40).unwrap();
        assert_abs_diff_eq!(q.value, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn empty_interval_is_zero() {
        let q = integrate(|_| 123.0, 4.0, 4.0, 1e-9, 40).unwrap();
        assert_eq!(q.value, 0.0);
        assert_eq!(q.abs_error, 0.0);
    }

    #[test]
    fn rejects_bad_interval() {
        assert!(integrate(|x| x, 1.0, 0.0, 1e-9, 40).is_err());
        assert!(integrate(|x| x, 0.0, f64::INFINITY, 1e-9, 40).is_err());
    }

    #[test]
    fn unreachable_tolerance_reports_non_convergence() {
        let err = integrate(|x: f64| x.sin().abs(), 0.0, 10.0, 1e-300, 8).unwrap_err();
        match err {
            Error::QuadratureNonConvergence {
                value,
                achieved,
                requested,
            } => {
                assert!(achieved > requested);
                // The partial value is still in the right neighborhood:
                // integral of |sin| over [0, 10] = 7 + cos(10).
                assert_abs_diff_eq!(value, 7.0 + 10.0f64.cos(), epsilon = 1e-3);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn config_validation() {
        assert!(QuadratureConfig::default().validate().is_ok());
        let bad_tol = QuadratureConfig {
            abs_tol: 0.0,
            ..Default::default()
        };
        assert!(bad_tol.validate().is_err());
        let bad_depth = QuadratureConfig {
            max_depth: 0,
            ..Default::default()
        };
        assert!(bad_depth.validate().is_err());
        let bad_trunc = QuadratureConfig {
            truncation_prob: 0.5,
            ..Default::default()
        };
        assert!(bad_trunc.validate().is_err());
    }
}
