//! Two-parameter Mittag-Leffler function by direct series summation.

use crate::error::{Error, Result};

/// Parameters for [`mittag_leffler`]: the function orders and the truncation
/// policy. The series stops once the next term's magnitude drops below
/// `tolerance`, and errors out if that has not happened after `max_terms`
/// terms.
#[derive(Debug, Clone)]
pub struct MittagLefflerParams {
    pub alpha: f64,
    pub beta: f64,
    pub tolerance: f64,
    pub max_terms: usize,
}

impl MittagLefflerParams {
    /// Orders with the default desk-scale truncation policy
    /// (tolerance 1e-15, at most 400 terms).
    pub fn new(alpha: f64, beta: f64) -> Self {
        Self {
            alpha,
            beta,
            tolerance: 1e-15,
            max_terms: 400,
        }
    }
}

/// Reciprocal gamma, treating poles (and overflow to infinity) as exact
/// zeros, which is the correct analytic continuation of `1/Gamma`.
fn recip_gamma(x: f64) -> f64 {
    let g = libm::tgamma(x);
    if g.is_finite() {
        1.0 / g
    } else {
        0.0
    }
}

/// `E_{alpha,beta}(z) = sum_j z^j / Gamma(alpha j + beta)` for real `z` at
/// desk scale (|z| up to ~20). Intended for solution verification, not bulk
/// evaluation.
pub fn mittag_leffler(params: &MittagLefflerParams, z: f64) -> Result<f64> {
    if !(params.alpha > 0.0) {
        return Err(Error::InvalidParam(format!(
            "Mittag-Leffler alpha must be positive, got {}",
            params.alpha
        )));
    }
    let mut sum = 0.0;
    let mut zpow = 1.0;
    for j in 0..params.max_terms {
        let term = zpow * recip_gamma(params.alpha * j as f64 + params.beta);
        sum += term;
        // Termination looks at the *next* term: the gamma in the denominator
        // grows monotonically once alpha*j + beta passes the minimum of
        // Gamma, so this is a sound remainder proxy at desk scale.
        zpow *= z;
        let next = zpow * recip_gamma(params.alpha * (j + 1) as f64 + params.beta);
        if next.abs() < params.tolerance {
            return Ok(sum + next);
        }
    }
    Err(Error::SeriesNotConverged {
        max_terms: params.max_terms,
        last_term: zpow,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn reduces_to_exp() {
        let p = MittagLefflerParams::new(1.0, 1.0);
        let mut z = -5.0;
        while z <= 5.0 {
            assert_relative_eq!(
                mittag_leffler(&p, z).unwrap(),
                z.exp(),
                max_relative = 1e-12
            );
            z += 0.5;
        }
    }

    #[test]
    fn value_at_zero_is_one() {
        for a in [0.2, 0.5, 0.8] {
            let p = MittagLefflerParams::new(a, 1.0);
            assert_eq!(mittag_leffler(&p, 0.0).unwrap(), 1.0);
        }
    }

    #[test]
    fn half_order_against_erfc_identity() {
        // E_{1/2,1}(-x) = e^{x^2} erfc(x) at x = 1
        let p = MittagLefflerParams::new(0.5, 1.0);
        assert_relative_eq!(
            mittag_leffler(&p, -1.0).unwrap(),
            4.2758357615580700e-01,
            max_relative = 1e-13
        );
    }

    #[test]
    fn second_order_is_cos_at_minus_one() {
        let p = MittagLefflerParams::new(2.0, 1.0);
        assert_relative_eq!(mittag_leffler(&p, -1.0).unwrap(), 1f64.cos(), max_relative = 1e-13);
    }

    #[test]
    fn two_parameter_recurrence() {
        // E_{a,b}(z) = z E_{a,a+b}(z) + 1/Gamma(b), at a = b = 1/2, z = -1
        let lhs = mittag_leffler(&MittagLefflerParams::new(0.5, 0.5), -1.0).unwrap();
        let rhs = -mittag_leffler(&MittagLefflerParams::new(0.5, 1.0), -1.0).unwrap()
            + 1.0 / std::f64::consts::PI.sqrt();
        assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-13);
        assert_relative_eq!(lhs, 1.3660600739194942e-01, max_relative = 1e-12);
    }

    #[test]
    fn frozen_interior_order_value() {
        let p = MittagLefflerParams::new(0.9, 1.0);
        assert_relative_eq!(
            mittag_leffler(&p, -1.0).unwrap(),
            3.7606602142464179e-01,
            max_relative = 1e-12
        );
    }

    #[test]
    fn non_convergence_reported() {
        let p = MittagLefflerParams {
            alpha: 0.5,
            beta: 1.0,
            tolerance: 1e-15,
            max_terms: 5,
        };
        assert!(matches!(
            mittag_leffler(&p, 10.0),
            Err(Error::SeriesNotConverged { .. })
        ));
    }
}
