//! Dense polynomial root finding.
//!
//! Two independent engines, used to cross-check each other:
//!
//! * a companion-matrix eigenvalue solve (real coefficients only, via
//!   [`nalgebra`]'s real Schur decomposition), and
//! * an Aberth-Ehrlich simultaneous iteration, which also accepts complex
//!   coefficients.
//!
//! Coefficients are always given in descending degree order,
//! `coeffs[0] x^d + ... + coeffs[d]`.

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::error::{Error, Result};

/// Hard cap on the polynomial degree a dense solve will accept.
pub const DEGREE_CEILING: usize = 2000;

type C = Complex<f64>;

/// Strip (numerically) zero leading coefficients so the degree is honest.
/// Zero is judged relative to the largest coefficient magnitude.
fn trim_leading(coeffs: &[C]) -> &[C] {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    if scale == 0.0 {
        return &coeffs[coeffs.len()..];
    }
    let cut = scale * 1e-300;
    let mut start = 0;
    while start < coeffs.len() && coeffs[start].norm() <= cut {
        start += 1;
    }
    &coeffs[start..]
}

/// All roots of the polynomial with the given descending coefficients.
///
/// Real-coefficient inputs go through the companion matrix; inputs with any
/// imaginary part use Aberth-Ehrlich. Degrees above `ceiling` (capped at
/// [`DEGREE_CEILING`]) are refused rather than silently attempted.
pub fn polynomial_roots(coeffs: &[C], ceiling: usize) -> Result<Vec<C>> {
    let coeffs = trim_leading(coeffs);
    if coeffs.len() <= 1 {
        return Ok(Vec::new());
    }
    let degree = coeffs.len() - 1;
    let ceiling = ceiling.min(DEGREE_CEILING);
    if degree > ceiling {
        return Err(Error::DegreeCeiling { n: degree, ceiling });
    }
    if coeffs.iter().all(|c| c.im == 0.0) {
        companion_roots(coeffs)
    } else {
        aberth_roots(coeffs, 200, 1e-12)
    }
}

/// Eigenvalues of the companion matrix of a real-coefficient polynomial.
fn companion_roots(coeffs: &[C]) -> Result<Vec<C>> {
    let degree = coeffs.len() - 1;
    let lead = coeffs[0].re;
    // monic normalization: row-major companion with 1s on the subdiagonal
    // and -a_k (ascending) down the last column
    let mut m = DMatrix::<f64>::zeros(degree, degree);
    for i in 1..degree {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..degree {
        // coefficient of x^i is coeffs[degree - i]
        m[(i, degree - 1)] = -coeffs[degree - i].re / lead;
    }
    let eig = m.complex_eigenvalues();
    Ok(eig.iter().map(|z| C::new(z.re, z.im)).collect())
}

/// Horner evaluation of p and p' at `z`.
fn horner(coeffs: &[C], z: C) -> (C, C) {
    let mut p = C::new(0.0, 0.0);
    let mut dp = C::new(0.0, 0.0);
    for &c in coeffs {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Aberth-Ehrlich simultaneous root iteration.
///
/// Converges when every correction is small relative to its iterate; a
/// stall past `max_iter` sweeps is an error, not a quiet partial answer.
pub fn aberth_roots(coeffs: &[C], max_iter: usize, tol: f64) -> Result<Vec<C>> {
    let coeffs = trim_leading(coeffs);
    if coeffs.len() <= 1 {
        return Ok(Vec::new());
    }
    let degree = coeffs.len() - 1;

    // Cauchy-style enclosing radius: 1 + max |a_k / a_d|
    let lead = coeffs[0].norm();
    let radius = 1.0
        + coeffs[1..]
            .iter()
            .map(|c| c.norm() / lead)
            .fold(0.0f64, f64::max);

    // initial guesses on a circle, phase-offset so no guess sits on an axis
    let mut z: Vec<C> = (0..degree)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (degree as f64) + 0.4;
            C::from_polar(radius.min(2.0), theta)
        })
        .collect();

    for _ in 0..max_iter {
        let mut worst = 0.0f64;
        for i in 0..degree {
            let (p, dp) = horner(coeffs, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let newton = if dp.norm() == 0.0 {
                C::new(tol, tol)
            } else {
                p / dp
            };
            let mut sum = C::new(0.0, 0.0);
            for j in 0..degree {
                if j != i {
                    let d = z[i] - z[j];
                    if d.norm() > 0.0 {
                        sum += d.inv();
                    }
                }
            }
            let denom = C::new(1.0, 0.0) - newton * sum;
            let w = if denom.norm() == 0.0 { newton } else { newton / denom };
            z[i] -= w;
            let rel = w.norm() / (1.0 + z[i].norm());
            worst = worst.max(rel);
        }
        if worst <= tol {
            return Ok(z);
        }
    }
    Err(Error::RootsNotConverged {
        n: degree,
        tau_hat: format!("degree-{degree} dense solve"),
    })
}
