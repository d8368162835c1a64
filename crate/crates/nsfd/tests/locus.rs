//! Stability-polynomial and boundary-locus checks: frozen spectral radii,
//! frozen curve points, root-engine cross-validation, and the real-axis
//! stability interval.

use approx::{assert_abs_diff_eq, assert_relative_eq};
use num_complex::Complex;

use nsfd::fraccore::FractionalOrder;
use nsfd::locus::roots::aberth_roots;
use nsfd::locus::{
    boundary_locus, classify_point, locus_point, rmax_scan,
    LocusVariant, ScanSchedule, StabilityPolynomial,
};

fn ord(a: f64) -> FractionalOrder {
    FractionalOrder::new(a).unwrap()
}

#[test]
fn frozen_spectral_radii() {
    let cases = [
        (0.5, 100usize, -0.5, 0.980815877488),
        (0.5, 100, 1.5, 1.641216431275),
        (0.8, 50, 0.5, 1.656650975761),
        (0.5, 1000, -0.5, 0.996899460078),
    ];
    for &(a, n, tau_hat, expect) in &cases {
        let r = StabilityPolynomial::new(ord(a), n, tau_hat)
            .unwrap()
            .r_max(2000)
            .unwrap();
        assert_relative_eq!(r, expect, max_relative = 1e-9);
    }
}

#[test]
fn frozen_locus_points() {
    let alpha = ord(0.9);
    let s1 = std::f64::consts::FRAC_PI_4;
    let (x, y) = locus_point(alpha, 50, s1, LocusVariant::ComplexDivision).unwrap();
    assert_relative_eq!(x, 3.768923045507e-01, max_relative = 1e-11);
    assert_relative_eq!(y, 7.245148991479e-01, max_relative = 1e-11);
    let (x, y) = locus_point(alpha, 50, s1, LocusVariant::AsPrinted).unwrap();
    assert_relative_eq!(x, 1.051137006112e+00, max_relative = 1e-11);
    assert_relative_eq!(y, -7.245148991479e-01, max_relative = 1e-11);

    let (x, y) = locus_point(alpha, 50, 1.0, LocusVariant::ComplexDivision).unwrap();
    assert_relative_eq!(x, 5.454047843444e-01, max_relative = 1e-11);
    assert_relative_eq!(y, 8.402367544791e-01, max_relative = 1e-11);
    let (x, y) = locus_point(alpha, 50, 1.0, LocusVariant::AsPrinted).unwrap();
    assert_relative_eq!(x, 3.682550392301e-02, max_relative = 1e-11);
    assert_relative_eq!(y, 4.483777672882e-01, max_relative = 1e-11);
}

/// The incremental-rotation curve sampler must agree with the direct
/// per-point evaluation everywhere, including far around the circle where
/// rotation drift would show up.
#[test]
fn curve_matches_direct_points() {
    for variant in [LocusVariant::ComplexDivision, LocusVariant::AsPrinted] {
        let alpha = ord(0.4);
        let n = 700; // crosses several resync boundaries
        let curve = boundary_locus(alpha, n, 64, variant).unwrap();
        for k in (0..=64).step_by(7) {
            let (x, y) = locus_point(alpha, n, curve.s[k], variant).unwrap();
            assert_abs_diff_eq!(curve.x[k], x, epsilon = 1e-11);
            assert_abs_diff_eq!(curve.y[k], y, epsilon = 1e-11);
        }
    }
}

/// Division-form locus points are, by construction, parameter values whose
/// stability polynomial has the root `e^{is}`: the complex-coefficient
/// residual must vanish to rounding.
#[test]
fn division_locus_residual_vanishes()  {
    let alpha = ord(0.7);
    let n = 40;
    let curve = boundary_locus(alpha, n, 128, LocusVariant::ComplexDivision).unwrap();

    // rebuild the coefficient list with complex tau_hat from the curve
    let base = StabilityPolynomial::new(alpha, n, 0.0).unwrap();
    let c0 = base.coeffs()[0]; // d_1
    let norm1: f64 = base.coeffs().iter().map(|c| c.abs()).sum();
    for k in 0..=128 {
        let tau_hat = Complex::new(curve.x[k], curve.y[k]);
        let z = Complex::from_polar(1.0, curve.s[k]);
        let mut p = Complex::new(c0, 0.0) - tau_hat;
        for &c in &base.coeffs()[1..] {
            p = p * z + Complex::new(c, 0.0);
        }
        assert!(
            p.norm() <= 1e-10 * norm1,
            "residual {} at s={}",
            p.norm(),
            curve.s[k]
        );
    }
}

/// Companion-matrix and Aberth-Ehrlich engines agree on the stability
/// polynomials themselves.
#[test]
fn root_engines_agree_on_stability_polynomials() {
    for &(a, n, th) in &[(0.8, 8usize, 0.5), (0.5, 32, -0.5), (0.3, 64, 1.5)] {
        let p = StabilityPolynomial::new(ord(a), n, th).unwrap();
        let companion = p.roots(2000).unwrap();
        let cc: Vec<Complex<f64>> = p.coeffs().iter().map(|&c| Complex::new(c, 0.0)).collect();
        let aberth = aberth_roots(&cc, 500, 1e-12).unwrap();
        assert_eq!(companion.len(), aberth.len());
        for r in &companion {
            let nearest = aberth
                .iter()
                .map(|s| (s - r).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(nearest < 1e-8, "root {r} unmatched (nearest {nearest:.2e})");
        }
    }
}

/// Every point on the negative real axis classifies as stable: the scheme
/// couples the test-equation term to the current level, so the division-form
/// locus stays in the right half-plane and negative real coefficients sit
/// inside the stability region at every step count.
#[test]
fn negative_real_axis_is_stable() {
    for &a in &[0.2, 0.4, 0.6, 0.8] {
        let alpha = ord(a);
        // the locus meets the real axis again at s=pi, on the positive side
        let (x_pi, y_pi) =
            locus_point(alpha, 200, std::f64::consts::PI, LocusVariant::ComplexDivision).unwrap();
        assert_abs_diff_eq!(y_pi, 0.0, epsilon = 1e-10);
        assert!(x_pi > 0.0, "alpha={a}: real-axis return {x_pi} not positive");

        for &n in &[10usize, 100, 1000] {
            // degree-1000 eigenproblems are slow; one point suffices there
            let points: &[f64] = if n == 1000 { &[-0.5] } else { &[-0.5, -5.0] };
            for &tau_hat in points {
                let point = classify_point(alpha, n, tau_hat, 2000).unwrap();
                assert!(
                    point.stable,
                    "alpha={a} n={n} tau_hat={tau_hat}: r_max={}",
                    point.r_max
                );
            }
        }
    }
}

/// Any positive real coefficient is unstable at every step count: `p(1)`
/// is negative while the leading coefficient stays positive, which forces
/// a real root beyond 1. The scan must report radii above 1 throughout,
/// and a stable negative coefficient stays below 1 throughout.
#[test]
fn scan_classifies_real_axis_series() {
    let alpha = ord(0.5);
    let stable = rmax_scan(alpha, -0.5, 200, ScanSchedule::Dense, 2000).unwrap();
    assert_eq!(stable.len(), 200);
    assert!(stable.iter().all(|p| p.r_max < 1.0));
    // radii creep toward 1 from below as the memory tail lengthens
    assert!(stable.last().unwrap().r_max > stable[0].r_max);

    for tau_hat in [0.5, 1.5] {
        let unstable = rmax_scan(
            alpha,
            tau_hat,
            200,
            ScanSchedule::Sampled {
                dense_upto: 50,
                stride: 25,
            },
            2000,
        )
        .unwrap();
        assert!(unstable.iter().all(|p| p.r_max > 1.0));
    }
}
