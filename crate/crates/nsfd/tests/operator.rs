//! Cross-checks of the NSL1 operator against an independently coded
//! textbook form, exactness/order properties, and frozen reference values.

use approx::{assert_abs_diff_eq, assert_relative_eq};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use nsfd::fraccore::{
    effective_temporal_df, gamma, l1_weights, EffectiveMode, FractionalOrder, TemporalBase,
};
use nsfd::nsl1::{nsl1_apply, truncation_order_scan, ObservedOrder, SampledFunction, TimeGrid};

fn ord(a: f64) -> FractionalOrder {
    FractionalOrder::new(a).unwrap()
}

/// The textbook L1 arrangement sums weighted forward differences,
/// `sum_{k=0}^{n-1} b_{k+1} (y^{n-k} - y^{n-k-1}) / (tau^alpha Gamma(2-alpha))`;
/// the production operator groups by solution level instead. Both must
/// agree on arbitrary data.
#[test]
fn matches_difference_form_on_random_data() {
    let mut rng = StdRng::seed_from_u64(0x51a3);
    for &(a, n_steps) in &[(0.3, 23usize), (0.5, 37), (0.9, 64)] {
        let alpha = ord(a);
        let grid = TimeGrid::new(1.0, n_steps).unwrap();
        let values: Vec<f64> = (0..=n_steps).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let y = SampledFunction::from_values(grid, values.clone()).unwrap();
        let phi = effective_temporal_df(TemporalBase::Tau, alpha, EffectiveMode::Power);

        let tau = grid.tau();
        let w = l1_weights(alpha, n_steps).unwrap();
        for n in (1..=n_steps).step_by(5) {
            let mut acc = 0.0;
            for k in 0..n {
                acc += w.b(k + 1) * (values[n - k] - values[n - k - 1]);
            }
            let reference = acc / (tau.powf(a) * alpha.gamma_2m());
            let got = nsl1_apply(&y, alpha, &phi, n).unwrap();
            assert_relative_eq!(got, reference, max_relative = 1e-11, epsilon = 1e-11);
        }
    }
}

/// Piecewise-linear interpolation is exact on linear data, so the operator
/// reproduces the Caputo derivative of `t` exactly:
/// `D^alpha t = t^{1-alpha} / Gamma(2-alpha)`.
#[test]
fn linear_data_is_differentiated_exactly() {
    let alpha = ord(0.5);
    let grid = TimeGrid::new(1.0, 16).unwrap();
    let y = SampledFunction::from_fn(grid, |t| t);
    let phi = effective_temporal_df(TemporalBase::Tau, alpha, EffectiveMode::Power);
    // 2/sqrt(pi) at t=1
    assert_relative_eq!(
        nsl1_apply(&y, alpha, &phi, 16).unwrap(),
        1.1283791670955126,
        max_relative = 1e-13
    );
    // scaled by sqrt(t) at t=1/2
    assert_relative_eq!(
        nsl1_apply(&y, alpha, &phi, 8).unwrap(),
        1.1283791670955126 * 0.5f64.sqrt(),
        max_relative = 1e-13
    );
}

/// Frozen operator values on `y = t^{2.3}` at `t = 1`, `alpha = 0.3`,
/// `N = 10`, under two different effective denominators.
#[test]
fn frozen_values_for_both_df_modes() {
    let alpha = ord(0.3);
    let grid = TimeGrid::new(1.0, 10).unwrap();
    let y = SampledFunction::from_fn(grid, |t| t.powf(2.3));

    let pow_tau = effective_temporal_df(TemporalBase::Tau, alpha, EffectiveMode::Power);
    assert_relative_eq!(
        nsl1_apply(&y, alpha, &pow_tau, 10).unwrap(),
        1.3343782668521718,
        max_relative = 1e-13
    );

    let ratio_sin = effective_temporal_df(TemporalBase::Sin, alpha, EffectiveMode::Ratio);
    assert_relative_eq!(
        nsl1_apply(&y, alpha, &ratio_sin, 10).unwrap(),
        1.3366048279933000,
        max_relative = 1e-13
    );
}

/// Defect tables on `y = t^2` (exact derivative `2 t^{2-alpha}/Gamma(3-alpha)`)
/// over N = 10..320: endpoints and final observed order are frozen, and the
/// order sits near the theoretical `2 - alpha`.
#[test]
fn truncation_defects_frozen() {
    let n_list = [10usize, 20, 40, 80, 160, 320];
    let cases = [
        (0.3, 5.138500e-03, 1.648563e-05, 1.6744),
        (0.5, 1.389559e-02, 8.103868e-05, 1.4932),
        (0.7, 3.225863e-02, 3.620209e-04, 1.2986),
    ];
    for &(a, first, last, last_order) in &cases {
        let alpha = ord(a);
        let phi = effective_temporal_df(TemporalBase::Tau, alpha, EffectiveMode::Power);
        let exact_at_one = 2.0 / gamma(3.0 - a);
        let rows = truncation_order_scan(|t| t * t, exact_at_one, alpha, &phi, 1.0, &n_list)
            .unwrap();
        assert_eq!(rows.len(), n_list.len());
        assert_relative_eq!(rows[0].defect, first, max_relative = 1e-6);
        assert_relative_eq!(rows[5].defect, last, max_relative = 1e-6);
        match rows[5].observed_order {
            ObservedOrder::Value(v) => {
                assert_abs_diff_eq!(v, last_order, epsilon = 1e-4);
                assert_abs_diff_eq!(v, 2.0 - a, epsilon = 0.05);
            }
            other => panic!("expected a numeric order, got {other:?}"),
        }
        assert!(matches!(rows[0].observed_order, ObservedOrder::None));
    }
}

/// On linear data the defect underflows to zero and the scan reports
/// exactness rather than a bogus order.
#[test]
fn truncation_scan_flags_exact_cases() {
    let alpha = ord(0.5);
    let phi = effective_temporal_df(TemporalBase::Tau, alpha, EffectiveMode::Power);
    let exact = 1.1283791670955126; // D^{1/2} t at t=1
    let rows = truncation_order_scan(|t| t, exact, alpha, &phi, 1.0, &[8, 16, 32]).unwrap();
    for row in &rows[1..] {
        assert!(
            matches!(row.observed_order, ObservedOrder::Exact)
                || row.defect < 1e-14,
            "linear data should be handled exactly"
        );
    }
}

/// Doubling validation: non-doubling or too-short scans are refused.
#[test]
fn truncation_scan_validates_input() {
    let alpha = ord(0.5);
    let phi = effective_temporal_df(TemporalBase::Tau, alpha, EffectiveMode::Power);
    assert!(truncation_order_scan(|t| t, 1.0, alpha, &phi, 1.0, &[8, 16]).is_err());
    assert!(truncation_order_scan(|t| t, 1.0, alpha, &phi, 1.0, &[8, 16, 24]).is_err());
}
