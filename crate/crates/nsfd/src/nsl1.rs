//! The nonstandard L1 (NSL1) discrete Caputo operator on sampled functions,
//! and an empirical truncation-order scanner.
//!
//! For samples `y[0..=N]` on a uniform grid with step `tau` the operator at
//! node `n` is
//!
//! ```text
//! D^alpha y(t_n) ~ ( b_1 y[n] + sum_{k=1}^{n-1} (b_{k+1} - b_k) y[n-k]
//!                    - b_n y[0] ) / (Phi(tau) Gamma(2-alpha))
//! ```
//!
//! with the L1 weights `b_k` from [`crate::fraccore::weights`] and the
//! effective temporal denominator `Phi`. With `Phi(tau) = tau^alpha` this is
//! exactly the classical L1 operator; other denominators change nothing but
//! that scalar.

use crate::error::{Error, Result};
use crate::fraccore::df::TemporalEffective;
use crate::fraccore::order::FractionalOrder;
use crate::fraccore::weights::l1_weights;

/// History length above which the operator's interior sum switches to
/// compensated (Kahan) accumulation.
const KAHAN_THRESHOLD: usize = 10_000;

/// A uniform time grid on `[0, T]` with `N` steps. Nodes are computed
/// multiplicatively (`t_n = n * tau`), never by cumulative addition, so the
/// spacing is exact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    t_final: f64,
    n_steps: usize,
}

impl TimeGrid {
    pub fn new(t_final: f64, n_steps: usize) -> Result<Self> {
        if !(t_final > 0.0 && t_final.is_finite()) {
            return Err(Error::InvalidParam(format!(
                "time horizon must be positive and finite, got {t_final}"
            )));
        }
        if n_steps == 0 {
            return Err(Error::InvalidParam("need at least one time step".into()));
        }
        Ok(Self { t_final, n_steps })
    }

    pub fn t_final(&self) -> f64 {
        self.t_final
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn tau(&self) -> f64 {
        self.t_final / self.n_steps as f64
    }

    /// Node `t_n = n * tau` for `n` in `0..=N`.
    pub fn node(&self, n: usize) -> f64 {
        n as f64 * self.tau()
    }
}

/// Samples of a function on a [`TimeGrid`], `values[n] = y(t_n)`.
#[derive(Debug, Clone)]
pub struct SampledFunction {
    pub grid: TimeGrid,
    pub values: Vec<f64>,
}

impl SampledFunction {
    /// Sample a closure on the grid.
    pub fn from_fn(grid: TimeGrid, f: impl Fn(f64) -> f64) -> Self {
        let values = (0..=grid.n_steps()).map(|n| f(grid.node(n))).collect();
        Self { grid, values }
    }

    /// Wrap existing samples; their length must be `N + 1`.
    pub fn from_values(grid: TimeGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.n_steps() + 1 {
            return Err(Error::InvalidParam(format!(
                "expected {} samples, got {}",
                grid.n_steps() + 1,
                values.len()
            )));
        }
        Ok(Self { grid, values })
    }
}

/// Apply the NSL1 operator to `y` at node `n` (`1 <= n <= N`).
///
/// The history sum runs in increasing `k` and switches to compensated
/// summation for histories longer than 10^4 terms, which keeps the
/// linearity and constant-annihilation identities tight at large `N`.
pub fn nsl1_apply(
    y: &SampledFunction,
    alpha: FractionalOrder,
    phi_eff: &TemporalEffective,
    n: usize,
) -> Result<f64> {
    let n_max = y.grid.n_steps();
    if n == 0 || n > n_max {
        return Err(Error::IndexOutOfRange {
            index: n,
            max: n_max,
        });
    }
    let w = l1_weights(alpha, n)?;
    let v = &y.values;

    let mut acc = v[n]; // b_1 y[n], b_1 = 1
    if n >= 2 {
        if n > KAHAN_THRESHOLD {
            let mut c = 0.0;
            for k in 1..n {
                let term = (w.b(k + 1) - w.b(k)) * v[n - k] - c;
                let t = acc + term;
                c = (t - acc) - term;
                acc = t;
            }
        } else {
            for k in 1..n {
                acc += (w.b(k + 1) - w.b(k)) * v[n - k];
            }
        }
    }
    acc -= w.b(n) * v[0];

    let tau = y.grid.tau();
    Ok(acc / (phi_eff.eval(tau) * alpha.gamma_2m()))
}

/// Observed convergence order attached to a defect row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ObservedOrder {
    /// First row of a scan: no predecessor to compare against.
    None,
    /// The defect underflowed to zero; the approximation is exact here.
    Exact,
    /// `log2(defect(N/2) / defect(N))`.
    Value(f64),
}

/// One row of a truncation scan.
#[derive(Debug, Clone, Copy)]
pub struct TruncationRow {
    pub n_steps: usize,
    pub defect: f64,
    pub observed_order: ObservedOrder,
}

/// Measure the operator's truncation defect at `t = T` over a doubling list
/// of step counts, reporting dyadic observed orders. For `y` in C^2 the
/// order approaches `2 - alpha`.
pub fn truncation_order_scan(
    exact_fn: impl Fn(f64) -> f64,
    exact_caputo_at_t: f64,
    alpha: FractionalOrder,
    phi_eff: &TemporalEffective,
    t_final: f64,
    n_list: &[usize],
) -> Result<Vec<TruncationRow>> {
    if n_list.len() < 3 {
        return Err(Error::InvalidParam(
            "truncation scan needs at least three step counts".into(),
        ));
    }
    for pair in n_list.windows(2) {
        if pair[1] != 2 * pair[0] {
            return Err(Error::InvalidParam(
                "truncation scan step counts must double".into(),
            ));
        }
    }
    let mut rows: Vec<TruncationRow> = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let grid = TimeGrid::new(t_final, n)?;
        let samples = SampledFunction::from_fn(grid, &exact_fn);
        let defect = (exact_caputo_at_t - nsl1_apply(&samples, alpha, phi_eff, n)?).abs();
        let observed_order = match rows.last() {
            None => ObservedOrder::None,
            Some(prev) => {
                if defect == 0.0 {
                    ObservedOrder::Exact
                } else if prev.defect == 0.0 {
                    ObservedOrder::None
                } else {
                    ObservedOrder::Value((prev.defect / defect).log2())
                }
            }
        };
        rows.push(TruncationRow {
            n_steps: n,
            defect,
            observed_order,
        });
    }
    Ok(rows)
}
