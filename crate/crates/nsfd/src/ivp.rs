//! Explicit NSL1 time-stepper for the scalar Caputo-type initial-value
//! problem `D^alpha y = f(t)`, `y(0) = y0`, plus manufactured example
//! problems and convergence-table generation.
//!
//! The update rule is the NSL1 relation solved for the newest sample:
//!
//! ```text
//! y^n = b_n y^0 + sum_{j=1}^{n-1} (b_j - b_{j+1}) y^{n-j}
//!       + Phi(tau) Gamma(2-alpha) f(t_n)
//! ```
//!
//! Note that the forcing enters at `t_n` here, while the diffusion schemes
//! in [`crate::tfde`] take it at `t_{n-1}` (where their explicit Laplacian
//! lives). The asymmetry is intentional and both variants are exercised by
//! the reproduction suite.

use crate::error::{Error, Result};
use crate::fraccore::df::{effective_temporal_df, EffectiveMode, TemporalBase, TemporalEffective};
use crate::fraccore::order::FractionalOrder;
use crate::fraccore::weights::l1_weights;
use crate::nsl1::TimeGrid;

type TimeFn = dyn Fn(f64) -> f64 + Send + Sync;

/// A scalar Caputo IVP on `[0, T]`.
pub struct IvpProblem {
    pub y0: f64,
    pub forcing: Box<TimeFn>,
    /// Exact solution, when known (convergence tables require it).
    pub exact: Option<Box<TimeFn>>,
    pub t_final: f64,
}

/// Discrete solution on a uniform grid, `y[n] ~ y(t_n)`.
#[derive(Debug, Clone)]
pub struct IvpSolution {
    pub grid: TimeGrid,
    pub y: Vec<f64>,
}

impl IvpSolution {
    /// Absolute error at the final node against an exact solution.
    pub fn final_error(&self, exact: &TimeFn) -> f64 {
        (exact(self.grid.t_final()) - self.y[self.grid.n_steps()]).abs()
    }
}

/// March the explicit recurrence over `n = 1..=N`.
pub fn solve_ivp(
    p: &IvpProblem,
    alpha: FractionalOrder,
    n_steps: usize,
    phi_eff: &TemporalEffective,
) -> Result<IvpSolution> {
    let grid = TimeGrid::new(p.t_final, n_steps)?;
    let tau = grid.tau();
    let w = l1_weights(alpha, n_steps)?;
    let diffs = w.diffs(); // diffs[j-1] = b_j - b_{j+1}
    let src_coeff = phi_eff.eval(tau) * alpha.gamma_2m();

    let mut y = Vec::with_capacity(n_steps + 1);
    y.push(p.y0);
    for n in 1..=n_steps {
        let mut acc = w.b(n) * p.y0 + src_coeff * (p.forcing)(grid.node(n));
        // history, oldest contribution last: j = 1..n-1 pairs diffs[j-1]
        // with y[n-j]
        for j in 1..n {
            acc += diffs[j - 1] * y[n - j];
        }
        if !acc.is_finite() {
            return Err(Error::Diverged {
                step: n,
                norm: acc.abs(),
            });
        }
        y.push(acc);
    }
    Ok(IvpSolution { grid, y })
}

/// The manufactured example problems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IvpExample {
    /// `y0 = 0`, `f(t) = Gamma(3+alpha)/2 * t^2`, exact `y = t^{2+alpha}`.
    Ex1,
    /// `y0 = 1`, `f(t) = 2 t^{2-alpha} / Gamma(3-alpha)`, exact `y = t^2 + 1`.
    Ex2,
}

impl IvpExample {
    pub fn id(self) -> &'static str {
        match self {
            IvpExample::Ex1 => "ex1",
            IvpExample::Ex2 => "ex2",
        }
    }
}

/// Build an example problem on `[0, 1]`.
pub fn example_problem(id: IvpExample, alpha: FractionalOrder) -> IvpProblem {
    use crate::fraccore::gamma::gamma;
    let a = alpha.get();
    match id {
        IvpExample::Ex1 => {
            let c = gamma(3.0 + a) / 2.0;
            IvpProblem {
                y0: 0.0,
                forcing: Box::new(move |t| c * t * t),
                exact: Some(Box::new(move |t| t.powf(2.0 + a))),
                t_final: 1.0,
            }
        }
        IvpExample::Ex2 => {
            let c = 2.0 / gamma(3.0 - a);
            IvpProblem {
                y0: 1.0,
                forcing: Box::new(move |t| c * t.powf(2.0 - a)),
                exact: Some(Box::new(move |t| t * t + 1.0)),
                t_final: 1.0,
            }
        }
    }
}

/// One row of an IVP convergence table: the final-time error for a given
/// `(alpha, N, phi)` cell and the dyadic rate against the previous `N`.
/// Values are raw; any display rounding is the caller's concern.
#[derive(Debug, Clone)]
pub struct IvpRow {
    pub alpha: f64,
    pub n_steps: usize,
    pub phi: TemporalBase,
    pub e_inf: f64,
    pub rate: Option<f64>,
}

/// Convergence table over a grid of orders, step counts, and temporal bases.
///
/// The effective denominator is derived from each base in ratio mode
/// (`Phi = phi * tau^{alpha-1}`), the reduction under which this stepper's
/// error tables were established. Rows are ordered by `alpha`, then base,
/// then ascending `N`; the first `N` of each series has no rate.
pub fn ivp_error_table(
    example: IvpExample,
    alphas: &[f64],
    n_list: &[usize],
    phi_bases: &[TemporalBase],
) -> Result<Vec<IvpRow>> {
    let mut rows = Vec::new();
    for &a in alphas {
        let alpha = FractionalOrder::new(a)?;
        let p = example_problem(example, alpha);
        let exact = p
            .exact
            .as_ref()
            .ok_or_else(|| Error::InvalidParam("error table needs an exact solution".into()))?;
        for base in phi_bases {
            let phi_eff = effective_temporal_df(base.clone(), alpha, EffectiveMode::Ratio);
            let mut prev: Option<f64> = None;
            for &n in n_list {
                let sol = solve_ivp(&p, alpha, n, &phi_eff)?;
                let e = sol.final_error(exact);
                let rate = prev
                    .filter(|&pe| pe > 0.0 && e > 0.0)
                    .map(|pe| (pe / e).log2());
                rows.push(IvpRow {
                    alpha: a,
                    n_steps: n,
                    phi: base.clone(),
                    e_inf: e,
                    rate,
                });
                prev = Some(e);
            }
        }
    }
    Ok(rows)
}
