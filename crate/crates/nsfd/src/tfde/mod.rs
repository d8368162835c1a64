//! Explicit nonstandard schemes for the time-fractional diffusion equation
//! `D^alpha u = Laplacian(u) + f` with homogeneous Dirichlet boundaries, in
//! one and two space dimensions.
//!
//! The time derivative is discretized by the NSL1 formula with temporal
//! denominator `Phi(tau)`, the Laplacian by second differences over a
//! spatial denominator `psi(h)`, giving the explicit update (1D)
//!
//! ```text
//! u^n_m = mu (u^{n-1}_{m+1} - 2 u^{n-1}_m + u^{n-1}_{m-1})
//!         + sum_{k=1}^{n-1} (b_k - b_{k+1}) u^{n-k}_m + b_n u^0_m
//!         + Phi(tau) Gamma(2-alpha) f^{n-1}_m,
//!     mu = Phi(tau) Gamma(2-alpha) / psi(h)
//! ```
//!
//! and its 2D analog with per-axis coefficients `mu_1`, `mu_2`. The forcing
//! enters at `t_{n-1}`, the same level as the diffusion stencil. A discrete
//! energy argument guarantees max-norm stability whenever
//! `Phi(tau)/psi(h) <= (1 - 2^{-alpha}) / Gamma(2-alpha)` (in 2D, the sum of
//! the two per-axis ratios); [`check_stability`] evaluates that bound and
//! the solvers optionally enforce it.

pub mod kernel;
pub mod problems;

pub use problems::{example_tfde, frontier_problem, TfdeExample};

use crate::error::{Error, Result};
use crate::fraccore::df::{SpatialDf, TemporalEffective};
use crate::fraccore::order::FractionalOrder;
use crate::fraccore::weights::{l1_weights, WeightTable};
use kernel::March;

/// Space dimension of a problem or grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceDim {
    One,
    Two,
}

/// Uniform grid over `[0, L]` (1D) or `[0, L]^2` (2D) with `M` subintervals
/// per axis, `h = L/M`. 2D nodes are stored flat, `index = j*(M+1) + i`.
#[derive(Debug, Clone, Copy)]
pub struct SpaceGrid {
    dim: SpaceDim,
    extent: f64,
    m: usize,
}

impl SpaceGrid {
    fn new(dim: SpaceDim, extent: f64, m: usize) -> Result<Self> {
        if !(extent.is_finite() && extent > 0.0) {
            return Err(Error::InvalidParam(format!(
                "grid extent must be positive and finite, got {extent}"
            )));
        }
        if m < 2 {
            return Err(Error::InvalidParam(format!(
                "grid needs at least 2 subintervals for an interior, got {m}"
            )));
        }
        Ok(Self { dim, extent, m })
    }

    pub fn line(extent: f64, m: usize) -> Result<Self> {
        Self::new(SpaceDim::One, extent, m)
    }

    pub fn square(extent: f64, m: usize) -> Result<Self> {
        Self::new(SpaceDim::Two, extent, m)
    }

    pub fn dim(&self) -> SpaceDim {
        self.dim
    }

    pub fn extent(&self) -> f64 {
        self.extent
    }

    /// Subintervals per axis.
    pub fn subintervals(&self) -> usize {
        self.m
    }

    pub fn h(&self) -> f64 {
        self.extent / self.m as f64
    }

    /// `i`-th node coordinate along either axis, computed multiplicatively.
    pub fn coord(&self, i: usize) -> f64 {
        i as f64 * self.h()
    }

    pub fn node_count(&self) -> usize {
        match self.dim {
            SpaceDim::One => self.m + 1,
            SpaceDim::Two => (self.m + 1) * (self.m + 1),
        }
    }

    /// Flat node index; `j` is ignored in 1D.
    pub fn flatten(&self, i: usize, j: usize) -> usize {
        match self.dim {
            SpaceDim::One => i,
            SpaceDim::Two => j * (self.m + 1) + i,
        }
    }

    /// Inverse of [`Self::flatten`]; `j = 0` in 1D.
    pub fn unflatten(&self, idx: usize) -> (usize, usize) {
        match self.dim {
            SpaceDim::One => (idx, 0),
            SpaceDim::Two => (idx % (self.m + 1), idx / (self.m + 1)),
        }
    }

    pub fn is_boundary(&self, i: usize, j: usize) -> bool {
        match self.dim {
            SpaceDim::One => i == 0 || i == self.m,
            SpaceDim::Two => i == 0 || i == self.m || j == 0 || j == self.m,
        }
    }
}

type SpaceFn = dyn Fn(f64, f64) -> f64 + Send + Sync;
type SpaceTimeFn = dyn Fn(f64, f64, f64) -> f64 + Send + Sync;

/// A diffusion problem on `[0, L]^dim x [0, T]` with homogeneous Dirichlet
/// boundaries. Callbacks take `(x, y)` / `(x, y, t)`; `y` is ignored in 1D.
pub struct TfdeProblem {
    pub dim: SpaceDim,
    /// Per-axis domain length `L` (axes are equal in 2D).
    pub extent: f64,
    pub t_final: f64,
    /// Initial data `u^0`; must vanish on the boundary (checked at the grid
    /// boundary nodes to 1e-12 when solving).
    pub initial: Box<SpaceFn>,
    pub forcing: Box<SpaceTimeFn>,
    pub exact: Option<Box<SpaceTimeFn>>,
}

/// Discretization parameters shared by both solvers.
#[derive(Clone)]
pub struct SchemeConfig {
    pub alpha: FractionalOrder,
    /// Time steps `N`; `tau = T/N`.
    pub n_steps: usize,
    /// Effective temporal denominator `Phi`.
    pub phi_eff: TemporalEffective,
    /// Spatial denominator (1D), or the first-axis one (2D).
    pub psi: SpatialDf,
    /// Second-axis spatial denominator; defaults to `psi` when absent.
    pub psi2: Option<SpatialDf>,
    /// Refuse to run when the max-norm stability bound fails. Off by
    /// default at the call sites that probe the instability frontier,
    /// where divergence is the observable being measured.
    pub enforce_stability: bool,
}

impl SchemeConfig {
    fn psi2_or_psi(&self) -> &SpatialDf {
        self.psi2.as_ref().unwrap_or(&self.psi)
    }
}

/// Right-hand side of the max-norm stability bound, `(1-2^{-alpha})/Gamma(2-alpha)`.
pub fn stability_threshold(alpha: FractionalOrder) -> f64 {
    let a = alpha.get();
    (1.0 - 2.0f64.powf(-a)) / alpha.gamma_2m()
}

/// Outcome of evaluating the stability bound for a concrete grid and step.
#[derive(Debug, Clone, Copy)]
pub struct StabilityReport {
    pub satisfied: bool,
    /// `Phi(tau)/psi(h)` in 1D; the sum over both axes in 2D.
    pub lhs: f64,
    pub threshold: f64,
}

/// Evaluate the max-norm stability bound. Report only; the solvers consult
/// `config.enforce_stability` to decide whether a failure is fatal.
pub fn check_stability(config: &SchemeConfig, grid: &SpaceGrid, tau: f64) -> StabilityReport {
    let phi = config.phi_eff.eval(tau);
    let h = grid.h();
    let lhs = match grid.dim() {
        SpaceDim::One => phi / config.psi.eval(h),
        SpaceDim::Two => phi / config.psi.eval(h) + phi / config.psi2_or_psi().eval(h),
    };
    let threshold = stability_threshold(config.alpha);
    StabilityReport {
        satisfied: lhs <= threshold,
        lhs,
        threshold,
    }
}

/// Full time history of a solve, level-major: one row of `node_count`
/// values per time level `0..=N`. Boundary columns are identically zero.
#[derive(Debug, Clone)]
pub struct SolutionField {
    grid: SpaceGrid,
    t_final: f64,
    n_steps: usize,
    history: Vec<f64>,
}

impl SolutionField {
    pub fn grid(&self) -> &SpaceGrid {
        &self.grid
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn t_final(&self) -> f64 {
        self.t_final
    }

    pub fn tau(&self) -> f64 {
        self.t_final / self.n_steps as f64
    }

    /// All node values at time level `n`.
    pub fn level(&self, n: usize) -> &[f64] {
        let nodes = self.grid.node_count();
        &self.history[n * nodes..(n + 1) * nodes]
    }

    pub fn final_level(&self) -> &[f64] {
        self.level(self.n_steps)
    }

    pub fn value(&self, n: usize, i: usize, j: usize) -> f64 {
        self.level(n)[self.grid.flatten(i, j)]
    }

    /// Max-norm of a time level over all nodes.
    pub fn max_norm(&self, n: usize) -> f64 {
        self.level(n).iter().fold(0.0f64, |a, &v| a.max(v.abs()))
    }

    /// `max_m |exact(x_m, t_n) - u^n_m|` over all grid nodes.
    pub fn error_inf_at(&self, n: usize, exact: &SpaceTimeFn) -> f64 {
        let t = self.tau() * n as f64;
        let lvl = self.level(n);
        let mut worst = 0.0f64;
        match self.grid.dim() {
            SpaceDim::One => {
                for (i, &u) in lvl.iter().enumerate() {
                    worst = worst.max((exact(self.grid.coord(i), 0.0, t) - u).abs());
                }
            }
            SpaceDim::Two => {
                for (idx, &u) in lvl.iter().enumerate() {
                    let (i, j) = self.grid.unflatten(idx);
                    worst =
                        worst.max((exact(self.grid.coord(i), self.grid.coord(j), t) - u).abs());
                }
            }
        }
        worst
    }

    pub fn final_error_inf(&self, exact: &SpaceTimeFn) -> f64 {
        self.error_inf_at(self.n_steps, exact)
    }
}

/// Shared solver preamble: grid/step validation, stability gate, weight
/// table, and the sampled (boundary-checked) initial level.
struct Prepared {
    tau: f64,
    weights: WeightTable,
    src_coeff: f64,
    hist: Vec<f64>,
    divergence_limit: f64,
}

fn prepare(p: &TfdeProblem, config: &SchemeConfig, grid: &SpaceGrid) -> Result<Prepared> {
    if config.n_steps == 0 {
        return Err(Error::InvalidParam("need at least one time step".into()));
    }
    if !(p.t_final.is_finite() && p.t_final > 0.0) {
        return Err(Error::InvalidParam(format!(
            "final time must be positive and finite, got {}",
            p.t_final
        )));
    }
    let tau = p.t_final / config.n_steps as f64;
    let report = check_stability(config, grid, tau);
    if config.enforce_stability && !report.satisfied {
        return Err(Error::StabilityViolated {
            lhs: report.lhs,
            threshold: report.threshold,
        });
    }
    let weights = l1_weights(config.alpha, config.n_steps)?;
    let src_coeff = config.phi_eff.eval(tau) * config.alpha.gamma_2m();

    let nodes = grid.node_count();
    let mut hist = vec![0.0f64; (config.n_steps + 1) * nodes];
    match grid.dim() {
        SpaceDim::One => {
            for i in 0..=grid.subintervals() {
                hist[i] = (p.initial)(grid.coord(i), 0.0);
            }
        }
        SpaceDim::Two => {
            for j in 0..=grid.subintervals() {
                for i in 0..=grid.subintervals() {
                    hist[grid.flatten(i, j)] = (p.initial)(grid.coord(i), grid.coord(j));
                }
            }
        }
    }
    // Dirichlet compatibility: the sampled initial data must vanish on the
    // boundary; clamp the (sub-1e-12) residue so boundary columns are
    // exactly zero for the whole history.
    for idx in 0..nodes {
        let (i, j) = grid.unflatten(idx);
        if grid.is_boundary(i, j) {
            if hist[idx].abs() > 1e-12 {
                return Err(Error::InvalidParam(format!(
                    "initial data must vanish on the boundary; node {idx} has {}",
                    hist[idx]
                )));
            }
            hist[idx] = 0.0;
        }
    }
    let divergence_limit = kernel::divergence_limit(&hist[..nodes]);
    Ok(Prepared {
        tau,
        weights,
        src_coeff,
        hist,
        divergence_limit,
    })
}

fn scheme_mu(config: &SchemeConfig, psi: &SpatialDf, tau: f64, h: f64) -> Result<f64> {
    let mu = config.phi_eff.eval(tau) * config.alpha.gamma_2m() / psi.eval(h);
    if !(mu.is_finite() && mu > 0.0) {
        return Err(Error::InvalidParam(format!(
            "scheme coefficient mu must be positive and finite, got {mu} \
             (phi={}, psi={})",
            config.phi_eff.tag(),
            psi.tag()
        )));
    }
    Ok(mu)
}

/// Solve a 1D problem on `M` subintervals.
pub fn solve_1d(p: &TfdeProblem, config: &SchemeConfig, m: usize) -> Result<SolutionField> {
    if p.dim != SpaceDim::One {
        return Err(Error::InvalidParam(
            "solve_1d needs a one-dimensional problem".into(),
        ));
    }
    let grid = SpaceGrid::line(p.extent, m)?;
    let mut prep = prepare(p, config, &grid)?;
    let mu = scheme_mu(config, &config.psi, prep.tau, grid.h())?;
    let xs: Vec<f64> = (0..=m).map(|i| grid.coord(i)).collect();
    let diffs = prep.weights.diffs();
    let march = March {
        b: prep.weights.as_slice(),
        diffs: &diffs,
        nodes: grid.node_count(),
        n_steps: config.n_steps,
        divergence_limit: prep.divergence_limit,
    };
    let tau = prep.tau;
    let src_coeff = prep.src_coeff;
    march.run(&mut prep.hist, |n, hrow, prev, cur| {
        let t_prev = tau * (n - 1) as f64;
        for i in 1..m {
            let lap = prev[i + 1] - 2.0 * prev[i] + prev[i - 1];
            cur[i] = hrow[i] + mu * lap + src_coeff * (p.forcing)(xs[i], 0.0, t_prev);
        }
    })?;
    Ok(SolutionField {
        grid,
        t_final: p.t_final,
        n_steps: config.n_steps,
        history: prep.hist,
    })
}

/// Solve a 2D problem on an `M x M` grid of subintervals.
pub fn solve_2d(p: &TfdeProblem, config: &SchemeConfig, m: usize) -> Result<SolutionField> {
    if p.dim != SpaceDim::Two {
        return Err(Error::InvalidParam(
            "solve_2d needs a two-dimensional problem".into(),
        ));
    }
    let grid = SpaceGrid::square(p.extent, m)?;
    let mut prep = prepare(p, config, &grid)?;
    let mu1 = scheme_mu(config, &config.psi, prep.tau, grid.h())?;
    let mu2 = scheme_mu(config, config.psi2_or_psi(), prep.tau, grid.h())?;
    let coords: Vec<f64> = (0..=m).map(|i| grid.coord(i)).collect();
    let diffs = prep.weights.diffs();
    let march = March {
        b: prep.weights.as_slice(),
        diffs: &diffs,
        nodes: grid.node_count(),
        n_steps: config.n_steps,
        divergence_limit: prep.divergence_limit,
    };
    let tau = prep.tau;
    let src_coeff = prep.src_coeff;
    let stride = m + 1;
    march.run(&mut prep.hist, |n, hrow, prev, cur| {
        let t_prev = tau * (n - 1) as f64;
        for j in 1..m {
            let y = coords[j];
            let row = j * stride;
            for i in 1..m {
                let idx = row + i;
                let sum_x = prev[idx + 1] + prev[idx - 1];
                let sum_y = prev[idx + stride] + prev[idx - stride];
                cur[idx] = hrow[idx] + mu1 * sum_x + mu2 * sum_y
                    - 2.0 * (mu1 + mu2) * prev[idx]
                    + src_coeff * (p.forcing)(coords[i], y, t_prev);
            }
        }
    })?;
    Ok(SolutionField {
        grid,
        t_final: p.t_final,
        n_steps: config.n_steps,
        history: prep.hist,
    })
}

/// Result of one `(M, psi)` cell of a convergence or frontier run. A blown-up
/// solve is data, not an error: refining past the stability limit is one of
/// the measured experiments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CellOutcome {
    Converged { e_inf: f64 },
    Diverged { step: usize },
}

impl CellOutcome {
    pub fn e_inf(&self) -> Option<f64> {
        match *self {
            CellOutcome::Converged { e_inf } => Some(e_inf),
            CellOutcome::Diverged { .. } => None,
        }
    }

    pub fn is_diverged(&self) -> bool {
        matches!(self, CellOutcome::Diverged { .. })
    }
}

/// One table cell: the outcome plus the dyadic rate against the previous
/// (coarser) grid in the same column, when both errors exist and are positive.
#[derive(Debug, Clone, Copy)]
pub struct ConvergenceCell {
    pub outcome: CellOutcome,
    pub rate: Option<f64>,
}

/// Spatial convergence table: rows over `M`, one `(E_inf, rate)` column per
/// spatial denominator. Values are raw solver output; display rounding is
/// left to writers.
pub struct ConvergenceReport {
    pub alpha: f64,
    pub n_steps: usize,
    pub t_final: f64,
    pub phi_eff: TemporalEffective,
    pub psi_list: Vec<SpatialDf>,
    pub m_list: Vec<usize>,
    /// `cells[row][col]` pairs `m_list[row]` with `psi_list[col]`.
    pub cells: Vec<Vec<ConvergenceCell>>,
}

/// Grid-refinement study of a manufactured example at fixed `alpha` and `N`:
/// final-time max-norm errors and dyadic rates for each spatial denominator
/// over a (typically doubling) list of `M`.
pub fn convergence_study(
    example: TfdeExample,
    alpha: FractionalOrder,
    n_steps: usize,
    phi_eff: &TemporalEffective,
    psi_list: &[SpatialDf],
    m_list: &[usize],
) -> Result<ConvergenceReport> {
    let p = example_tfde(example, alpha);
    convergence_study_on(&p, alpha, n_steps, phi_eff, psi_list, m_list)
}

/// As [`convergence_study`], for an arbitrary problem with an exact solution.
pub fn convergence_study_on(
    p: &TfdeProblem,
    alpha: FractionalOrder,
    n_steps: usize,
    phi_eff: &TemporalEffective,
    psi_list: &[SpatialDf],
    m_list: &[usize],
) -> Result<ConvergenceReport> {
    let exact = p
        .exact
        .as_ref()
        .ok_or_else(|| Error::InvalidParam("convergence study needs an exact solution".into()))?;
    let mut cells: Vec<Vec<ConvergenceCell>> = Vec::with_capacity(m_list.len());
    for (row, &m) in m_list.iter().enumerate() {
        let mut row_cells = Vec::with_capacity(psi_list.len());
        for (col, psi) in psi_list.iter().enumerate() {
            let config = SchemeConfig {
                alpha,
                n_steps,
                phi_eff: phi_eff.clone(),
                psi: psi.clone(),
                psi2: None,
                enforce_stability: false,
            };
            let solved = match p.dim {
                SpaceDim::One => solve_1d(p, &config, m),
                SpaceDim::Two => solve_2d(p, &config, m),
            };
            let outcome = match solved {
                Ok(field) => CellOutcome::Converged {
                    e_inf: field.final_error_inf(exact.as_ref()),
                },
                Err(Error::Diverged { step, .. }) => CellOutcome::Diverged { step },
                Err(other) => return Err(other),
            };
            let rate = if row > 0 {
                match (cells[row - 1][col].outcome.e_inf(), outcome.e_inf()) {
                    (Some(prev), Some(cur)) if prev > 0.0 && cur > 0.0 => {
                        Some((prev / cur).log2())
                    }
                    _ => None,
                }
            } else {
                None
            };
            row_cells.push(ConvergenceCell { outcome, rate });
        }
        cells.push(row_cells);
    }
    Ok(ConvergenceReport {
        alpha: alpha.get(),
        n_steps,
        t_final: p.t_final,
        phi_eff: phi_eff.clone(),
        psi_list: psi_list.to_vec(),
        m_list: m_list.to_vec(),
        cells,
    })
}

/// One grid size of a frontier sweep.
#[derive(Debug, Clone, Copy)]
pub struct FrontierPoint {
    pub m: usize,
    pub outcome: CellOutcome,
    /// Whether the sufficient stability bound held for this grid (the
    /// empirical onset may lie past the bound).
    pub bound_satisfied: bool,
}

/// Frontier sweep of one spatial denominator.
#[derive(Debug, Clone)]
pub struct FrontierSeries {
    pub psi: SpatialDf,
    pub points: Vec<FrontierPoint>,
}

/// Side-by-side instability-onset comparison of two spatial denominators.
pub struct FrontierReport {
    pub alpha: f64,
    pub extent: f64,
    pub n_steps: usize,
    pub phi_eff: TemporalEffective,
    /// Series for the pair, in the order given (conventionally standard
    /// `h^2` first, nonstandard second).
    pub series: Vec<FrontierSeries>,
}

/// Refine the grid of the stretched 1D example across `m_values` on a fixed
/// domain of length `l`, recording per grid either the final-time error or
/// the step at which the explicit scheme diverged. The nonstandard
/// denominator's onset sitting at strictly larger `M` than `h^2`'s is the
/// effect this sweep measures.
pub fn stability_frontier_scan(
    alpha: FractionalOrder,
    l: f64,
    n_steps: usize,
    phi_eff: &TemporalEffective,
    psi_pair: (SpatialDf, SpatialDf),
    m_values: &[usize],
) -> Result<FrontierReport> {
    let p = frontier_problem(alpha, l);
    let exact = p.exact.as_ref().expect("frontier problem has an exact solution");
    let mut series = Vec::with_capacity(2);
    for psi in [psi_pair.0, psi_pair.1] {
        let mut points = Vec::with_capacity(m_values.len());
        for &m in m_values {
            let config = SchemeConfig {
                alpha,
                n_steps,
                phi_eff: phi_eff.clone(),
                psi: psi.clone(),
                psi2: None,
                enforce_stability: false,
            };
            let grid = SpaceGrid::line(l, m)?;
            let bound = check_stability(&config, &grid, p.t_final / n_steps as f64);
            let outcome = match solve_1d(&p, &config, m) {
                Ok(field) => CellOutcome::Converged {
                    e_inf: field.final_error_inf(exact.as_ref()),
                },
                Err(Error::Diverged { step, .. }) => CellOutcome::Diverged { step },
                Err(other) => return Err(other),
            };
            points.push(FrontierPoint {
                m,
                outcome,
                bound_satisfied: bound.satisfied,
            });
        }
        series.push(FrontierSeries { psi, points });
    }
    Ok(FrontierReport {
        alpha: alpha.get(),
        extent: l,
        n_steps,
        phi_eff: phi_eff.clone(),
        series,
    })
}
