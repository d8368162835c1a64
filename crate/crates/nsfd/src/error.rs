//! Crate-wide error type.

/// Errors produced by construction, solvers, and scans.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Fractional order outside the open interval (0, 1).
    #[error("fractional order must satisfy 0 < alpha < 1, got {0}")]
    InvalidOrder(f64),

    /// A denominator-function tag that is not in the registry.
    #[error("unknown denominator function: {0}")]
    UnknownDf(String),

    /// Mittag-Leffler series failed to meet its tolerance.
    #[error("series not converged after {max_terms} terms (last term {last_term:.3e})")]
    SeriesNotConverged { max_terms: usize, last_term: f64 },

    /// A time index outside `1..=N`.
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    /// An explicit solve left the finite range (IVP solves only; the
    /// diffusion solvers report divergence as data).
    #[error("solution diverged at step {step} (max-norm {norm:.3e})")]
    Diverged { step: usize, norm: f64 },

    /// The discrete stability condition failed while enforcement was on.
    #[error("stability condition violated: lhs {lhs:.6e} > threshold {threshold:.6e}")]
    StabilityViolated { lhs: f64, threshold: f64 },

    /// Degree request beyond what the eigenvalue backend is sized for.
    #[error("polynomial degree {n} exceeds the root-finder ceiling {ceiling}")]
    DegreeCeiling { n: usize, ceiling: usize },

    /// The simultaneous root iteration stalled.
    #[error("root finder did not converge for degree {n} at tau_hat = {tau_hat}")]
    RootsNotConverged { n: usize, tau_hat: String },

    /// Anything structurally invalid about a request.
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
}

pub type Result<T> = std::result::Result<T, Error>;
