//! Nonstandard finite-difference (NSFD) machinery for Caputo-type fractional
//! differential equations.
//!
//! The crate provides, bottom up:
//!
//! * [`fraccore`] — validated fractional orders, L1 weight sequences, the
//!   denominator-function registry (the "nonstandard" in NSFD), gamma and
//!   Mittag-Leffler evaluation;
//! * [`nsl1`] — the nonstandard L1 discretisation of the Caputo derivative on
//!   a uniform time grid, with an empirical truncation-order scanner;
//! * [`ivp`] — an explicit time-stepper for the scalar initial-value problem
//!   `D^alpha y = f(t)` built on the NSL1 operator, plus manufactured
//!   problems and convergence tables;
//! * [`locus`] — absolute-stability analysis of that stepper: stability
//!   polynomial, boundary locus, root-magnitude scans, point classification;
//! * [`tfde`] — explicit NSFD schemes for the 1D/2D time-fractional
//!   diffusion equation with homogeneous Dirichlet boundaries, stability
//!   checks, convergence studies, and a stability-frontier scanner.
//!
//! Everything is deterministic: fixed summation orders, no interior
//! parallelism, no time-based seeding. All types are immutable after
//! construction and all operations are pure functions of their inputs, so
//! the whole API is safe to call concurrently.

pub mod error;
pub mod fraccore;
pub mod ivp;
pub mod locus;
pub mod nsl1;
pub mod tfde;

pub use error::{Error, Result};
pub use fraccore::order::FractionalOrder;
