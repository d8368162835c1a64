//! Gamma function wrapper.

/// The gamma function on the real line.
///
/// Thin wrapper over the C-library implementation; `Gamma(2 - alpha)`
/// multiplies every scheme coefficient in this crate, so its accuracy bounds
/// everything downstream.
pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}
