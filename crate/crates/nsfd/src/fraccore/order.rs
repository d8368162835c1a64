//! Validated fractional order.

use crate::error::{Error, Result};

/// A fractional differentiation order restricted to the open interval (0, 1).
///
/// Every scheme in this crate is derived for exactly this range; construction
/// rejects anything else, so downstream code never re-validates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractionalOrder(f64);

impl FractionalOrder {
    /// Validate and wrap `alpha`. Fails unless `0 < alpha < 1`.
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_finite() && alpha > 0.0 && alpha < 1.0 {
            Ok(Self(alpha))
        } else {
            Err(Error::InvalidOrder(alpha))
        }
    }

    /// The raw order value.
    pub fn get(self) -> f64 {
        self.0
    }

    /// `Gamma(2 - alpha)`, the normalisation constant of the L1 operator.
    pub fn gamma_2m(self) -> f64 {
        super::gamma::gamma(2.0 - self.0)
    }
}

impl std::fmt::Display for FractionalOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_interior_rejects_edges() {
        assert!(FractionalOrder::new(0.5).is_ok());
        assert!(FractionalOrder::new(1e-9).is_ok());
        for bad in [0.0, 1.0, -0.3, 1.7, f64::NAN, f64::INFINITY] {
            assert!(FractionalOrder::new(bad).is_err(), "accepted {bad}");
        }
    }
}
