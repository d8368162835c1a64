//! L1 weight sequences `b_k = k^{1-a} - (k-1)^{1-a}`.

use crate::error::{Error, Result};
use crate::fraccore::order::FractionalOrder;

/// Index above which the direct difference `k^s - (k-1)^s` loses digits to
/// cancellation and the expm1/log1p form takes over.
const STABLE_TAIL_START: u64 = 1_000;

/// The L1 weight sequence for a fixed order, `b[k]` for `k = 1..=n_max`.
///
/// Invariants (tested): `b[1] = 1` exactly, all weights positive and strictly
/// decreasing, and the telescoping identity
/// `sum_{j<n} (b[j] - b[j+1]) + b[n] = 1` holds to 1e-12 for every `n`.
#[derive(Debug, Clone)]
pub struct WeightTable {
    alpha: FractionalOrder,
    b: Vec<f64>,
}

/// Single weight `b_k`, numerically stable for every `k >= 1`.
fn bk(sigma: f64, k: u64) -> f64 {
    if k == 1 {
        1.0
    } else if k <= STABLE_TAIL_START {
        let kf = k as f64;
        kf.powf(sigma) - (kf - 1.0).powf(sigma)
    } else {
        // k^s - (k-1)^s = (k-1)^s * (exp(s*ln(k/(k-1))) - 1), with
        // ln(k/(k-1)) = log1p(1/(k-1)); exact algebraically, and free of the
        // catastrophic cancellation of the direct difference at large k.
        let km1 = (k - 1) as f64;
        km1.powf(sigma) * libm::expm1(sigma * (1.0 / km1).ln_1p())
    }
}

impl WeightTable {
    /// Number of weights stored.
    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }

    /// The order the table was built for.
    pub fn alpha(&self) -> FractionalOrder {
        self.alpha
    }

    /// `b_k`, 1-based as in the defining formula. Panics if `k` is out of
    /// `1..=len()`.
    pub fn b(&self, k: usize) -> f64 {
        self.b[k - 1]
    }

    /// The full sequence `b_1..b_{n_max}` as a slice (`[0]` holds `b_1`).
    pub fn as_slice(&self) -> &[f64] {
        &self.b
    }

    /// History-weight differences `w_k = b_k - b_{k+1}` for `k = 1..n_max`
    /// (`[0]` holds `w_1`; length `n_max - 1`). These are the coefficients
    /// multiplying past solution levels in every scheme of this crate.
    pub fn diffs(&self) -> Vec<f64> {
        self.b.windows(2).map(|w| w[0] - w[1]).collect()
    }
}

/// Build the weight table `b[1..=n_max]`.
pub fn l1_weights(alpha: FractionalOrder, n_max: usize) -> Result<WeightTable> {
    if n_max == 0 {
        return Err(Error::InvalidParam("n_max must be at least 1".into()));
    }
    let sigma = 1.0 - alpha.get();
    let b = (1..=n_max as u64).map(|k| bk(sigma, k)).collect();
    Ok(WeightTable { alpha, b })
}
