//! Boundary-locus stability analysis for the NSL1 recurrence.
//!
//! Feeding the scalar test problem `D^alpha y = lambda y` through the NSL1
//! update and collecting one step's worth of history gives a degree-`n`
//! characteristic polynomial in the step multiplier `z`, parameterized by
//! the scaled coefficient `tau_hat = lambda * Phi(tau) * Gamma(2-alpha)`:
//!
//! ```text
//! p(z) = (d_1 - tau_hat) z^n + sum_{j=1}^{n-1} (d_{j+1} - d_j) z^{n-j} - d_n
//! ```
//!
//! with `d_k = b_k / Gamma(2-alpha)`. The recurrence at step `n` is stable
//! when every root lies strictly inside the unit circle. Substituting
//! `z = e^{is}` and solving for `tau_hat` traces the locus of parameter
//! values whose polynomial has a root *on* the circle, which bounds the
//! stability region; [`boundary_locus`] produces that curve in two algebraic
//! arrangements (see [`LocusVariant`]).

pub mod roots;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::fraccore::order::FractionalOrder;
use crate::fraccore::weights::l1_weights;

type C = Complex<f64>;

/// Roots strictly inside means `r_max < 1 - STABILITY_MARGIN`; the margin
/// absorbs eigensolver noise so a root sitting on the circle is never
/// misread as stable.
pub const STABILITY_MARGIN: f64 = 1e-9;

/// The degree-`n` characteristic polynomial of the NSL1 recurrence for
/// `D^alpha y = lambda y` at scaled coefficient `tau_hat`.
#[derive(Debug, Clone)]
pub struct StabilityPolynomial {
    alpha: f64,
    n: usize,
    tau_hat: f64,
    /// Descending-degree coefficients, `coeffs[0]` multiplying `z^n`.
    coeffs: Vec<f64>,
}

impl StabilityPolynomial {
    pub fn new(alpha: FractionalOrder, n: usize, tau_hat: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParam(
                "stability polynomial needs at least one step".into(),
            ));
        }
        let w = l1_weights(alpha, n)?;
        let g = alpha.gamma_2m();
        let d = |k: usize| w.b(k) / g;
        let mut coeffs = Vec::with_capacity(n + 1);
        coeffs.push(d(1) - tau_hat);
        for j in 1..n {
            coeffs.push(d(j + 1) - d(j));
        }
        coeffs.push(-d(n));
        Ok(Self {
            alpha: alpha.get(),
            n,
            tau_hat,
            coeffs,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn tau_hat(&self) -> f64 {
        self.tau_hat
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Horner evaluation at a complex point.
    pub fn eval(&self, z: C) -> C {
        let mut p = C::new(0.0, 0.0);
        for &c in &self.coeffs {
            p = p * z + C::new(c, 0.0);
        }
        p
    }

    pub fn roots(&self, ceiling: usize) -> Result<Vec<C>> {
        let cc: Vec<C> = self.coeffs.iter().map(|&c| C::new(c, 0.0)).collect();
        roots::polynomial_roots(&cc, ceiling)
    }

    /// Spectral radius of the recurrence at this step count.
    pub fn r_max(&self, ceiling: usize) -> Result<f64> {
        Ok(self
            .roots(ceiling)?
            .iter()
            .map(|z| z.norm())
            .fold(0.0f64, f64::max))
    }
}

/// Verdict of a single `(alpha, n, tau_hat)` stability query.
#[derive(Debug, Clone, Copy)]
pub struct PointClassification {
    pub r_max: f64,
    pub stable: bool,
}

/// Root-radius classification of one parameter point.
pub fn classify_point(
    alpha: FractionalOrder,
    n: usize,
    tau_hat: f64,
    ceiling: usize,
) -> Result<PointClassification> {
    let r_max = StabilityPolynomial::new(alpha, n, tau_hat)?.r_max(ceiling)?;
    Ok(PointClassification {
        r_max,
        stable: r_max < 1.0 - STABILITY_MARGIN,
    })
}

/// One entry of a spectral-radius sweep over step counts.
#[derive(Debug, Clone, Copy)]
pub struct RmaxPoint {
    pub n: usize,
    pub r_max: f64,
}

/// Which step counts an [`rmax_scan`] visits.
#[derive(Debug, Clone, Copy)]
pub enum ScanSchedule {
    /// Every `n` in `1..=n_max`.
    Dense,
    /// Every `n` up to `dense_upto`, then every `stride`-th afterwards
    /// (always including `n_max`). Dense eigensolves past a few hundred
    /// steps cost minutes per series; the sampled tail keeps long sweeps
    /// affordable without losing the trend.
    Sampled { dense_upto: usize, stride: usize },
}

/// Spectral radius of the recurrence for each scheduled step count.
pub fn rmax_scan(
    alpha: FractionalOrder,
    tau_hat: f64,
    n_max: usize,
    schedule: ScanSchedule,
    ceiling: usize,
) -> Result<Vec<RmaxPoint>> {
    let mut ns: Vec<usize> = Vec::new();
    match schedule {
        ScanSchedule::Dense => ns.extend(1..=n_max),
        ScanSchedule::Sampled { dense_upto, stride } => {
            if stride == 0 {
                return Err(Error::InvalidParam("scan stride must be positive".into()));
            }
            let dense_upto = dense_upto.min(n_max);
            ns.extend(1..=dense_upto);
            let mut n = dense_upto + stride;
            while n < n_max {
                ns.push(n);
                n += stride;
            }
            if n_max > dense_upto {
                ns.push(n_max);
            }
        }
    }
    let mut out = Vec::with_capacity(ns.len());
    for n in ns {
        let r_max = StabilityPolynomial::new(alpha, n, tau_hat)?.r_max(ceiling)?;
        out.push(RmaxPoint { n, r_max });
    }
    Ok(out)
}

/// The two algebraic arrangements of the boundary locus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocusVariant {
    /// Solve `p(e^{is}) = 0` for `tau_hat` by complex division:
    /// `tau_hat(s) = d_1 + sum_j (d_{j+1}-d_j) e^{-ijs} - d_n e^{-ins}`.
    /// Points on this curve make `e^{is}` an exact root.
    ComplexDivision,
    /// The expanded real/imaginary component formulas as conventionally
    /// tabulated for this scheme family:
    /// `x(s) = d_1 - d_n cos(ns) + cos(ns) sum_j (d_{j+1}-d_j)` and
    /// `y(s) = d_1 sin(2ns) - d_n sin(ns) + sum_j sin((2n-j)s) (d_{j+1}-d_j)`.
    /// Kept verbatim so plotted figures can be compared against their
    /// published look; it is not algebraically equal to the division form.
    AsPrinted,
}

impl LocusVariant {
    pub fn id(self) -> &'static str {
        match self {
            LocusVariant::ComplexDivision => "complex-division",
            LocusVariant::AsPrinted => "as-printed",
        }
    }
}

/// A sampled boundary-locus curve; `x[k] + i y[k]` is the locus point at
/// angle `s[k]`.
#[derive(Debug, Clone)]
pub struct LocusCurve {
    pub variant: LocusVariant,
    pub alpha: f64,
    pub n: usize,
    pub s: Vec<f64>,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

/// Re-derive the sin/cos accumulators directly every this many incremental
/// rotations, so phase drift cannot build up over long curves.
const ROTATION_RESYNC: usize = 512;

/// Trace the boundary locus over `s in [0, 2*pi]` with `samples` equal
/// intervals (`samples + 1` points, endpoint included so the curve closes).
///
/// Both variants pass through the origin at `s = 0`.
pub fn boundary_locus(
    alpha: FractionalOrder,
    n: usize,
    samples: usize,
    variant: LocusVariant,
) -> Result<LocusCurve> {
    if n == 0 || samples == 0 {
        return Err(Error::InvalidParam(
            "locus needs a positive step count and sample count".into(),
        ));
    }
    let w = l1_weights(alpha, n)?;
    let g = alpha.gamma_2m();
    let d1 = w.b(1) / g;
    let dn = w.b(n) / g;
    // dd[j-1] = d_{j+1} - d_j for j = 1..n-1
    let dd: Vec<f64> = w.diffs().iter().map(|&x| -x / g).collect();
    let sum_dd: f64 = dd.iter().sum();

    let two_pi = 2.0 * std::f64::consts::PI;
    let mut s_out = Vec::with_capacity(samples + 1);
    let mut x_out = Vec::with_capacity(samples + 1);
    let mut y_out = Vec::with_capacity(samples + 1);

    for k in 0..=samples {
        let s = two_pi * (k as f64) / (samples as f64);
        // C = sum_j cos(js) dd_j, S = sum_j sin(js) dd_j via incremental
        // rotation of e^{ijs}, resynced periodically against direct trig
        let (mut c_acc, mut s_acc) = (0.0f64, 0.0f64);
        let (step_cos, step_sin) = (s.cos(), s.sin());
        let (mut rc, mut rs) = (1.0f64, 0.0f64); // e^{i j s}, starting at j=0
        for (j, &ddj) in dd.iter().enumerate() {
            let jj = j + 1;
            if jj % ROTATION_RESYNC == 0 {
                let a = s * jj as f64;
                rc = a.cos();
                rs = a.sin();
            } else {
                let (nc, ns2) = (rc * step_cos - rs * step_sin, rs * step_cos + rc * step_sin);
                rc = nc;
                rs = ns2;
            }
            c_acc += rc * ddj;
            s_acc += rs * ddj;
        }
        let (x, y) = combine_point(d1, dn, sum_dd, c_acc, s_acc, s * n as f64, variant);
        s_out.push(s);
        x_out.push(x);
        y_out.push(y);
    }
    Ok(LocusCurve {
        variant,
        alpha: alpha.get(),
        n,
        s: s_out,
        x: x_out,
        y: y_out,
    })
}

/// Fold the shared trigonometric accumulators into a locus point.
/// `c_acc = sum_j cos(js) dd_j`, `s_acc = sum_j sin(js) dd_j`.
fn combine_point(
    d1: f64,
    dn: f64,
    sum_dd: f64,
    c_acc: f64,
    s_acc: f64,
    ns_angle: f64,
    variant: LocusVariant,
) -> (f64, f64) {
    let (cos_ns, sin_ns) = (ns_angle.cos(), ns_angle.sin());
    match variant {
        LocusVariant::ComplexDivision => (d1 + c_acc - dn * cos_ns, -s_acc + dn * sin_ns),
        LocusVariant::AsPrinted => {
            let (cos_2ns, sin_2ns) = ((2.0 * ns_angle).cos(), (2.0 * ns_angle).sin());
            let x = d1 - dn * cos_ns + cos_ns * sum_dd;
            let y = d1 * sin_2ns - dn * sin_ns + sin_2ns * c_acc - cos_2ns * s_acc;
            (x, y)
        }
    }
}

/// One locus point at an arbitrary angle `s`, with every trigonometric term
/// evaluated directly (no incremental rotation). This is the slow reference
/// path; [`boundary_locus`] must agree with it at shared angles.
pub fn locus_point(
    alpha: FractionalOrder,
    n: usize,
    s: f64,
    variant: LocusVariant,
) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(Error::InvalidParam("locus needs a positive step count".into()));
    }
    let w = l1_weights(alpha, n)?;
    let g = alpha.gamma_2m();
    let d1 = w.b(1) / g;
    let dn = w.b(n) / g;
    let dd: Vec<f64> = w.diffs().iter().map(|&x| -x / g).collect();
    let sum_dd: f64 = dd.iter().sum();
    let (mut c_acc, mut s_acc) = (0.0f64, 0.0f64);
    for (j, &ddj) in dd.iter().enumerate() {
        let a = s * (j + 1) as f64;
        c_acc += a.cos() * ddj;
        s_acc += a.sin() * ddj;
    }
    Ok(combine_point(d1, dn, sum_dd, c_acc, s_acc, s * n as f64, variant))
}
