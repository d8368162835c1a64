//! Denominator functions (DFs).
//!
//! Nonstandard schemes replace the raw step sizes in difference quotients by
//! structured functions of them: a temporal base `phi(tau) = tau + O(tau^2)`,
//! its effective form `Phi(tau) = tau^alpha + O(tau^{1+alpha})` entering the
//! fractional-derivative coefficient, and a spatial `psi(h) = h^2 + O(h^3)`
//! replacing `h^2` in the discrete Laplacian. The registry here is a closed
//! enumerated set plus real parameters — not arbitrary expressions — so every
//! member can be order-checked numerically.
//!
//! Each DF has a canonical text form used in configs and CSV headers, e.g.
//! `phi=tau`, `phi=scaled-expm1(c=1000)`, `phi-eff=pow(exp-decay(lambda=100))`,
//! `psi=4sin2-half`, `psi=scaled-expm1-sq(c=1)`. Parsing is case-sensitive
//! and exact-match on the tag, with parameters as `key=value` in parentheses.

use crate::error::{Error, Result};
use crate::fraccore::order::FractionalOrder;

/// Temporal base DF `phi(tau) = tau + O(tau^2)`.
#[derive(Debug, Clone, PartialEq)]
pub enum TemporalBase {
    /// `phi(tau) = tau` (the standard scheme's choice).
    Tau,
    /// `phi(tau) = sin(tau)`.
    Sin,
    /// `phi(tau) = sinh(tau)`.
    Sinh,
    /// `phi(tau) = c (e^{tau/c} - 1)`.
    ScaledExpm1 { c: f64 },
    /// `phi(tau) = (1 - e^{-lambda tau}) / lambda`.
    ExpDecay { lambda: f64 },
}

impl TemporalBase {
    pub fn eval(&self, tau: f64) -> f64 {
        match *self {
            TemporalBase::Tau => tau,
            TemporalBase::Sin => tau.sin(),
            TemporalBase::Sinh => tau.sinh(),
            TemporalBase::ScaledExpm1 { c } => c * libm::expm1(tau / c),
            TemporalBase::ExpDecay { lambda } => -libm::expm1(-lambda * tau) / lambda,
        }
    }

    /// Canonical tag without the `phi=` prefix.
    pub fn tag(&self) -> String {
        match *self {
            TemporalBase::Tau => "tau".into(),
            TemporalBase::Sin => "sin".into(),
            TemporalBase::Sinh => "sinh".into(),
            TemporalBase::ScaledExpm1 { c } => format!("scaled-expm1(c={})", fmt_param(c)),
            TemporalBase::ExpDecay { lambda } => format!("exp-decay(lambda={})", fmt_param(lambda)),
        }
    }

    fn parse_tag(tag: &str) -> Result<Self> {
        let (name, params) = split_tag(tag)?;
        match name {
            "tau" => no_params(tag, &params).map(|_| TemporalBase::Tau),
            "sin" => no_params(tag, &params).map(|_| TemporalBase::Sin),
            "sinh" => no_params(tag, &params).map(|_| TemporalBase::Sinh),
            "scaled-expm1" => Ok(TemporalBase::ScaledExpm1 {
                c: one_param(tag, &params, "c")?,
            }),
            "exp-decay" => Ok(TemporalBase::ExpDecay {
                lambda: one_param(tag, &params, "lambda")?,
            }),
            _ => Err(Error::UnknownDf(format!("phi={tag}"))),
        }
    }
}

/// How a temporal base reduces to its effective form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EffectiveMode {
    /// `Phi(tau) = phi(tau)^alpha`.
    Power,
    /// `Phi(tau) = phi(tau) * tau^{alpha-1}` (the inverse of
    /// `tau^{1-alpha}/phi(tau)`).
    Ratio,
}

impl EffectiveMode {
    fn tag(self) -> &'static str {
        match self {
            EffectiveMode::Power => "pow",
            EffectiveMode::Ratio => "ratio",
        }
    }
}

/// Effective temporal DF `Phi(tau) = tau^alpha + O(tau^{1+alpha})`, the
/// quantity that multiplies `Gamma(2-alpha)` in every scheme coefficient.
/// The order is bound at construction; the evaluator is step-size -> value.
#[derive(Debug, Clone, PartialEq)]
pub struct TemporalEffective {
    pub base: TemporalBase,
    pub mode: EffectiveMode,
    pub alpha: FractionalOrder,
}

impl TemporalEffective {
    pub fn eval(&self, tau: f64) -> f64 {
        let phi = self.base.eval(tau);
        match self.mode {
            EffectiveMode::Power => phi.powf(self.alpha.get()),
            EffectiveMode::Ratio => phi * tau.powf(self.alpha.get() - 1.0),
        }
    }

    /// Canonical tag without the `phi-eff=` prefix, e.g. `pow(tau)`.
    pub fn tag(&self) -> String {
        format!("{}({})", self.mode.tag(), self.base.tag())
    }
}

/// Derive the effective DF from a base. For `phi = tau` both modes coincide
/// with `tau^alpha` identically.
pub fn effective_temporal_df(
    base: TemporalBase,
    alpha: FractionalOrder,
    mode: EffectiveMode,
) -> TemporalEffective {
    TemporalEffective { base, mode, alpha }
}

/// Spatial DF `psi(h) = h^2 + O(h^3)`.
#[derive(Debug, Clone, PartialEq)]
pub enum SpatialDf {
    /// `psi(h) = h^2` (the standard scheme's choice).
    H2,
    /// `psi(h) = 4 sin^2(h/2)`.
    FourSin2Half,
    /// `psi(h) = sin^2(h)`.
    Sin2,
    /// `psi(h) = (c (1 - e^{-h/c}))^2`.
    ScaledExpDecaySq { c: f64 },
    /// `psi(h) = (4/pi^2) sinh^2(pi h / 2)`.
    FourSinh2PiHalfOverPi2,
    /// `psi(h) = sinh^2(h)`.
    Sinh2,
    /// `psi(h) = (c (e^{h/c} - 1))^2`.
    ScaledExpm1Sq { c: f64 },
    /// `psi(h) = sinh(h^2)`.
    SinhH2,
}

impl SpatialDf {
    pub fn eval(&self, h: f64) -> f64 {
        match *self {
            SpatialDf::H2 => h * h,
            SpatialDf::FourSin2Half => {
                let s = (0.5 * h).sin();
                4.0 * s * s
            }
            SpatialDf::Sin2 => {
                let s = h.sin();
                s * s
            }
            SpatialDf::ScaledExpDecaySq { c } => {
                let v = c * -libm::expm1(-h / c);
                v * v
            }
            SpatialDf::FourSinh2PiHalfOverPi2 => {
                let s = (std::f64::consts::FRAC_PI_2 * h).sinh();
                4.0 / (std::f64::consts::PI * std::f64::consts::PI) * s * s
            }
            SpatialDf::Sinh2 => {
                let s = h.sinh();
                s * s
            }
            SpatialDf::ScaledExpm1Sq { c } => {
                let v = c * libm::expm1(h / c);
                v * v
            }
            SpatialDf::SinhH2 => (h * h).sinh(),
        }
    }

    /// Canonical tag without the `psi=` prefix.
    pub fn tag(&self) -> String {
        match *self {
            SpatialDf::H2 => "h2".into(),
            SpatialDf::FourSin2Half => "4sin2-half".into(),
            SpatialDf::Sin2 => "sin2".into(),
            SpatialDf::ScaledExpDecaySq { c } => format!("scaled-exp-decay-sq(c={})", fmt_param(c)),
            SpatialDf::FourSinh2PiHalfOverPi2 => "4sinh2-pi-half-over-pi2".into(),
            SpatialDf::Sinh2 => "sinh2".into(),
            SpatialDf::ScaledExpm1Sq { c } => format!("scaled-expm1-sq(c={})", fmt_param(c)),
            SpatialDf::SinhH2 => "sinh-h2".into(),
        }
    }

    fn parse_tag(tag: &str) -> Result<Self> {
        let (name, params) = split_tag(tag)?;
        match name {
            "h2" => no_params(tag, &params).map(|_| SpatialDf::H2),
            "4sin2-half" => no_params(tag, &params).map(|_| SpatialDf::FourSin2Half),
            "sin2" => no_params(tag, &params).map(|_| SpatialDf::Sin2),
            // `scaled-exp-sq` is accepted as a legacy alias for the decaying
            // exponential form.
            "scaled-exp-decay-sq" | "scaled-exp-sq" => Ok(SpatialDf::ScaledExpDecaySq {
                c: one_param(tag, &params, "c")?,
            }),
            "4sinh2-pi-half-over-pi2" => {
                no_params(tag, &params).map(|_| SpatialDf::FourSinh2PiHalfOverPi2)
            }
            "sinh2" => no_params(tag, &params).map(|_| SpatialDf::Sinh2),
            "scaled-expm1-sq" => Ok(SpatialDf::ScaledExpm1Sq {
                c: one_param(tag, &params, "c")?,
            }),
            "sinh-h2" => no_params(tag, &params).map(|_| SpatialDf::SinhH2),
            _ => Err(Error::UnknownDf(format!("psi={tag}"))),
        }
    }
}

/// Any registered denominator function, tagged by kind. This is the type
/// configs and CSV headers round-trip through; solvers take the specific
/// kinds ([`TemporalEffective`], [`SpatialDf`]) directly, which makes
/// "wrong kind of DF" a compile-time error inside the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum DenominatorSpec {
    TemporalBase(TemporalBase),
    TemporalEffective(TemporalEffective),
    Spatial(SpatialDf),
}

impl DenominatorSpec {
    /// Evaluate at a positive step size.
    pub fn eval(&self, step: f64) -> f64 {
        match self {
            DenominatorSpec::TemporalBase(b) => b.eval(step),
            DenominatorSpec::TemporalEffective(e) => e.eval(step),
            DenominatorSpec::Spatial(s) => s.eval(step),
        }
    }

    /// Canonical text form, e.g. `phi=sin`, `phi-eff=ratio(sinh)`, `psi=h2`.
    pub fn text(&self) -> String {
        match self {
            DenominatorSpec::TemporalBase(b) => format!("phi={}", b.tag()),
            DenominatorSpec::TemporalEffective(e) => format!("phi-eff={}", e.tag()),
            DenominatorSpec::Spatial(s) => format!("psi={}", s.tag()),
        }
    }

    /// Parse a canonical text form. Effective temporal DFs need the order
    /// they will be bound to; passing `None` for one is an error.
    pub fn parse(text: &str, alpha: Option<FractionalOrder>) -> Result<Self> {
        if let Some(tag) = text.strip_prefix("phi-eff=") {
            let (mode_name, inner) = split_tag(tag)?;
            let mode = match mode_name {
                "pow" => EffectiveMode::Power,
                "ratio" => EffectiveMode::Ratio,
                _ => return Err(Error::UnknownDf(text.into())),
            };
            let base_tag = match inner {
                TagParams::Inner(s) => s,
                _ => return Err(Error::UnknownDf(text.into())),
            };
            let base = TemporalBase::parse_tag(&base_tag)?;
            let alpha = alpha.ok_or_else(|| {
                Error::InvalidParam(format!(
                    "effective temporal DF '{text}' needs a fractional order to bind to"
                ))
            })?;
            Ok(DenominatorSpec::TemporalEffective(TemporalEffective {
                base,
                mode,
                alpha,
            }))
        } else if let Some(tag) = text.strip_prefix("phi=") {
            Ok(DenominatorSpec::TemporalBase(TemporalBase::parse_tag(tag)?))
        } else if let Some(tag) = text.strip_prefix("psi=") {
            Ok(DenominatorSpec::Spatial(SpatialDf::parse_tag(tag)?))
        } else {
            Err(Error::UnknownDf(text.into()))
        }
    }
}

impl std::fmt::Display for DenominatorSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.text())
    }
}

/// The canonical registry: every DF family with the parameter values the
/// named experiments use. Effective forms are listed bound to a
/// representative order of 0.5 (the binding order is a runtime input
/// everywhere else).
pub fn df_registry() -> Vec<DenominatorSpec> {
    let half = FractionalOrder::new(0.5).unwrap();
    let mut out: Vec<DenominatorSpec> = vec![
        DenominatorSpec::TemporalBase(TemporalBase::Tau),
        DenominatorSpec::TemporalBase(TemporalBase::Sin),
        DenominatorSpec::TemporalBase(TemporalBase::Sinh),
        DenominatorSpec::TemporalBase(TemporalBase::ScaledExpm1 { c: 1000.0 }),
        DenominatorSpec::TemporalBase(TemporalBase::ExpDecay { lambda: 100.0 }),
    ];
    for mode in [EffectiveMode::Power, EffectiveMode::Ratio] {
        for base in [
            TemporalBase::Tau,
            TemporalBase::Sin,
            TemporalBase::Sinh,
            TemporalBase::ScaledExpm1 { c: 1000.0 },
            TemporalBase::ExpDecay { lambda: 100.0 },
        ] {
            out.push(DenominatorSpec::TemporalEffective(effective_temporal_df(
                base, half, mode,
            )));
        }
    }
    out.extend([
        DenominatorSpec::Spatial(SpatialDf::H2),
        DenominatorSpec::Spatial(SpatialDf::FourSin2Half),
        DenominatorSpec::Spatial(SpatialDf::Sin2),
        DenominatorSpec::Spatial(SpatialDf::ScaledExpDecaySq { c: 100.0 }),
        DenominatorSpec::Spatial(SpatialDf::FourSinh2PiHalfOverPi2),
        DenominatorSpec::Spatial(SpatialDf::Sinh2),
        DenominatorSpec::Spatial(SpatialDf::ScaledExpm1Sq { c: 100.0 }),
        DenominatorSpec::Spatial(SpatialDf::ScaledExpm1Sq { c: 1.0 }),
        DenominatorSpec::Spatial(SpatialDf::SinhH2),
    ]);
    out
}

/// Format a DF parameter: integral values print without a decimal point.
fn fmt_param(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

enum TagParams {
    None,
    /// `key=value` pairs inside parentheses.
    KeyValues(Vec<(String, f64)>),
    /// A nested tag inside parentheses (used by `phi-eff=mode(base...)`).
    Inner(String),
}

/// Split `name(params...)` into the name and its parenthesised content.
fn split_tag(tag: &str) -> Result<(&str, TagParams)> {
    match tag.find('(') {
        None => Ok((tag, TagParams::None)),
        Some(open) => {
            if !tag.ends_with(')') {
                return Err(Error::UnknownDf(tag.into()));
            }
            let name = &tag[..open];
            let inside = &tag[open + 1..tag.len() - 1];
            // A nested tag (contains its own parentheses, or is a bare name
            // without '=') is passed through whole for recursive parsing.
            if inside.contains('(') || !inside.contains('=') {
                return Ok((name, TagParams::Inner(inside.to_string())));
            }
            let mut kvs = Vec::new();
            for part in inside.split(',') {
                let (k, v) = part
                    .split_once('=')
                    .ok_or_else(|| Error::UnknownDf(tag.into()))?;
                let val: f64 = v
                    .parse()
                    .map_err(|_| Error::InvalidParam(format!("bad DF parameter '{part}'")))?;
                if !(val.is_finite() && val > 0.0) {
                    return Err(Error::InvalidParam(format!(
                        "DF parameter '{k}' must be positive and finite, got {v}"
                    )));
                }
                kvs.push((k.to_string(), val));
            }
            Ok((name, TagParams::KeyValues(kvs)))
        }
    }
}

fn no_params(tag: &str, params: &TagParams) -> Result<()> {
    match params {
        TagParams::None => Ok(()),
        _ => Err(Error::UnknownDf(tag.into())),
    }
}

fn one_param(tag: &str, params: &TagParams, key: &str) -> Result<f64> {
    match params {
        TagParams::KeyValues(kvs) if kvs.len() == 1 && kvs[0].0 == key => Ok(kvs[0].1),
        _ => Err(Error::UnknownDf(tag.into())),
    }
}
