//! Named experiment registry and runners.
//!
//! Every experiment resolves a parameter map (defaults, config file,
//! `--set` overrides), drives the library, and returns named CSV artifacts
//! plus optional gnuplot-ready `.dat` companions. Runs are deterministic:
//! identical parameters produce byte-identical artifacts.

use std::fmt;

use nsfd::fraccore::{
    DenominatorSpec, FractionalOrder, SpatialDf, TemporalBase, TemporalEffective,
};
use nsfd::ivp::{ivp_error_table, IvpExample};
use nsfd::locus::{boundary_locus, rmax_scan, LocusVariant, ScanSchedule};
use nsfd::tfde::{
    convergence_study, stability_frontier_scan, stability_threshold, CellOutcome,
    ConvergenceReport, FrontierReport, TfdeExample,
};

use crate::config::{
    get_f64, get_f64_list, get_str, get_str_list, get_usize, get_usize_list, ConfigError, Params,
};
use crate::csvio::{self, Table};

#[derive(Debug)]
pub enum RunError {
    Config(ConfigError),
    Lib(nsfd::Error),
    UnknownExperiment(String),
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Config(e) => write!(f, "{e}"),
            RunError::Lib(e) => write!(f, "{e}"),
            RunError::UnknownExperiment(id) => {
                write!(f, "unknown experiment `{id}` (see `nsfd list`)")
            }
        }
    }
}

impl std::error::Error for RunError {}

impl From<ConfigError> for RunError {
    fn from(e: ConfigError) -> Self {
        RunError::Config(e)
    }
}

impl From<nsfd::Error> for RunError {
    fn from(e: nsfd::Error) -> Self {
        RunError::Lib(e)
    }
}

/// One output file, produced in memory so checksums and writes share bytes.
#[derive(Debug, Clone)]
pub struct Artifact {
    pub name: String,
    pub text: String,
}

impl Artifact {
    fn from_table(name: impl Into<String>, table: &Table) -> Self {
        Artifact { name: name.into(), text: table.to_text() }
    }
}

#[derive(Debug)]
pub struct RunOutput {
    pub artifacts: Vec<Artifact>,
    pub divergence_observed: bool,
}

pub struct ExperimentInfo {
    pub id: &'static str,
    pub summary: &'static str,
    allowed_keys: &'static [&'static str],
    defaults: &'static [(&'static str, &'static str)],
}

const TABLE12_KEYS: &[&str] = &["example", "alphas", "n-list", "phi-list"];
const TABLE_GRID_KEYS: &[&str] = &["example", "alpha", "n", "phi-eff", "psi-list", "m-list"];
const FIG1_KEYS: &[&str] = &["alphas", "n", "samples", "variants"];
const FIG2_KEYS: &[&str] = &["alphas", "tau-hats", "n-max", "dense-upto", "stride", "ceiling"];
const FIG3_KEYS: &[&str] = &["alpha", "length", "n", "phi-eff", "psi-std", "psi-ns", "m-list"];
const CUSTOM_KEYS: &[&str] = &[
    "kind", "example", "alpha", "alphas", "n", "n-list", "n-max", "phi-list", "phi-eff",
    "psi-list", "psi-std", "psi-ns", "m-list", "samples", "variant", "tau-hat", "dense-upto",
    "stride", "ceiling", "length",
];

const PSI_SET_A: &str = "h2,4sin2-half,sin2,scaled-exp-decay-sq(c=100)";
const PSI_SET_B: &str = "4sinh2-pi-half-over-pi2,sinh2,scaled-expm1-sq(c=100),sinh-h2";
const FRONTIER_M_LIST: &str = "200,208,216,224..233,236";

/// All named experiments, in presentation order.
pub fn registry() -> &'static [ExperimentInfo] {
    &[
        ExperimentInfo {
            id: "table1",
            summary: "IVP error/rate grid, first example (alpha x N x 4 temporal DFs)",
            allowed_keys: TABLE12_KEYS,
            defaults: &[
                ("example", "ex1"),
                ("alphas", "0.3,0.5,0.7"),
                ("n-list", "10,20,40,80,160,320"),
                ("phi-list", "tau,scaled-expm1(c=1000),sin,sinh"),
            ],
        },
        ExperimentInfo {
            id: "table2",
            summary: "IVP error/rate grid, second example (same grid as table1)",
            allowed_keys: TABLE12_KEYS,
            defaults: &[
                ("example", "ex2"),
                ("alphas", "0.3,0.5,0.7"),
                ("n-list", "10,20,40,80,160,320"),
                ("phi-list", "tau,scaled-expm1(c=1000),sin,sinh"),
            ],
        },
        ExperimentInfo {
            id: "table3",
            summary: "1D diffusion grid refinement, first four spatial DFs",
            allowed_keys: TABLE_GRID_KEYS,
            defaults: &[
                ("example", "ex3"),
                ("alpha", "0.9"),
                ("n", "10000"),
                ("phi-eff", "pow(tau)"),
                ("psi-list", PSI_SET_A),
                ("m-list", "2,4,8,16,32"),
            ],
        },
        ExperimentInfo {
            id: "table4",
            summary: "1D diffusion grid refinement, second four spatial DFs",
            allowed_keys: TABLE_GRID_KEYS,
            defaults: &[
                ("example", "ex3"),
                ("alpha", "0.9"),
                ("n", "10000"),
                ("phi-eff", "pow(tau)"),
                ("psi-list", PSI_SET_B),
                ("m-list", "2,4,8,16,32"),
            ],
        },
        ExperimentInfo {
            id: "table5",
            summary: "1D diffusion with decaying-exponential temporal DF",
            allowed_keys: TABLE_GRID_KEYS,
            defaults: &[
                ("example", "ex3"),
                ("alpha", "0.9"),
                ("n", "10000"),
                ("phi-eff", "pow(exp-decay(lambda=100))"),
                ("psi-list", PSI_SET_B),
                ("m-list", "2,4,8,16,32"),
            ],
        },
        ExperimentInfo {
            id: "table6",
            summary: "2D diffusion grid refinement, first four spatial DFs",
            allowed_keys: TABLE_GRID_KEYS,
            defaults: &[
                ("example", "ex4"),
                ("alpha", "0.9"),
                ("n", "20000"),
                ("phi-eff", "pow(tau)"),
                ("psi-list", PSI_SET_A),
                ("m-list", "2,4,8,16,32"),
            ],
        },
        ExperimentInfo {
            id: "table7",
            summary: "2D diffusion grid refinement, second four spatial DFs",
            allowed_keys: TABLE_GRID_KEYS,
            defaults: &[
                ("example", "ex4"),
                ("alpha", "0.9"),
                ("n", "20000"),
                ("phi-eff", "pow(tau)"),
                ("psi-list", PSI_SET_B),
                ("m-list", "2,4,8,16,32"),
            ],
        },
        ExperimentInfo {
            id: "table8",
            summary: "2D diffusion with decaying-exponential temporal DF",
            allowed_keys: TABLE_GRID_KEYS,
            defaults: &[
                ("example", "ex4"),
                ("alpha", "0.9"),
                ("n", "20000"),
                ("phi-eff", "pow(exp-decay(lambda=100))"),
                ("psi-list", PSI_SET_B),
                ("m-list", "2,4,8,16,32"),
            ],
        },
        ExperimentInfo {
            id: "fig1",
            summary: "Boundary-locus curves per order, both algebra variants",
            allowed_keys: FIG1_KEYS,
            defaults: &[
                ("alphas", "0.2,0.4,0.6,0.8"),
                ("n", "100000"),
                ("samples", "2048"),
                ("variants", "as-printed,complex-division"),
            ],
        },
        ExperimentInfo {
            id: "fig2",
            summary: "Spectral-radius scans at three real test coefficients",
            allowed_keys: FIG2_KEYS,
            defaults: &[
                ("alphas", "0.2,0.4,0.6,0.8"),
                ("tau-hats", "-0.5,0.5,1.5"),
                ("n-max", "1000"),
                ("dense-upto", "200"),
                ("stride", "10"),
                ("ceiling", "2000"),
            ],
        },
        ExperimentInfo {
            id: "fig3",
            summary: "Stability frontier: standard vs nonstandard spatial DF",
            allowed_keys: FIG3_KEYS,
            defaults: &[
                ("alpha", "0.9"),
                ("length", "5.0848"),
                ("n", "10000"),
                ("phi-eff", "pow(tau)"),
                ("psi-std", "h2"),
                ("psi-ns", "scaled-expm1-sq(c=1)"),
                ("m-list", FRONTIER_M_LIST),
            ],
        },
        ExperimentInfo {
            id: "frontier",
            summary: "Alias of fig3 (stability-frontier scan)",
            allowed_keys: FIG3_KEYS,
            defaults: &[
                ("alpha", "0.9"),
                ("length", "5.0848"),
                ("n", "10000"),
                ("phi-eff", "pow(tau)"),
                ("psi-std", "h2"),
                ("psi-ns", "scaled-expm1-sq(c=1)"),
                ("m-list", FRONTIER_M_LIST),
            ],
        },
        ExperimentInfo {
            id: "custom",
            summary: "Fully parameterised single study (requires kind=...)",
            allowed_keys: CUSTOM_KEYS,
            defaults: &[],
        },
    ]
}

pub fn find(id: &str) -> Option<&'static ExperimentInfo> {
    registry().iter().find(|e| e.id == id)
}

/// Built-in defaults for one experiment.
pub fn default_params(id: &str) -> Result<Params, RunError> {
    let info = find(id).ok_or_else(|| RunError::UnknownExperiment(id.to_string()))?;
    Ok(info
        .defaults
        .iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect())
}

/// Reject keys the experiment does not understand (typo guard).
pub fn validate_keys(id: &str, params: &Params) -> Result<(), RunError> {
    let info = find(id).ok_or_else(|| RunError::UnknownExperiment(id.to_string()))?;
    for key in params.keys() {
        if !info.allowed_keys.contains(&key.as_str()) {
            return Err(ConfigError::UnknownKey {
                experiment: id.to_string(),
                key: key.clone(),
                allowed: info.allowed_keys.iter().map(|s| s.to_string()).collect(),
            }
            .into());
        }
    }
    Ok(())
}

pub fn run_experiment(
    id: &str,
    params: &Params,
    emit_plots: bool,
) -> Result<RunOutput, RunError> {
    validate_keys(id, params)?;
    match id {
        "table1" | "table2" => run_ivp_table(id, params),
        "table3" | "table4" | "table5" | "table6" | "table7" | "table8" => {
            run_convergence_table(id, params)
        }
        "fig1" => run_locus_curves(id, params, emit_plots),
        "fig2" => run_rmax_scans(id, params, emit_plots),
        "fig3" | "frontier" => run_frontier(id, params, emit_plots),
        "custom" => run_custom(params, emit_plots),
        other => Err(RunError::UnknownExperiment(other.to_string())),
    }
}

// ---- parameter parsing helpers -------------------------------------------

fn parse_alpha(raw: f64) -> Result<FractionalOrder, RunError> {
    FractionalOrder::new(raw).map_err(RunError::Lib)
}

fn parse_temporal_base(tag: &str) -> Result<TemporalBase, RunError> {
    match DenominatorSpec::parse(&format!("phi={tag}"), None)? {
        DenominatorSpec::TemporalBase(b) => Ok(b),
        _ => unreachable!("phi= prefix parses to a temporal base"),
    }
}

fn parse_spatial(tag: &str) -> Result<SpatialDf, RunError> {
    match DenominatorSpec::parse(&format!("psi={tag}"), None)? {
        DenominatorSpec::Spatial(s) => Ok(s),
        _ => unreachable!("psi= prefix parses to a spatial DF"),
    }
}

fn parse_phi_eff(tag: &str, alpha: FractionalOrder) -> Result<TemporalEffective, RunError> {
    match DenominatorSpec::parse(&format!("phi-eff={tag}"), Some(alpha))? {
        DenominatorSpec::TemporalEffective(e) => Ok(e),
        _ => unreachable!("phi-eff= prefix parses to an effective temporal DF"),
    }
}

fn ivp_example(name: &str) -> Result<IvpExample, RunError> {
    match name {
        "ex1" => Ok(IvpExample::Ex1),
        "ex2" => Ok(IvpExample::Ex2),
        other => Err(ConfigError::BadValue {
            key: "example".into(),
            value: other.into(),
            reason: "expected ex1 or ex2".into(),
        }
        .into()),
    }
}

fn tfde_example(name: &str) -> Result<TfdeExample, RunError> {
    match name {
        "ex3" => Ok(TfdeExample::Ex3),
        "ex4" => Ok(TfdeExample::Ex4),
        other => Err(ConfigError::BadValue {
            key: "example".into(),
            value: other.into(),
            reason: "expected ex3 or ex4".into(),
        }
        .into()),
    }
}

/// Filesystem-safe slug for a DF tag: `scaled-expm1-sq(c=1)` ->
/// `scaled-expm1-sq-c1`.
fn slug(tag: &str) -> String {
    let mut out = String::with_capacity(tag.len());
    let mut last_dash = false;
    for ch in tag.chars() {
        let mapped = match ch {
            'a'..='z' | '0'..='9' | '.' => Some(ch),
            '(' | ',' => Some('-'),
            ')' | '=' => None,
            '-' => Some('-'),
            _ => Some('-'),
        };
        match mapped {
            Some('-') if last_dash => {}
            Some('-') => {
                out.push('-');
                last_dash = true;
            }
            Some(c) => {
                out.push(c);
                last_dash = false;
            }
            None => {}
        }
    }
    out.trim_end_matches('-').to_string()
}

/// Sign-safe number label for filenames (`-0.5` -> `m0.5`).
fn num_label(x: f64) -> String {
    if x < 0.0 {
        format!("m{}", -x)
    } else {
        format!("{x}")
    }
}

// ---- runners --------------------------------------------------------------

fn run_ivp_table(id: &str, params: &Params) -> Result<RunOutput, RunError> {
    let example = ivp_example(get_str(params, "example")?)?;
    let alphas = get_f64_list(params, "alphas")?;
    let n_list = get_usize_list(params, "n-list")?;
    let bases: Vec<TemporalBase> = get_str_list(params, "phi-list")?
        .iter()
        .map(|t| parse_temporal_base(t))
        .collect::<Result<_, _>>()?;

    let rows = ivp_error_table(example, &alphas, &n_list, &bases)?;
    // the published rate pipeline is raw-valued for the scaled-expm1 column
    let raw_rate: Vec<TemporalBase> = bases
        .iter()
        .filter(|b| matches!(b, TemporalBase::ScaledExpm1 { .. }))
        .cloned()
        .collect();
    let comment = format!(
        "experiment={id} example={} horizon=1 mode=ratio",
        example.id()
    );
    let table = csvio::ivp_table(comment, &rows, &raw_rate);
    Ok(RunOutput {
        artifacts: vec![Artifact::from_table(format!("{id}.csv"), &table)],
        divergence_observed: false,
    })
}

fn convergence_comment(id: &str, example: TfdeExample, report: &ConvergenceReport) -> String {
    format!(
        "experiment={id} example={} alpha={} N={} horizon={} phi-eff={}",
        example.id(),
        report.alpha,
        report.n_steps,
        report.t_final,
        report.phi_eff.tag()
    )
}

fn run_convergence_table(id: &str, params: &Params) -> Result<RunOutput, RunError> {
    let example = tfde_example(get_str(params, "example")?)?;
    let alpha = parse_alpha(get_f64(params, "alpha")?)?;
    let n = get_usize(params, "n")?;
    let phi_eff = parse_phi_eff(get_str(params, "phi-eff")?, alpha)?;
    let psi_list: Vec<SpatialDf> = get_str_list(params, "psi-list")?
        .iter()
        .map(|t| parse_spatial(t))
        .collect::<Result<_, _>>()?;
    let m_list = get_usize_list(params, "m-list")?;

    let report = convergence_study(example, alpha, n, &phi_eff, &psi_list, &m_list)?;
    let diverged = report
        .cells
        .iter()
        .flatten()
        .any(|c| c.outcome.is_diverged());
    let table = csvio::convergence_table(convergence_comment(id, example, &report), &report);
    Ok(RunOutput {
        artifacts: vec![Artifact::from_table(format!("{id}.csv"), &table)],
        divergence_observed: diverged,
    })
}

fn run_locus_curves(id: &str, params: &Params, emit_plots: bool) -> Result<RunOutput, RunError> {
    let alphas = get_f64_list(params, "alphas")?;
    let n = get_usize(params, "n")?;
    let samples = get_usize(params, "samples")?;
    let variants: Vec<LocusVariant> = get_str_list(params, "variants")?
        .iter()
        .map(|v| match v.as_str() {
            "as-printed" => Ok(LocusVariant::AsPrinted),
            "complex-division" => Ok(LocusVariant::ComplexDivision),
            other => Err(RunError::Config(ConfigError::BadValue {
                key: "variants".into(),
                value: other.into(),
                reason: "expected as-printed or complex-division".into(),
            })),
        })
        .collect::<Result<_, _>>()?;

    let mut artifacts = Vec::new();
    for variant in &variants {
        for &a in &alphas {
            let alpha = parse_alpha(a)?;
            let curve = boundary_locus(alpha, n, samples, *variant)?;
            let comment = format!(
                "experiment={id} variant={} alpha={a} n={n} samples={samples}",
                variant.id()
            );
            let stem = format!("{id}-{}-alpha-{a}", variant.id());
            let table = csvio::locus_table(comment, &curve);
            artifacts.push(Artifact::from_table(format!("{stem}.csv"), &table));
            if emit_plots {
                let pairs: Vec<(f64, f64)> = curve
                    .x
                    .iter()
                    .zip(&curve.y)
                    .map(|(&x, &y)| (x, y))
                    .collect();
                artifacts.push(Artifact {
                    name: format!("{stem}.dat"),
                    text: plot_text(&pairs),
                });
            }
        }
    }
    Ok(RunOutput { artifacts, divergence_observed: false })
}

fn run_rmax_scans(id: &str, params: &Params, emit_plots: bool) -> Result<RunOutput, RunError> {
    let alphas = get_f64_list(params, "alphas")?;
    let tau_hats = get_f64_list(params, "tau-hats")?;
    let n_max = get_usize(params, "n-max")?;
    let dense_upto = get_usize(params, "dense-upto")?;
    let stride = get_usize(params, "stride")?;
    let ceiling = get_usize(params, "ceiling")?;

    let schedule = if dense_upto >= n_max {
        ScanSchedule::Dense
    } else {
        ScanSchedule::Sampled { dense_upto, stride }
    };
    let mut artifacts = Vec::new();
    for &a in &alphas {
        let alpha = parse_alpha(a)?;
        for &th in &tau_hats {
            let points = rmax_scan(alpha, th, n_max, schedule, ceiling)?;
            let comment = format!(
                "experiment={id} alpha={a} tau-hat={th} n-max={n_max} \
                 dense-upto={dense_upto} stride={stride} ceiling={ceiling}"
            );
            let stem = format!("{id}-alpha-{a}-tauhat-{}", num_label(th));
            let table = csvio::rmax_table(comment, &points);
            artifacts.push(Artifact::from_table(format!("{stem}.csv"), &table));
            if emit_plots {
                let pairs: Vec<(f64, f64)> =
                    points.iter().map(|p| (p.n as f64, p.r_max)).collect();
                artifacts.push(Artifact {
                    name: format!("{stem}.dat"),
                    text: plot_text(&pairs),
                });
            }
        }
    }
    Ok(RunOutput { artifacts, divergence_observed: false })
}

/// Largest M whose grid satisfies the sufficient stability bound (the
/// empirical divergence onset may lie beyond it).
fn analytic_bound_m(
    alpha: FractionalOrder,
    length: f64,
    n: usize,
    phi_eff: &TemporalEffective,
    psi: &SpatialDf,
) -> usize {
    let tau = 1.0 / n as f64;
    let phi = phi_eff.eval(tau);
    let threshold = stability_threshold(alpha);
    let mut bound = 0;
    for m in 1..100_000 {
        let h = length / m as f64;
        if phi / psi.eval(h) <= threshold {
            bound = m;
        } else {
            break;
        }
    }
    bound
}

fn run_frontier(id: &str, params: &Params, emit_plots: bool) -> Result<RunOutput, RunError> {
    let alpha = parse_alpha(get_f64(params, "alpha")?)?;
    let length = get_f64(params, "length")?;
    let n = get_usize(params, "n")?;
    let phi_eff = parse_phi_eff(get_str(params, "phi-eff")?, alpha)?;
    let psi_std = parse_spatial(get_str(params, "psi-std")?)?;
    let psi_ns = parse_spatial(get_str(params, "psi-ns")?)?;
    let m_list = get_usize_list(params, "m-list")?;

    let report = stability_frontier_scan(
        alpha,
        length,
        n,
        &phi_eff,
        (psi_std.clone(), psi_ns.clone()),
        &m_list,
    )?;
    emit_frontier(id, &report, emit_plots)
}

fn emit_frontier(
    id: &str,
    report: &FrontierReport,
    emit_plots: bool,
) -> Result<RunOutput, RunError> {
    let alpha = parse_alpha(report.alpha)?;
    let comments: Vec<String> = report
        .series
        .iter()
        .map(|s| {
            let bound = analytic_bound_m(
                alpha,
                report.extent,
                report.n_steps,
                &report.phi_eff,
                &s.psi,
            );
            format!(
                "experiment={id} psi={} alpha={} L={} N={} horizon=1 phi-eff={} \
                 analytic-bound-M={bound}",
                s.psi.tag(),
                report.alpha,
                report.extent,
                report.n_steps,
                report.phi_eff.tag()
            )
        })
        .collect();
    let tables = csvio::frontier_tables(report, &comments);
    let mut artifacts = Vec::new();
    let mut diverged = false;
    for (series, table) in report.series.iter().zip(&tables) {
        let stem = format!("{id}-psi-{}", slug(&series.psi.tag()));
        artifacts.push(Artifact::from_table(format!("{stem}.csv"), table));
        if emit_plots {
            let pairs: Vec<(f64, f64)> = series
                .points
                .iter()
                .filter_map(|p| match p.outcome {
                    CellOutcome::Converged { e_inf } => Some((p.m as f64, e_inf)),
                    CellOutcome::Diverged { .. } => None,
                })
                .collect();
            artifacts.push(Artifact {
                name: format!("{stem}.dat"),
                text: plot_text(&pairs),
            });
        }
        diverged |= series.points.iter().any(|p| p.outcome.is_diverged());
    }
    Ok(RunOutput { artifacts, divergence_observed: diverged })
}

fn run_custom(params: &Params, emit_plots: bool) -> Result<RunOutput, RunError> {
    let kind = params.get("kind").map(|s| s.as_str()).ok_or_else(|| {
        ConfigError::MissingKeys {
            experiment: "custom".into(),
            keys: vec![
                "kind (one of: ivp, convergence, locus, rmax, frontier)".into(),
                "plus the kind's own parameters".into(),
            ],
        }
    })?;
    match kind {
        "ivp" => {
            require(params, "custom", &["example", "alphas", "n-list", "phi-list"])?;
            run_ivp_table("custom-ivp", params)
        }
        "convergence" => {
            require(
                params,
                "custom",
                &["example", "alpha", "n", "phi-eff", "psi-list", "m-list"],
            )?;
            run_convergence_table("custom-convergence", params)
        }
        "locus" => {
            require(params, "custom", &["alpha", "n", "samples", "variant"])?;
            let mut p = params.clone();
            p.insert("alphas".into(), params["alpha"].clone());
            p.insert("variants".into(), params["variant"].clone());
            run_locus_curves("custom-locus", &p, emit_plots)
        }
        "rmax" => {
            require(params, "custom", &["alpha", "tau-hat", "n-max"])?;
            let mut p = params.clone();
            p.insert("alphas".into(), params["alpha"].clone());
            p.insert("tau-hats".into(), params["tau-hat"].clone());
            p.entry("dense-upto".into()).or_insert_with(|| "200".into());
            p.entry("stride".into()).or_insert_with(|| "10".into());
            p.entry("ceiling".into()).or_insert_with(|| "2000".into());
            run_rmax_scans("custom-rmax", &p, emit_plots)
        }
        "frontier" => {
            require(
                params,
                "custom",
                &["alpha", "length", "n", "psi-std", "psi-ns", "m-list"],
            )?;
            let mut p = params.clone();
            p.entry("phi-eff".into()).or_insert_with(|| "pow(tau)".into());
            run_frontier("custom-frontier", &p, emit_plots)
        }
        other => Err(ConfigError::BadValue {
            key: "kind".into(),
            value: other.into(),
            reason: "expected ivp, convergence, locus, rmax, or frontier".into(),
        }
        .into()),
    }
}

fn require(params: &Params, experiment: &str, keys: &[&str]) -> Result<(), RunError> {
    let missing: Vec<String> = keys
        .iter()
        .filter(|k| !params.contains_key(**k))
        .map(|k| k.to_string())
        .collect();
    if missing.is_empty() {
        Ok(())
    } else {
        Err(ConfigError::MissingKeys {
            experiment: experiment.to_string(),
            keys: missing,
        }
        .into())
    }
}

fn plot_text(pairs: &[(f64, f64)]) -> String {
    let mut out = String::new();
    for (a, b) in pairs {
        out.push_str(&format!("{a} {b}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_ids_are_unique_and_complete() {
        let ids: Vec<&str> = registry().iter().map(|e| e.id).collect();
        for expected in [
            "table1", "table2", "table3", "table4", "table5", "table6", "table7", "table8",
            "fig1", "fig2", "fig3", "frontier", "custom",
        ] {
            assert!(ids.contains(&expected), "missing {expected}");
        }
        let mut dedup = ids.clone();
        dedup.sort_unstable();
        dedup.dedup();
        assert_eq!(dedup.len(), ids.len());
    }

    #[test]
    fn defaults_parse_cleanly() {
        for info in registry() {
            if info.id == "custom" {
                continue;
            }
            let params = default_params(info.id).unwrap();
            validate_keys(info.id, &params).unwrap();
        }
    }

    #[test]
    fn unknown_key_is_rejected() {
        let mut params = default_params("table3").unwrap();
        params.insert("banana".into(), "1".into());
        assert!(validate_keys("table3", &params).is_err());
    }

    #[test]
    fn custom_without_kind_lists_requirements() {
        let err = run_experiment("custom", &Params::new(), false).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("kind"), "message was: {msg}");
    }

    #[test]
    fn slugs_are_filesystem_safe() {
        assert_eq!(slug("h2"), "h2");
        assert_eq!(slug("scaled-expm1-sq(c=1)"), "scaled-expm1-sq-c1");
        assert_eq!(slug("scaled-exp-decay-sq(c=100)"), "scaled-exp-decay-sq-c100");
        assert_eq!(num_label(-0.5), "m0.5");
        assert_eq!(num_label(1.5), "1.5");
    }
}
