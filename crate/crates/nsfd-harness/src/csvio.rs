//! CSV and plot-data emission.
//!
//! Table cells follow the publication's display convention: error values at
//! or above 1e-3 are first rounded to four decimal places, smaller values
//! are rounded to five significant digits, and both are printed as `%.4e`.
//! Convergence rates are printed as `%.4f` and are computed from the
//! *displayed* error values, with one documented exception wired in by the
//! table-1/2 writer. Figure data uses shortest round-trip formatting.

use std::io::{self, Write};
use std::path::Path;

use nsfd::fraccore::TemporalBase;
use nsfd::ivp::IvpRow;
use nsfd::locus::{LocusCurve, RmaxPoint};
use nsfd::tfde::{CellOutcome, ConvergenceReport, FrontierReport};

/// One CSV artifact: a single `#` metadata comment, a header row, data rows.
#[derive(Debug, Clone)]
pub struct Table {
    pub comment: String,
    pub header: String,
    pub rows: Vec<String>,
}

impl Table {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("# ");
        out.push_str(&self.comment);
        out.push('\n');
        out.push_str(&self.header);
        out.push('\n');
        for row in &self.rows {
            out.push_str(row);
            out.push('\n');
        }
        out
    }

    pub fn write_to(&self, path: &Path) -> io::Result<()> {
        let mut f = std::fs::File::create(path)?;
        f.write_all(self.to_text().as_bytes())
    }
}

// ---- display convention -------------------------------------------------

/// `%.4e` with a sign and at least two exponent digits (C-style).
pub fn sci4(x: f64) -> String {
    if x == 0.0 {
        return "0.0000e+00".into();
    }
    let s = format!("{:.4e}", x);
    let (mantissa, exp) = s.split_once('e').expect("exponential format");
    let (sign, digits) = match exp.strip_prefix('-') {
        Some(d) => ('-', d),
        None => ('+', exp),
    };
    format!("{mantissa}e{sign}{digits:0>2}")
}

/// The numeric value an error cell displays as: four decimal places when
/// `e >= 1e-3`, five significant digits otherwise.
pub fn displayed_error(e: f64) -> f64 {
    if e >= 1e-3 {
        (e * 1e4).round() / 1e4
    } else {
        sci4(e).parse().expect("sci4 output reparses")
    }
}

pub fn format_error(e: f64) -> String {
    sci4(displayed_error(e))
}

pub fn format_rate(r: f64) -> String {
    format!("{r:.4}")
}

/// Dyadic rate from two displayed errors; `None` when undefined.
fn displayed_rate(prev: f64, cur: f64) -> Option<f64> {
    if prev > 0.0 && cur > 0.0 {
        Some((prev / cur).log2())
    } else {
        None
    }
}

// ---- table writers ------------------------------------------------------

/// Long-format IVP error table (`alpha,N,df,E_inf,rate`). Rows must be
/// grouped by (alpha, base) with N ascending inside each group, which is
/// the order the library emits. Rates are recomputed from displayed errors
/// except for bases listed in `raw_rate_bases`, whose printed rates come
/// from the raw errors.
pub fn ivp_table(
    comment: String,
    rows: &[IvpRow],
    raw_rate_bases: &[TemporalBase],
) -> Table {
    let mut out = Vec::with_capacity(rows.len());
    let mut prev_disp: Option<f64> = None;
    let mut prev_key: Option<(u64, String)> = None;
    for row in rows {
        let key = (row.alpha.to_bits(), row.phi.tag());
        if prev_key.as_ref() != Some(&key) {
            prev_disp = None;
            prev_key = Some(key);
        }
        let disp = displayed_error(row.e_inf);
        let rate_txt = if raw_rate_bases.contains(&row.phi) {
            row.rate.map(format_rate).unwrap_or_default()
        } else {
            prev_disp
                .and_then(|p| displayed_rate(p, disp))
                .map(format_rate)
                .unwrap_or_default()
        };
        out.push(format!(
            "{},{},phi={},{},{}",
            row.alpha,
            row.n_steps,
            row.phi.tag(),
            sci4(disp),
            rate_txt
        ));
        prev_disp = Some(disp);
    }
    Table {
        comment,
        header: "alpha,N,df,E_inf,rate".into(),
        rows: out,
    }
}

/// Wide-format grid-refinement table: one row per M, `E_inf`/`rate` column
/// pair per spatial denominator. Diverged cells print the literal
/// `diverged` with an empty rate.
pub fn convergence_table(comment: String, report: &ConvergenceReport) -> Table {
    let mut header = String::from("M");
    for psi in &report.psi_list {
        header.push_str(&format!(",E_inf[psi={0}],rate[psi={0}]", psi.tag()));
    }
    let ncols = report.psi_list.len();
    let mut prev_disp: Vec<Option<f64>> = vec![None; ncols];
    let mut rows = Vec::with_capacity(report.m_list.len());
    for (ri, &m) in report.m_list.iter().enumerate() {
        let mut line = m.to_string();
        for ci in 0..ncols {
            match report.cells[ri][ci].outcome {
                CellOutcome::Converged { e_inf } => {
                    let disp = displayed_error(e_inf);
                    let rate_txt = prev_disp[ci]
                        .and_then(|p| displayed_rate(p, disp))
                        .map(format_rate)
                        .unwrap_or_default();
                    line.push_str(&format!(",{},{}", sci4(disp), rate_txt));
                    prev_disp[ci] = Some(disp);
                }
                CellOutcome::Diverged { .. } => {
                    line.push_str(",diverged,");
                    prev_disp[ci] = None;
                }
            }
        }
        rows.push(line);
    }
    Table {
        comment,
        header,
        rows,
    }
}

/// Boundary-locus curve (`s,x_hat,y_hat`), shortest round-trip numbers.
pub fn locus_table(comment: String, curve: &LocusCurve) -> Table {
    let rows = (0..curve.s.len())
        .map(|i| format!("{},{},{}", curve.s[i], curve.x[i], curve.y[i]))
        .collect();
    Table {
        comment,
        header: "s,x_hat,y_hat".into(),
        rows,
    }
}

/// Spectral-radius scan (`n,r_max`), shortest round-trip radii.
pub fn rmax_table(comment: String, points: &[RmaxPoint]) -> Table {
    let rows = points
        .iter()
        .map(|p| format!("{},{}", p.n, p.r_max))
        .collect();
    Table {
        comment,
        header: "n,r_max".into(),
        rows,
    }
}

/// Frontier series (`M,E_inf,diverged`): one table per spatial denominator,
/// errors displayed as `%.4e`, divergence as a 0/1 flag with an empty
/// error cell.
pub fn frontier_tables(report: &FrontierReport, comments: &[String]) -> Vec<Table> {
    report
        .series
        .iter()
        .zip(comments)
        .map(|(series, comment)| {
            let rows = series
                .points
                .iter()
                .map(|p| match p.outcome {
                    CellOutcome::Converged { e_inf } => {
                        format!("{},{},0", p.m, sci4(e_inf))
                    }
                    CellOutcome::Diverged { .. } => format!("{},,1", p.m),
                })
                .collect();
            Table {
                comment: comment.clone(),
                header: "M,E_inf,diverged".into(),
                rows,
            }
        })
        .collect()
}
