//! Numeric CSV comparison: same schema, per-cell relative tolerance.
//! `#` comment lines are metadata, not data, and are ignored.

use std::fmt;
use std::io;
use std::path::Path;

#[derive(Debug, Clone)]
pub struct ParsedCsv {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

pub fn read_csv(path: &Path) -> io::Result<ParsedCsv> {
    let text = std::fs::read_to_string(path)?;
    parse_csv(&text).ok_or_else(|| {
        io::Error::new(
            io::ErrorKind::InvalidData,
            format!("{}: no header row", path.display()),
        )
    })
}

pub fn parse_csv(text: &str) -> Option<ParsedCsv> {
    let mut lines = text
        .lines()
        .filter(|l| !l.trim_start().starts_with('#') && !l.trim().is_empty());
    let header = lines
        .next()?
        .split(',')
        .map(|s| s.trim().to_string())
        .collect();
    let rows = lines
        .map(|l| l.split(',').map(|s| s.trim().to_string()).collect())
        .collect();
    Some(ParsedCsv { header, rows })
}

#[derive(Debug, Clone)]
pub struct CellDeviation {
    /// 1-based data row (header not counted).
    pub row: usize,
    pub column: String,
    pub left: String,
    pub right: String,
    pub rel: f64,
}

impl fmt::Display for CellDeviation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "row {} column {}: {} vs {} (rel {:.3e})",
            self.row, self.column, self.left, self.right, self.rel
        )
    }
}

#[derive(Debug)]
pub struct DiffReport {
    pub schema_mismatch: Option<String>,
    pub cells_compared: usize,
    pub max_rel: f64,
    pub worst: Option<CellDeviation>,
    pub failures: Vec<CellDeviation>,
}

impl DiffReport {
    pub fn passed(&self) -> bool {
        self.schema_mismatch.is_none() && self.failures.is_empty()
    }
}

impl fmt::Display for DiffReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(why) = &self.schema_mismatch {
            return write!(f, "schema mismatch: {why}");
        }
        write!(
            f,
            "{} cells compared, max relative deviation {:.3e}",
            self.cells_compared, self.max_rel
        )?;
        if let Some(w) = &self.worst {
            write!(f, " (worst at {w})")?;
        }
        if !self.failures.is_empty() {
            write!(f, "\n{} cell(s) beyond tolerance:", self.failures.len())?;
            for d in &self.failures {
                write!(f, "\n  {d}")?;
            }
        }
        Ok(())
    }
}

fn relative_deviation(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

/// Compare two parsed CSVs cell-by-cell. Numeric cells use relative
/// tolerance; non-numeric cells (including empty ones) must match exactly.
pub fn diff_parsed(a: &ParsedCsv, b: &ParsedCsv, rtol: f64) -> DiffReport {
    let mut report = DiffReport {
        schema_mismatch: None,
        cells_compared: 0,
        max_rel: 0.0,
        worst: None,
        failures: Vec::new(),
    };
    if a.header != b.header {
        report.schema_mismatch = Some(format!(
            "headers differ: `{}` vs `{}`",
            a.header.join(","),
            b.header.join(",")
        ));
        return report;
    }
    if a.rows.len() != b.rows.len() {
        report.schema_mismatch = Some(format!(
            "row counts differ: {} vs {}",
            a.rows.len(),
            b.rows.len()
        ));
        return report;
    }
    for (ri, (ra, rb)) in a.rows.iter().zip(&b.rows).enumerate() {
        if ra.len() != rb.len() {
            report.schema_mismatch =
                Some(format!("row {} widths differ: {} vs {}", ri + 1, ra.len(), rb.len()));
            return report;
        }
        for (ci, (ca, cb)) in ra.iter().zip(rb).enumerate() {
            report.cells_compared += 1;
            let column = a
                .header
                .get(ci)
                .cloned()
                .unwrap_or_else(|| format!("{}", ci + 1));
            let dev = match (ca.parse::<f64>(), cb.parse::<f64>()) {
                (Ok(x), Ok(y)) => relative_deviation(x, y),
                _ if ca == cb => 0.0,
                _ => f64::INFINITY,
            };
            if dev > report.max_rel {
                report.max_rel = dev;
                report.worst = Some(CellDeviation {
                    row: ri + 1,
                    column: column.clone(),
                    left: ca.clone(),
                    right: cb.clone(),
                    rel: dev,
                });
            }
            if dev > rtol {
                report.failures.push(CellDeviation {
                    row: ri + 1,
                    column,
                    left: ca.clone(),
                    right: cb.clone(),
                    rel: dev,
                });
            }
        }
    }
    report
}

pub fn diff_files(a: &Path, b: &Path, rtol: f64) -> io::Result<DiffReport> {
    Ok(diff_parsed(&read_csv(a)?, &read_csv(b)?, rtol))
}
