//! Experiment CLI.
//!
//! Exit codes: 0 success, 2 run completed with divergence observed (the
//! frontier scans treat divergence as data), 1 error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use nsfd::fraccore::df_registry;
use nsfd_harness::config::{self, Params};
use nsfd_harness::diff::diff_files;
use nsfd_harness::experiments::{self, registry};
use nsfd_harness::manifest::RunManifest;

/// Environment variable that overrides the output directory (the
/// `--out-dir` flag still wins).
const OUT_DIR_ENV: &str = "NSFD_OUT_DIR";

#[derive(Parser)]
#[command(name = "nsfd", version, about = "Nonstandard finite-difference experiment runner")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named experiment and write its CSV artifacts and manifest.
    Run {
        /// Experiment id (see `nsfd list`).
        id: String,
        /// TOML config file with parameter overrides.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Individual parameter overrides, highest precedence.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        /// Output directory (default `nsfd-out/<id>`, or $NSFD_OUT_DIR).
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Also write gnuplot-ready two-column .dat files where applicable.
        #[arg(long)]
        emit_plots: bool,
    },
    /// List experiments and denominator-function tags.
    List,
    /// Compare two CSV artifacts cell-by-cell at a relative tolerance.
    Diff {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        rtol: f64,
    },
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run { id, config, set, out_dir, emit_plots } => {
            match run(&id, config.as_deref(), &set, out_dir, emit_plots) {
                Ok(diverged) => {
                    if diverged {
                        ExitCode::from(2)
                    } else {
                        ExitCode::SUCCESS
                    }
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::FAILURE
                }
            }
        }
        Command::List => {
            list();
            ExitCode::SUCCESS
        }
        Command::Diff { a, b, rtol } => match diff_files(&a, &b, rtol) {
            Ok(report) => {
                println!("{report}");
                if report.passed() {
                    println!("PASS (rtol {rtol})");
                    ExitCode::SUCCESS
                } else {
                    println!("FAIL (rtol {rtol})");
                    ExitCode::FAILURE
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::FAILURE
            }
        },
    }
}

fn run(
    id: &str,
    config_path: Option<&Path>,
    set: &[String],
    out_dir_flag: Option<PathBuf>,
    emit_plots: bool,
) -> Result<bool, Box<dyn std::error::Error>> {
    let defaults = experiments::default_params(id)?;

    let mut file_params = Params::new();
    let mut file_out_dir = None;
    if let Some(path) = config_path {
        file_params = config::load_config_file(path, id)?;
        // `out-dir` is harness plumbing, not an experiment parameter
        file_out_dir = file_params.remove("out-dir").map(PathBuf::from);
    }

    let mut overrides = Params::new();
    for raw in set {
        let (k, v) = config::parse_override(raw)?;
        overrides.insert(k, v);
    }

    let params = config::merge(&[&defaults, &file_params, &overrides]);

    let out_dir = out_dir_flag
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .or(file_out_dir)
        .unwrap_or_else(|| PathBuf::from("nsfd-out").join(id));

    let started = Instant::now();
    let output = experiments::run_experiment(id, &params, emit_plots)?;
    let duration_ms = started.elapsed().as_millis() as u64;

    std::fs::create_dir_all(&out_dir)?;
    for artifact in &output.artifacts {
        let path = out_dir.join(&artifact.name);
        std::fs::write(&path, artifact.text.as_bytes())?;
        println!("wrote {}", path.display());
    }
    let manifest = RunManifest::new(
        id,
        &params,
        &output.artifacts,
        output.divergence_observed,
        duration_ms,
    );
    manifest.write_to(&out_dir)?;
    println!("wrote {}", out_dir.join("manifest.json").display());
    if output.divergence_observed {
        println!("divergence observed (expected for frontier-style runs)");
    }
    Ok(output.divergence_observed)
}

fn list() {
    println!("experiments:");
    for info in registry() {
        println!("  {:<10} {}", info.id, info.summary);
    }
    println!("\ndenominator functions (canonical text forms):");
    for spec in df_registry() {
        println!("  {}", spec.text());
    }
    println!("\nenvironment: {OUT_DIR_ENV} overrides the output directory");
}
