//! `magspec` binary: experiment harness for magnetic-Laplacian eigenvalue
//! inequalities on convex domains.
//!
//! Every run writes into `--out` (default `./out`): the CSV data, a
//! plain-text `report.txt` with one line per asserted check, and
//! `resolved-config.json` recording the exact parameters used.
//!
//! Exit codes: 0 all checks passed; 1 a checked inequality or identity
//! was violated beyond its tolerance; 2 invalid input or configuration;
//! 3 a solver failed to converge.

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use magspec_cli::commands::{
    counting, cylinder, disk_curves, invariants, polygon_sweep, semicontinuity, CommandOutput,
};
use magspec_cli::config::{self, defaults, ExperimentConfig};
use magspec_cli::csvout;
use magspec_cli::CliResult;

#[derive(Parser)]
#[command(
    name = "magspec",
    version,
    about = "Eigenvalue experiments for the magnetic Laplacian on convex domains"
)]
struct Cli {
    /// JSON experiment config; replaces the subcommand's default config.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for CSV, report, and resolved config.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Seed override for randomized domains.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Refinement override: use levels [r-1, r] (just [0] for r = 0).
    #[arg(long, global = true)]
    refine: Option<u32>,
    /// Tolerance override, repeatable: --tol name=value.
    #[arg(long = "tol", global = true, value_parser = config::parse_tol_flag)]
    tol: Vec<(String, f64)>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Dirichlet and per-fiber Neumann eigenvalue curves of the unit disk.
    DiskCurves,
    /// Same-mesh Dirichlet/Neumann domination sweep on a convex polygon.
    PolygonSweep,
    /// Two-shift domination on right cylinders over symmetric cross-sections.
    Cylinder,
    /// Eigenvalue counting at Landau levels.
    Counting,
    /// Scaling, conjugation, gauge, and quadrature identity checks.
    Invariants,
    /// Neumann semicontinuity trend on circumscribed polygons.
    Semicontinuity,
}

impl Command {
    fn default_config(self) -> ExperimentConfig {
        match self {
            Command::DiskCurves => defaults::disk_curves(),
            Command::PolygonSweep => defaults::polygon_sweep(),
            Command::Cylinder => defaults::cylinder(),
            Command::Counting => defaults::counting(),
            Command::Invariants => defaults::invariants(),
            Command::Semicontinuity => defaults::semicontinuity(),
        }
    }

    fn run(self, cfg: &ExperimentConfig) -> CliResult<CommandOutput> {
        match self {
            Command::DiskCurves => disk_curves::run(cfg),
            Command::PolygonSweep => polygon_sweep::run(cfg),
            Command::Cylinder => cylinder::run(cfg),
            Command::Counting => counting::run(cfg),
            Command::Invariants => invariants::run(cfg),
            Command::Semicontinuity => semicontinuity::run(cfg),
        }
    }
}

fn execute(cli: &Cli) -> CliResult<bool> {
    let mut cfg = match &cli.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => cli.command.default_config(),
    };
    cfg.apply_overrides(&cli.tol, cli.refine, cli.seed);
    cfg.validate()?;

    std::fs::create_dir_all(&cli.out)?;
    let output = cli.command.run(&cfg)?;

    std::fs::write(cli.out.join("resolved-config.json"), cfg.to_resolved_json()?)?;
    if !output.spectrum_rows.is_empty() {
        std::fs::write(
            cli.out.join("spectrum.csv"),
            csvout::render_spectrum_csv(&output.spectrum_rows)?,
        )?;
    }
    if !output.curve_rows.is_empty() {
        std::fs::write(cli.out.join("curves.csv"), csvout::render_curve_csv(&output.curve_rows)?)?;
    }
    let rendered = output.report.render();
    std::fs::write(cli.out.join("report.txt"), &rendered)?;
    print!("{rendered}");

    Ok(output.report.all_passed())
}

fn main() {
    // clap itself exits with code 2 on malformed flags, matching the
    // invalid-input contract.
    let cli = Cli::parse();
    let code = match execute(&cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}
