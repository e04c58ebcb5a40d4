//! Eigenvalue counting at Landau levels `E = b(2q + 1)`: asserts that the
//! number of Dirichlet values at or below `E`, plus one, never exceeds the
//! number of Neumann values strictly below `E`.
//!
//! Tie rule: the Dirichlet count uses `≤`, the Neumann count uses strict
//! `<`; a value within the tie tolerance of `E` counts as equal, so it is
//! included on the Dirichlet side and excluded on the Neumann side.

use magspec::assembly::{BoundaryCondition, MagneticField};
use magspec::disk::FiberKind;
use magspec::eigen::DEFAULT_TOL;

use super::{disk_spectrum_2d, polygon_spectrum, CommandOutput, EIGEN_RESIDUAL_TOL};
use crate::config::ExperimentConfig;
use crate::csvout::SpectrumRow;
use crate::report::Report;
use crate::{CliError, CliResult};

/// Depth of the disk fiber merge.
const DISK_COUNT: usize = 20;
const DISK_N_MAX: i32 = 10;
const DISK_GRID: usize = 2000;
/// Eigenvalues solved per boundary condition on the finite-element path.
const FEM_DEPTH: usize = 10;

pub fn run(cfg: &ExperimentConfig) -> CliResult<CommandOutput> {
    cfg.validate()?;
    let tie = cfg.tol("counting-tie", 1e-12);
    let margin = cfg.tol("level-margin", 1e-6);
    let label = cfg.domain.label(cfg.seed);

    let mut report = Report::new(format!("counting {label}"));
    let mut rows = Vec::new();

    for &b in &cfg.b_values {
        let (lam, mu, refine) = if cfg.domain.is_disk() {
            (
                disk_spectrum_2d(b, FiberKind::DirichletRadial, DISK_COUNT, DISK_N_MAX, DISK_GRID)?,
                disk_spectrum_2d(b, FiberKind::NeumannFiber, DISK_COUNT, DISK_N_MAX, DISK_GRID)?,
                0u32,
            )
        } else {
            let poly = cfg.domain.build(cfg.seed)?;
            let field = MagneticField::new(b, cfg.gauge.to_gauge())?;
            let eig_tol = cfg.tol(EIGEN_RESIDUAL_TOL, DEFAULT_TOL);
            let r = cfg.top_refine();
            (
                polygon_spectrum(&poly, &field, r, BoundaryCondition::Dirichlet, FEM_DEPTH, eig_tol)?,
                polygon_spectrum(&poly, &field, r, BoundaryCondition::Neumann, FEM_DEPTH, eig_tol)?,
                r,
            )
        };

        for (bc, values) in [("dirichlet", &lam), ("neumann", &mu)] {
            for (j, &v) in values.iter().enumerate() {
                rows.push(SpectrumRow {
                    b,
                    domain: label.clone(),
                    bc: bc.into(),
                    k: j + 1,
                    value: v,
                    refine,
                });
            }
        }

        for &q in &cfg.q_set {
            let level = b * (2.0 * q as f64 + 1.0);
            let lam_top = *lam.last().expect("nonempty spectrum");
            let mu_top = *mu.last().expect("nonempty spectrum");
            if lam_top <= level + margin || mu_top <= level + margin {
                return Err(CliError::Config(format!(
                    "spectra are truncated at ({lam_top:.6}, {mu_top:.6}), too shallow for the \
                     Landau level E = b(2q+1) = {level} at q = {q}; deepen the solve"
                )));
            }
            let d_count = lam.iter().filter(|&&v| v <= level + tie).count();
            let n_count = mu.iter().filter(|&&v| v < level - tie).count();
            report.push(
                format!("counting-at-landau-level-b{b}-q{q}"),
                d_count + 1 <= n_count,
                (d_count + 1) as f64 - n_count as f64,
                0.0,
                format!(
                    "E = {level}: #{{dirichlet <= E}} = {d_count}, #{{neumann < E}} = {n_count}"
                ),
            );
        }
    }

    let mut out = CommandOutput::new(report);
    out.spectrum_rows = rows;
    Ok(out)
}
