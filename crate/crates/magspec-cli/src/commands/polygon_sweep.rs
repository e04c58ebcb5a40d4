//! Dirichlet/Neumann eigenvalue sweep on one convex polygon: solves both
//! spectra on the same meshes across refinement levels and asserts the
//! index-shifted domination `μ_{k+1} ≤ λ_k + tol(h)` (tol from a two-level
//! comparison) together with the exact same-mesh domination `μ_k ≤ λ_k`.
//!
//! The two-index shift `μ_{k+2}` vs `λ_k` in the plane is an open
//! question, so it is recorded as data notes and never asserted.

use magspec::assembly::{BoundaryCondition, MagneticField};
use magspec::eigen::DEFAULT_TOL;

use super::{polygon_spectrum, two_level_gap, CommandOutput, EIGEN_RESIDUAL_TOL};
use crate::config::ExperimentConfig;
use crate::csvout::SpectrumRow;
use crate::report::Report;
use crate::{CliError, CliResult};

pub fn run(cfg: &ExperimentConfig) -> CliResult<CommandOutput> {
    cfg.validate()?;
    if cfg.domain.is_disk() {
        return Err(CliError::Config(
            "polygon-sweep needs a polygonal domain; use disk-curves for the disk".into(),
        ));
    }
    cfg.refine_pair()?;

    let poly = cfg.domain.build(cfg.seed)?;
    let label = cfg.domain.label(cfg.seed);
    let eig_tol = cfg.tol(EIGEN_RESIDUAL_TOL, DEFAULT_TOL);
    let floor = cfg.tol("domination-floor", 1e-9);
    let k_range = cfg.k_range;

    let mut report = Report::new(format!("polygon-sweep {label}"));
    let mut rows = Vec::new();

    for &b in &cfg.b_values {
        let field = MagneticField::new(b, cfg.gauge.to_gauge())?;

        // (refine, dirichlet values, neumann values) per level; Neumann is
        // solved two indices deeper for the shifted checks and the
        // unasserted two-shift data.
        let mut levels: Vec<(u32, Vec<f64>, Vec<f64>)> = Vec::new();
        for &r in &cfg.refine_levels {
            let lam = polygon_spectrum(&poly, &field, r, BoundaryCondition::Dirichlet, k_range, eig_tol)?;
            let mu =
                polygon_spectrum(&poly, &field, r, BoundaryCondition::Neumann, k_range + 2, eig_tol)?;
            for (j, &v) in lam.iter().enumerate() {
                rows.push(SpectrumRow {
                    b,
                    domain: label.clone(),
                    bc: "dirichlet".into(),
                    k: j + 1,
                    value: v,
                    refine: r,
                });
            }
            for (j, &v) in mu.iter().enumerate() {
                rows.push(SpectrumRow {
                    b,
                    domain: label.clone(),
                    bc: "neumann".into(),
                    k: j + 1,
                    value: v,
                    refine: r,
                });
            }
            levels.push((r, lam, mu));
        }

        let (_, lam_coarse, mu_coarse) = &levels[levels.len() - 2];
        let (r_fine, lam_fine, mu_fine) = &levels[levels.len() - 1];

        for k in 1..=k_range {
            let lam_k = lam_fine[k - 1];
            let mu_next = mu_fine[k];
            // Both discrete spectra over-approximate their continuum
            // targets, so a violation can only come from the Neumann side
            // converging slower than the Dirichlet side; the sum of the
            // two-level gaps bounds that imbalance with a factor-3 margin.
            let tol_k = two_level_gap(lam_coarse, lam_fine, k - 1)
                + two_level_gap(mu_coarse, mu_fine, k)
                + floor;
            report.check_le(
                format!("shifted-domination-b{b}-k{k}"),
                mu_next,
                lam_k,
                tol_k,
                format!(
                    "refine {r_fine}: mu[{}] = {mu_next} vs lambda[{k}] = {lam_k} (two-level tol {tol_k:.3e})",
                    k + 1
                ),
            );
            report.check_le(
                format!("same-mesh-domination-b{b}-k{k}"),
                mu_fine[k - 1],
                lam_k,
                0.0,
                format!("refine {r_fine}: mu[{k}] = {} vs lambda[{k}] = {lam_k} (exact)", mu_fine[k - 1]),
            );

            let two_shift_holds = mu_fine[k + 1] <= lam_k + tol_k;
            report.note(format!(
                "two-shift-in-plane,domain={label},b={b},k={k},{}: mu[{}] = {} vs lambda[{k}] = {lam_k}",
                if two_shift_holds { "observed" } else { "violated" },
                k + 2,
                mu_fine[k + 1],
            ));
        }
    }

    let mut out = CommandOutput::new(report);
    out.spectrum_rows = rows;
    Ok(out)
}
