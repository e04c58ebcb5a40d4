//! Neumann semicontinuity trend on circumscribed polygons shrinking to the
//! unit disk: the deficit `max(0, μ₁(disk) − μ₁(P_n))` must not grow as
//! the edge count rises and must fall inside the discretization envelope
//! at the finest polygon. Dirichlet values must stay below the disk value
//! at every `n` (the polygons contain the disk).
//!
//! Polygon values are Richardson-extrapolated from two refinement levels;
//! the two-level gap serves as the uncertainty envelope of each estimate.

use magspec::assembly::{BoundaryCondition, MagneticField};
use magspec::disk::{lambda_01, mu_n1};
use magspec::eigen::DEFAULT_TOL;
use magspec::geometry::circumscribed_polygon;

use super::{fiber_context, polygon_spectrum, CommandOutput, EIGEN_RESIDUAL_TOL};
use crate::config::ExperimentConfig;
use crate::csvout::SpectrumRow;
use crate::report::Report;
use crate::{CliError, CliResult};

/// Fiber range scanned for the disk's lowest Neumann value.
const NEUMANN_FIBER_SCAN: std::ops::RangeInclusive<i32> = -4..=4;

/// Triangle budget per mesh: the per-polygon refinement level is the
/// largest one keeping `edges * 4^level` under this bound, so dense
/// polygons do not blow up the solve.
const TRIANGLE_BUDGET: usize = 2100;

fn refine_for(edges: usize, top: u32) -> u32 {
    let mut r = 0u32;
    while r < top && edges * 4usize.pow(r + 1) <= TRIANGLE_BUDGET {
        r += 1;
    }
    r.max(1)
}

/// Richardson-extrapolated value and its uncertainty envelope from a
/// (coarse, fine) pair of over-approximations.
fn extrapolate(coarse: f64, fine: f64) -> (f64, f64) {
    let gap = (coarse - fine).max(0.0);
    (fine - gap / 3.0, gap)
}

pub fn run(cfg: &ExperimentConfig) -> CliResult<CommandOutput> {
    cfg.validate()?;
    if !cfg.domain.is_disk() {
        return Err(CliError::Config(
            "semicontinuity compares circumscribed polygons against the disk; set the domain to the disk"
                .into(),
        ));
    }
    if cfg.k_range != 1 {
        return Err(CliError::Config(
            "semicontinuity tracks the ground value only; set k_range = 1".into(),
        ));
    }
    let b = cfg.b_values[0];
    let eig_tol = cfg.tol(EIGEN_RESIDUAL_TOL, DEFAULT_TOL);
    let floor = cfg.tol("envelope-floor", 1e-9);
    let top = cfg.top_refine();

    let mut report = Report::new("semicontinuity circumscribed polygons");
    let mut rows = Vec::new();

    // Disk references from the closed-form fiber roots.
    let lam_disk = lambda_01(b).map_err(|e| fiber_context(e, 0, b))?.value;
    let mut mu_disk = f64::INFINITY;
    for n in NEUMANN_FIBER_SCAN {
        mu_disk = mu_disk.min(mu_n1(n, b).map_err(|e| fiber_context(e, n, b))?.value);
    }
    rows.push(SpectrumRow {
        b,
        domain: "disk".into(),
        bc: "dirichlet".into(),
        k: 1,
        value: lam_disk,
        refine: 0,
    });
    rows.push(SpectrumRow {
        b,
        domain: "disk".into(),
        bc: "neumann".into(),
        k: 1,
        value: mu_disk,
        refine: 0,
    });

    // (deficit, envelope) per polygon for the trend checks; (value,
    // envelope) for the Dirichlet nesting checks.
    let mut deficits: Vec<(usize, f64, f64)> = Vec::new();
    let mut lam_estimates: Vec<(usize, f64, f64)> = Vec::new();

    for &edges in &cfg.edge_counts {
        let poly = circumscribed_polygon(1.0, edges)?;
        let label = format!("circ{edges}");
        let field = MagneticField::new(b, cfg.gauge.to_gauge())?;
        let r_fine = refine_for(edges, top);
        let r_coarse = r_fine - 1;

        let solve = |r: u32, bc: BoundaryCondition| -> CliResult<f64> {
            Ok(polygon_spectrum(&poly, &field, r, bc, 1, eig_tol)?[0])
        };
        let mu_c = solve(r_coarse, BoundaryCondition::Neumann)?;
        let mu_f = solve(r_fine, BoundaryCondition::Neumann)?;
        let lam_c = solve(r_coarse, BoundaryCondition::Dirichlet)?;
        let lam_f = solve(r_fine, BoundaryCondition::Dirichlet)?;

        let (mu_est, mu_env) = extrapolate(mu_c, mu_f);
        let (lam_est, lam_env) = extrapolate(lam_c, lam_f);

        rows.push(SpectrumRow {
            b,
            domain: label.clone(),
            bc: "neumann".into(),
            k: 1,
            value: mu_f,
            refine: r_fine,
        });
        rows.push(SpectrumRow {
            b,
            domain: label.clone(),
            bc: "dirichlet".into(),
            k: 1,
            value: lam_f,
            refine: r_fine,
        });

        let deficit = (mu_disk - mu_est).max(0.0);
        deficits.push((edges, deficit, mu_env + floor));
        lam_estimates.push((edges, lam_est, lam_env + floor));
        report.note(format!(
            "edges={edges} refine=({r_coarse},{r_fine}): mu1 estimate {mu_est:.8} (envelope {mu_env:.2e}), \
             lambda1 estimate {lam_est:.8} (envelope {lam_env:.2e}), deficit {deficit:.3e}"
        ));

        report.check_le(
            format!("dirichlet-on-circumscribed-not-above-disk-n{edges}"),
            lam_est,
            lam_disk,
            lam_env + floor,
            format!("lambda1(P_{edges}) ~ {lam_est:.8} vs lambda1(disk) = {lam_disk:.8}"),
        );
    }

    for pair in lam_estimates.windows(2) {
        let (n_lo, lam_lo, env_lo) = pair[0];
        let (n_hi, lam_hi, env_hi) = pair[1];
        report.check_le(
            format!("dirichlet-grows-as-polygon-shrinks-n{n_lo}-to-n{n_hi}"),
            lam_lo,
            lam_hi,
            env_lo + env_hi,
            format!("lambda1(P_{n_lo}) ~ {lam_lo:.8} vs lambda1(P_{n_hi}) ~ {lam_hi:.8}"),
        );
    }

    for pair in deficits.windows(2) {
        let (n_lo, d_lo, env_lo) = pair[0];
        let (n_hi, d_hi, env_hi) = pair[1];
        report.check_le(
            format!("neumann-deficit-nonincreasing-n{n_lo}-to-n{n_hi}"),
            d_hi,
            d_lo,
            env_lo + env_hi,
            format!("deficit {d_hi:.3e} at {n_hi} edges vs {d_lo:.3e} at {n_lo} edges"),
        );
    }
    let (n_last, d_last, env_last) = *deficits.last().expect("validated nonempty");
    report.check_le(
        format!("neumann-deficit-inside-envelope-n{n_last}"),
        d_last,
        0.0,
        env_last,
        format!("final deficit {d_last:.3e} vs discretization envelope {env_last:.3e}"),
    );

    let mut out = CommandOutput::new(report);
    out.spectrum_rows = rows;
    Ok(out)
}
