//! Lowest Dirichlet and per-fiber Neumann eigenvalue curves of the unit
//! disk as functions of the field strength, with the structural assertions
//! that at least three fiber curves stay below the Dirichlet curve on
//! moderate fields and that the Dirichlet curve dominates the field
//! strength itself.

use magspec::disk::{lambda_01, mu_n1};

use super::{fiber_context, CommandOutput};
use crate::config::ExperimentConfig;
use crate::csvout::CurveRow;
use crate::report::Report;
use crate::{CliError, CliResult};

/// Largest field strength the curve sweep accepts.
const B_CEILING: f64 = 8.0;
/// Field strength at which three curves are expected to cross.
const CROSSING_B: f64 = 2.0;
/// Common crossing value of the three curves at `b = 2`.
const CROSSING_VALUE: f64 = 6.0;

pub fn run(cfg: &ExperimentConfig) -> CliResult<CommandOutput> {
    cfg.validate()?;
    if !cfg.domain.is_disk() {
        return Err(CliError::Config("disk-curves runs on the disk domain only".into()));
    }
    for &b in &cfg.b_values {
        if b > B_CEILING {
            return Err(CliError::Config(format!(
                "disk curves are tabulated for b in (0, {B_CEILING}], got {b}"
            )));
        }
    }

    let tol_crossing = cfg.tol("crossing", 1e-8);
    let tol_floor = cfg.tol("lambda-floor", 1e-9);

    let mut report = Report::new("disk-curves");
    let mut rows = Vec::new();

    for &b in &cfg.b_values {
        let lam = lambda_01(b).map_err(|e| fiber_context(e, 0, b))?;
        rows.push(CurveRow { b, curve_id: "lambda_0_1".into(), value: lam.value });

        let mut below = 0usize;
        for &n in &cfg.n_set {
            let mu = mu_n1(n, b).map_err(|e| fiber_context(e, n, b))?;
            rows.push(CurveRow { b, curve_id: format!("mu_{n}_1"), value: mu.value });
            if mu.value <= lam.value {
                below += 1;
            }

            if (b - CROSSING_B).abs() <= 1e-12 && (n == -1 || n == 2) {
                report.check_abs(
                    format!("triple-crossing-curve-mu_{n}_1"),
                    mu.value,
                    CROSSING_VALUE,
                    tol_crossing,
                    format!("mu_{n}_1({CROSSING_B}) = {}", mu.value),
                );
            }
        }

        report.check_le(
            format!("flux-below-dirichlet-ground-b{b}"),
            b,
            lam.value,
            tol_floor,
            format!("lambda_0_1({b}) = {} stays >= b", lam.value),
        );

        if b <= 4.0 {
            report.push(
                format!("three-fiber-curves-below-dirichlet-b{b}"),
                below >= 3,
                below as f64,
                3.0,
                format!("{below} of {} fiber curves at or below lambda_0_1({b})", cfg.n_set.len()),
            );
        }

        if (b - CROSSING_B).abs() <= 1e-12 {
            report.check_abs(
                "triple-crossing-curve-lambda_0_1",
                lam.value,
                CROSSING_VALUE,
                tol_crossing,
                format!("lambda_0_1({CROSSING_B}) = {}", lam.value),
            );
        }
    }

    let mut out = CommandOutput::new(report);
    out.curve_rows = rows;
    Ok(out)
}
