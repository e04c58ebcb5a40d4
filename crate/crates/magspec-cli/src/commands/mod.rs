//! Subcommand implementations. Each `run` takes a validated
//! [`crate::config::ExperimentConfig`], performs no filesystem I/O, and
//! returns a [`CommandOutput`]; the binary handles files and exit codes.

pub mod counting;
pub mod cylinder;
pub mod disk_curves;
pub mod invariants;
pub mod polygon_sweep;
pub mod semicontinuity;

use magspec::assembly::{assemble, restrict_dirichlet, BoundaryCondition, MagneticField};
use magspec::disk::{fiber_oracle, FiberKind};
use magspec::eigen::smallest_eigenpairs;
use magspec::geometry::{triangulate, ConvexPolygon};

use crate::csvout::{CurveRow, SpectrumRow};
use crate::report::Report;
use crate::{CliError, CliResult};

/// Name of the tolerance that bounds accepted eigenpair residuals.
pub const EIGEN_RESIDUAL_TOL: &str = "eigen-residual";

/// Everything a subcommand produces; empty row vectors mean the command
/// emits no CSV of that schema.
#[derive(Debug)]
pub struct CommandOutput {
    pub report: Report,
    pub spectrum_rows: Vec<SpectrumRow>,
    pub curve_rows: Vec<CurveRow>,
}

impl CommandOutput {
    pub fn new(report: Report) -> Self {
        CommandOutput { report, spectrum_rows: Vec::new(), curve_rows: Vec::new() }
    }
}

/// Lowest `k` eigenvalues of the field on a polygon at one refinement
/// level under the given boundary condition.
pub(crate) fn polygon_spectrum(
    poly: &ConvexPolygon,
    field: &MagneticField,
    refine: u32,
    bc: BoundaryCondition,
    k: usize,
    eig_tol: f64,
) -> CliResult<Vec<f64>> {
    let mesh = triangulate(poly, refine);
    let pencil = assemble(&mesh, field)?;
    let pencil = match bc {
        BoundaryCondition::Dirichlet => restrict_dirichlet(&pencil, &mesh)?,
        BoundaryCondition::Neumann => pencil,
    };
    let spectrum = smallest_eigenpairs(&pencil, k, eig_tol)?;
    Ok(spectrum.values)
}

/// Lowest `count` eigenvalues of the unit disk assembled from the radial
/// fiber oracle over angular momenta `n ∈ {-n_max..=n_max}`.
///
/// Truncation safety: every returned value must lie strictly below both
/// the smallest eigenvalue of the first omitted fibers (`|n| = n_max + 1`)
/// and the deepest value returned by any included fiber, so no omitted
/// mode can undercut the reported list.
pub(crate) fn disk_spectrum_2d(
    b: f64,
    kind: FiberKind,
    count: usize,
    n_max: i32,
    grid: usize,
) -> CliResult<Vec<f64>> {
    if count == 0 {
        return Err(CliError::Config("requested an empty disk spectrum".into()));
    }
    if n_max < 1 {
        return Err(CliError::Config(format!(
            "the fiber merge needs n_max >= 1, got {n_max}"
        )));
    }
    let mut all = Vec::new();
    let mut deepest_included = f64::INFINITY;
    for n in -n_max..=n_max {
        let vals = fiber_oracle(n, b, kind, grid).map_err(|e| fiber_context(e, n, b))?;
        deepest_included =
            deepest_included.min(*vals.last().expect("fiber oracle returns values"));
        all.extend(vals);
    }
    let omitted_lo = fiber_oracle(n_max + 1, b, kind, grid)
        .map_err(|e| fiber_context(e, n_max + 1, b))?[0]
        .min(fiber_oracle(-(n_max + 1), b, kind, grid)
            .map_err(|e| fiber_context(e, -(n_max + 1), b))?[0]);
    let ceiling = deepest_included.min(omitted_lo);
    all.sort_by(f64::total_cmp);
    if all.len() < count || all[count - 1] >= ceiling {
        return Err(CliError::Config(format!(
            "cannot certify the lowest {count} disk eigenvalues with n_max = {n_max}: \
             the merge is only trustworthy below {ceiling:.6e}; raise n_max or lower count"
        )));
    }
    all.truncate(count);
    Ok(all)
}

/// Re-wraps a fiber error with the offending `(n, b)` so failures in a
/// sweep are attributable, preserving the error class.
pub(crate) fn fiber_context(e: magspec::Error, n: i32, b: f64) -> CliError {
    use magspec::Error as E;
    let tag = format!("fiber n = {n}, b = {b}: ");
    let wrapped = match e {
        E::NoRoot(m) => E::NoRoot(tag + &m),
        E::NoConvergence(m) => E::NoConvergence(tag + &m),
        E::Quadrature(m) => E::Quadrature(tag + &m),
        E::Factorization(m) => E::Factorization(tag + &m),
        E::InvalidInput(m) => E::InvalidInput(tag + &m),
        E::LaguerreDomain(m) => E::LaguerreDomain(tag + &m),
        other => other,
    };
    wrapped.into()
}

/// Per-index two-level gap `max(coarse[i] - fine[i], 0)`: with conforming
/// elements both levels over-approximate, so the gap bounds roughly three
/// times the fine-level error and serves as a conservative error estimate.
pub(crate) fn two_level_gap(coarse: &[f64], fine: &[f64], i: usize) -> f64 {
    (coarse[i] - fine[i]).max(0.0)
}

/// Largest two-level gap over the first `upto` indices.
pub(crate) fn max_two_level_gap(coarse: &[f64], fine: &[f64], upto: usize) -> f64 {
    (0..upto).map(|i| two_level_gap(coarse, fine, i)).fold(0.0, f64::max)
}
