//! Structural invariant checks that are independent of any one theorem:
//!
//! * field-sign conjugation: the spectrum at `-b` equals the spectrum at
//!   `b` on the same mesh;
//! * dilation scaling: eigenvalues of `tΩ` at field `b` equal `t⁻²` times
//!   the eigenvalues of `Ω` at field `b·t²` (exact at the discrete level
//!   because meshes scale with the polygon);
//! * gauge robustness: Landau and symmetric gauges give the same ground
//!   value up to a discretization gap that shrinks under refinement;
//! * the mixed-second-derivative integral identity
//!   `∫(∂₁₂u)² = ∫∂₁₁u·∂₂₂u` for smooth u vanishing on the boundary of
//!   the unit square, in a real and a complex instance, evaluated by
//!   tensor Gauss quadrature.

use magspec::assembly::{BoundaryCondition, MagneticField};
use magspec::eigen::DEFAULT_TOL;
use magspec::quadrature::gauss_legendre_on;
use num_complex::Complex64;

use super::{polygon_spectrum, CommandOutput, EIGEN_RESIDUAL_TOL};
use crate::config::ExperimentConfig;
use crate::report::Report;
use crate::{CliError, CliResult};

use std::f64::consts::PI;

/// Both sides of `∫(∂₁₂u)² dx = ∫(∂₁₁u)(∂₂₂u) dx` on the unit square for
/// `u = sin(πx₁)sin(πx₂)`, via `nodes × nodes` tensor Gauss quadrature.
/// Exact value of both sides is `π⁴/4`.
pub fn mixed_derivative_identity_real(nodes: usize) -> (f64, f64) {
    let pts = gauss_legendre_on(nodes, 0.0, 1.0);
    let mut cross = 0.0;
    let mut separated = 0.0;
    for &(x, wx) in &pts {
        for &(y, wy) in &pts {
            let w = wx * wy;
            let d12 = PI * PI * (PI * x).cos() * (PI * y).cos();
            let d11 = -PI * PI * (PI * x).sin() * (PI * y).sin();
            let d22 = d11;
            cross += w * d12 * d12;
            separated += w * d11 * d22;
        }
    }
    (cross, separated)
}

/// Real-part form of the same identity for a complex function vanishing on
/// the boundary: `∫|∂₁₂u|² = Re ∫ (∂₂₂u)(conj ∂₁₁u)` with
/// `u = sin(πx₁)sin(πx₂)·exp(i(a₁x₁ + a₂x₂))`, `a = (1, 2)`.
pub fn mixed_derivative_identity_complex(nodes: usize) -> (f64, f64) {
    let (a1, a2) = (1.0, 2.0);
    let pts = gauss_legendre_on(nodes, 0.0, 1.0);
    let mut lhs = 0.0;
    let mut rhs = 0.0;
    for &(x, wx) in &pts {
        for &(y, wy) in &pts {
            let w = wx * wy;
            let (s1, c1) = ((PI * x).sin(), (PI * x).cos());
            let (s2, c2) = ((PI * y).sin(), (PI * y).cos());
            // The unimodular phase factor exp(i(a1 x + a2 y)) cancels in
            // both quadratic forms, so only the bracketed parts matter.
            let d12 = Complex64::new(PI * PI * c1 * c2 - a1 * a2 * s1 * s2, a2 * PI * c1 * s2 + a1 * PI * s1 * c2);
            let d11 = Complex64::new(-(PI * PI + a1 * a1) * s1 * s2, 2.0 * a1 * PI * c1 * s2);
            let d22 = Complex64::new(-(PI * PI + a2 * a2) * s1 * s2, 2.0 * a2 * PI * s1 * c2);
            lhs += w * d12.norm_sqr();
            rhs += w * (d22 * d11.conj()).re;
        }
    }
    (lhs, rhs)
}

pub fn run(cfg: &ExperimentConfig) -> CliResult<CommandOutput> {
    cfg.validate()?;
    if cfg.domain.is_disk() {
        return Err(CliError::Config(
            "invariants run on a polygonal domain (mesh-level checks)".into(),
        ));
    }
    let poly = cfg.domain.build(cfg.seed)?;
    let label = cfg.domain.label(cfg.seed);
    let eig_tol = cfg.tol(EIGEN_RESIDUAL_TOL, DEFAULT_TOL);
    let b = cfg.b_values[0];
    let gauge = cfg.gauge.to_gauge();

    let mut report = Report::new(format!("invariants {label}"));

    // Cheap mesh level for the exact (scaling, conjugation) identities;
    // the gauge comparison uses the configured top level and one deeper.
    let r_cheap = cfg.top_refine().min(3);
    let k = cfg.k_range.min(4).max(1);

    // --- dilation scaling ------------------------------------------------
    let tol_scaling = cfg.tol("scaling-rel", 1e-8);
    let base = polygon_spectrum(
        &poly,
        &MagneticField::new(b, gauge)?,
        r_cheap,
        BoundaryCondition::Dirichlet,
        k,
        eig_tol,
    )?;
    for t in [0.5, 2.0] {
        let scaled_poly = poly.scaled(t)?;
        let left = polygon_spectrum(
            &scaled_poly,
            &MagneticField::new(b, gauge)?,
            r_cheap,
            BoundaryCondition::Dirichlet,
            k,
            eig_tol,
        )?;
        let right = polygon_spectrum(
            &poly,
            &MagneticField::new(b * t * t, gauge)?,
            r_cheap,
            BoundaryCondition::Dirichlet,
            k,
            eig_tol,
        )?;
        let mut worst = 0.0f64;
        for j in 0..k {
            let rel = (left[j] - right[j] / (t * t)).abs() / (right[j] / (t * t)).abs();
            worst = worst.max(rel);
        }
        report.push(
            format!("dilation-scaling-t{t}"),
            worst <= tol_scaling,
            worst,
            tol_scaling,
            format!(
                "max relative gap between spectrum of {t}*domain at b={b} and rescaled spectrum at b={}",
                b * t * t
            ),
        );
    }
    // t = 1 sanity: the identical computation must reproduce itself bit
    // for bit (determinism backstop for the scaling check).
    let rerun = polygon_spectrum(
        &poly,
        &MagneticField::new(b, gauge)?,
        r_cheap,
        BoundaryCondition::Dirichlet,
        k,
        eig_tol,
    )?;
    let bitwise = base.iter().zip(&rerun).all(|(x, y)| x.to_bits() == y.to_bits());
    report.push(
        "dilation-scaling-t1-bitwise",
        bitwise,
        if bitwise { 0.0 } else { 1.0 },
        0.0,
        "repeated identical solve reproduces the spectrum exactly".to_string(),
    );

    // --- field-sign conjugation ------------------------------------------
    let tol_conj = cfg.tol("conjugation", 1e-12);
    let plus = polygon_spectrum(
        &poly,
        &MagneticField::signed(b, gauge)?,
        r_cheap,
        BoundaryCondition::Dirichlet,
        k,
        eig_tol,
    )?;
    let minus = polygon_spectrum(
        &poly,
        &MagneticField::signed(-b, gauge)?,
        r_cheap,
        BoundaryCondition::Dirichlet,
        k,
        eig_tol,
    )?;
    let scale = plus.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let worst = plus
        .iter()
        .zip(&minus)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0f64, f64::max);
    report.push(
        "conjugation-spectrum-even-in-field-sign",
        worst <= tol_conj * scale,
        worst / scale,
        tol_conj,
        format!("max |spec(b) - spec(-b)| = {worst:.3e} relative to spectral scale {scale:.3e}"),
    );

    // --- gauge robustness -------------------------------------------------
    let tol_gauge = cfg.tol("gauge-rel-max", 0.05);
    let r_top = cfg.top_refine();
    let mut gauge_gap = [0.0f64; 2];
    for (slot, r) in [(0usize, r_top), (1usize, r_top + 1)] {
        let landau = polygon_spectrum(
            &poly,
            &MagneticField::new(b, magspec::assembly::Gauge::Landau)?,
            r,
            BoundaryCondition::Dirichlet,
            1,
            eig_tol,
        )?[0];
        let symmetric = polygon_spectrum(
            &poly,
            &MagneticField::new(b, magspec::assembly::Gauge::Symmetric)?,
            r,
            BoundaryCondition::Dirichlet,
            1,
            eig_tol,
        )?[0];
        gauge_gap[slot] = (landau - symmetric).abs() / landau.max(symmetric);
    }
    report.push(
        "gauge-choice-ground-value-gap-small",
        gauge_gap[0] <= tol_gauge,
        gauge_gap[0],
        tol_gauge,
        format!("relative Landau/symmetric ground gap {:.3e} at refine {r_top}", gauge_gap[0]),
    );
    report.push(
        "gauge-gap-shrinks-under-refinement",
        gauge_gap[1] < gauge_gap[0],
        gauge_gap[1] - gauge_gap[0],
        0.0,
        format!(
            "gap {:.3e} at refine {} vs {:.3e} at refine {r_top}",
            gauge_gap[1],
            r_top + 1,
            gauge_gap[0]
        ),
    );

    // --- mixed-second-derivative quadrature identity ----------------------
    let tol_quad = cfg.tol("quadrature-identity", 1e-6);
    let target = PI.powi(4) / 4.0;
    let (cross, separated) = mixed_derivative_identity_real(32);
    report.check_abs(
        "mixed-derivative-identity-real-cross-term",
        cross,
        target,
        tol_quad,
        format!("integral of (d12 u)^2 = {cross:.10}"),
    );
    report.check_abs(
        "mixed-derivative-identity-real-separated-term",
        separated,
        target,
        tol_quad,
        format!("integral of (d11 u)(d22 u) = {separated:.10}"),
    );
    report.check_abs(
        "mixed-derivative-identity-real-sides-agree",
        cross,
        separated,
        tol_quad,
        format!("|lhs - rhs| = {:.3e}", (cross - separated).abs()),
    );
    let (lhs_c, rhs_c) = mixed_derivative_identity_complex(32);
    let (lhs_c24, rhs_c24) = mixed_derivative_identity_complex(24);
    let quad_settled = (lhs_c - lhs_c24).abs().max((rhs_c - rhs_c24).abs());
    report.check_abs(
        "mixed-derivative-identity-complex-sides-agree",
        lhs_c,
        rhs_c,
        tol_quad * lhs_c.abs().max(1.0),
        format!("|d12 u|^2 integral {lhs_c:.10} vs real-part pairing {rhs_c:.10}"),
    );
    report.push(
        "mixed-derivative-identity-complex-quadrature-settled",
        quad_settled <= 1e-10 * lhs_c.abs().max(1.0),
        quad_settled,
        1e-10 * lhs_c.abs().max(1.0),
        format!("order-24 vs order-32 tensor Gauss drift {quad_settled:.3e}"),
    );

    Ok(CommandOutput::new(report))
}
