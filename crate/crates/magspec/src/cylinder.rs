//! Spectra of right cylinders `D × (0, L)` with the field along the axis.
//!
//! When the vector potential does not depend on `x₃`, the magnetic
//! Laplacian on a right cylinder separates: every 3D eigenvalue is a 2D
//! cross-section eigenvalue plus an axial mode `(πm/L)²` (Dirichlet:
//! `m ≥ 1`, Neumann: `m ≥ 0`). [`compose_spectra`] performs that merge
//! with per-value provenance, and [`domination_report`] checks the
//! two-index shift `μ_{k+2} ≤ λ_k` among simple Dirichlet eigenvalues
//! (with the one-index shift `μ_{k+1} ≤ λ_k` as an unconditional
//! baseline).

use crate::assembly::BoundaryCondition;
use crate::{Error, Result};

/// Axial eigenvalue of mode `m` on an interval of length `length`
/// (`(πm/length)²`). The single canonical expression used by the
/// composition, so composed values can be recomputed bit-for-bit from
/// their provenance.
pub fn axial_term(m: u32, length: f64) -> f64 {
    let x = std::f64::consts::PI * (m as f64) / length;
    x * x
}

/// Sorted 3D spectrum of a right cylinder with per-value provenance.
#[derive(Clone, Debug)]
pub struct ComposedSpectrum {
    /// Nondecreasing 3D eigenvalues.
    pub values: Vec<f64>,
    /// For each value, the pair (2D index, axial mode) it came from;
    /// `values[j] == d2[provenance[j].0] + axial_term(provenance[j].1, length)`
    /// holds bit-for-bit.
    pub provenance: Vec<(usize, u32)>,
    /// Cylinder length `L`.
    pub length: f64,
    /// Boundary condition the composition was built for.
    pub bc: BoundaryCondition,
}

/// Composes the 3D spectrum of `D × (0, length)` from a sorted list of 2D
/// eigenvalues of the cross-section `D`.
///
/// Dirichlet combines with axial modes `m ≥ 1`, Neumann with `m ≥ 0`. The
/// result is the `count` smallest sums, sorted, with ties broken by
/// (2D index, axial mode) so the output is deterministic.
///
/// Truncation safety: every returned value must lie strictly below the
/// largest provided 2D eigenvalue — otherwise a 2D eigenvalue beyond the
/// provided list could produce a smaller sum than one of the returned
/// values, and the composition would be silently wrong. Such requests are
/// rejected with an error asking for a deeper 2D solve.
pub fn compose_spectra(
    d2: &[f64],
    length: f64,
    bc: BoundaryCondition,
    count: usize,
) -> Result<ComposedSpectrum> {
    if !(length > 0.0 && length.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "cylinder length must be positive and finite, got {length}"
        )));
    }
    if count == 0 {
        return Err(Error::InvalidInput("requested an empty composed spectrum".into()));
    }
    if d2.is_empty() {
        return Err(Error::InvalidInput("no 2D eigenvalues provided".into()));
    }
    for w in d2.windows(2) {
        if !(w[0] <= w[1]) {
            return Err(Error::InvalidInput(
                "2D eigenvalues must be sorted nondecreasing and finite".into(),
            ));
        }
    }
    if !d2.iter().all(|v| v.is_finite()) {
        return Err(Error::InvalidInput("2D eigenvalues must be finite".into()));
    }

    let m0: u32 = match bc {
        BoundaryCondition::Dirichlet => 1,
        BoundaryCondition::Neumann => 0,
    };
    let mut pool: Vec<(f64, usize, u32)> = Vec::with_capacity(count + d2.len());
    let mut m = m0;
    loop {
        let ax = axial_term(m, length);
        if pool.len() >= count {
            let kth = pool[count - 1].0;
            // the axial ladder is strictly increasing, so once even the
            // smallest 2D value overshoots the current cut, all later
            // modes do too
            if d2[0] + ax > kth {
                break;
            }
        }
        for (i, &v) in d2.iter().enumerate() {
            pool.push((v + ax, i, m));
        }
        pool.sort_by(|a, b| {
            a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2))
        });
        pool.truncate(count.max(1) + d2.len());
        m = match m.checked_add(1) {
            Some(next) => next,
            None => {
                return Err(Error::InvalidInput(
                    "axial mode index overflow while composing".into(),
                ))
            }
        };
    }
    pool.truncate(count);

    let last2d = *d2.last().unwrap();
    if pool[count - 1].0 >= last2d {
        return Err(Error::InvalidInput(format!(
            "composed value {:.9e} (index {}) is not below the largest provided 2D eigenvalue {:.9e}; solve for more 2D eigenvalues before composing",
            pool[count - 1].0,
            count - 1,
            last2d
        )));
    }

    Ok(ComposedSpectrum {
        values: pool.iter().map(|t| t.0).collect(),
        provenance: pool.iter().map(|t| (t.1, t.2)).collect(),
        length,
        bc,
    })
}

/// One tested index of the two-shift domination check.
#[derive(Clone, Copy, Debug)]
pub struct DominationEntry {
    /// 1-based eigenvalue index `k`.
    pub k: usize,
    /// `λ_k` (composed Dirichlet).
    pub lambda: f64,
    /// `μ_{k+2}` (composed Neumann).
    pub mu_shifted: f64,
    /// Whether `λ_k` is simple at the requested relative gap.
    pub simple: bool,
    /// `Some(μ_{k+2} ≤ λ_k + tol)` for simple `λ_k`, `None` when skipped.
    pub holds: Option<bool>,
}

/// Outcome of the cylinder eigenvalue-domination check.
#[derive(Clone, Debug)]
pub struct DominationReport {
    pub entries: Vec<DominationEntry>,
    /// Indices `k` of simple `λ_k` violating `μ_{k+2} ≤ λ_k + tol`.
    pub violations: Vec<usize>,
    /// Indices skipped because `λ_k` is not certified simple.
    pub skipped: Vec<usize>,
    /// Indices violating the unconditional one-shift baseline
    /// `μ_{k+1} ≤ λ_k + tol`.
    pub baseline_violations: Vec<usize>,
    /// Relative simplicity gap used.
    pub gap: f64,
    /// Absolute tolerance used on both inequalities.
    pub tol: f64,
}

impl DominationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty() && self.baseline_violations.is_empty()
    }
}

impl std::fmt::Display for DominationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for e in &self.entries {
            match e.holds {
                Some(true) => writeln!(
                    f,
                    "k={}: mu[k+2]={:.9} <= lambda[k]={:.9}  ok",
                    e.k, e.mu_shifted, e.lambda
                )?,
                Some(false) => writeln!(
                    f,
                    "k={}: mu[k+2]={:.9} > lambda[k]={:.9}  VIOLATION",
                    e.k, e.mu_shifted, e.lambda
                )?,
                None => writeln!(
                    f,
                    "k={}: lambda[k]={:.9} not certified simple (relative gap < {:.1e}), skipped",
                    e.k, e.lambda, self.gap
                )?,
            }
        }
        writeln!(
            f,
            "violations: {}, skipped: {}, baseline violations: {}",
            self.violations.len(),
            self.skipped.len(),
            self.baseline_violations.len()
        )
    }
}

/// Checks `μ_{k+2} ≤ λ_k + tol` for `k = 1..=indices` restricted to
/// indices where `λ_k` is simple — the relative gap to both spectral
/// neighbors is at least `gap` — and reports skipped indices explicitly.
/// The unconditional one-shift baseline `μ_{k+1} ≤ λ_k + tol` is checked
/// for every `k` in range regardless of simplicity.
///
/// Requires `dirichlet3` to hold at least `indices + 1` values (the
/// neighbor above the last tested index is needed to certify simplicity)
/// and `neumann3` at least `indices + 2`.
pub fn domination_report(
    dirichlet3: &ComposedSpectrum,
    neumann3: &ComposedSpectrum,
    indices: usize,
    gap: f64,
    tol: f64,
) -> Result<DominationReport> {
    if dirichlet3.bc != BoundaryCondition::Dirichlet || neumann3.bc != BoundaryCondition::Neumann {
        return Err(Error::InvalidInput(format!(
            "expected a Dirichlet and a Neumann composed spectrum, got {} and {}",
            dirichlet3.bc, neumann3.bc
        )));
    }
    if dirichlet3.length != neumann3.length {
        return Err(Error::InvalidInput(format!(
            "spectra come from different cylinders: lengths {} and {}",
            dirichlet3.length, neumann3.length
        )));
    }
    if indices == 0 {
        return Err(Error::InvalidInput("no indices requested".into()));
    }
    if !(gap > 0.0 && gap.is_finite()) || !tol.is_finite() {
        return Err(Error::InvalidInput(format!(
            "need a positive simplicity gap and a finite tolerance, got {gap} and {tol}"
        )));
    }
    let d = &dirichlet3.values;
    let n = &neumann3.values;
    if d.len() < indices + 1 || n.len() < indices + 2 {
        return Err(Error::InvalidInput(format!(
            "need at least {} Dirichlet and {} Neumann composed values, got {} and {}",
            indices + 1,
            indices + 2,
            d.len(),
            n.len()
        )));
    }

    let mut entries = Vec::with_capacity(indices);
    let mut violations = Vec::new();
    let mut skipped = Vec::new();
    let mut baseline_violations = Vec::new();
    for k in 1..=indices {
        let lambda = d[k - 1];
        let scale = lambda.abs().max(f64::MIN_POSITIVE);
        let gap_above = d[k] - lambda;
        let gap_below = if k >= 2 { lambda - d[k - 2] } else { f64::INFINITY };
        let simple = gap_above >= gap * scale && gap_below >= gap * scale;
        let mu_shifted = n[k + 1];
        let holds = if simple {
            let ok = mu_shifted <= lambda + tol;
            if !ok {
                violations.push(k);
            }
            Some(ok)
        } else {
            skipped.push(k);
            None
        };
        if n[k] > lambda + tol {
            baseline_violations.push(k);
        }
        entries.push(DominationEntry { k, lambda, mu_shifted, simple, holds });
    }
    Ok(DominationReport { entries, violations, skipped, baseline_violations, gap, tol })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disk::{fiber_oracle, FiberKind};

    #[test]
    fn single_value_composition_matches_the_axial_ladder() {
        let a = 2.5;
        let s = compose_spectra(&[a, 1000.0], std::f64::consts::PI, BoundaryCondition::Dirichlet, 3)
            .unwrap();
        let want = [a + 1.0, a + 4.0, a + 9.0];
        for (got, want) in s.values.iter().zip(want) {
            assert!((got - want).abs() <= 1e-12 * want, "{got} vs {want}");
        }
        assert_eq!(s.provenance, vec![(0, 1), (0, 2), (0, 3)]);
    }

    #[test]
    fn neumann_zero_mode_reproduces_cross_section_values() {
        let d2: Vec<f64> = (0..10).map(|i| 0.3 + 1.7 * (i as f64)).collect();
        // short cylinder: the first axial rung exceeds the 2D spread, so
        // the head of the composition is exactly the m = 0 copy
        let s = compose_spectra(&d2, 0.1, BoundaryCondition::Neumann, 5).unwrap();
        for j in 0..5 {
            assert_eq!(s.values[j].to_bits(), d2[j].to_bits());
            assert_eq!(s.provenance[j], (j, 0));
        }
    }

    #[test]
    fn composition_is_exact_bitwise() {
        let d2 = [0.7, 2.9, 3.1, 8.0, 26.0, 90.0];
        for (bc, len) in [
            (BoundaryCondition::Dirichlet, 1.3),
            (BoundaryCondition::Neumann, 0.9),
            (BoundaryCondition::Dirichlet, std::f64::consts::PI),
        ] {
            let s = compose_spectra(&d2, len, bc, 12).unwrap();
            assert_eq!(s.values.len(), 12);
            assert!(s.values.windows(2).all(|w| w[0] <= w[1]), "sorted");
            for (v, &(i, m)) in s.values.iter().zip(&s.provenance) {
                assert_eq!(v.to_bits(), (d2[i] + axial_term(m, len)).to_bits());
            }
        }
    }

    #[test]
    fn dirichlet_values_shrink_when_the_cylinder_lengthens() {
        let d2 = [1.0, 4.2, 4.9, 11.0, 500.0];
        let short = compose_spectra(&d2, 1.0, BoundaryCondition::Dirichlet, 10).unwrap();
        let long = compose_spectra(&d2, 2.0, BoundaryCondition::Dirichlet, 10).unwrap();
        for (s, l) in short.values.iter().zip(&long.values) {
            assert!(l <= s, "lengthening must not raise a Dirichlet value: {l} > {s}");
        }
    }

    #[test]
    fn truncation_guard_requests_larger_cross_section_solve() {
        match compose_spectra(&[2.5], std::f64::consts::PI, BoundaryCondition::Dirichlet, 3) {
            Err(Error::InvalidInput(msg)) => {
                assert!(msg.contains("2D"), "message should point at the 2D solve: {msg}")
            }
            other => panic!("expected a truncation error, got {other:?}"),
        }
        // Neumann m=0 copies the whole list, so asking for as many values
        // as provided is never truncation-safe either
        assert!(compose_spectra(&[1.0, 2.0], 1.0, BoundaryCondition::Neumann, 2).is_err());
    }

    /// 2D magnetic disk eigenvalues from the radial fiber oracle, merged
    /// over angular momenta `|n| ≤ 6`, five radial modes each.
    fn disk_2d(b: f64, kind: FiberKind) -> Vec<f64> {
        let mut all = Vec::new();
        for n in -6..=6 {
            all.extend(fiber_oracle(n, b, kind, 2000).unwrap());
        }
        all.sort_by(|a, b| a.partial_cmp(b).unwrap());
        all
    }

    #[test]
    fn disk_cylinder_obeys_two_shift_domination() {
        let b = 1.0;
        let d2 = disk_2d(b, FiberKind::DirichletRadial);
        let n2 = disk_2d(b, FiberKind::NeumannFiber);
        let len = std::f64::consts::PI;
        let d3 = compose_spectra(&d2, len, BoundaryCondition::Dirichlet, 9).unwrap();
        let n3 = compose_spectra(&n2, len, BoundaryCondition::Neumann, 10).unwrap();
        // composed Neumann minimum is the 2D minimum (zero axial mode)
        assert_eq!(n3.values[0].to_bits(), n2[0].to_bits());

        // discretization error of the grid-2000 fiber values is well
        // below 1% of scale; margins in the inequality are O(1)
        let report = domination_report(&d3, &n3, 8, 1e-6, 0.05).unwrap();
        assert!(report.violations.is_empty(), "{report}");
        assert!(report.baseline_violations.is_empty(), "{report}");
        assert!(report.skipped.is_empty(), "{report}");
        assert!(report.entries.iter().all(|e| e.holds == Some(true)));
        assert!(report.is_clean());
    }

    #[test]
    fn degenerate_lambda_is_skipped_and_listed() {
        let eps = 5e-9;
        let d3 = compose_spectra(
            &[5.0, 5.0 + eps, 400.0],
            std::f64::consts::PI,
            BoundaryCondition::Dirichlet,
            5,
        )
        .unwrap();
        let n3 = compose_spectra(&[0.1, 300.0], std::f64::consts::PI, BoundaryCondition::Neumann, 6)
            .unwrap();
        let report = domination_report(&d3, &n3, 4, 1e-6, 0.0).unwrap();
        // composed Dirichlet head is 6, 6+eps, 9, 9+eps, 14: every tested
        // index has a too-close neighbor on one side
        assert_eq!(report.skipped, vec![1, 2, 3, 4], "{report}");
        assert!(report.entries.iter().all(|e| !e.simple && e.holds.is_none()));
        assert!(report.violations.is_empty());
    }

    #[test]
    fn report_validation() {
        let d3 =
            compose_spectra(&[1.0, 200.0], 1.0, BoundaryCondition::Dirichlet, 3).unwrap();
        let n3 = compose_spectra(&[0.5, 300.0], 1.0, BoundaryCondition::Neumann, 5).unwrap();
        assert!(domination_report(&d3, &n3, 3, 1e-6, 0.0).is_err(), "too few Dirichlet values");
        assert!(domination_report(&n3, &n3, 2, 1e-6, 0.0).is_err(), "bc mismatch");
        let n3_other =
            compose_spectra(&[0.5, 300.0], 2.0, BoundaryCondition::Neumann, 5).unwrap();
        assert!(domination_report(&d3, &n3_other, 1, 1e-6, 0.0).is_err(), "length mismatch");
        assert!(domination_report(&d3, &n3, 1, 0.0, 0.0).is_err(), "gap must be positive");

        assert!(compose_spectra(&[], 1.0, BoundaryCondition::Neumann, 1).is_err());
        assert!(compose_spectra(&[2.0, 1.0], 1.0, BoundaryCondition::Neumann, 1).is_err());
        assert!(compose_spectra(&[1.0, 9.0], 0.0, BoundaryCondition::Neumann, 1).is_err());
        assert!(compose_spectra(&[1.0, 9.0], 1.0, BoundaryCondition::Neumann, 0).is_err());
    }
}
