//! Dense generalized eigensolver for Hermitian pencils `K v = λ M v` with
//! real symmetric positive definite `M`.
//!
//! Pipeline: Cholesky `M = L Lᵀ` reduces the pencil to the ordinary problem
//! `C = L⁻¹ K L⁻ᵀ`. A complex Hermitian `C = X + iY` is embedded as the
//! real symmetric matrix `[[X, -Y], [Y, X]]` of twice the dimension, whose
//! spectrum is that of `C` with every eigenvalue doubled; a real `C` skips
//! the embedding. The real symmetric problem is solved by Householder
//! tridiagonalization, implicit-shift QL for the eigenvalues, and shifted
//! inverse iteration on the tridiagonal matrix for selected eigenvectors,
//! which are then pushed back through the Householder reflectors and
//! `L⁻ᵀ`.
//!
//! For an embedded eigenvector `w = [x; y]` of eigenvalue λ the rotated
//! vector `Jw = [-y; x]` is also an eigenvector (it represents `i·v`), and
//! real orthogonality against both `w` and `Jw` is exactly complex
//! orthogonality against `v = x + iy`. Repeated eigenvalues are therefore
//! handled by re-running inverse iteration with the accumulated pair
//! constraints of every already-accepted vector in the same cluster.
//!
//! Everything is deterministic: inverse iteration starts from a fixed
//! counter-based RNG seed, and all parallel loops assign disjoint output
//! slots, so results are bitwise reproducible across runs and across the
//! `parallel` feature.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::assembly::{BoundaryCondition, Gauge, HermitianPencil};
use crate::par;
use crate::{Error, Result};

/// Default relative residual tolerance: each returned pair must satisfy
/// `‖K u - λ M u‖₂ ≤ tol · max|K_ij| · ‖u‖₂`.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Provenance of a computed spectrum, carried along for reporting.
#[derive(Clone, Debug, Default)]
pub struct SpectrumMeta {
    pub label: String,
    pub b: f64,
    pub gauge: Option<Gauge>,
    pub bc: Option<BoundaryCondition>,
    pub refine: Option<u32>,
}

/// The lowest eigenvalues of a pencil together with `M`-orthonormal
/// eigenvectors and their relative residuals.
#[derive(Clone, Debug)]
pub struct Spectrum {
    /// Eigenvalues in ascending order, multiplicities included.
    pub values: Vec<f64>,
    /// `vectors[j]` solves `K v = values[j] M v`; the set is M-orthonormal.
    pub vectors: Vec<Vec<Complex64>>,
    /// `‖K u - λ M u‖₂ / (max|K| · ‖u‖₂)` per pair.
    pub residuals: Vec<f64>,
    pub meta: SpectrumMeta,
}

impl Spectrum {
    pub fn count(&self) -> usize {
        self.values.len()
    }
}

// ---------------------------------------------------------------------------
// Cholesky
// ---------------------------------------------------------------------------

/// In-place lower Cholesky factorization of a row-major symmetric matrix
/// (only the lower triangle is read or written).
pub(crate) fn cholesky_in_place(a: &mut [f64], n: usize) -> Result<()> {
    let mut diag_max = 0.0f64;
    for j in 0..n {
        diag_max = diag_max.max(a[j * n + j].abs());
    }
    let floor = diag_max.max(1e-300) * 1e-14;
    let mut pivot_row = vec![0.0f64; n];
    for j in 0..n {
        let row = &a[j * n..j * n + j + 1];
        let mut s = row[j];
        for t in 0..j {
            s -= row[t] * row[t];
        }
        if !(s > floor) {
            return Err(Error::Factorization(format!(
                "Cholesky pivot {s:.3e} at row {j}: matrix is not positive definite"
            )));
        }
        let piv = s.sqrt();
        a[j * n + j] = piv;
        pivot_row[..j].copy_from_slice(&a[j * n..j * n + j]);
        let inv = 1.0 / piv;
        let pr = &pivot_row;
        par::chunks_mut(&mut a[(j + 1) * n..], n, |_, r| {
            let mut acc = r[j];
            for t in 0..j {
                acc -= r[t] * pr[t];
            }
            r[j] = acc * inv;
        });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Householder tridiagonalization with stored reflectors
// ---------------------------------------------------------------------------

/// Result of reducing a real symmetric matrix to tridiagonal form
/// `T = Qᵀ A Q`. The reflector of step `i` lives in row `i` (columns
/// `0..i`) of `refl` with squared-half-norm `h[i]`; `h[i] == 0` marks a
/// skipped step.
struct HouseholderTridiag {
    m: usize,
    refl: Vec<f64>,
    h: Vec<f64>,
    d: Vec<f64>,
    /// `e[i] = T[i][i-1]` for `i ≥ 1`, `e[0] = 0`.
    e: Vec<f64>,
}

impl HouseholderTridiag {
    /// `x ← Q x` (tridiagonal coordinates to original coordinates).
    fn to_original(&self, x: &mut [f64]) {
        let m = self.m;
        for i in 2..m {
            if self.h[i] == 0.0 {
                continue;
            }
            let v = &self.refl[i * m..i * m + i];
            let mut g = 0.0;
            for t in 0..i {
                g += v[t] * x[t];
            }
            g /= self.h[i];
            for t in 0..i {
                x[t] -= g * v[t];
            }
        }
    }

    /// `x ← Qᵀ x` (original coordinates to tridiagonal coordinates).
    fn to_tridiagonal(&self, x: &mut [f64]) {
        let m = self.m;
        for i in (2..m).rev() {
            if self.h[i] == 0.0 {
                continue;
            }
            let v = &self.refl[i * m..i * m + i];
            let mut g = 0.0;
            for t in 0..i {
                g += v[t] * x[t];
            }
            g /= self.h[i];
            for t in 0..i {
                x[t] -= g * v[t];
            }
        }
    }
}

/// Reduce a row-major symmetric matrix (lower triangle is authoritative) to
/// tridiagonal form, consuming the matrix storage for the reflectors.
///
/// Per step the symmetric product `p = A v` is split into a row-dot pass
/// and a column pass; each writes disjoint slots (no cross-chunk sums), so
/// the result does not depend on chunk sizes or thread count.
fn tridiagonalize(mut a: Vec<f64>, m: usize) -> HouseholderTridiag {
    let mut d = vec![0.0f64; m];
    let mut e = vec![0.0f64; m];
    let mut h = vec![0.0f64; m];
    let mut vbuf = vec![0.0f64; m];
    let mut p = vec![0.0f64; m];
    const COL_BLOCK: usize = 64;
    const ROW_CHUNK: usize = 32;

    for i in (2..m).rev() {
        let mut scale = 0.0;
        for t in 0..i {
            scale += a[i * m + t].abs();
        }
        if scale == 0.0 {
            e[i] = 0.0;
            h[i] = 0.0;
            continue;
        }
        let inv_scale = 1.0 / scale;
        let mut sigma = 0.0;
        for t in 0..i {
            a[i * m + t] *= inv_scale;
            sigma += a[i * m + t] * a[i * m + t];
        }
        let f = a[i * m + i - 1];
        let g = if f >= 0.0 { -sigma.sqrt() } else { sigma.sqrt() };
        e[i] = scale * g;
        let hh = sigma - f * g;
        a[i * m + i - 1] = f - g;
        h[i] = hh;
        vbuf[..i].copy_from_slice(&a[i * m..i * m + i]);
        let v = &vbuf[..i];

        // p = A v on the leading i×i block (symmetric, lower storage):
        // pass 1: p1[r] = Σ_{t ≤ r} A[r][t] v[t]  (independent row dots)
        {
            let amat = &a;
            let dots = par::map_ranges(i, ROW_CHUNK, |range| {
                let mut out = Vec::with_capacity(range.len());
                for r in range {
                    let row = &amat[r * m..r * m + r + 1];
                    let mut s = 0.0;
                    for t in 0..=r {
                        s += row[t] * v[t];
                    }
                    out.push(s);
                }
                out
            });
            let mut idx = 0;
            for block in dots {
                for val in block {
                    p[idx] = val;
                    idx += 1;
                }
            }
        }
        // pass 2: p2[t] = Σ_{r > t} A[r][t] v[r]  (independent column sums,
        // walked row-major in blocks for locality)
        {
            let amat = &a;
            let cols = par::map_ranges(i, COL_BLOCK, |range| {
                let t0 = range.start;
                let t1 = range.end;
                let mut acc = vec![0.0f64; t1 - t0];
                for r in (t0 + 1)..i {
                    let vr = v[r];
                    let hi = r.min(t1);
                    let row = &amat[r * m + t0..r * m + hi];
                    for (slot, &art) in acc[..hi - t0].iter_mut().zip(row) {
                        *slot += art * vr;
                    }
                }
                acc
            });
            let mut t = 0;
            for block in cols {
                for val in block {
                    p[t] += val;
                    t += 1;
                }
            }
        }

        let inv_h = 1.0 / hh;
        for t in 0..i {
            p[t] *= inv_h;
        }
        let mut kk = 0.0;
        for t in 0..i {
            kk += v[t] * p[t];
        }
        kk *= 0.5 * inv_h;
        for t in 0..i {
            p[t] -= kk * v[t];
        }
        // rank-2 update of the lower triangle: A ← A - v qᵀ - q vᵀ
        {
            let q = &p;
            par::chunks_mut(&mut a[..i * m], m, |base, row| {
                let r = base / m;
                let vr = v[r];
                let qr = q[r];
                for t in 0..=r {
                    row[t] -= vr * q[t] + qr * v[t];
                }
            });
        }
    }
    if m > 1 {
        e[1] = a[m];
    }
    for j in 0..m {
        d[j] = a[j * m + j];
    }
    HouseholderTridiag { m, refl: a, h, d, e }
}

// ---------------------------------------------------------------------------
// Implicit-shift QL eigenvalues
// ---------------------------------------------------------------------------

/// All eigenvalues of the symmetric tridiagonal matrix `(d, e)` (with
/// `e[i] = T[i][i-1]`), ascending. Implicit-shift QL with deflation.
fn ql_eigenvalues(d_in: &[f64], e_in: &[f64]) -> Result<Vec<f64>> {
    let m = d_in.len();
    if m == 0 {
        return Ok(Vec::new());
    }
    let mut d = d_in.to_vec();
    // shift convention: es[i] couples rows i and i+1
    let mut es = vec![0.0f64; m];
    for i in 1..m {
        es[i - 1] = e_in[i];
    }
    let mut total = 0usize;
    let total_cap = 64 * m + 256;
    for l in 0..m {
        let mut iter = 0usize;
        loop {
            let mut seg = l;
            while seg + 1 < m {
                let dd = d[seg].abs() + d[seg + 1].abs();
                if es[seg].abs() <= f64::EPSILON * dd {
                    break;
                }
                seg += 1;
            }
            if seg == l {
                break;
            }
            iter += 1;
            total += 1;
            if iter > 50 || total > total_cap {
                return Err(Error::NoConvergence(format!(
                    "QL sweep stalled at row {l}: {iter} local and {total} total rotations on a dimension-{m} tridiagonal matrix"
                )));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * es[l]);
            let mut r = g.hypot(1.0);
            let sign_r = if g >= 0.0 { r } else { -r };
            g = d[seg] - d[l] + es[l] / (g + sign_r);
            let (mut s, mut c) = (1.0f64, 1.0f64);
            let mut pshift = 0.0f64;
            let mut underflow = false;
            for iu in (l..seg).rev() {
                let mut f = s * es[iu];
                let bb = c * es[iu];
                r = f.hypot(g);
                es[iu + 1] = r;
                if r == 0.0 {
                    d[iu + 1] -= pshift;
                    es[seg] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[iu + 1] - pshift;
                f = (d[iu] - g) * s + 2.0 * c * bb;
                pshift = s * f;
                d[iu + 1] = g + pshift;
                g = c * f - bb;
            }
            if underflow {
                continue;
            }
            d[l] -= pshift;
            es[l] = g;
            es[seg] = 0.0;
        }
    }
    d.sort_by(|a, b| a.partial_cmp(b).expect("QL produced a NaN eigenvalue"));
    Ok(d)
}

// ---------------------------------------------------------------------------
// Tridiagonal inverse iteration
// ---------------------------------------------------------------------------

/// LU factors of `T - σI` with partial pivoting (adjacent-row swaps).
struct ShiftedFactor {
    m: usize,
    du: Vec<f64>,
    u1: Vec<f64>,
    u2: Vec<f64>,
    mult: Vec<f64>,
    flip: Vec<bool>,
}

fn factor_shifted(d: &[f64], e: &[f64], sigma: f64, pivot_floor: f64) -> ShiftedFactor {
    let m = d.len();
    let mut du = vec![0.0f64; m];
    let mut u1 = vec![0.0f64; m];
    let mut u2 = vec![0.0f64; m];
    let mut mult = vec![0.0f64; m.saturating_sub(1)];
    let mut flip = vec![false; m.saturating_sub(1)];
    let guard = |x: f64| {
        if x.abs() < pivot_floor {
            if x < 0.0 {
                -pivot_floor
            } else {
                pivot_floor
            }
        } else {
            x
        }
    };
    // active row spans columns (i, i+1, i+2) with entries (p, q, r)
    let mut pq = (d[0] - sigma, if m > 1 { e[1] } else { 0.0 }, 0.0f64);
    for i in 0..m.saturating_sub(1) {
        let sub = e[i + 1];
        let diag = d[i + 1] - sigma;
        let sup = if i + 2 < m { e[i + 2] } else { 0.0 };
        if sub.abs() > pq.0.abs() {
            // pivot on the row below
            flip[i] = true;
            du[i] = sub;
            u1[i] = diag;
            u2[i] = sup;
            let mu = pq.0 / du[i];
            mult[i] = mu;
            pq = (pq.1 - mu * u1[i], pq.2 - mu * u2[i], 0.0);
        } else {
            du[i] = guard(pq.0);
            u1[i] = pq.1;
            u2[i] = pq.2;
            let mu = sub / du[i];
            mult[i] = mu;
            pq = (diag - mu * u1[i], sup - mu * u2[i], 0.0);
        }
    }
    du[m - 1] = guard(pq.0);
    u1[m - 1] = 0.0;
    u2[m - 1] = 0.0;
    ShiftedFactor { m, du, u1, u2, mult, flip }
}

impl ShiftedFactor {
    /// Solve `(T - σI) x = b` in place.
    fn solve(&self, b: &mut [f64]) {
        let m = self.m;
        for i in 0..m.saturating_sub(1) {
            if self.flip[i] {
                b.swap(i, i + 1);
            }
            let bi = b[i];
            b[i + 1] -= self.mult[i] * bi;
        }
        b[m - 1] /= self.du[m - 1];
        if m >= 2 {
            b[m - 2] = (b[m - 2] - self.u1[m - 2] * b[m - 1]) / self.du[m - 2];
        }
        for i in (0..m.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.u1[i] * b[i + 1] - self.u2[i] * b[i + 2]) / self.du[i];
        }
    }
}

fn shifted_apply(d: &[f64], e: &[f64], sigma: f64, x: &[f64], y: &mut [f64]) {
    let m = d.len();
    for i in 0..m {
        let mut s = (d[i] - sigma) * x[i];
        if i > 0 {
            s += e[i] * x[i - 1];
        }
        if i + 1 < m {
            s += e[i + 1] * x[i + 1];
        }
        y[i] = s;
    }
}

fn tridiag_norm(d: &[f64], e: &[f64]) -> f64 {
    let md = d.iter().fold(0.0f64, |acc, &x| acc.max(x.abs()));
    let me = e.iter().fold(0.0f64, |acc, &x| acc.max(x.abs()));
    md + 2.0 * me
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// One eigenvector of the tridiagonal matrix `(d, e)` for the eigenvalue
/// near `sigma`, orthogonal to every vector in `constraints` (assumed unit
/// length). Deterministic: the start vector comes from `seed`.
fn inverse_iteration(
    d: &[f64],
    e: &[f64],
    sigma: f64,
    constraints: &[&[f64]],
    seed: u64,
) -> Result<Vec<f64>> {
    let m = d.len();
    let anorm = tridiag_norm(d, e).max(f64::MIN_POSITIVE);
    let pivot_floor = anorm * f64::EPSILON;
    let factor = factor_shifted(d, e, sigma, pivot_floor);
    let thresh = anorm * f64::EPSILON * (500.0 + 10.0 * (m as f64).sqrt());

    let mut best: Option<(f64, Vec<f64>)> = None;
    for attempt in 0..5u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt.wrapping_mul(0x9E37_79B9)));
        let mut x: Vec<f64> = (0..m).map(|_| rng.gen::<f64>() - 0.5).collect();
        for c in constraints {
            let g = dot(c, &x);
            for t in 0..m {
                x[t] -= g * c[t];
            }
        }
        let nx = norm2(&x);
        if nx < 1e-6 {
            continue;
        }
        for t in 0..m {
            x[t] /= nx;
        }
        let mut resid = vec![0.0f64; m];
        let mut converged = false;
        for _ in 0..8 {
            factor.solve(&mut x);
            for c in constraints {
                let g = dot(c, &x);
                for t in 0..m {
                    x[t] -= g * c[t];
                }
            }
            let nx = norm2(&x);
            if !nx.is_finite() || nx == 0.0 {
                break;
            }
            for t in 0..m {
                x[t] /= nx;
            }
            shifted_apply(d, e, sigma, &x, &mut resid);
            let r = norm2(&resid);
            match &best {
                Some((rb, _)) if *rb <= r => {}
                _ => best = Some((r, x.clone())),
            }
            if r <= thresh {
                converged = true;
                break;
            }
        }
        if converged {
            break;
        }
    }
    match best {
        Some((r, x)) if r <= 64.0 * thresh => Ok(x),
        Some((r, _)) => Err(Error::NoConvergence(format!(
            "inverse iteration stalled at shift {sigma:.6e}: residual {r:.3e} vs threshold {:.3e} (dimension {m}, {} constraints)",
            thresh,
            constraints.len()
        ))),
        None => Err(Error::NoConvergence(format!(
            "inverse iteration start vectors degenerate at shift {sigma:.6e} ({} constraints)",
            constraints.len()
        ))),
    }
}

// ---------------------------------------------------------------------------
// Triangular solves against the Cholesky factor
// ---------------------------------------------------------------------------

/// Replace each row `w` of `rows` by the solution of `L x = w`, i.e.
/// `rows ← rows · L⁻ᵀ` (row-major, rows are independent).
fn solve_l_rows_complex(l: &[f64], n: usize, rows: &mut [Complex64]) {
    par::chunks_mut(rows, n, |_, row| {
        for j in 0..n {
            let lrow = &l[j * n..j * n + j];
            let mut acc = row[j];
            for t in 0..j {
                acc -= lrow[t] * row[t];
            }
            row[j] = acc / l[j * n + j];
        }
    });
}

fn solve_l_rows_real(l: &[f64], n: usize, rows: &mut [f64]) {
    par::chunks_mut(rows, n, |_, row| {
        for j in 0..n {
            let lrow = &l[j * n..j * n + j];
            let mut acc = row[j];
            for t in 0..j {
                acc -= lrow[t] * row[t];
            }
            row[j] = acc / l[j * n + j];
        }
    });
}

/// `v ← L⁻ᵀ v`.
fn solve_lt_complex(l: &[f64], n: usize, v: &mut [Complex64]) {
    for i in (0..n).rev() {
        let mut acc = v[i];
        for t in i + 1..n {
            acc -= l[t * n + i] * v[t];
        }
        v[i] = acc / l[i * n + i];
    }
}

fn conj_transpose(src: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut dst = vec![Complex64::new(0.0, 0.0); n * n];
    const B: usize = 64;
    let mut i0 = 0;
    while i0 < n {
        let mut j0 = 0;
        while j0 < n {
            for i in i0..(i0 + B).min(n) {
                for j in j0..(j0 + B).min(n) {
                    dst[j * n + i] = src[i * n + j].conj();
                }
            }
            j0 += B;
        }
        i0 += B;
    }
    dst
}

fn transpose_real(src: &[f64], n: usize) -> Vec<f64> {
    let mut dst = vec![0.0f64; n * n];
    const B: usize = 64;
    let mut i0 = 0;
    while i0 < n {
        let mut j0 = 0;
        while j0 < n {
            for i in i0..(i0 + B).min(n) {
                for j in j0..(j0 + B).min(n) {
                    dst[j * n + i] = src[i * n + j];
                }
            }
            j0 += B;
        }
        i0 += B;
    }
    dst
}

// ---------------------------------------------------------------------------
// Drivers
// ---------------------------------------------------------------------------

fn seed_for(j: usize) -> u64 {
    0x6D61_6773_7065_6331u64 ^ (j as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn cnorm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn cinner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Relative residuals `‖K u - λ M u‖ / (max|K| ‖u‖)` for each pair.
pub fn residual_report(pencil: &HermitianPencil, spectrum: &Spectrum) -> Result<Vec<f64>> {
    let n = pencil.dim();
    let scale = pencil.max_abs_k().max(1e-300);
    let mut out = Vec::with_capacity(spectrum.values.len());
    for (lambda, u) in spectrum.values.iter().zip(&spectrum.vectors) {
        if u.len() != n {
            return Err(Error::InvalidInput(format!(
                "eigenvector length {} does not match pencil dimension {n}",
                u.len()
            )));
        }
        let k = pencil.stiffness();
        let m = pencil.mass();
        let rows: Vec<f64> = par::map_ranges(n, 64, |range| {
            let mut acc = 0.0f64;
            for i in range {
                let mut s = Complex64::new(0.0, 0.0);
                let krow = &k[i * n..(i + 1) * n];
                let mrow = &m[i * n..(i + 1) * n];
                for t in 0..n {
                    s += krow[t] * u[t] - lambda * mrow[t] * u[t];
                }
                acc += s.norm_sqr();
            }
            acc
        });
        let res = rows.iter().sum::<f64>().sqrt();
        out.push(res / (scale * cnorm(u).max(1e-300)));
    }
    Ok(out)
}

/// The `k` smallest eigenvalues of the pencil with `M`-orthonormal
/// eigenvectors, ascending, multiplicities included.
///
/// `tol` bounds the accepted relative residual of every returned pair (see
/// [`DEFAULT_TOL`]); a violated bound is reported as a convergence error
/// rather than silently returned.
pub fn smallest_eigenpairs(pencil: &HermitianPencil, k: usize, tol: f64) -> Result<Spectrum> {
    let n = pencil.dim();
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "residual tolerance must be positive and finite, got {tol}"
        )));
    }
    if k > n {
        return Err(Error::InvalidInput(format!(
            "requested {k} eigenpairs of a dimension-{n} pencil"
        )));
    }
    if k == 0 {
        return Ok(Spectrum {
            values: Vec::new(),
            vectors: Vec::new(),
            residuals: Vec::new(),
            meta: SpectrumMeta::default(),
        });
    }
    let mut l = pencil.mass().to_vec();
    cholesky_in_place(&mut l, n)?;
    let is_real = pencil.stiffness().iter().all(|z| z.im == 0.0);
    let (values, vectors) = if is_real {
        real_driver(pencil, &l, k)?
    } else {
        complex_driver(pencil, &l, k)?
    };
    let mut spectrum =
        Spectrum { values, vectors, residuals: Vec::new(), meta: SpectrumMeta::default() };
    spectrum.residuals = residual_report(pencil, &spectrum)?;
    for (j, &r) in spectrum.residuals.iter().enumerate() {
        if !(r <= tol) {
            return Err(Error::NoConvergence(format!(
                "eigenpair {j} (λ = {:.9e}) has relative residual {r:.3e} above the tolerance {tol:.3e}",
                spectrum.values[j]
            )));
        }
    }
    Ok(spectrum)
}

#[allow(clippy::type_complexity)]
fn complex_driver(
    pencil: &HermitianPencil,
    l: &[f64],
    k: usize,
) -> Result<(Vec<f64>, Vec<Vec<Complex64>>)> {
    let n = pencil.dim();
    // C = L⁻¹ K L⁻ᵀ computed with two row-parallel triangular solves:
    // W = K L⁻ᵀ, then Z = Wᴴ L⁻ᵀ, so C = Zᴴ.
    let mut w = pencil.stiffness().to_vec();
    solve_l_rows_complex(l, n, &mut w);
    let mut z = conj_transpose(&w, n);
    drop(w);
    solve_l_rows_complex(l, n, &mut z);

    // Embed the Hermitian C = X + iY as [[X, -Y], [Y, X]], symmetrizing
    // exactly (each unordered pair is computed once and mirrored).
    let m2 = 2 * n;
    let mut emat = vec![0.0f64; m2 * m2];
    for i in 0..n {
        for j in 0..=i {
            let zij = z[i * n + j];
            let zji = z[j * n + i];
            let x = 0.5 * (zij.re + zji.re);
            let y = 0.5 * (zij.im - zji.im);
            emat[i * m2 + j] = x;
            emat[j * m2 + i] = x;
            emat[(n + i) * m2 + (n + j)] = x;
            emat[(n + j) * m2 + (n + i)] = x;
            emat[(n + i) * m2 + j] = y;
            emat[j * m2 + (n + i)] = y;
            emat[i * m2 + (n + j)] = -y;
            emat[(n + j) * m2 + i] = -y;
        }
    }
    drop(z);

    let tri = tridiagonalize(emat, m2);
    let all = ql_eigenvalues(&tri.d, &tri.e)?;
    let anorm = tridiag_norm(&tri.d, &tri.e).max(f64::MIN_POSITIVE);
    let pair_tol = anorm * f64::EPSILON * (m2 as f64) * 16.0 + 1e-300;
    let mut values = Vec::with_capacity(k);
    for j in 0..k {
        let (a, b) = (all[2 * j], all[2 * j + 1]);
        if (b - a).abs() > pair_tol {
            return Err(Error::NoConvergence(format!(
                "embedded eigenvalue pair {j} split by {:.3e}, beyond the pairing tolerance {:.3e}",
                b - a,
                pair_tol
            )));
        }
        values.push(0.5 * (a + b));
    }

    let cluster_tol = anorm * 1e-8;
    // orthonormal eigenvectors of C (pre-L⁻ᵀ coordinates)
    let mut cvecs: Vec<Vec<Complex64>> = Vec::with_capacity(k);
    // T-coordinate images of each accepted v and of i·v, kept as inverse
    // iteration constraints for later vectors of the same cluster.
    let mut tcoords: Vec<[Vec<f64>; 2]> = Vec::with_capacity(k);
    for j in 0..k {
        let sigma = values[j];
        let mates: Vec<usize> =
            (0..j).filter(|&t| (values[t] - sigma).abs() <= cluster_tol).collect();
        let wt = {
            let mut cons: Vec<&[f64]> = Vec::with_capacity(2 * mates.len());
            for &t in &mates {
                cons.push(&tcoords[t][0]);
                cons.push(&tcoords[t][1]);
            }
            inverse_iteration(&tri.d, &tri.e, sigma, &cons, seed_for(j))?
        };
        let mut wa = wt;
        tri.to_original(&mut wa);
        let mut v: Vec<Complex64> =
            (0..n).map(|s| Complex64::new(wa[s], wa[n + s])).collect();
        // polish: re-orthogonalize in complex arithmetic inside the cluster
        for &t in &mates {
            let g = cinner(&cvecs[t], &v);
            for s in 0..n {
                v[s] -= g * cvecs[t][s];
            }
        }
        let nv = cnorm(&v);
        if !(nv > 1e-8) {
            return Err(Error::NoConvergence(format!(
                "eigenvector {j} collapsed during cluster orthogonalization (norm {nv:.3e})"
            )));
        }
        for s in 0..n {
            v[s] /= nv;
        }
        let mut real_img = vec![0.0f64; m2];
        let mut rot_img = vec![0.0f64; m2];
        for s in 0..n {
            real_img[s] = v[s].re;
            real_img[n + s] = v[s].im;
            rot_img[s] = -v[s].im;
            rot_img[n + s] = v[s].re;
        }
        tri.to_tridiagonal(&mut real_img);
        tri.to_tridiagonal(&mut rot_img);
        tcoords.push([real_img, rot_img]);
        cvecs.push(v);
    }
    // map to pencil coordinates: u = L⁻ᵀ v preserves M-orthonormality
    let mut vectors = cvecs;
    for v in &mut vectors {
        solve_lt_complex(l, n, v);
    }
    Ok((values, vectors))
}

#[allow(clippy::type_complexity)]
fn real_driver(
    pencil: &HermitianPencil,
    l: &[f64],
    k: usize,
) -> Result<(Vec<f64>, Vec<Vec<Complex64>>)> {
    let n = pencil.dim();
    let mut w: Vec<f64> = pencil.stiffness().iter().map(|z| z.re).collect();
    solve_l_rows_real(l, n, &mut w);
    let mut z = transpose_real(&w, n);
    drop(w);
    solve_l_rows_real(l, n, &mut z);
    // C = (Z + Zᵀ)/2, symmetric by construction
    let mut cmat = vec![0.0f64; n * n];
    for i in 0..n {
        for j in 0..=i {
            let x = 0.5 * (z[i * n + j] + z[j * n + i]);
            cmat[i * n + j] = x;
            cmat[j * n + i] = x;
        }
    }
    drop(z);

    let tri = tridiagonalize(cmat, n);
    let all = ql_eigenvalues(&tri.d, &tri.e)?;
    let anorm = tridiag_norm(&tri.d, &tri.e).max(f64::MIN_POSITIVE);
    let values: Vec<f64> = all[..k].to_vec();
    let cluster_tol = anorm * 1e-8;
    // orthonormal eigenvectors of C (pre-L⁻ᵀ coordinates)
    let mut cvecs: Vec<Vec<f64>> = Vec::with_capacity(k);
    let mut tcoords: Vec<Vec<f64>> = Vec::with_capacity(k);
    for j in 0..k {
        let sigma = values[j];
        let mates: Vec<usize> =
            (0..j).filter(|&t| (values[t] - sigma).abs() <= cluster_tol).collect();
        let wt = {
            let cons: Vec<&[f64]> = mates.iter().map(|&t| tcoords[t].as_slice()).collect();
            inverse_iteration(&tri.d, &tri.e, sigma, &cons, seed_for(j))?
        };
        let mut wa = wt;
        tri.to_original(&mut wa);
        for &t in &mates {
            let other = &cvecs[t];
            let g = dot(&wa, other);
            for s in 0..n {
                wa[s] -= g * other[s];
            }
        }
        let nv = norm2(&wa);
        if !(nv > 1e-8) {
            return Err(Error::NoConvergence(format!(
                "eigenvector {j} collapsed during cluster orthogonalization (norm {nv:.3e})"
            )));
        }
        for s in 0..n {
            wa[s] /= nv;
        }
        let mut timg = wa.clone();
        tri.to_tridiagonal(&mut timg);
        tcoords.push(timg);
        cvecs.push(wa);
    }
    // map to pencil coordinates: u = L⁻ᵀ v preserves M-orthonormality
    let mut vectors = Vec::with_capacity(k);
    for mut u in cvecs {
        for i in (0..n).rev() {
            let mut acc = u[i];
            for t in i + 1..n {
                acc -= l[t * n + i] * u[t];
            }
            u[i] = acc / l[i * n + i];
        }
        vectors.push(u.into_iter().map(|x| Complex64::new(x, 0.0)).collect());
    }
    Ok((values, vectors))
}

// ---------------------------------------------------------------------------
