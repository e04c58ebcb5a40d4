//! Complex P1 finite-element assembly of the magnetic form
//! `∫ |(∇ - iA)u|² dx` and the mass form `∫ |u|² dx` on triangle meshes.
//!
//! Expanding the magnetic form over piecewise-linear hat functions gives
//!
//! ```text
//! K_ij = ∫ ∇φ_i·∇φ_j + |A|² φ_i φ_j dx
//!        + i ∫ (A·∇φ_j) φ_i - (A·∇φ_i) φ_j dx
//! ```
//!
//! which is Hermitian, and `K` is assembled so that `K = Kᴴ` holds *exactly*
//! in floating point (conjugate entries are computed by the same operations
//! with operands swapped or negated). With an affine vector potential the
//! integrand has total degree ≤ 4, so the 6-point degree-4 triangle rule
//! integrates it exactly and the discrete eigenvalues are genuine Galerkin
//! (hence upper) bounds.
//!
//! The Neumann problem uses all nodes (natural boundary condition); the
//! Dirichlet problem is the restriction of the *same* matrices to interior
//! nodes, so the discrete Dirichlet trial space is literally a subspace of
//! the Neumann one and min-max comparisons between the two discrete
//! problems are exact, not merely asymptotic.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{orient, Point2, TriangleMesh};
use crate::par;
use crate::quadrature::TRIANGLE_DEG4;
use crate::{Error, Result};

/// Gauge choice for the vector potential of the homogeneous field `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gauge {
    /// `A(x) = (0, b x₁)`
    Landau,
    /// `A(x) = (-b x₂ / 2, b x₁ / 2)`
    Symmetric,
}

impl std::fmt::Display for Gauge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Gauge::Landau => write!(f, "landau"),
            Gauge::Symmetric => write!(f, "symmetric"),
        }
    }
}

/// Boundary condition of a discretized problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryCondition {
    Neumann,
    Dirichlet,
}

impl std::fmt::Display for BoundaryCondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundaryCondition::Neumann => write!(f, "neumann"),
            BoundaryCondition::Dirichlet => write!(f, "dirichlet"),
        }
    }
}

/// Homogeneous magnetic field of strength `b` in a fixed gauge.
#[derive(Clone, Copy, Debug)]
pub struct MagneticField {
    b: f64,
    gauge: Gauge,
}

impl MagneticField {
    /// A physical field: `b > 0`.
    pub fn new(b: f64, gauge: Gauge) -> Result<Self> {
        if !(b > 0.0 && b.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "field strength must be positive and finite, got {b}"
            )));
        }
        Ok(MagneticField { b, gauge })
    }

    /// Any finite field strength, including zero and negative values, for
    /// non-magnetic reference problems and conjugation-symmetry checks.
    pub fn signed(b: f64, gauge: Gauge) -> Result<Self> {
        if !b.is_finite() {
            return Err(Error::InvalidInput(format!("field strength must be finite, got {b}")));
        }
        Ok(MagneticField { b, gauge })
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn gauge(&self) -> Gauge {
        self.gauge
    }

    /// Vector potential `A(p)` with `curl A = b`.
    pub fn vector_potential(&self, p: Point2) -> Point2 {
        match self.gauge {
            Gauge::Landau => Point2::new(0.0, self.b * p.x),
            Gauge::Symmetric => Point2::new(-0.5 * self.b * p.y, 0.5 * self.b * p.x),
        }
    }
}

/// A Hermitian generalized eigenvalue problem `K v = λ M v` with Hermitian
/// `K` and real symmetric positive definite `M`, both dense row-major.
#[derive(Clone, Debug)]
pub struct HermitianPencil {
    n: usize,
    k: Vec<Complex64>,
    m: Vec<f64>,
    bc: BoundaryCondition,
    dof_map: Vec<usize>,
}

impl HermitianPencil {
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Stiffness matrix, row-major `dim × dim`.
    pub fn stiffness(&self) -> &[Complex64] {
        &self.k
    }

    /// Mass matrix, row-major `dim × dim`.
    pub fn mass(&self) -> &[f64] {
        &self.m
    }

    pub fn bc(&self) -> BoundaryCondition {
        self.bc
    }

    /// Maps pencil row index to the originating mesh node index.
    pub fn dof_map(&self) -> &[usize] {
        &self.dof_map
    }

    pub fn k_at(&self, i: usize, j: usize) -> Complex64 {
        self.k[i * self.n + j]
    }

    pub fn m_at(&self, i: usize, j: usize) -> f64 {
        self.m[i * self.n + j]
    }

    /// Largest entry magnitude of the stiffness matrix.
    pub fn max_abs_k(&self) -> f64 {
        self.k.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Build a pencil from raw parts (used by tests and small hand-made
    /// problems). Checks shape and Hermiticity.
    pub fn from_parts(
        n: usize,
        k: Vec<Complex64>,
        m: Vec<f64>,
        bc: BoundaryCondition,
    ) -> Result<Self> {
        if k.len() != n * n || m.len() != n * n {
            return Err(Error::InvalidInput(format!(
                "pencil of dimension {n} needs {0} entries, got k:{1}, m:{2}",
                n * n,
                k.len(),
                m.len()
            )));
        }
        let pencil = HermitianPencil { n, k, m, bc, dof_map: (0..n).collect() };
        pencil.check_hermitian()?;
        Ok(pencil)
    }

    fn check_hermitian(&self) -> Result<()> {
        let scale = self.max_abs_k().max(1e-300);
        for i in 0..self.n {
            for j in 0..=i {
                let diff = (self.k_at(i, j) - self.k_at(j, i).conj()).norm();
                if diff > 1e-12 * scale {
                    return Err(Error::InvalidInput(format!(
                        "stiffness is not Hermitian at ({i},{j}): asymmetry {diff:.3e}"
                    )));
                }
                let mdiff = (self.m_at(i, j) - self.m_at(j, i)).abs();
                if mdiff > 1e-12 * scale {
                    return Err(Error::InvalidInput(format!(
                        "mass is not symmetric at ({i},{j}): asymmetry {mdiff:.3e}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Structural validation: Hermiticity of `K`, positive definiteness of
    /// `M` (Cholesky with positive pivots), and a randomized check that `K`
    /// is positive semidefinite up to roundoff.
    pub fn validate(&self, seed: u64) -> Result<()> {
        self.check_hermitian()?;
        let mut mm = self.m.clone();
        crate::eigen::cholesky_in_place(&mut mm, self.n).map_err(|_| {
            Error::Factorization("mass matrix is not positive definite".into())
        })?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let scale = self.max_abs_k();
        for _ in 0..8 {
            let v: Vec<Complex64> = (0..self.n)
                .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
                .collect();
            let nv: f64 = v.iter().map(|z| z.norm_sqr()).sum();
            let quad = quadratic_form(&self.k, self.n, &v);
            if quad.re < -1e-10 * scale * nv {
                return Err(Error::InvalidInput(format!(
                    "stiffness quadratic form is negative: {} at a random vector",
                    quad.re
                )));
            }
        }
        Ok(())
    }
}

fn quadratic_form(k: &[Complex64], n: usize, v: &[Complex64]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        let row = &k[i * n..(i + 1) * n];
        let mut s = Complex64::new(0.0, 0.0);
        for j in 0..n {
            s += row[j] * v[j];
        }
        acc += v[i].conj() * s;
    }
    acc
}

/// Assemble the Neumann pencil of the magnetic form on `mesh`.
///
/// Element contributions are computed independently (in parallel when the
/// `parallel` feature is on) and scattered in a fixed element order, so the
/// assembled matrices are bit-identical across runs and thread counts.
pub fn assemble(mesh: &TriangleMesh, field: &MagneticField) -> Result<HermitianPencil> {
    let n = mesh.num_nodes();
    if n == 0 {
        return Err(Error::InvalidMesh("mesh has no nodes".into()));
    }

    struct Local {
        idx: [usize; 3],
        k: [[Complex64; 3]; 3],
        m: [[f64; 3]; 3],
    }

    let nodes = &mesh.nodes;
    let locals: Vec<Local> = par::map_slice(&mesh.triangles, |tri| {
        let [ia, ib, ic] = *tri;
        let (pa, pb, pc) = (nodes[ia], nodes[ib], nodes[ic]);
        let two_a = orient(pa, pb, pc);
        let area = 0.5 * two_a;
        // Constant P1 gradients on the triangle.
        let grads = [
            Point2::new(pb.y - pc.y, pc.x - pb.x) * (1.0 / two_a),
            Point2::new(pc.y - pa.y, pa.x - pc.x) * (1.0 / two_a),
            Point2::new(pa.y - pb.y, pb.x - pa.x) * (1.0 / two_a),
        ];
        let mut k = [[Complex64::new(0.0, 0.0); 3]; 3];
        let mut m = [[0.0f64; 3]; 3];
        for &(l1, l2, l3, wq) in &TRIANGLE_DEG4 {
            let point = pa * l1 + pb * l2 + pc * l3;
            let a = field.vector_potential(point);
            let phi = [l1, l2, l3];
            let a_sq = a.dot(a);
            let a_dot_g = [a.dot(grads[0]), a.dot(grads[1]), a.dot(grads[2])];
            let w = wq * area;
            for i in 0..3 {
                for j in 0..3 {
                    // phi[i] * phi[j] is grouped so the (i,j) and (j,i)
                    // entries are produced by identical operations and the
                    // assembled matrices are Hermitian bitwise
                    let pp = phi[i] * phi[j];
                    let re = grads[i].dot(grads[j]) + a_sq * pp;
                    let im = a_dot_g[j] * phi[i] - a_dot_g[i] * phi[j];
                    k[i][j] += Complex64::new(w * re, w * im);
                    m[i][j] += w * pp;
                }
            }
        }
        Local { idx: *tri, k, m }
    });

    let mut k = vec![Complex64::new(0.0, 0.0); n * n];
    let mut m = vec![0.0f64; n * n];
    for loc in &locals {
        for i in 0..3 {
            let gi = loc.idx[i];
            for j in 0..3 {
                let gj = loc.idx[j];
                k[gi * n + gj] += loc.k[i][j];
                m[gi * n + gj] += loc.m[i][j];
            }
        }
    }

    Ok(HermitianPencil { n, k, m, bc: BoundaryCondition::Neumann, dof_map: (0..n).collect() })
}

/// Restrict a pencil to the interior nodes of `mesh` (homogeneous Dirichlet
/// condition by deletion of boundary rows and columns).
pub fn restrict_dirichlet(
    pencil: &HermitianPencil,
    mesh: &TriangleMesh,
) -> Result<HermitianPencil> {
    let keep: Vec<usize> = (0..pencil.n)
        .filter(|&row| !mesh.is_boundary(pencil.dof_map[row]))
        .collect();
    if keep.is_empty() {
        return Err(Error::EmptySystem(
            "no interior nodes: refine the mesh before imposing the Dirichlet condition".into(),
        ));
    }
    let nn = keep.len();
    let mut k = vec![Complex64::new(0.0, 0.0); nn * nn];
    let mut m = vec![0.0f64; nn * nn];
    for (i, &ri) in keep.iter().enumerate() {
        for (j, &rj) in keep.iter().enumerate() {
            k[i * nn + j] = pencil.k[ri * pencil.n + rj];
            m[i * nn + j] = pencil.m[ri * pencil.n + rj];
        }
    }
    let dof_map = keep.iter().map(|&row| pencil.dof_map[row]).collect();
    Ok(HermitianPencil { n: nn, k, m, bc: BoundaryCondition::Dirichlet, dof_map })
}

/// Rayleigh quotient `(vᴴ K v) / (vᴴ M v)` of the pencil at `v`.
pub fn rayleigh(pencil: &HermitianPencil, v: &[Complex64]) -> Result<f64> {
    if v.len() != pencil.n {
        return Err(Error::InvalidInput(format!(
            "vector length {} does not match pencil dimension {}",
            v.len(),
            pencil.n
        )));
    }
    let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    if norm == 0.0 {
        return Err(Error::InvalidInput("Rayleigh quotient of the zero vector".into()));
    }
    let num = quadratic_form(&pencil.k, pencil.n, v);
    let mut den = 0.0;
    for i in 0..pencil.n {
        let row = &pencil.m[i * pencil.n..(i + 1) * pencil.n];
        let mut s = Complex64::new(0.0, 0.0);
        for j in 0..pencil.n {
            s += row[j] * v[j];
        }
        den += (v[i].conj() * s).re;
    }
    if den <= 0.0 {
        return Err(Error::InvalidInput(format!("mass quadratic form not positive: {den}")));
    }
    Ok(num.re / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{regular_polygon, triangulate, unit_square, TriangleMesh};

    fn unit_right_triangle() -> TriangleMesh {
        TriangleMesh::from_parts(
            vec![Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), Point2::new(0.0, 1.0)],
            vec![[0, 1, 2]],
        )
        .unwrap()
    }

    #[test]
    fn zero_field_stiffness_on_unit_right_triangle() {
        // Hand-integrated P1 stiffness of -Δ on the unit right triangle:
        // (1/2) [[2, -1, -1], [-1, 1, 0], [-1, 0, 1]]
        let mesh = unit_right_triangle();
        let field = MagneticField::signed(0.0, Gauge::Landau).unwrap();
        let p = assemble(&mesh, &field).unwrap();
        let want = [[1.0, -0.5, -0.5], [-0.5, 0.5, 0.0], [-0.5, 0.0, 0.5]];
        for i in 0..3 {
            for j in 0..3 {
                let z = p.k_at(i, j);
                assert!(
                    (z.re - want[i][j]).abs() < 1e-14 && z.im.abs() < 1e-300,
                    "K[{i}][{j}] = {z}, want {}",
                    want[i][j]
                );
            }
        }
        // Exact P1 mass on a triangle of area 1/2: diag A/6, off-diag A/12.
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 / 12.0 } else { 1.0 / 24.0 };
                assert!((p.m_at(i, j) - want).abs() < 1e-15, "M[{i}][{j}]");
            }
        }
    }

    #[test]
    fn stiffness_is_exactly_hermitian() {
        let mesh = triangulate(&regular_polygon(5, 1.0).unwrap(), 2);
        let field = MagneticField::new(1.7, Gauge::Landau).unwrap();
        let p = assemble(&mesh, &field).unwrap();
        for i in 0..p.dim() {
            for j in 0..p.dim() {
                let a = p.k_at(i, j);
                let b = p.k_at(j, i).conj();
                assert!(a.re == b.re && a.im == b.im, "exact Hermiticity at ({i},{j})");
                assert_eq!(p.m_at(i, j), p.m_at(j, i));
            }
        }
        p.validate(7).unwrap();
    }

    #[test]
    fn conjugation_flips_the_field_sign_exactly() {
        let mesh = triangulate(&unit_square(), 2);
        for gauge in [Gauge::Landau, Gauge::Symmetric] {
            let plus = assemble(&mesh, &MagneticField::signed(1.3, gauge).unwrap()).unwrap();
            let minus = assemble(&mesh, &MagneticField::signed(-1.3, gauge).unwrap()).unwrap();
            for (a, b) in plus.stiffness().iter().zip(minus.stiffness()) {
                assert_eq!(a.re, b.re);
                assert_eq!(a.im, -b.im);
            }
        }
    }

    #[test]
    fn scaling_relation_is_exact_entrywise() {
        // K(tΩ, b) = K(Ω, b t²) and M(tΩ) = t² M(Ω), bitwise for t a power
        // of two.
        let mesh = triangulate(&unit_square(), 2);
        for t in [0.5f64, 2.0] {
            let scaled = mesh.scaled(t).unwrap();
            let b = 1.3;
            let k_scaled =
                assemble(&scaled, &MagneticField::new(b, Gauge::Landau).unwrap()).unwrap();
            let k_unit =
                assemble(&mesh, &MagneticField::new(b * t * t, Gauge::Landau).unwrap()).unwrap();
            for (a, bb) in k_scaled.stiffness().iter().zip(k_unit.stiffness()) {
                assert_eq!(a.re, bb.re, "stiffness scaling t={t}");
                assert_eq!(a.im, bb.im, "stiffness scaling t={t}");
            }
            for (a, bb) in k_scaled.mass().iter().zip(k_unit.mass()) {
                assert_eq!(*a, t * t * bb, "mass scaling t={t}");
            }
        }
    }

    #[test]
    fn dirichlet_restriction_keeps_interior_nodes() {
        let mesh = triangulate(&unit_square(), 2);
        let field = MagneticField::new(1.0, Gauge::Landau).unwrap();
        let full = assemble(&mesh, &field).unwrap();
        assert_eq!(full.dim(), mesh.num_nodes());
        let restricted = restrict_dirichlet(&full, &mesh).unwrap();
        assert_eq!(restricted.dim(), mesh.num_interior());
        assert_eq!(restricted.bc(), BoundaryCondition::Dirichlet);
        for &node in restricted.dof_map() {
            assert!(!mesh.is_boundary(node));
        }
        // restriction is a literal submatrix
        let i = 0;
        let ri = restricted.dof_map()[i];
        let full_row = full.dof_map().iter().position(|&x| x == ri).unwrap();
        assert_eq!(restricted.k_at(i, i), full.k_at(full_row, full_row));

        // a single fan triangulation of the square has exactly one interior
        // node, and restriction is idempotent
        let coarse = triangulate(&unit_square(), 0);
        let p0 = assemble(&coarse, &field).unwrap();
        let r0 = restrict_dirichlet(&p0, &coarse).unwrap();
        assert_eq!(r0.dim(), 1);
        assert_eq!(restrict_dirichlet(&r0, &coarse).unwrap().dim(), 1);

        // a mesh whose nodes are all on the boundary leaves no Dirichlet
        // degrees of freedom
        let tri = TriangleMesh::from_parts(
            vec![Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), Point2::new(0.0, 1.0)],
            vec![[0, 1, 2]],
        )
        .unwrap();
        let pt = assemble(&tri, &field).unwrap();
        match restrict_dirichlet(&pt, &tri) {
            Err(e) => assert!(e.is_invalid_input()),
            Ok(_) => panic!("restriction of an all-boundary mesh must fail"),
        }
    }

    #[test]
    fn rayleigh_quotient_basics() {
        let mesh = triangulate(&unit_square(), 1);
        let field = MagneticField::signed(0.0, Gauge::Landau).unwrap();
        let p = assemble(&mesh, &field).unwrap();
        // constants are in the Neumann kernel at b = 0
        let ones = vec![Complex64::new(1.0, 0.0); p.dim()];
        let r = rayleigh(&p, &ones).unwrap();
        assert!(r.abs() < 1e-12, "constant vector Rayleigh quotient {r}");
        let zeros = vec![Complex64::new(0.0, 0.0); p.dim()];
        assert!(rayleigh(&p, &zeros).is_err());
    }

    #[test]
    fn field_constructors_validate() {
        assert!(MagneticField::new(0.0, Gauge::Landau).is_err());
        assert!(MagneticField::new(-1.0, Gauge::Landau).is_err());
        assert!(MagneticField::new(f64::NAN, Gauge::Landau).is_err());
        assert!(MagneticField::signed(-2.0, Gauge::Symmetric).is_ok());
        assert!(MagneticField::signed(f64::INFINITY, Gauge::Landau).is_err());
    }
}
