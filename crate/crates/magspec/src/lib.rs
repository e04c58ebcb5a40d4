//! Spectra of the magnetic Laplacian `(-i∇ - A)²` with a homogeneous field
//! `B = b > 0` on bounded convex domains.
//!
//! The crate computes low Dirichlet and Neumann eigenvalues along three routes
//! and cross-checks them against each other:
//!
//! * [`geometry`] + [`assembly`] + [`eigen`] — a complex P1 finite-element
//!   discretization on convex polygons. The Neumann and Dirichlet discrete
//!   spaces are nested (Dirichlet rows/columns are deleted from the same
//!   assembled pencil), so discrete Neumann values sit below discrete
//!   Dirichlet values index by index, exactly.
//! * [`disk`] — the unit disk, where the operator decomposes into radial
//!   fiber operators indexed by the angular momentum `n`. Eigenvalues are
//!   roots of closed-form expressions in generalized Laguerre functions of
//!   continuous degree, independently confirmed by a 1D finite-element
//!   oracle for the radial forms.
//! * [`cylinder`] — right cylinders `ω × (0, L)` with the field along the
//!   axis, whose spectra are sums of cross-section and interval spectra.
//!
//! All dense solves go through a hand-rolled real-symmetric eigensolver
//! (Cholesky reduction, Householder tridiagonalization, implicit-shift QL,
//! inverse iteration); complex Hermitian pencils are embedded as real
//! symmetric ones of twice the dimension. Results are deterministic for
//! identical inputs, independent of thread count.

pub mod assembly;
pub mod cylinder;
pub mod disk;
pub mod eigen;
mod error;
pub mod geometry;
pub mod oracles;
pub(crate) mod par;
pub mod quadrature;
pub mod special;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
