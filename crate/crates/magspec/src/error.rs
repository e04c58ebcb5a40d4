use thiserror::Error;

/// Unified error type for geometry, assembly, solver, and fiber routines.
///
/// Variants are grouped into two families that callers (notably the CLI)
/// treat differently: invalid input or configuration
/// ([`Error::is_invalid_input`]) versus numerical failure of a solver or
/// quadrature ([`Error::is_solver_failure`]).
#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied value violates a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A polygon failed validation (orientation, convexity, duplicates).
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    /// A mesh failed validation (orientation, boundary structure).
    #[error("invalid mesh: {0}")]
    InvalidMesh(String),

    /// Restricting to interior degrees of freedom left an empty system.
    #[error("empty system: {0}")]
    EmptySystem(String),

    /// Evaluation at a pole of the Laguerre degree-reduction identity.
    #[error("laguerre domain error: {0}")]
    LaguerreDomain(String),

    /// The mass matrix is not positive definite (Cholesky broke down).
    #[error("factorization failure: {0}")]
    Factorization(String),

    /// An iterative eigenvalue stage exceeded its iteration budget.
    #[error("solver did not converge: {0}")]
    NoConvergence(String),

    /// A scan found no sign change below the ceiling.
    #[error("no root found: {0}")]
    NoRoot(String),

    /// A quadrature refinement loop failed to stabilize.
    #[error("quadrature did not stabilize: {0}")]
    Quadrature(String),
}

impl Error {
    /// True for errors caused by bad inputs or configuration.
    pub fn is_invalid_input(&self) -> bool {
        matches!(
            self,
            Error::InvalidInput(_)
                | Error::InvalidPolygon(_)
                | Error::InvalidMesh(_)
                | Error::EmptySystem(_)
                | Error::LaguerreDomain(_)
        )
    }

    /// True for numerical failures of a solver, root scan, or quadrature.
    pub fn is_solver_failure(&self) -> bool {
        matches!(
            self,
            Error::Factorization(_)
                | Error::NoConvergence(_)
                | Error::NoRoot(_)
                | Error::Quadrature(_)
        )
    }
}
