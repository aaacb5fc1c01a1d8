use thiserror::Error;

/// Errors produced by the simulation engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid parameter: {0}")]
    Invalid(String),

    #[error("unphysical reservoir: {0}")]
    Unphysical(String),

    #[error("matrix is not Hermitian (max entrywise deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("state failed density-matrix checks: {0}")]
    BadState(String),

    #[error("density matrix is not in X form (largest forbidden entry {0:.3e})")]
    NotXForm(f64),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("steady state is not unique (nullspace dimension > 1)")]
    DegenerateSteadyState,
}

pub type Result<T> = std::result::Result<T, Error>;
