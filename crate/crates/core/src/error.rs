use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid superposition: {0}")]
    InvalidSpec(String),

    #[error("unnormalizable state: Gram sum {0:e} is not positive")]
    Unnormalizable(f64),

    #[error("truncation too small: nmax = {given}, need at least {required}")]
    TruncationTooSmall { given: usize, required: usize },

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("domain too small: wavefunction magnitude {edge:e} at the boundary exceeds {limit:e}")]
    DomainTooSmall { edge: f64, limit: f64 },

    #[error("phase-space grid point q = {q} does not align with the wavefunction samples")]
    GridMismatch { q: f64 },

    #[error("argument {x} is outside the supported domain")]
    OutsideDomain { x: f64 },

    #[error("wells merge: minimum centre gap {gap} is below {limit}")]
    WellsMerge { gap: f64, limit: f64 },

    #[error(
        "inverse iteration did not converge after {iterations} iterations (residual {residual:e})"
    )]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("shifted operator is singular at shift {0}")]
    SingularShift(f64),

    #[error("{0}")]
    Unsupported(String),
}
