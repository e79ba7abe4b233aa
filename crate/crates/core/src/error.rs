use thiserror::Error;

/// Errors raised by the solvers and the run driver.
#[derive(Debug, Error)]
pub enum SolverError {
    #[error("zero density in cell {cell}")]
    ZeroDensity { cell: usize },

    #[error("positivity failure at step {step}, cell ({i}, {k}): rho = {rho:e}, p = {p:e}")]
    Positivity {
        step: usize,
        i: usize,
        k: usize,
        rho: f64,
        p: f64,
    },

    #[error("non-finite wave speed estimate at step {step}")]
    NonFiniteSpeed { step: usize },

    #[error("unknown case `{name}`; registered cases: {available}")]
    UnknownCase { name: String, available: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("mesh mismatch: {0}")]
    MeshMismatch(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = SolverError> = std::result::Result<T, E>;
