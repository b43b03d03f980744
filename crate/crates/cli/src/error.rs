use essnorm::{BoundsError, GeometryError, HankelError, TorsionError, WormError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("cannot parse {path}: {source}")]
    Parse { path: String, source: serde_json::Error },
    #[error("invalid domain: {0}")]
    Geometry(#[from] GeometryError),
    #[error("{0}")]
    Torsion(#[from] TorsionError),
    #[error("{0}")]
    Bounds(#[from] BoundsError),
    #[error("{0}")]
    Worm(#[from] WormError),
    #[error("{0}")]
    Hankel(#[from] HankelError),
    #[error("{0}")]
    InvalidArgument(String),
    #[error("output {name} is not finite ({value})")]
    NonFinite { name: String, value: f64 },
    #[error("{failed} verification check(s) failed: {names}")]
    VerificationFailed { failed: usize, names: String },
}

impl CliError {
    /// 1 failed verification, 2 bad input, 3 solver failure, 4 incomplete spec.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::VerificationFailed { .. } => 1,
            CliError::Torsion(TorsionError::InvalidSpacing(_)) => 2,
            CliError::Torsion(
                TorsionError::NoInteriorNodes(_) | TorsionError::GridTooLarge(_) | TorsionError::SolverDiverged { .. },
            ) => 3,
            CliError::NonFinite { .. } => 3,
            CliError::Bounds(BoundsError::MissingBoundaryData { .. }) => 4,
            _ => 2,
        }
    }
}
