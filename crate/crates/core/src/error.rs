use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("group mismatch: {left:?} vs {right:?}")]
    GroupMismatch { left: Vec<usize>, right: Vec<usize> },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// The determinant condition on the transfer matrix failed.
    #[error("not a frame system: delta_A = {delta:e} does not exceed tolerance {tol:e}")]
    NotAFrame { delta: f64, tol: f64 },

    /// Per-character inversion failed; carries every offending character.
    #[error("transfer matrix is singular at characters {characters:?}")]
    SingularCharacters { characters: Vec<Vec<usize>> },

    #[error("generators do not form a Riesz sequence: lambda_min = {lambda_min:e}")]
    NotRiesz { lambda_min: f64 },

    #[error("window translates do not form a frame: min |phi_hat|^2 = {lower:e}")]
    WindowNotFrame { lower: f64 },

    #[error("lattice is not invariant under the rotation group: {0}")]
    NonInvariantLattice(String),

    #[error("rotation {0:?} is not an element of the rotation group")]
    UnknownRotation([[i64; 2]; 2]),

    #[error("resource cap exceeded: {needed} rows requested, cap is {cap}")]
    CapExceeded { needed: usize, cap: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid configuration: {0}")]
    Schema(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// `1` for numeric and frame failures, `2` for malformed input.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NotAFrame { .. }
            | Error::SingularCharacters { .. }
            | Error::NotRiesz { .. }
            | Error::WindowNotFrame { .. }
            | Error::CapExceeded { .. } => 1,
            _ => 2,
        }
    }

    pub(crate) fn mismatch(left: &[usize], right: &[usize]) -> Self {
        Error::GroupMismatch {
            left: left.to_vec(),
            right: right.to_vec(),
        }
    }
}
