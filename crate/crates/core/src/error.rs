use thiserror::Error;

/// Errors raised by the library.
///
/// Variants are grouped by the CLI exit code they map to: input problems (1),
/// mathematical-domain failures (2) and validation failures (3).
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("unsupported curve model: {0}")]
    UnsupportedModel(String),
    #[error("singular curve: the discriminant vanishes")]
    SingularCurve,
    #[error("degenerate invariant tuple: all coordinates vanish")]
    DegenerateTuple,
    #[error("height bound {0} is below 1; the tuple box is empty")]
    EmptyDomain(String),
    #[error("inconsistent linear system: row {row} leaves a nonzero residual")]
    NoSolution { row: usize },
    #[error("{samples} samples cannot determine {unknowns} unknowns (need at least {required})")]
    Underdetermined {
        samples: usize,
        unknowns: usize,
        required: usize,
    },
    #[error("sampled system has rank {rank} < {unknowns}; re-seed")]
    SamplingDegeneracy { rank: usize, unknowns: usize },
    #[error("relation failed held-out validation: {0}")]
    ConventionMismatch(String),
    #[error("discriminant has no polynomial representation over the requested basis: {0}")]
    RepresentationFailure(String),
    #[error("relation set is not initialized")]
    NotInitialized,
    #[error("relation artifact hash mismatch: expected {expected}, found {found}")]
    HashMismatch { expected: String, found: String },
    #[error("numeric condition failure: {0}")]
    Condition(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) | Error::UnsupportedModel(_) | Error::Underdetermined { .. } => 1,
            Error::SingularCurve
            | Error::DegenerateTuple
            | Error::EmptyDomain(_)
            | Error::NoSolution { .. }
            | Error::SamplingDegeneracy { .. }
            | Error::Condition(_) => 2,
            Error::ConventionMismatch(_)
            | Error::RepresentationFailure(_)
            | Error::NotInitialized
            | Error::HashMismatch { .. } => 3,
            Error::Io(_) | Error::Json(_) => 1,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
