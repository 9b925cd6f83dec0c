use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("generator {index} is the zero vector")]
    ZeroGenerator { index: usize },

    #[error("non-finite coordinate in input")]
    NonFinite,

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("face is not a member of this cone's face lattice")]
    FaceNotInLattice,

    #[error("cone has no generators")]
    EmptyCone,

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("{solver} did not converge within {iterations} iterations")]
    NoConvergence { solver: &'static str, iterations: usize },

    #[error("ill-conditioned system (condition estimate {condition:.3e})")]
    IllConditioned { condition: f64 },

    #[error("face of lattice dimension {lattice_dim} spans an affine hull of dimension {span_dim}")]
    DegenerateFace { lattice_dim: usize, span_dim: usize },

    #[error("feasible point of norm {norm:.6} lies within 1% of truncation radius {radius}")]
    TruncationSuspect { norm: f64, radius: f64 },

    #[error("union has {0} members; inclusion-exclusion is capped at 6")]
    TooManyMembers(usize),
}

impl Error {
    /// Numerical failures (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NoConvergence { .. } | Error::IllConditioned { .. } | Error::TruncationSuspect { .. })
    }
}
