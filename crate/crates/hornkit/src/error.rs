use thiserror::Error;

use crate::lattice::RatVec2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HornError {
    #[error("zero vector has no primitive direction")]
    ZeroVector,
    #[error("duplicate direction at input indices {0} and {1}")]
    DuplicateDirection(usize, usize),
    #[error("row and parameter lists differ in length ({rows} rows, {params} parameters)")]
    LengthMismatch { rows: usize, params: usize },
    #[error("a Horn system needs at least two rows, got {0}")]
    TooFewRows(usize),
    #[error("row {0} is the zero vector")]
    ZeroRow(usize),
    #[error("polygon requires nonconfluency")]
    Confluent,
    #[error("rows do not span the plane")]
    RankDeficient,
    #[error("zero polynomial is trivially a solution; rejected")]
    ZeroPolynomial,
    #[error("input is not a solution of the system")]
    NotASolution,
    #[error("normalization undefined: rows are not in opposite open quadrants")]
    NormalizationUndefined,
    #[error("resonant collision: factor {factor} of P_{axis} vanishes at {at}")]
    ResonantCollision { axis: usize, factor: String, at: RatVec2 },
    #[error("stopping index not reached within {cap} steps from {at}")]
    WalkCapExceeded { cap: i64, at: RatVec2 },
    #[error("resonant collision at offset ({0},{1})")]
    SeriesCollision(i64, i64),
    #[error("recurrence is inconsistent at offset ({0},{1})")]
    SeriesInconsistent(i64, i64),
    #[error("singular matrix")]
    Singular,
    #[error("not polynomial-expandable: outer exponent {0}")]
    NotExpandable(String),
    #[error("no decomposition of the required shape")]
    NoDecomposition,
    #[error("system is not maximally reducible")]
    NotMaximallyReducible,
    #[error("invalid vertex index {index} (polygon has {count} vertices)")]
    InvalidVertex { index: usize, count: usize },
    #[error("invalid row index {0}")]
    InvalidRow(usize),
    #[error("rows {0} and {1} are linearly dependent")]
    DependentPair(usize, usize),
    #[error("branch {branch} out of range (|det| = {count})")]
    InvalidBranch { branch: usize, count: usize },
    #[error("element is not pure: exponents {0} and {1} are incongruent mod Z^2")]
    NotPure(RatVec2, RatVec2),
    #[error("rows must be primitive for this operation")]
    NonPrimitiveRows,
}

pub type Result<T> = std::result::Result<T, HornError>;
