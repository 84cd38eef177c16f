use thiserror::Error;

/// Errors shared across the ranking pipeline.
#[derive(Debug, Error)]
pub enum RankError {
    #[error("duplicate comparison for pair ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("self-comparison on player {0}")]
    SelfComparison(usize),
    #[error("comparison value {value} out of range for pair ({i}, {j}): {reason}")]
    ValueOutOfRange { i: usize, j: usize, value: f64, reason: String },
    #[error("player index {0} out of bounds for n = {1}")]
    IndexOutOfBounds(usize, usize),
    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("invalid generator spec: {0}")]
    BadSpec(String),
    #[error("comparison matrix has no spectral gap (all singular values zero)")]
    DegenerateSpectrum,
    #[error("linear system is singular beyond the gauge null space")]
    SingularSystem,
    #[error("similarity graph is disconnected (zero eigenvalue multiplicity {0})")]
    DisconnectedSimilarityGraph(usize),
    #[error("random walk is not irreducible; stationary distribution did not converge")]
    NotIrreducible,
    #[error("empty input: {0}")]
    EmptyInput(String),
    #[error("node {0} has zero degree in the measurement graph")]
    ZeroDegreeNode(usize),
    #[error("eigensolver did not converge within {0} iterations")]
    NonConvergence(usize),
    #[error("input must be ordinal")]
    NotOrdinal,
    #[error("objective matrix is not Hermitian")]
    NotHermitian,
    #[error("SDP residuals grew for {0} consecutive checks")]
    Diverged(usize),
    #[error("invalid anchors: {0}")]
    BadAnchors(String),
    #[error("problem size {0} exceeds configured cap {1}")]
    ProblemTooLarge(usize, usize),
    #[error("residual graph is disconnected")]
    Disconnected,
    #[error("subset size k = {k} invalid for n = {n}")]
    KTooLarge { k: usize, n: usize },
    #[error("parse error at line {line}: {msg}")]
    ParseError { line: usize, msg: String },
    #[error("negative score at line {0}")]
    NegativeScore(usize),
    #[error("no players remain after degree filtering")]
    EmptyAfterFiltering,
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, RankError>;
