use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("malformed rational `{0}`")]
    Rational(String),
    #[error("malformed input: {0}")]
    Schema(String),
}

/// Structural problems that make a decomposition impossible to interpret, as
/// opposed to invariant violations, which are reported rather than raised.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("duplicate piece id `{0}`")]
    DuplicatePiece(String),
    #[error("gluing references unknown piece `{0}`")]
    UnknownPiece(String),
    #[error("piece `{piece}` has no port {port}")]
    DanglingPort { piece: String, port: usize },
    #[error("piece `{0}` has an unsupported kind: {1}")]
    BadKind(String, String),
    #[error("invalid boundary component: {0}")]
    BadBoundary(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChartError {
    #[error("chart point is not in the piece's lamination space: {0}")]
    NotMember(String),
    #[error("chart does not match piece kind: {0}")]
    WrongKind(String),
    #[error("negative parameter: {0}")]
    Negative(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoordError {
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("decomposition is invalid: {0:?}")]
    InvalidDecomposition(Vec<String>),
    #[error("piece `{0}` has no chart point")]
    MissingChart(String),
    #[error("piece `{piece}`: {source}")]
    Piece { piece: String, source: ChartError },
    #[error("gluing constraints violated: {0:?}")]
    GluingMismatch(Vec<String>),
    #[error("outside the hypothesis: {0}")]
    OutOfHypothesis(String),
    #[error("zero lamination cannot be projectivized")]
    ZeroLamination,
    #[error("could not sample coordinates after {0} attempts")]
    RetryBudget(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrackError {
    #[error("weight vector does not index the plain branches: {0}")]
    IndexMismatch(String),
    #[error("negative weight: {0}")]
    NegativeWeight(String),
    #[error("host surface is not planar: {0}")]
    UnsupportedHost(String),
    #[error("malformed track: {0}")]
    Malformed(String),
    #[error("illegal site: {0}")]
    IllegalSite(String),
    #[error("split direction violates carrying: {0}")]
    CarryingViolation(String),
    #[error("sites are not parallel: {0}")]
    NotParallel(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntersectionError {
    #[error(transparent)]
    Coord(#[from] CoordError),
    #[error("curve class not applicable: {0}")]
    Domain(String),
    #[error("oracle weight cap {cap} exceeded by {value}")]
    CapExceeded { cap: i64, value: i64 },
    #[error(transparent)]
    Track(#[from] TrackError),
    #[error("curve system cannot be realized disjointly: {0}")]
    Unrealizable(String),
}
