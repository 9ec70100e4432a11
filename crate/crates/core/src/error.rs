use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid name `{0}`: names must match [A-Za-z0-9_.]+")]
    InvalidName(String),

    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),

    #[error("duplicate edge `{0}`")]
    DuplicateEdge(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown edge `{0}`")]
    UnknownEdge(String),

    #[error("vertex set is not hereditary: `{from}` reaches `{to}` outside it")]
    NotHereditary { from: String, to: String },

    #[error("vertex set must not be empty")]
    EmptySet,

    #[error("F(H) is infinite: a cycle outside the hereditary set reaches it through `{0}`")]
    InfinitePathSet(String),

    #[error("length parameter must be at least 1")]
    ZeroLength,

    #[error("vertex `{0}` is not a source")]
    NotASource(String),

    #[error("graph has a sink at `{0}`")]
    HasSink(String),

    #[error("graph has a source at `{0}`")]
    HasSource(String),

    #[error("vertex `{vertex}` has {found} pendant sources, expected {expected}")]
    PendantSourceCount { vertex: String, found: usize, expected: usize },

    #[error("no canonical head of length {length} at `{vertex}`")]
    MalformedHead { vertex: String, length: usize },

    #[error("invalid forest: {0}")]
    InvalidForest(String),

    #[error("root set must be a proper subset of the vertices")]
    RootsNotProper,

    #[error("vertex `{0}` has no path from the support")]
    Unreachable(String),

    #[error("vertex `{0}` has no loop")]
    MissingLoop(String),

    #[error("element is not full: its hereditary saturated closure misses `{0}`")]
    NotFull(String),

    #[error("vertex `{0}` is not in the support of the element")]
    NotInSupport(String),

    #[error("vertex `{0}` is singular")]
    SingularVertex(String),

    #[error("multiplicity for `{0}` must be at least 1")]
    ZeroMultiplicity(String),

    #[error("matrix size {n} is smaller than the largest multiplicity {max}")]
    MatrixTooSmall { n: usize, max: usize },

    #[error("vertex `{0}` lies outside the stabilization fragment (increase the depth)")]
    BeyondFragment(String),

    #[error("zero element")]
    ZeroElement,

    #[error("path is not a cycle without exits: {0}")]
    NotExitFreeCycle(String),

    #[error("assignment is missing generator `{0}`")]
    IncompleteAssignment(String),

    #[error("trace record {index}: {message}")]
    Trace { index: usize, message: String },

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
