use thiserror::Error;

/// Everything that can go wrong while parsing, transforming, constructing or
/// checking traces.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: expected exactly two vertex tokens, found {found:?}")]
    MalformedLine { line: usize, found: String },
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("self-loop at vertex {0}")]
    SelfLoop(String),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(String, String),
    #[error("graph is not connected")]
    NotConnected,
    #[error("unknown vertex {0}")]
    UnknownVertex(String),

    #[error("subtree {index} does not induce a tree")]
    NotATree { index: usize },
    #[error("vertex {vertex} has more than one neighbor in subtree {index}")]
    MultiNeighbor { vertex: String, index: usize },
    #[error("vertex {0} belongs to more than one subtree")]
    OverlappingSubtrees(String),
    #[error("vertex name {0} is already taken")]
    NameCollision(String),

    #[error("trace has length {found}, expected {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("step {position}: {from} -> {to} is not an edge")]
    NonEdgeStep {
        position: usize,
        from: String,
        to: String,
    },
    #[error("edge {u} {v} is traversed {count} times")]
    EdgeCountMismatch { u: String, v: String, count: usize },

    #[error("repetition order must be at least 1, got {0}")]
    InvalidOrder(usize),
    #[error("vertex {vertex} has degree {degree}; brute-force oracle supports at most 12")]
    DegreeTooLargeForOracle { vertex: String, degree: usize },

    #[error("graph is not Eulerian")]
    NotEulerian,
    #[error("vertex {vertex} has odd degree {degree}")]
    OddDegree { vertex: String, degree: usize },
    #[error("minimum degree {min_degree} is too low (need at least {required})")]
    MinDegreeTooLow { min_degree: usize, required: usize },
    #[error("vertex {vertex} has degree {degree}, expected 4")]
    NotFourRegular { vertex: String, degree: usize },
    #[error("trace is not parallel")]
    NotParallel,
    #[error("no 2-repetition at vertex {0}")]
    NoRepetitionAtVertex(String),
    #[error("expansion map does not match the graphs: {0}")]
    MapMismatch(String),
    #[error("expansion map line {line}: {reason}")]
    MapSyntax { line: usize, reason: String },
    #[error("constructed trace failed the stability check: {0}")]
    InternalStabilityCheckFailed(String),

    #[error("unknown generator {0}")]
    UnknownName(String),
    #[error("bad generator parameters: {0}")]
    BadParams(String),
}

impl Error {
    /// True for errors that report an unmet input condition (as opposed to
    /// malformed input or an internal fault).
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::NotEulerian
                | Error::OddDegree { .. }
                | Error::MinDegreeTooLow { .. }
                | Error::NotFourRegular { .. }
                | Error::NotParallel
                | Error::NoRepetitionAtVertex(_)
                | Error::InvalidOrder(_)
                | Error::DegreeTooLargeForOracle { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
