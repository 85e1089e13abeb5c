use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("instance must have at least one vertex")]
    EmptyVertexSet,
    #[error("vertex {vertex} out of range (vertex count {count})")]
    InvalidVertex { vertex: usize, count: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("triple {0:?} has repeated vertices")]
    DegenerateTriple([usize; 3]),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("duplicate triple {0}-{1}-{2}")]
    DuplicateTriple(usize, usize, usize),
    #[error("triple {0}-{1}-{2} is not a 3-clique: edge {3}-{4} missing")]
    TripleNotClique(usize, usize, usize, usize, usize),
    #[error("expected {expected} entries, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("labeling violates a cycle inequality")]
    InfeasibleLabeling,
    #[error("partition block {0:?} does not induce a connected subgraph")]
    DisconnectedBlock(Vec<usize>),
    #[error("partition does not cover every vertex exactly once")]
    NotAPartition,
    #[error("vertex sets overlap at vertex {0}")]
    OverlappingSets(usize),
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("{0}-{1}-{2} is not a triple")]
    NotATriple(usize, usize, usize),
    #[error("source and sink coincide")]
    SourceEqualsSink,
    #[error("global min cut needs at least two vertices")]
    TooFewVertices,
    #[error("negative capacity {0}")]
    NegativeCapacity(f64),
    #[error("quadratic coefficient {coefficient} on ({p}, {q}) is positive; the problem is not submodular")]
    NonSubmodular { p: usize, q: usize, coefficient: f64 },
    #[error("source vertex {0} is in the forbidden set")]
    SourceForbidden(usize),
    #[error("{vertices} vertices exceed the enumeration bound of {bound}")]
    EnumerationBound { vertices: usize, bound: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
