use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("order {0} exceeds the supported maximum")]
    TooLarge(usize),
    #[error("input too small: {0}")]
    TooSmall(String),
    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(usize, usize),
    #[error("({0}, {1}) is already an edge")]
    AlreadyEdge(usize, usize),
    #[error("edge list is not a subgraph of the host graph")]
    NotASubgraph,
    #[error("k = {k} out of range 1..={n}")]
    KOutOfRange { k: usize, n: usize },
    #[error("zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not symmetrizable with the given part sizes")]
    NotSymmetrizable,
    #[error("matrix orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("polynomial division left a nonzero remainder")]
    NonExactDivision,
    #[error("invalid H-join spec: {0}")]
    InvalidSpec(String),
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("family {0} is only given by a figure and cannot be reconstructed")]
    UnreconstructibleFamily(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
