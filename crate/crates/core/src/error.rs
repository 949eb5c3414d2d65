use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library reports. Vertex numbers carried in messages are
/// 0-based internal ids.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("self-loop on vertex {0}")]
    LoopEdge(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph on {n} vertices exceeds the cap of {cap}")]
    SizeCapExceeded { n: usize, cap: usize },
    #[error("input not indecomposable")]
    NotIndecomposable,
    #[error("base set has {0} vertices; at least 4 are required")]
    BaseTooSmall(usize),
    #[error("induced subgraph on the base set is decomposable")]
    BaseNotIndecomposable,
    #[error("fewer than {required} vertices lie outside the base set")]
    OutsideTooSmall { required: usize },
    #[error("base set must be a proper subset of the vertex set")]
    BaseNotProper,
    #[error("vertex pair must consist of two distinct vertices")]
    DegeneratePair,
    #[error("cover size {0} not supported (at most 3)")]
    KTooLarge(usize),
    #[error("size {n} too small (minimum {min})")]
    SizeTooSmall { n: usize, min: usize },
    #[error("size {0} must be even")]
    SizeOdd(usize),
    #[error("graph is not in the canonical frame: {0}")]
    WrongFrame(String),
    #[error("size {n} below the class minimum {min}")]
    SizeBelowClassMinimum { n: usize, min: usize },
    #[error("size {n} below the theorem bound {min}")]
    SizeBelowTheoremBound { n: usize, min: usize },
    #[error("unknown statement id `{0}`")]
    UnknownStatement(String),
    #[error("parameters outside the envelope of {statement}: {detail}")]
    EnvelopeExceeded { statement: String, detail: String },
    #[error("malformed payload at byte {position}: {detail}")]
    MalformedPayload { position: usize, detail: String },
    #[error("unknown class id `{0}`")]
    UnknownClass(String),
    #[error("internal anomaly: {0}")]
    Anomaly(String),
}
