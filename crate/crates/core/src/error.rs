use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("variable `{0}` is not part of the presentation")]
    PresentationMismatch(String),

    #[error("operands live in different presentations")]
    DifferentPresentations,

    #[error("generator `{0}` appears in both tensor factors")]
    NamespaceCollision(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("invalid derivation: {0}")]
    InvalidDerivation(String),

    #[error("{what} = {value} exceeds the configured bound {bound}")]
    BoundExceeded { what: &'static str, value: usize, bound: usize },

    #[error("{0} is out of range")]
    OutOfRange(String),

    #[error("map {0:?} is not order preserving")]
    NotOrderPreserving(Vec<u32>),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid structure data: {0}")]
    InvalidStructure(String),

    #[error("invalid simplicial set: {0}")]
    InvalidSimplicialSet(String),

    #[error("kernel on an infinite graph needs a pruning certificate: {0}")]
    MissingPruningCertificate(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("two independent routes disagree: {0}")]
    RouteDisagreement(String),

    #[error("unknown {kind} `{name}` (available: {available})")]
    UnknownStrategy { kind: &'static str, name: String, available: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}
