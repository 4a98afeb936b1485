use thiserror::Error;

/// Errors raised by graph operations, property evaluation, the solver and the certifiers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("{what} exceeds cap: {value} > {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("graph6: {0}")]
    Graph6(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("invalid parameters for `{name}`: {reason}")]
    InvalidParams { name: String, reason: String },

    #[error("unknown property `{0}`")]
    UnknownProperty(String),

    #[error("property `{name}`: {reason}")]
    Property { name: String, reason: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("malformed strategy: {0}")]
    MalformedStrategy(String),

    #[error("sunflower family sets must all have the same size")]
    UnequalSetSizes,

    #[error("validation failed: {0}")]
    Validation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn cap(what: &'static str, value: usize, cap: usize) -> Result<()> {
    if value > cap {
        Err(Error::CapExceeded { what, value, cap })
    } else {
        Ok(())
    }
}
