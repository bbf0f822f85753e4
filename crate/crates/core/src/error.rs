use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate edge {u}-{v}")]
    DuplicateEdge { u: usize, v: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph6: invalid character {ch:?} at offset {offset}")]
    Graph6Char { offset: usize, ch: char },
    #[error("graph6: {0}")]
    Graph6Payload(String),
    #[error("graph6: {0} vertices needs the long form, which is not supported")]
    Graph6TooLarge(usize),

    #[error("graph is not connected")]
    Disconnected,
    #[error("operation needs at least {need} vertices, graph has {got}")]
    TooFewVertices { need: usize, got: usize },
    #[error("invalid graph family: {0}")]
    InvalidFamily(String),
    #[error("enumeration supports 1 <= n <= 8, got {0}")]
    EnumerationRange(usize),
    #[error("graph is not regular")]
    NotRegular,
    #[error("diameter {0} exceeds 2")]
    DiameterTooLarge(usize),
    #[error("leading eigenvalue {got} does not match degree {expected}")]
    SpectrumMismatch { expected: f64, got: f64 },
    #[error("QL iteration did not converge for eigenvalue {0}")]
    NoConvergence(usize),
    #[error("least distance eigenvalue {lambda_min} contradicts structural class {class}")]
    Lemma4Contradiction {
        class: &'static str,
        lambda_min: f64,
    },
    #[error("{0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by unreadable input text.
    pub fn is_parse(&self) -> bool {
        matches!(
            self,
            Error::Malformed { .. }
                | Error::VertexOutOfRange { .. }
                | Error::DuplicateEdge { .. }
                | Error::SelfLoop(_)
                | Error::Graph6Char { .. }
                | Error::Graph6Payload(_)
                | Error::Graph6TooLarge(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
