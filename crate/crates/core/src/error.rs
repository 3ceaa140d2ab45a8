use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix is singular")]
    Singular,

    #[error("index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("invalid digraph: {0}")]
    InvalidGraph(String),

    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("not connected")]
    NotConnected,

    #[error("not strongly connected")]
    NotStronglyConnected,

    #[error("{0} requires balanced digraph")]
    NotBalanced(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{}", match line { Some(l) => format!("line {l}: {msg}"), None => msg.clone() })]
    Parse { line: Option<usize>, msg: String },

    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),

    #[error("generator failed after {attempts} attempts: {msg}")]
    GeneratorExhausted { attempts: usize, msg: String },

    /// A proved identity failed on concrete input. Always a bug.
    #[error("invariant violated: {0}")]
    Invariant(String),
}
