use alloc::string::String;

use crate::graph::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("vertex {vertex} is not in a graph with {n} vertices")]
    UnknownVertex { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("edge {0}-{1} appears more than once")]
    DuplicateEdge(Vertex, Vertex),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("{family}: {reason}")]
    InvalidParameter { family: &'static str, reason: String },
    #[error("configuration has {got} entries, graph has {expected} vertices")]
    ConfigurationLength { expected: usize, got: usize },
    #[error("illegal move {from}->{to}: {reason}")]
    IllegalMove { from: Vertex, to: Vertex, reason: &'static str },
    #[error("weight function: {0}")]
    InvalidWeights(String),
    #[error("strategies are rooted at different vertices ({0} and {1})")]
    RootMismatch(Vertex, Vertex),
    #[error("vertex {0} has weight zero, covering bound undefined")]
    ZeroWeight(Vertex),
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("malformed rational {0:?}")]
    BadRational(String),
    #[error("arithmetic overflow while scaling weights")]
    Overflow,
}
