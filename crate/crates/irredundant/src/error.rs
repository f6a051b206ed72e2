use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("loop edge ({0}, {0}) is not allowed")]
    LoopEdge(usize),

    #[error("vertex {v} out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },

    #[error("({u}, {v}) is not an edge of the graph")]
    NotAnEdge { u: usize, v: usize },

    #[error("edge ({u}, {v}) is already present")]
    EdgeAlreadyPresent { u: usize, v: usize },

    #[error("canonical coding is capped at {limit} vertices (got {n}); larger graphs should rely on search-internal pruning")]
    CanonicalTooLarge { n: usize, limit: usize },

    #[error("({u}, {v}) is not a double edge")]
    NotDoubleEdge { u: usize, v: usize },

    #[error("graph is not irredundant: edge ({u}, {v}) is bad")]
    NotIrredundant { u: usize, v: usize },

    #[error("vertices {0}, {1}, {2} do not form a triangle in the underlying undirected graph")]
    NotTriangle(usize, usize, usize),

    #[error("graph contains a double edge ({u}, {v}); triangle contraction requires none")]
    DoubleEdgePresent { u: usize, v: usize },

    #[error("contraction invariant violated: {0}")]
    ContractionInvariant(String),

    #[error("not a tree: {0}")]
    NotATree(String),

    #[error("part sizes must be positive (got {a} and {b})")]
    EmptyPart { a: usize, b: usize },

    #[error("{what} is capped at {cap} (got {got})")]
    CapExceeded {
        what: &'static str,
        cap: usize,
        got: usize,
    },

    #[error("recurrence table needs at least 2 vertices (got {0})")]
    BoundTableTooSmall(usize),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
