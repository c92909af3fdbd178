use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("subset must be nonempty")]
    EmptySubset,

    #[error("vertex {vertex} out of range for a graph with {n_vertices} vertices")]
    VertexOutOfRange { vertex: usize, n_vertices: usize },

    #[error("invalid edge ({0}, {1}): {2}")]
    InvalidEdge(usize, usize, &'static str),

    #[error("induced subgraph on S is not bipartite")]
    NotBipartite,

    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("{what} needs {n_vertices} vertices but the cap is {cap}; raise the cap explicitly to proceed")]
    CapExceeded {
        what: &'static str,
        n_vertices: usize,
        cap: usize,
    },

    #[error("polytope is empty")]
    EmptyPolytope,

    #[error("vertex list is empty")]
    NoVertices,

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("internal error: linear program reported unbounded over a polytope")]
    Unbounded,

    #[error("budget exhausted after {nodes} search nodes ({partial} points counted so far)")]
    BudgetExhausted { nodes: u64, partial: u64 },

    #[error("count overflowed u64")]
    Overflow,

    #[error("variable {0} is not bounded by any equality row")]
    UnboundedVariable(usize),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("inconsistent data: {0}")]
    Inconsistent(String),

    #[error("input is not an Ehrhart count sequence: {0}")]
    NotEhrhartSequence(String),
}
