use thiserror::Error;

use crate::{Color, EdgeId, Vertex};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("edge {edge} is a loop at vertex {vertex}")]
    LoopEdge { edge: EdgeId, vertex: Vertex },

    #[error("vertex {vertex} out of range for a graph on {vertex_count} vertices")]
    VertexOutOfRange { vertex: Vertex, vertex_count: usize },

    #[error("edge {edge} out of range for a graph with {edge_count} edges")]
    EdgeOutOfRange { edge: EdgeId, edge_count: usize },

    #[error("color {color} out of range for {k} colors")]
    ColorOutOfRange { color: Color, k: usize },

    #[error("vertex {vertex} is not an endpoint of arc {edge}")]
    NotAnEndpoint { vertex: Vertex, edge: EdgeId },

    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),

    #[error("orientation does not match graph: {0}")]
    InvalidOrientation(String),

    #[error("coloring covers {got} vertices, instance has {expected}")]
    PartialColoring { expected: usize, got: usize },

    #[error("conflict pairs on edge {edge} do not form a matching: {reason}")]
    NotAMatching { edge: EdgeId, reason: String },

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),

    #[error("greedy needs k >= {required} colors (exclusion degree {exclusion_degree}), got {k}")]
    GreedyPrecondition {
        k: usize,
        exclusion_degree: usize,
        required: usize,
    },

    #[error("orientation contains a directed cycle; greedy order undefined")]
    CyclicOrientation,

    #[error("{0}")]
    Domain(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
