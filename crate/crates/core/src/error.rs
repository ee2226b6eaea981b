use thiserror::Error;

use crate::graph::VertexId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop on vertex {vertex}")]
    SelfLoop { vertex: VertexId },
    #[error("duplicate edge between {u} and {v}")]
    DuplicateEdge { u: VertexId, v: VertexId },
    #[error("edge endpoint {vertex} is not a vertex")]
    DanglingEndpoint { vertex: VertexId },
    #[error("edge references undeclared vertex {vertex}")]
    UnknownVertex { vertex: i64 },
    #[error("vertex {vertex} declared twice")]
    DuplicateVertex { vertex: i64 },
    #[error("graph {graph}, line {line}: {source}")]
    At {
        graph: i64,
        line: usize,
        #[source]
        source: Box<GraphError>,
    },
}

impl GraphError {
    pub(crate) fn at(graph: i64, line: usize, source: GraphError) -> GraphError {
        GraphError::At {
            graph,
            line,
            source: Box::new(source),
        }
    }
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CodeError {
    #[error("DFS code is empty")]
    Empty,
    #[error("tuple {index}: {message}")]
    Invalid { index: usize, message: String },
    #[error("graph is not connected")]
    Disconnected,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("invalid minimum support '{0}'")]
    InvalidSupport(String),
    #[error("minimum support must be positive, got {0}")]
    NonPositiveSupport(f64),
    #[error("fractional minimum support must lie in (0, 1], got {0}")]
    FractionOutOfRange(f64),
    #[error("mode {0:?} is not a closed-mining mode")]
    NotClosedMode(crate::miner::Mode),
}
