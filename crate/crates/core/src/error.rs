use thiserror::Error;

use crate::graph6::Graph6Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph has {0} vertices, at most {max} are supported", max = crate::graph::MAX_VERTICES)]
    TooManyVertices(usize),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("adjacency rows are not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),

    #[error("graph is not chordal")]
    NotChordal,

    #[error("vertex {0} is not simplicial")]
    NotSimplicial(usize),

    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),

    #[error("{0} is not a prime")]
    NotPrime(u32),

    #[error("pair (a={a}, b={b}) is out of range for n={n}")]
    PairOutOfRange { n: usize, a: usize, b: usize },

    #[error("construction requires a + b <= n, got n={n}, a={a}, b={b}")]
    WitnessRegion { n: usize, a: usize, b: usize },

    #[error("n={0} is outside the supported range {1}")]
    UnsupportedN(usize, &'static str),

    #[error("pair sets have different ambient vertex counts ({0} vs {1})")]
    MismatchedN(usize, usize),

    #[error("depth oracles disagree on {graph6}: {detail}")]
    OracleDisagreement { graph6: String, detail: String },

    #[error("checkpoint line {line}: {reason}")]
    CheckpointCorrupt { line: usize, reason: String },

    #[error("{graph6} is not a {class} graph on {n} vertices")]
    NotInClass {
        graph6: String,
        class: &'static str,
        n: usize,
    },

    #[error(transparent)]
    Graph6(#[from] Graph6Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
