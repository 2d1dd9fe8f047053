//! Dimension, depth and projective dimension of `S/I(G)` for edge ideals of
//! small graphs, the (depth, dim) pair regions they realize, and exhaustive
//! surveys over isomorphism classes of connected graphs.
//!
//! The `parallel` feature (on by default) runs the survey and homology loops
//! on rayon; without it everything runs sequentially with identical results.

pub mod analysis;
pub mod bouquet;
pub mod canon;
pub mod checks;
pub mod chordal;
pub mod enumerate;
pub mod error;
pub mod exec;
pub mod graph;
pub mod graph6;
pub mod homology;
pub mod independence;
pub mod pairsets;
pub mod survey;

pub use error::{Error, Result};
pub use exec::Exec;
pub use graph::{Graph, VertexSet, MAX_VERTICES};
pub use homology::{DepthPolicy, Field};
pub use pairsets::{cminus, cprime, cstar, PairSet};
