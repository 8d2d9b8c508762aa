//! Exact combinatorics for Erdős–Hajnal-type experiments.

pub mod construct;
pub mod containers;
pub mod error;
pub mod exact;
pub mod experiment;
pub mod format;
pub mod graph;
pub mod homogeneous;
pub mod induced;
pub mod params;
pub mod report;
pub mod tournament;
pub mod vertex_set;

pub use error::{Error, Result};
pub use graph::{Graph, UniformHypergraph};
pub use tournament::Tournament;
pub use vertex_set::VertexSet;
