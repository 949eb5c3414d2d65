//! Interval (module) analysis of small undirected graphs: indecomposability,
//! the indecomposability graph `I(G)`, extensions of indecomposable induced
//! subgraphs, and the classification of graphs whose `I(G)` has a vertex
//! cover of size two.
//!
//! Vertex ids are 0-based in the API and 1-based in every text format.

pub mod error;
pub mod extension;
pub mod families;
pub mod format;
pub mod graph;
pub mod indec;
pub mod iso;
pub mod modular;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Graph, VertexId, VertexSet};
