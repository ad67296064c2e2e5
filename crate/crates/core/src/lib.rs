//! Gadget reductions from k×k Permutation Independent Set and Vertex Cover
//! to vertex deletion towards minor- and topological-minor-free graphs,
//! together with the containment, block-cut-tree and decomposition
//! machinery needed to check them on small instances.

pub mod decomposition;
pub mod error;
pub mod family;
pub mod graph;
pub mod harness;
pub mod io;
pub mod iso;
pub mod minors;
pub mod reductions;

pub use error::{Error, GraphError, Result};
pub use graph::{Graph, Remap, Vertex, VertexSet};
pub use minors::{Relation, SearchLimits};
