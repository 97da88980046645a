//! Signless Laplacian spectral radius and fractional matching number of
//! simple graphs, together with checkers for the inequalities that relate
//! them, the extremal families on which they are tight, and brute-force
//! oracles that pin the fast paths down on small graphs.

pub mod graph;

pub use graph::{DegreeStats, Graph, GraphError, VertexSet};
pub mod matching;
pub mod spectral;
pub mod theorems;
