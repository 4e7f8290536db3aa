//! Max-flow, min-cut families and canonical structure trees for
//! undirected capacitated networks, with windowed analysis of periodic
//! strips.

pub mod cutring;
pub mod error;
pub mod flow;
pub mod formats;
pub mod netcore;
pub mod strips;
pub mod structure;
mod vset;

pub use cutring::{CutFamily, Oracle, DEFAULT_ORACLE_LIMIT};
pub use error::{Error, Result};
pub use flow::{max_flow, min_cut_largest, min_cut_smallest, FlowAssignment, INFINITE};
pub use netcore::{capacity, coboundary, corners, is_nested, Capacity, Cut, Edge, Network, VertexId};
pub use strips::{StripNetwork, StripPoint};
pub use structure::{build_canonical_tree, canonical_system, gomory_hu_extract, NestedSystem, StructureTree};
pub use vset::VertexSet;
