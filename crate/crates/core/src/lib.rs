//! Tutte paths, 2-walks and prism Hamiltonicity for plane graphs.

pub mod circuit;
pub mod connectivity;
pub mod error;
pub mod extend;
pub mod graph;
pub mod nets;
pub mod prisms;
pub mod tutte;
pub mod walks;

pub use error::{Error, Result};
pub use graph::{PlaneGraph, WalkSeq, V};
