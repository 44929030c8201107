pub mod analysis;
pub mod cli;
pub mod coloring;
pub mod embedding;
pub mod families;
pub mod surgery;

pub use embedding::{CycleRef, EmbeddedGraph, EmbeddingError, FaceList};
