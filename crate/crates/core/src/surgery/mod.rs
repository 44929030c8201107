//! Transformations from the cutting argument: identifying opposite vertices
//! of a 4-face, layering by distance, contracting a ladder, collapsing the
//! region between two triangles, extracting critical subgraphs, chain
//! decomposition and the full cutting step.

mod chain;
mod collapse;
mod cut;
mod extract;
mod identify;
mod layers;

use thiserror::Error;

use crate::analysis::AnalysisError;
use crate::coloring::ColoringError;
use crate::embedding::EmbeddingError;

pub use chain::{audit_chain, chain_decompose, ChainDecomposition, ChainViolation, Piece};
pub use collapse::{collapse_triangle_pair, Transformed};
pub use cut::{cut_step, CutOutcome, CutRoute};
pub use extract::maximal_critical_subgraph;
pub use identify::{identify_across_face, Diagonal, Identified};
pub use layers::{distance_classes, ladder_contract, shortest_layer_cycle, DistanceClasses};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurgeryError {
    #[error("{0:?} is not a 4-face")]
    NotAFace(Vec<usize>),
    #[error("diagonal ends {0} and {1} are adjacent")]
    DiagonalAdjacent(usize, usize),
    #[error("diagonal ends {0} and {1} lie on the same ring")]
    RingDiagonal(usize, usize),
    #[error("no suitable cycle: {0}")]
    NoSuchCycle(String),
    #[error("not a ladder: {0}")]
    NotALadder(String),
    #[error("not a triangle pair: {0}")]
    NotTrianglePair(String),
    #[error("every ring precoloring extends and only the rings remain")]
    NothingToExtract,
    #[error("graph is not tame")]
    NotTame,
    #[error("no chain: {0}")]
    NoChain(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("audit failed: {0}")]
    AuditFailed(String),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}
