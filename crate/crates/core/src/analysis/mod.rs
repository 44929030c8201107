//! Decision procedures and audits: criticality, the 6-ring extension
//! criterion, structural audits of critical graphs, face statistics, family
//! recognition and the classification census.

mod audit;
mod canon;
mod census;
mod critical;
mod recognize;

use thiserror::Error;

use crate::coloring::ColoringError;
use crate::embedding::EmbeddingError;

pub use audit::{face_deficiency, lemma_fr_audit, sixring_criterion, FaceStats, Violation};
pub use census::{census, CensusEntry, CensusRecord, CensusReport};
pub use canon::{canonical_form, canonical_hash, CanonicalForm};
pub(crate) use canon::rooted_code;
pub use recognize::{
    fptw_catalog, recognize, recognize_with, Decomposition, FamilyWitness, FptwCatalog, FptwRecipe,
    Verdict, DEFAULT_PATCH_CAP,
};
pub(crate) use critical::check_guard;
pub use critical::{is_critical, is_four_critical, CriticalityReport, Witness, DEFAULT_GUARD};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("{vertices} vertices exceed the guard of {guard}")]
    TooLarge { vertices: usize, guard: usize },
    #[error("not a disk with a 6-ring: {0}")]
    NotSixRing(String),
    #[error("graph has {vertices} vertices, beyond the catalog bound {bound}, and is not a near 3,3-quadrangulation")]
    CatalogTooSmall { vertices: usize, bound: usize },
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}
