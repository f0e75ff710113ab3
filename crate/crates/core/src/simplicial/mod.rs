//! Finite simplicial sets and maps between them.

mod constructions;
mod simplex;
mod smap;
pub mod ssx;
mod sset;
pub mod standard;

pub use constructions::{
    fiber_product, opposite_map, point, product, pullback, restrict_over_simplex, vertex_subfiber, FiberProduct,
    Restriction,
};
pub use simplex::{canonical_cmp, epi_mono, surjection_masks, DegeneracyWord, Simplex, MAX_DEGREE};
pub use smap::SMap;
pub use sset::{Cell, FaceSpec, Kind, SimplexRef, SimplicialSet, SimplicialSetBuilder};
pub use standard::{boundary, classifying_map, horn, inclusion, skeleton, standard_simplex, sub_object};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimplicialError {
    #[error("bad degeneracy word \"{0}\"")]
    BadWord(String),
    #[error("degree {0} exceeds the supported maximum")]
    DegreeTooLarge(usize),
    #[error("unknown cell \"{0}\"")]
    UnknownCell(String),
    #[error("cell id \"{0}\" occurs in several degrees")]
    AmbiguousCell(String),
    #[error("duplicate cell id \"{id}\" in degree {degree}")]
    DuplicateId { degree: usize, id: String },
    #[error("cell \"{cell}\" has {found} faces, expected {expected}")]
    FaceCount { cell: String, expected: usize, found: usize },
    #[error("cell \"{cell}\": face d_{face} has the wrong degree")]
    FaceDegree { cell: String, face: usize },
    #[error("cell \"{cell}\": face d_{face} refers to missing cell \"{target}\" of degree {degree}")]
    MissingFace { cell: String, face: usize, target: String, degree: usize },
    #[error("cell \"{cell}\": degenerate face d_{face} in a semi-simplicial set")]
    DegenerateInSemi { cell: String, face: usize },
    #[error("cell \"{cell}\" violates d_{i} d_{j} = d_{} d_{i}", j - 1)]
    Identity { cell: String, i: usize, j: usize },
    #[error("map assignment has the wrong number of cells in degree {degree}")]
    MapShape { degree: usize },
    #[error("image of cell \"{cell}\" has the wrong degree or target")]
    MapDegree { cell: String },
    #[error("map does not commute with d_{face} on cell \"{cell}\"")]
    NotSimplicial { cell: String, face: usize },
    #[error("maps are not composable")]
    Incomposable,
    #[error("the two maps do not share a target")]
    CospanMismatch,
    #[error("operation requires simplicial (not semi-simplicial) input")]
    NeedsSimplicial,
    #[error("no horn Λ^{n}_{i}")]
    BadHorn { n: usize, i: usize },
}
