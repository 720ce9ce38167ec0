//! Combinatorial model of an edge-simple right-angled polytope: vertex–facet
//! incidences, cusp pairings, derived faces, validation and screening.

mod cusp;
mod faces;
mod polytope;
mod screen;
mod validate;

pub use cusp::{derive_cusp_pairing, PairingError};
pub use faces::{
    avg_incidence, enumerate_faces, face_vector, induced_polytope, minimal_common_face, CommonFace, Face,
    FaceError, FaceVector,
};
pub use polytope::{
    CombinatorialPolytope, CuspPairing, FacetSet, Pairings, StructureError, VertexKind, VertexRecord,
};
pub use screen::{
    nk_checks, nk_screen, nonaka_checks, nonaka_screen, realizability_screen, NkCheck, NonakaCheck,
    NonakaWitness, ScreenFinding, ScreenReport, ScreenRule, NONAKA_MIN_FACETS,
};
pub use validate::{validate, Rule, ValidationReport, Violation};

pub(crate) use cusp::{partner, resolve as resolve_pairings};

/// Exact rational number used for average incidences and bounds.
pub type Rational = num_rational::BigRational;
