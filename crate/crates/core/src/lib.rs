//! Combinatorics and exact lower bounds for right-angled hyperbolic polytopes
//! of finite volume.
//!
//! * [`face_lattice`]: the incidence model, face enumeration, validation and
//!   realizability screens.
//! * [`gluing`]: doubling along a facet and the reduction of ideal-vertex pairs.
//! * [`bounds`]: exact recurrence cascades for facets, ideal and finite vertices.
//! * [`catalog`]: known polytopes used as ground truth.

pub mod bounds;
pub mod catalog;
pub mod face_lattice;
pub mod gluing;

pub use bounds::{BoundsConfig, CascadeTable, DimensionRow, NuRule, TableFormat};
pub use face_lattice::{
    avg_incidence, enumerate_faces, face_vector, validate, CombinatorialPolytope, Face, FaceVector, FacetSet,
    Rational, ValidationReport, VertexKind, VertexRecord,
};
pub use gluing::{
    double, predict_counts, reduce_ideal_pair, GluingError, GluingMap, ReductionOptions, ReductionTrace,
};
pub use num_bigint::BigInt;
