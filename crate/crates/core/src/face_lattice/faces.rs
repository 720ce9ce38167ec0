//! Faces derived from vertex incidences.
//!
//! A k-face is the intersection of exactly n − k facets. Every face of a
//! finite-volume polytope contains a vertex, so the faces are exactly the
//! facet subsets of size n − k that are admissible at some vertex: any subset
//! of a finite vertex's facets, or a subset of an ideal vertex's facets taking
//! at most one facet from each cusp pair.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use super::cusp::{self, PairingError};
use super::polytope::{
    CombinatorialPolytope, CuspPairing, FacetSet, Pairings, StructureError, VertexKind, VertexRecord,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FaceError {
    #[error("face dimension {k} out of range 1..={max}")]
    DimensionOutOfRange { k: usize, max: usize },
    #[error("incidence pair (k, l) = ({k}, {l}) out of range for dimension {n}")]
    IncidenceOutOfRange { k: usize, l: usize, n: usize },
    #[error("average over {k}-faces is undefined: there are none")]
    UndefinedAverage { k: usize },
    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),
    #[error("a vertex cannot be paired with itself (`{0}`)")]
    SameVertex(String),
    #[error("induced polytope needs a face of dimension at least 2, got {0}")]
    FaceTooSmall(usize),
    #[error(transparent)]
    Pairing(#[from] PairingError),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// A proper face of dimension ≥ 1, identified by the facets containing it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    pub facet_set: FacetSet,
    pub dim: usize,
    /// Indices of the vertices incident to the face, ascending.
    pub vertices: Vec<usize>,
}

/// Facet subsets of size `r` admissible at one vertex.
pub(crate) fn admissible_subsets(
    vertex: &VertexRecord,
    pairing: Option<&CuspPairing>,
    r: usize,
) -> Vec<FacetSet> {
    match (vertex.kind, pairing) {
        (VertexKind::Finite, _) => vertex
            .facets
            .iter()
            .combinations(r)
            .map(FacetSet::from_unsorted)
            .collect(),
        (VertexKind::Ideal, Some(pairs)) => {
            let mut out = Vec::new();
            for chosen in pairs.iter().combinations(r) {
                for mask in 0u64..(1u64 << r) {
                    let picks = chosen
                        .iter()
                        .enumerate()
                        .map(|(bit, &&(a, b))| if mask >> bit & 1 == 0 { a } else { b })
                        .collect();
                    out.push(FacetSet::from_unsorted(picks));
                }
            }
            out
        }
        (VertexKind::Ideal, None) => Vec::new(),
    }
}

/// Enumeration over whichever vertices have a resolved pairing.
pub(crate) fn enumerate_with(
    p: &CombinatorialPolytope,
    pairings: &[Option<CuspPairing>],
    k: usize,
) -> Vec<Face> {
    let r = p.dim() - k;
    let mut faces: BTreeMap<FacetSet, Vec<usize>> = BTreeMap::new();
    for (index, vertex) in p.vertices().iter().enumerate() {
        for set in admissible_subsets(vertex, pairings[index].as_ref(), r) {
            faces.entry(set).or_default().push(index);
        }
    }
    faces
        .into_iter()
        .map(|(facet_set, mut vertices)| {
            vertices.sort_unstable();
            vertices.dedup();
            Face {
                facet_set,
                dim: k,
                vertices,
            }
        })
        .collect()
}

fn check_k(p: &CombinatorialPolytope, k: usize) -> Result<(), FaceError> {
    let max = p.dim() - 1;
    if k == 0 || k > max {
        return Err(FaceError::DimensionOutOfRange { k, max });
    }
    Ok(())
}

/// All k-faces for 1 ≤ k ≤ n − 1, sorted by facet set.
pub fn enumerate_faces(p: &CombinatorialPolytope, k: usize) -> Result<Vec<Face>, FaceError> {
    check_k(p, k)?;
    let pairings = cusp::resolve(p)?;
    Ok(enumerate_with(p, &pairings, k))
}

/// Face counts a_0..a_{n−1} with the vertex count split by kind.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FaceVector {
    pub a: Vec<usize>,
    pub v_fin: usize,
    pub v_inf: usize,
}

impl FaceVector {
    pub fn facets(&self) -> usize {
        *self.a.last().expect("face vector is never empty")
    }
}

pub fn face_vector(p: &CombinatorialPolytope) -> Result<FaceVector, FaceError> {
    let pairings = cusp::resolve(p)?;
    let mut a = vec![p.vertices().len()];
    for k in 1..p.dim() {
        a.push(enumerate_with(p, &pairings, k).len());
    }
    Ok(FaceVector {
        a,
        v_fin: p.finite_count(),
        v_inf: p.ideal_count(),
    })
}

/// Average number of l-faces contained in a k-face, as an exact fraction.
/// Containment is reverse inclusion of facet sets; for l = 0 the vertices of
/// each k-face are counted directly.
pub fn avg_incidence(p: &CombinatorialPolytope, k: usize, l: usize) -> Result<BigRational, FaceError> {
    let n = p.dim();
    if l >= k || k > n - 1 {
        return Err(FaceError::IncidenceOutOfRange { k, l, n });
    }
    let pairings = cusp::resolve(p)?;
    let upper = enumerate_with(p, &pairings, k);
    if upper.is_empty() {
        return Err(FaceError::UndefinedAverage { k });
    }
    let total: usize = if l == 0 {
        upper.iter().map(|f| f.vertices.len()).sum()
    } else {
        let lower = enumerate_with(p, &pairings, l);
        upper
            .iter()
            .map(|f| {
                lower
                    .iter()
                    .filter(|g| g.facet_set.is_superset(&f.facet_set))
                    .count()
            })
            .sum()
    };
    Ok(BigRational::new(BigInt::from(total), BigInt::from(upper.len())))
}

/// The inclusion-minimal face containing two vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CommonFace {
    Face(Face),
    /// No facet contains both vertices.
    WholePolytope,
}

impl CommonFace {
    /// Dimension of the face; `None` for the whole polytope.
    pub fn dim(&self) -> Option<usize> {
        match self {
            CommonFace::Face(f) => Some(f.dim),
            CommonFace::WholePolytope => None,
        }
    }

    pub fn facet_set(&self) -> FacetSet {
        match self {
            CommonFace::Face(f) => f.facet_set.clone(),
            CommonFace::WholePolytope => FacetSet::new(),
        }
    }
}

pub fn minimal_common_face(p: &CombinatorialPolytope, u: &str, v: &str) -> Result<CommonFace, FaceError> {
    let ui = p
        .vertex_index(u)
        .ok_or_else(|| FaceError::UnknownVertex(u.to_string()))?;
    let vi = p
        .vertex_index(v)
        .ok_or_else(|| FaceError::UnknownVertex(v.to_string()))?;
    if ui == vi {
        return Err(FaceError::SameVertex(u.to_string()));
    }
    let common = p.vertex(ui).facets.intersection(&p.vertex(vi).facets);
    if common.is_empty() {
        return Ok(CommonFace::WholePolytope);
    }
    Ok(CommonFace::Face(Face {
        dim: p.dim().saturating_sub(common.len()),
        vertices: p.vertices_on(&common),
        facet_set: common,
    }))
}

/// The face `face` as a polytope in its own right. Facets are the faces one
/// dimension lower that contain it, numbered by ascending extra facet index.
pub fn induced_polytope(p: &CombinatorialPolytope, face: &Face) -> Result<CombinatorialPolytope, FaceError> {
    let m = face.dim;
    if m < 2 {
        return Err(FaceError::FaceTooSmall(m));
    }
    let pairings = cusp::resolve(p)?;
    let consumed = &face.facet_set;

    // Facets of the face surviving at each vertex.
    let mut per_vertex: Vec<(usize, Vec<usize>)> = Vec::new();
    for &index in &face.vertices {
        let vertex = p.vertex(index);
        let kept: Vec<usize> = match vertex.kind {
            VertexKind::Finite => vertex.facets.iter().filter(|&g| !consumed.contains(g)).collect(),
            VertexKind::Ideal => {
                let pairing = pairings[index].as_ref().expect("resolved ideal pairing");
                vertex
                    .facets
                    .iter()
                    .filter(|&g| {
                        !consumed.contains(g)
                            && !cusp::partner(pairing, g).is_some_and(|h| consumed.contains(h))
                    })
                    .collect()
            }
        };
        per_vertex.push((index, kept));
    }

    let extras: Vec<usize> = per_vertex
        .iter()
        .flat_map(|(_, kept)| kept.iter().copied())
        .sorted_unstable()
        .dedup()
        .collect();
    let renumber = |g: usize| extras.binary_search(&g).expect("extra facet");

    let mut vertices = Vec::with_capacity(per_vertex.len());
    let mut restricted = Pairings::new();
    for (index, kept) in &per_vertex {
        let vertex = p.vertex(*index);
        vertices.push(VertexRecord::new(
            vertex.id.clone(),
            vertex.kind,
            kept.iter().map(|&g| renumber(g)),
        ));
        if let Some(pairing) = pairings[*index].as_ref() {
            let pairs = pairing
                .iter()
                .filter(|&&(a, b)| kept.contains(&a) && kept.contains(&b))
                .map(|&(a, b)| (renumber(a), renumber(b)))
                .collect();
            restricted.insert(vertex.id.clone(), pairs);
        }
    }
    let pairings = if restricted.is_empty() {
        None
    } else {
        Some(restricted)
    };
    Ok(CombinatorialPolytope::new(m, extras.len(), vertices, pairings)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn octahedron_edges() {
        let p = catalog::build("ideal-octahedron").unwrap();
        let edges = enumerate_faces(&p, 1).unwrap();
        assert_eq!(edges.len(), 12);
        assert!(edges.iter().all(|e| e.vertices.len() == 2));
    }

    #[test]
    fn top_dimension_gives_facets() {
        for name in catalog::list() {
            let p = catalog::build(name).unwrap();
            let top = enumerate_faces(&p, p.dim() - 1).unwrap();
            let singletons: Vec<FacetSet> = (0..p.facet_count())
                .map(|f| FacetSet::from_unsorted(vec![f]))
                .collect();
            assert_eq!(
                top.into_iter().map(|f| f.facet_set).collect::<Vec<_>>(),
                singletons
            );
        }
    }

    #[test]
    fn k_out_of_range() {
        let p = catalog::build("ideal-octahedron").unwrap();
        assert_eq!(
            enumerate_faces(&p, 0),
            Err(FaceError::DimensionOutOfRange { k: 0, max: 2 })
        );
        assert!(enumerate_faces(&p, 3).is_err());
    }

    #[test]
    fn averages() {
        let r = |n: i64| BigRational::from_integer(BigInt::from(n));
        let oct = catalog::build("ideal-octahedron").unwrap();
        assert_eq!(avg_incidence(&oct, 2, 1).unwrap(), r(3));
        assert_eq!(avg_incidence(&oct, 1, 0).unwrap(), r(2));
        let dod = catalog::build("right-angled-dodecahedron").unwrap();
        assert_eq!(avg_incidence(&dod, 2, 1).unwrap(), r(5));
        let cell = catalog::build("ideal-24-cell").unwrap();
        assert_eq!(avg_incidence(&cell, 2, 1).unwrap(), r(3));
        // every octahedral cell has 8 triangles
        assert_eq!(avg_incidence(&cell, 3, 2).unwrap(), r(8));
        // bipyramid: 6 triangles
        let bip = catalog::build("triangular-bipyramid").unwrap();
        assert_eq!(avg_incidence(&bip, 2, 0).unwrap(), r(3));
        assert!(avg_incidence(&bip, 1, 1).is_err());
    }

    #[test]
    fn bipyramid_common_faces() {
        let p = catalog::build("triangular-bipyramid").unwrap();
        assert_eq!(
            minimal_common_face(&p, "N", "S").unwrap(),
            CommonFace::WholePolytope
        );
        let edge = minimal_common_face(&p, "v1", "v2").unwrap();
        assert_eq!(edge.dim(), Some(1));
        assert_eq!(edge.facet_set().len(), 2);
        assert!(matches!(
            minimal_common_face(&p, "v1", "nope"),
            Err(FaceError::UnknownVertex(_))
        ));
        assert!(matches!(
            minimal_common_face(&p, "v1", "v1"),
            Err(FaceError::SameVertex(_))
        ));
    }

    #[test]
    fn octahedron_antipodes_share_nothing() {
        let p = catalog::build("ideal-octahedron").unwrap();
        assert_eq!(
            minimal_common_face(&p, "+x", "-x").unwrap(),
            CommonFace::WholePolytope
        );
    }

    #[test]
    fn induced_facets() {
        let cell = catalog::build("ideal-24-cell").unwrap();
        let facet = &enumerate_faces(&cell, 3).unwrap()[0];
        let oct = induced_polytope(&cell, facet).unwrap();
        assert_eq!((oct.dim(), oct.facet_count(), oct.ideal_count()), (3, 8, 6));

        let dod = catalog::build("right-angled-dodecahedron").unwrap();
        let pent = induced_polytope(&dod, &enumerate_faces(&dod, 2).unwrap()[0]).unwrap();
        assert_eq!((pent.dim(), pent.facet_count(), pent.finite_count()), (2, 5, 5));

        let bip = catalog::build("triangular-bipyramid").unwrap();
        let tri = induced_polytope(&bip, &enumerate_faces(&bip, 2).unwrap()[0]).unwrap();
        assert_eq!(
            (tri.facet_count(), tri.finite_count(), tri.ideal_count()),
            (3, 1, 2)
        );

        let edge = &enumerate_faces(&bip, 1).unwrap()[0];
        assert_eq!(induced_polytope(&bip, edge), Err(FaceError::FaceTooSmall(1)));
    }
}
