//! The combinatorial model: vertices with their incident facets, plus optional
//! cusp pairings at ideal vertices.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Whether a vertex lies inside hyperbolic space or on the absolute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Finite,
    Ideal,
}

impl VertexKind {
    /// Number of facets through a vertex of this kind in dimension `dim`.
    pub fn degree(self, dim: usize) -> usize {
        match self {
            VertexKind::Finite => dim,
            VertexKind::Ideal => 2 * (dim - 1),
        }
    }
}

impl fmt::Display for VertexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexKind::Finite => f.write_str("finite"),
            VertexKind::Ideal => f.write_str("ideal"),
        }
    }
}

/// A sorted, duplicate-free set of facet indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FacetSet(Vec<usize>);

impl FacetSet {
    pub fn new() -> Self {
        FacetSet(Vec::new())
    }

    /// Builds a set from arbitrary indices, sorting and removing duplicates.
    pub fn from_unsorted(mut facets: Vec<usize>) -> Self {
        facets.sort_unstable();
        facets.dedup();
        FacetSet(facets)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, facet: usize) -> bool {
        self.0.binary_search(&facet).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn is_superset(&self, other: &FacetSet) -> bool {
        other.iter().all(|f| self.contains(f))
    }

    pub fn intersection(&self, other: &FacetSet) -> FacetSet {
        FacetSet(self.iter().filter(|&f| other.contains(f)).collect())
    }

    pub fn without(&self, facet: usize) -> FacetSet {
        FacetSet(self.iter().filter(|&f| f != facet).collect())
    }
}

impl FromIterator<usize> for FacetSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        FacetSet::from_unsorted(iter.into_iter().collect())
    }
}

impl fmt::Display for FacetSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, facet) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{facet}")?;
        }
        f.write_str("}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexRecord {
    pub id: String,
    pub kind: VertexKind,
    pub facets: FacetSet,
}

impl VertexRecord {
    pub fn new(id: impl Into<String>, kind: VertexKind, facets: impl IntoIterator<Item = usize>) -> Self {
        VertexRecord {
            id: id.into(),
            kind,
            facets: facets.into_iter().collect(),
        }
    }

    pub fn is_ideal(&self) -> bool {
        self.kind == VertexKind::Ideal
    }
}

/// A perfect matching on the facets through one ideal vertex. Each pair is
/// stored with the smaller index first, pairs sorted.
pub type CuspPairing = Vec<(usize, usize)>;

/// Pairings keyed by vertex id.
pub type Pairings = BTreeMap<String, CuspPairing>;

pub(crate) fn normalize_pairing(pairs: impl IntoIterator<Item = (usize, usize)>) -> CuspPairing {
    let mut out: CuspPairing = pairs
        .into_iter()
        .map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
        .collect();
    out.sort_unstable();
    out
}

/// Malformed input, as opposed to a well-formed input that fails validation.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("dimension {0} is below 2")]
    DimensionTooSmall(usize),
    #[error("facet_count {facet_count} is below dim + 1 = {min}")]
    TooFewFacets { facet_count: usize, min: usize },
    #[error("vertex `{vertex}` references facet {facet}, but facet_count is {facet_count}")]
    FacetOutOfRange {
        vertex: String,
        facet: usize,
        facet_count: usize,
    },
    #[error("vertex `{vertex}` lists facet {facet} more than once")]
    RepeatedFacet { vertex: String, facet: usize },
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertexId(String),
    #[error("pairing given for unknown vertex `{0}`")]
    UnknownPairingVertex(String),
    #[error("pairing given for finite vertex `{0}`")]
    PairingOnFiniteVertex(String),
    #[error("pairing at `{vertex}` references facet {facet} out of range")]
    PairingFacetOutOfRange { vertex: String, facet: usize },
    #[error("malformed polytope file: {0}")]
    Parse(String),
}

/// An edge-simple polytope described purely by vertex–facet incidences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinatorialPolytope {
    dim: usize,
    facet_count: usize,
    vertices: Vec<VertexRecord>,
    pairings: Option<Pairings>,
}

impl CombinatorialPolytope {
    /// Checks structural well-formedness only; combinatorial rules are left
    /// to [`validate`](crate::face_lattice::validate).
    pub fn new(
        dim: usize,
        facet_count: usize,
        vertices: Vec<VertexRecord>,
        pairings: Option<Pairings>,
    ) -> Result<Self, StructureError> {
        if dim < 2 {
            return Err(StructureError::DimensionTooSmall(dim));
        }
        if facet_count < dim + 1 {
            return Err(StructureError::TooFewFacets {
                facet_count,
                min: dim + 1,
            });
        }
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.id.as_str()) {
                return Err(StructureError::DuplicateVertexId(v.id.clone()));
            }
            if let Some(facet) = v.facets.iter().find(|&f| f >= facet_count) {
                return Err(StructureError::FacetOutOfRange {
                    vertex: v.id.clone(),
                    facet,
                    facet_count,
                });
            }
        }
        let mut pairings = pairings;
        if let Some(map) = pairings.as_mut() {
            for (id, pairs) in map.iter_mut() {
                let vertex = vertices
                    .iter()
                    .find(|v| &v.id == id)
                    .ok_or_else(|| StructureError::UnknownPairingVertex(id.clone()))?;
                if !vertex.is_ideal() {
                    return Err(StructureError::PairingOnFiniteVertex(id.clone()));
                }
                if let Some(&(a, b)) = pairs.iter().find(|&&(a, b)| a >= facet_count || b >= facet_count) {
                    return Err(StructureError::PairingFacetOutOfRange {
                        vertex: id.clone(),
                        facet: a.max(b),
                    });
                }
                *pairs = normalize_pairing(pairs.iter().copied());
            }
        }
        Ok(CombinatorialPolytope {
            dim,
            facet_count,
            vertices,
            pairings,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facet_count(&self) -> usize {
        self.facet_count
    }

    pub fn vertices(&self) -> &[VertexRecord] {
        &self.vertices
    }

    pub fn vertex(&self, index: usize) -> &VertexRecord {
        &self.vertices[index]
    }

    /// Explicit pairings from the input, if any were given.
    pub fn explicit_pairings(&self) -> Option<&Pairings> {
        self.pairings.as_ref()
    }

    pub fn with_pairings(mut self, pairings: Option<Pairings>) -> Self {
        self.pairings = pairings.map(|map| {
            map.into_iter()
                .map(|(id, pairs)| (id, normalize_pairing(pairs)))
                .collect()
        });
        self
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn finite_count(&self) -> usize {
        self.vertices.iter().filter(|v| !v.is_ideal()).count()
    }

    pub fn ideal_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.is_ideal()).count()
    }

    /// For each facet, the indices of the vertices lying on it.
    pub fn facet_vertices(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.facet_count];
        for (i, v) in self.vertices.iter().enumerate() {
            for f in v.facets.iter() {
                out[f].push(i);
            }
        }
        out
    }

    /// Vertices incident to both facets.
    pub fn shared_vertices(&self, g: usize, h: usize) -> Vec<usize> {
        self.vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| v.facets.contains(g) && v.facets.contains(h))
            .map(|(i, _)| i)
            .collect()
    }

    /// Vertices whose facet sets contain every facet of `set`.
    pub fn vertices_on(&self, set: &FacetSet) -> Vec<usize> {
        self.vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| v.facets.is_superset(set))
            .map(|(i, _)| i)
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexFile {
    id: String,
    #[serde(rename = "type")]
    kind: VertexKind,
    facets: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolytopeFile {
    dim: usize,
    facet_count: usize,
    vertices: Vec<VertexFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pairings: Option<BTreeMap<String, Vec<[usize; 2]>>>,
}

impl CombinatorialPolytope {
    /// Parses the JSON polytope file format.
    pub fn from_json(text: &str) -> Result<Self, StructureError> {
        let file: PolytopeFile =
            serde_json::from_str(text).map_err(|e| StructureError::Parse(e.to_string()))?;
        let mut vertices = Vec::with_capacity(file.vertices.len());
        for v in file.vertices {
            let mut facets = v.facets.clone();
            facets.sort_unstable();
            if let Some(w) = facets.windows(2).find(|w| w[0] == w[1]) {
                return Err(StructureError::RepeatedFacet {
                    vertex: v.id,
                    facet: w[0],
                });
            }
            vertices.push(VertexRecord::new(v.id, v.kind, facets));
        }
        let pairings = file.pairings.map(|map| {
            map.into_iter()
                .map(|(id, pairs)| (id, pairs.into_iter().map(|[a, b]| (a, b)).collect()))
                .collect()
        });
        CombinatorialPolytope::new(file.dim, file.facet_count, vertices, pairings)
    }

    /// Serializes to the JSON polytope file format. One vertex per line,
    /// facets ascending, pairings keyed by id in sorted order.
    pub fn to_json(&self) -> String {
        let quote = |s: &str| serde_json::to_string(s).expect("string serialization");
        let list = |items: &mut dyn Iterator<Item = String>| items.collect::<Vec<_>>().join(", ");
        let mut out = String::new();
        out.push_str("{\n");
        out.push_str(&format!("  \"dim\": {},\n", self.dim));
        out.push_str(&format!("  \"facet_count\": {},\n", self.facet_count));
        out.push_str("  \"vertices\": [\n");
        for (i, v) in self.vertices.iter().enumerate() {
            out.push_str(&format!(
                "    {{\"id\": {}, \"type\": \"{}\", \"facets\": [{}]}}",
                quote(&v.id),
                v.kind,
                list(&mut v.facets.iter().map(|f| f.to_string()))
            ));
            out.push_str(if i + 1 < self.vertices.len() { ",\n" } else { "\n" });
        }
        out.push_str("  ]");
        if let Some(map) = &self.pairings {
            out.push_str(",\n  \"pairings\": {");
            if map.is_empty() {
                out.push('}');
            } else {
                out.push('\n');
                for (i, (id, pairs)) in map.iter().enumerate() {
                    out.push_str(&format!(
                        "    {}: [{}]",
                        quote(id),
                        list(&mut pairs.iter().map(|(a, b)| format!("[{a}, {b}]")))
                    ));
                    out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
                }
                out.push_str("  }");
            }
        }
        out.push_str("\n}\n");
        out
    }
}
