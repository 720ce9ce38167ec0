//! Hard-coded combinatorial models of known right-angled polytopes.
//!
//! | name                        | n | v_fin | v_inf | face vector       |
//! |-----------------------------|---|-------|-------|-------------------|
//! | `ideal-24-cell`             | 4 | 0     | 24    | (24, 96, 96, 24)  |
//! | `ideal-octahedron`          | 3 | 0     | 6     | (6, 12, 8)        |
//! | `right-angled-dodecahedron` | 3 | 20    | 0     | (20, 30, 12)      |
//! | `triangular-bipyramid`      | 3 | 2     | 3     | (5, 9, 6)         |
//!
//! [`three_cube`] is a negative fixture: a locally valid lattice that no
//! right-angled hyperbolic polytope realizes.

use itertools::Itertools;
use thiserror::Error;

use crate::face_lattice::{CombinatorialPolytope, FaceVector, VertexKind, VertexRecord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown catalog entry `{0}` (known: {known})", known = list().join(", "))]
    UnknownName(String),
}

pub struct CatalogEntry {
    pub name: &'static str,
    pub build: fn() -> CombinatorialPolytope,
    pub dim: usize,
    /// a_0..a_{n−1}
    pub face_counts: &'static [usize],
    pub v_fin: usize,
    pub v_inf: usize,
    pub provenance: &'static str,
}

impl CatalogEntry {
    pub fn expected_face_vector(&self) -> FaceVector {
        FaceVector {
            a: self.face_counts.to_vec(),
            v_fin: self.v_fin,
            v_inf: self.v_inf,
        }
    }
}

const ENTRIES: [CatalogEntry; 4] = [
    CatalogEntry {
        name: "ideal-24-cell",
        build: ideal_24_cell,
        dim: 4,
        face_counts: &[24, 96, 96, 24],
        v_fin: 0,
        v_inf: 24,
        provenance: "vertices are the 24 roots ±e_i ± e_j of D4; facets are the 24 octahedral cells with outer normals ±2e_i and (±1, ±1, ±1, ±1)",
    },
    CatalogEntry {
        name: "ideal-octahedron",
        build: ideal_octahedron,
        dim: 3,
        face_counts: &[6, 12, 8],
        v_fin: 0,
        v_inf: 6,
        provenance: "vertices ±e_i, one triangular face per sign vector",
    },
    CatalogEntry {
        name: "right-angled-dodecahedron",
        build: right_angled_dodecahedron,
        dim: 3,
        face_counts: &[20, 30, 12],
        v_fin: 20,
        v_inf: 0,
        provenance: "compact right-angled dodecahedron; twelve pentagons from a fixed face list",
    },
    CatalogEntry {
        name: "triangular-bipyramid",
        build: triangular_bipyramid,
        dim: 3,
        face_counts: &[5, 9, 6],
        v_fin: 2,
        v_inf: 3,
        provenance: "finite apexes N and S over an ideal equator v1, v2, v3; the smallest-volume right-angled 3-polytope of finite volume",
    },
];

/// Entry names in lexicographic order.
pub fn list() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.name).collect()
}

pub fn entries() -> &'static [CatalogEntry] {
    &ENTRIES
}

pub fn entry(name: &str) -> Result<&'static CatalogEntry, CatalogError> {
    ENTRIES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| CatalogError::UnknownName(name.to_string()))
}

pub fn build(name: &str) -> Result<CombinatorialPolytope, CatalogError> {
    entry(name).map(|e| (e.build)())
}

fn assemble(dim: usize, facet_count: usize, vertices: Vec<VertexRecord>) -> CombinatorialPolytope {
    CombinatorialPolytope::new(dim, facet_count, vertices, None).expect("catalog entries are well-formed")
}

const AXES: [char; 4] = ['x', 'y', 'z', 'w'];

fn sign_char(negative: bool) -> char {
    if negative {
        '-'
    } else {
        '+'
    }
}

/// Facet `f` has sign vector given by the bits of `f` (bit set = negative).
pub fn ideal_octahedron() -> CombinatorialPolytope {
    let mut vertices = Vec::new();
    for (axis, name) in AXES.iter().take(3).enumerate() {
        for negative in [false, true] {
            let facets = (0..8).filter(|f| (f >> axis & 1 == 1) == negative);
            let id = format!("{}{name}", sign_char(negative));
            vertices.push(VertexRecord::new(id, VertexKind::Ideal, facets));
        }
    }
    assemble(3, 8, vertices)
}

const DODECAHEDRON_FACES: [[usize; 5]; 12] = [
    [0, 1, 2, 3, 4],
    [0, 5, 6, 7, 1],
    [1, 7, 8, 9, 2],
    [2, 9, 10, 11, 3],
    [3, 11, 12, 13, 4],
    [4, 13, 14, 5, 0],
    [5, 14, 15, 16, 6],
    [6, 16, 17, 8, 7],
    [8, 17, 18, 10, 9],
    [10, 18, 19, 12, 11],
    [12, 19, 15, 14, 13],
    [15, 19, 18, 17, 16],
];

pub fn right_angled_dodecahedron() -> CombinatorialPolytope {
    let vertices = (0..20)
        .map(|v| {
            let facets = (0..12).filter(|&f| DODECAHEDRON_FACES[f].contains(&v));
            VertexRecord::new(format!("v{v}"), VertexKind::Finite, facets)
        })
        .collect();
    assemble(3, 12, vertices)
}

/// Facets 0..3 are the upper triangles N-v1-v2, N-v2-v3, N-v3-v1; facets 3..6
/// the lower ones through S in the same order.
pub fn triangular_bipyramid() -> CombinatorialPolytope {
    let vertices = vec![
        VertexRecord::new("N", VertexKind::Finite, [0, 1, 2]),
        VertexRecord::new("S", VertexKind::Finite, [3, 4, 5]),
        VertexRecord::new("v1", VertexKind::Ideal, [0, 2, 3, 5]),
        VertexRecord::new("v2", VertexKind::Ideal, [0, 1, 3, 4]),
        VertexRecord::new("v3", VertexKind::Ideal, [1, 2, 4, 5]),
    ];
    assemble(3, 6, vertices)
}

/// Facets 0..8 are the cells with normal ±2e_i (index 2i, +1 if negative);
/// facets 8..24 the cells with normal (±1, ±1, ±1, ±1), sign bits in the
/// offset from 8. Vertex s_a e_a + s_b e_b lies on a cell when its dot
/// product with the normal is 2.
pub fn ideal_24_cell() -> CombinatorialPolytope {
    let mut vertices = Vec::new();
    for (a, b) in (0..4).tuple_combinations() {
        for (neg_a, neg_b) in [(false, false), (false, true), (true, false), (true, true)] {
            let mut facets = vec![2 * a + neg_a as usize, 2 * b + neg_b as usize];
            facets.extend(
                (0..16)
                    .filter(|m| (m >> a & 1 == 1) == neg_a && (m >> b & 1 == 1) == neg_b)
                    .map(|m| 8 + m),
            );
            let id = format!("{}{}{}{}", sign_char(neg_a), AXES[a], sign_char(neg_b), AXES[b]);
            vertices.push(VertexRecord::new(id, VertexKind::Ideal, facets));
        }
    }
    assemble(4, 24, vertices)
}

/// Incidences of the combinatorial 3-cube: 8 simple vertices, 6 square facets.
/// Facet 2i is x_i = 0 and 2i + 1 is x_i = 1.
pub fn three_cube() -> CombinatorialPolytope {
    let vertices = (0..8)
        .map(|bits: usize| {
            let id: String = (0..3)
                .map(|i| if bits >> i & 1 == 1 { '1' } else { '0' })
                .collect();
            VertexRecord::new(id, VertexKind::Finite, (0..3).map(|i| 2 * i + (bits >> i & 1)))
        })
        .collect();
    assemble(3, 6, vertices)
}
