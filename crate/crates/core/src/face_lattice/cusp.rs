//! Cusp pairings: at an ideal vertex the facets come in tangent pairs, one
//! pair per direction of the cube link. Two facets through the vertex are
//! partners exactly when the vertex is the only one they share.

use thiserror::Error;

use super::polytope::{normalize_pairing, CombinatorialPolytope, CuspPairing, Pairings, VertexKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PairingError {
    #[error("cusp link is not a parallelepiped: facet {facet} at ideal vertex `{vertex}` has {partners} tangent partners")]
    NotParallelepiped {
        vertex: String,
        facet: usize,
        partners: usize,
    },
    #[error("facets {first} and {second} meet only at finite vertex `{vertex}`")]
    FiniteTangency {
        vertex: String,
        first: usize,
        second: usize,
    },
    #[error("explicit pairing at `{vertex}` is not a perfect matching on its facets")]
    NotPerfectMatching { vertex: String },
    #[error("explicit pairing at `{vertex}` disagrees with the incidence structure")]
    Disagreement { vertex: String },
}

/// Sorted intersection of two ascending index lists.
pub(crate) fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Pairing at a single ideal vertex, from the shared-vertex rule.
pub(crate) fn derive_vertex_pairing(
    p: &CombinatorialPolytope,
    facet_vertices: &[Vec<usize>],
    index: usize,
) -> Result<CuspPairing, PairingError> {
    let vertex = p.vertex(index);
    let facets: Vec<usize> = vertex.facets.iter().collect();
    let mut pairs = Vec::new();
    for &h in &facets {
        let partners: Vec<usize> = facets
            .iter()
            .copied()
            .filter(|&g| g != h && intersect_sorted(&facet_vertices[g], &facet_vertices[h]) == [index])
            .collect();
        if partners.len() != 1 {
            return Err(PairingError::NotParallelepiped {
                vertex: vertex.id.clone(),
                facet: h,
                partners: partners.len(),
            });
        }
        if h < partners[0] {
            pairs.push((h, partners[0]));
        }
    }
    Ok(normalize_pairing(pairs))
}

/// A facet pair whose only common vertex is the given finite vertex. In
/// dimension 2 the common (n − 2)-face is the vertex itself, so nothing fires.
pub(crate) fn finite_tangency(
    p: &CombinatorialPolytope,
    facet_vertices: &[Vec<usize>],
    index: usize,
) -> Option<PairingError> {
    if p.dim() < 3 {
        return None;
    }
    let vertex = p.vertex(index);
    let facets: Vec<usize> = vertex.facets.iter().collect();
    for (i, &g) in facets.iter().enumerate() {
        for &h in &facets[i + 1..] {
            if intersect_sorted(&facet_vertices[g], &facet_vertices[h]) == [index] {
                return Some(PairingError::FiniteTangency {
                    vertex: vertex.id.clone(),
                    first: g,
                    second: h,
                });
            }
        }
    }
    None
}

/// Derives the cusp pairing of every ideal vertex from the incidences alone.
pub fn derive_cusp_pairing(p: &CombinatorialPolytope) -> Result<Pairings, PairingError> {
    let facet_vertices = p.facet_vertices();
    let mut out = Pairings::new();
    for (index, vertex) in p.vertices().iter().enumerate() {
        match vertex.kind {
            VertexKind::Ideal => {
                let pairing = derive_vertex_pairing(p, &facet_vertices, index)?;
                out.insert(vertex.id.clone(), pairing);
            }
            VertexKind::Finite => {
                if let Some(err) = finite_tangency(p, &facet_vertices, index) {
                    return Err(err);
                }
            }
        }
    }
    Ok(out)
}

/// Checks an explicit pairing against the vertex's facets and the derived one.
pub(crate) fn check_explicit(
    p: &CombinatorialPolytope,
    index: usize,
    explicit: &CuspPairing,
    derived: Option<&CuspPairing>,
) -> Result<(), PairingError> {
    let vertex = p.vertex(index);
    let mut covered: Vec<usize> = explicit.iter().flat_map(|&(a, b)| [a, b]).collect();
    covered.sort_unstable();
    let expected: Vec<usize> = vertex.facets.iter().collect();
    if covered != expected || explicit.iter().any(|&(a, b)| a == b) {
        return Err(PairingError::NotPerfectMatching {
            vertex: vertex.id.clone(),
        });
    }
    match derived {
        Some(d) if d != explicit => Err(PairingError::Disagreement {
            vertex: vertex.id.clone(),
        }),
        _ => Ok(()),
    }
}

/// Pairing per vertex index (`None` for finite vertices, or for ideal vertices
/// where neither an explicit nor a derivable pairing exists). Explicit pairings
/// take precedence.
pub(crate) fn resolve_partial(p: &CombinatorialPolytope) -> Vec<Option<CuspPairing>> {
    let facet_vertices = p.facet_vertices();
    p.vertices()
        .iter()
        .enumerate()
        .map(|(index, v)| {
            if !v.is_ideal() {
                return None;
            }
            if let Some(explicit) = p.explicit_pairings().and_then(|m| m.get(&v.id)) {
                return Some(explicit.clone());
            }
            derive_vertex_pairing(p, &facet_vertices, index).ok()
        })
        .collect()
}

/// Like [`resolve_partial`] but fails if any ideal vertex is left unresolved.
pub(crate) fn resolve(p: &CombinatorialPolytope) -> Result<Vec<Option<CuspPairing>>, PairingError> {
    let partial = resolve_partial(p);
    let facet_vertices = p.facet_vertices();
    for (index, v) in p.vertices().iter().enumerate() {
        if v.is_ideal() && partial[index].is_none() {
            derive_vertex_pairing(p, &facet_vertices, index)?;
        }
    }
    Ok(partial)
}

/// Partner of `facet` in a pairing.
pub(crate) fn partner(pairing: &CuspPairing, facet: usize) -> Option<usize> {
    pairing.iter().find_map(|&(a, b)| {
        if a == facet {
            Some(b)
        } else if b == facet {
            Some(a)
        } else {
            None
        }
    })
}
