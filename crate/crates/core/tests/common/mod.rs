//! Test oracles that share no code with the library algorithms.

#![allow(dead_code)]

use std::collections::BTreeSet;

use itertools::Itertools;
use rapoly_core::{catalog, double, CombinatorialPolytope, VertexKind, VertexRecord};

/// Every facet subset S of size n − k whose vertex set is non-empty and whose
/// closure (facets containing all those vertices) is S itself.
pub fn brute_force_faces(p: &CombinatorialPolytope, k: usize) -> BTreeSet<Vec<usize>> {
    let size = p.dim() - k;
    (0..p.facet_count())
        .combinations(size)
        .filter(|subset| {
            let on: Vec<&VertexRecord> = p
                .vertices()
                .iter()
                .filter(|v| subset.iter().all(|&g| v.facets.contains(g)))
                .collect();
            if on.is_empty() {
                return false;
            }
            let closure: Vec<usize> = (0..p.facet_count())
                .filter(|&g| on.iter().all(|v| v.facets.contains(g)))
                .collect();
            closure == *subset
        })
        .collect()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
}

/// Number of k-faces through a vertex of the given kind in dimension n.
pub fn faces_through(kind: VertexKind, n: usize, k: usize) -> usize {
    match kind {
        VertexKind::Finite => binomial(n, n - k),
        VertexKind::Ideal => binomial(n - 1, n - k) << (n - k),
    }
}

/// The n-simplex: n + 1 finite vertices, vertex i missing facet i.
pub fn simplex(n: usize) -> CombinatorialPolytope {
    let vertices = (0..=n)
        .map(|i| VertexRecord::new(format!("s{i}"), VertexKind::Finite, (0..=n).filter(|&g| g != i)))
        .collect();
    CombinatorialPolytope::new(n, n + 1, vertices, None).unwrap()
}

/// Catalog entries plus every once-doubled variant, labelled.
pub fn catalog_and_doubles() -> Vec<(String, CombinatorialPolytope)> {
    let mut out = Vec::new();
    for entry in catalog::entries() {
        let p = (entry.build)();
        for h in 0..p.facet_count() {
            let (q, _) = double(&p, h).unwrap();
            out.push((format!("{}/double({h})", entry.name), q));
        }
        out.push((entry.name.to_string(), p));
    }
    out
}
