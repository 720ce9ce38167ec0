//! Combinatorial validation. Every rule is evaluated and all violations are
//! reported together.

use std::collections::HashMap;
use std::fmt;

use super::cusp::{self, PairingError};
use super::faces::{enumerate_with, Face};
use super::polytope::{CombinatorialPolytope, VertexKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    VertexDegree,
    DistinctFacetSets,
    FacetCoverage,
    CuspPairing,
    FiniteTangency,
    EdgeSimplicity,
    FaceConnectivity,
    DegreeSum,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Rule::VertexDegree => "vertex-degree",
            Rule::DistinctFacetSets => "distinct-facet-sets",
            Rule::FacetCoverage => "facet-coverage",
            Rule::CuspPairing => "cusp-pairing",
            Rule::FiniteTangency => "finite-tangency",
            Rule::EdgeSimplicity => "edge-simplicity",
            Rule::FaceConnectivity => "face-connectivity",
            Rule::DegreeSum => "degree-sum",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: Rule,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.rule, self.message)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn fired(&self, rule: Rule) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }

    fn push(&mut self, rule: Rule, message: String) {
        self.violations.push(Violation { rule, message });
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut x = x;
        while self.0[x] != root {
            let next = self.0[x];
            self.0[x] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

/// Whether the vertices of a face (or of the whole polytope, for an empty
/// facet set) are connected by the edges lying in it.
fn connected(vertices: &[usize], edges: &[Face], face: &Face) -> bool {
    if vertices.len() <= 1 {
        return true;
    }
    let position: HashMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut uf = UnionFind::new(vertices.len());
    for edge in edges.iter().filter(|e| e.facet_set.is_superset(&face.facet_set)) {
        if let [a, b] = edge.vertices[..] {
            if let (Some(&ia), Some(&ib)) = (position.get(&a), position.get(&b)) {
                uf.union(ia, ib);
            }
        }
    }
    let root = uf.find(0);
    (1..vertices.len()).all(|i| uf.find(i) == root)
}

pub fn validate(p: &CombinatorialPolytope) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = p.dim();

    for v in p.vertices() {
        let expected = v.kind.degree(n);
        if v.facets.len() != expected {
            let formula = match v.kind {
                VertexKind::Finite => format!("n={expected}"),
                VertexKind::Ideal => format!("2(n−1)={expected}"),
            };
            report.push(
                Rule::VertexDegree,
                format!(
                    "{} vertex `{}` has {} ≠ {formula} facets",
                    v.kind,
                    v.id,
                    v.facets.len()
                ),
            );
        }
    }

    let mut by_set: HashMap<_, &str> = HashMap::new();
    for v in p.vertices() {
        if let Some(other) = by_set.insert(&v.facets, v.id.as_str()) {
            report.push(
                Rule::DistinctFacetSets,
                format!(
                    "vertices `{other}` and `{}` have the same facet set {}",
                    v.id, v.facets
                ),
            );
        }
    }

    let facet_vertices = p.facet_vertices();
    for (facet, on) in facet_vertices.iter().enumerate() {
        if on.is_empty() {
            report.push(Rule::FacetCoverage, format!("facet {facet} contains no vertex"));
        }
    }

    for (index, v) in p.vertices().iter().enumerate() {
        match v.kind {
            VertexKind::Ideal => {
                let derived = cusp::derive_vertex_pairing(p, &facet_vertices, index);
                if let Err(err) = &derived {
                    report.push(Rule::CuspPairing, err.to_string());
                }
                if let Some(explicit) = p.explicit_pairings().and_then(|m| m.get(&v.id)) {
                    if let Err(err) = cusp::check_explicit(p, index, explicit, derived.as_ref().ok()) {
                        report.push(Rule::CuspPairing, err.to_string());
                    }
                }
            }
            VertexKind::Finite => {
                if let Some(err @ PairingError::FiniteTangency { .. }) =
                    cusp::finite_tangency(p, &facet_vertices, index)
                {
                    report.push(Rule::FiniteTangency, err.to_string());
                }
            }
        }
    }

    let pairings = cusp::resolve_partial(p);
    let edges = enumerate_with(p, &pairings, 1);
    for edge in &edges {
        let common = edge
            .vertices
            .iter()
            .map(|&i| p.vertex(i).facets.clone())
            .reduce(|a, b| a.intersection(&b))
            .unwrap_or_default();
        if edge.vertices.len() != 2 || common.len() != n - 1 {
            report.push(
                Rule::EdgeSimplicity,
                format!(
                    "edge {} has {} endpoint(s) and lies in {} facets (expected 2 endpoints, n−1={} facets)",
                    edge.facet_set,
                    edge.vertices.len(),
                    common.len(),
                    n - 1
                ),
            );
        }
    }

    for k in 2..n {
        for face in enumerate_with(p, &pairings, k) {
            if !connected(&face.vertices, &edges, &face) {
                report.push(
                    Rule::FaceConnectivity,
                    format!("{k}-face {} has a disconnected vertex–edge graph", face.facet_set),
                );
            }
        }
    }
    let whole = Face {
        facet_set: Default::default(),
        dim: n,
        vertices: (0..p.vertices().len()).collect(),
    };
    if !connected(&whole.vertices, &edges, &whole) {
        report.push(
            Rule::FaceConnectivity,
            "the vertex–edge graph is disconnected".into(),
        );
    }

    if n == 3 {
        let (v_fin, v_inf) = (p.finite_count(), p.ideal_count());
        if 2 * edges.len() != 3 * v_fin + 4 * v_inf {
            report.push(
                Rule::DegreeSum,
                format!(
                    "2·a_1 = {} ≠ 3·v_fin + 4·v_inf = {}",
                    2 * edges.len(),
                    3 * v_fin + 4 * v_inf
                ),
            );
        }
    }

    report
}
