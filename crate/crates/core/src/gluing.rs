//! Orthogonal doubling: the union of a polytope with its mirror image in one
//! of its facets, built purely from incidences.
//!
//! With h the gluing facet:
//!
//! * facets adjacent to h are orthogonal to it, so each merges with its
//!   mirror image into one facet; h itself becomes interior;
//! * every other facet, including those merely tangent to h at a cusp, is
//!   duplicated;
//! * finite vertices on h become interior points of edges and disappear,
//!   ideal vertices on h are fixed by the reflection and kept once, and every
//!   vertex off h is duplicated.
//!
//! Repeated doubling along a common facet of two ideal vertices drives their
//! minimal common face up in dimension; see [`reduce_ideal_pair`].

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::face_lattice::{
    partner, resolve_pairings, CombinatorialPolytope, FacetSet, PairingError, Pairings, StructureError,
    VertexKind, VertexRecord,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GluingError {
    #[error("facet {facet} out of range (facet_count {facet_count})")]
    FacetOutOfRange { facet: usize, facet_count: usize },
    #[error("doubling degenerate — input not realizable: vertices `{first}` and `{second}` get the same facet set")]
    Degenerate { first: String, second: String },
    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),
    #[error("vertex `{0}` is not ideal")]
    NotIdeal(String),
    #[error("reduction needs two distinct vertices, got `{0}` twice")]
    SameVertex(String),
    #[error(transparent)]
    Pairing(#[from] PairingError),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// What happens to an input facet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "fate", rename_all = "snake_case")]
pub enum FacetFate {
    /// The gluing facet; interior after doubling.
    Removed,
    /// Adjacent to the gluing facet: original and mirror form one facet.
    Merged { new: usize },
    /// Not adjacent: original and mirror stay distinct.
    KeptPair { original: usize, mirror: usize },
}

/// What happens to an input vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "fate", rename_all = "snake_case")]
pub enum VertexFate {
    /// Finite vertex on the gluing facet.
    Dropped,
    /// Ideal vertex on the gluing facet, kept under its id.
    Identified { id: String },
    /// Vertex off the gluing facet.
    Duplicated { original: String, mirror: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FacetRecord {
    pub facet: usize,
    #[serde(flatten)]
    pub fate: FacetFate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexFateRecord {
    pub id: String,
    #[serde(flatten)]
    pub fate: VertexFate,
}

/// Facet and vertex fates of one doubling.
///
/// Numbering: the surviving originals keep their order (indices above the
/// gluing facet shift down by one), then the mirrors of non-adjacent facets
/// follow in input order. A mirrored vertex gets its id with `'` appended,
/// repeated until the id is unused.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GluingMap {
    pub gluing_facet: usize,
    pub facet_count: usize,
    pub facets: Vec<FacetRecord>,
    pub vertices: Vec<VertexFateRecord>,
}

impl GluingMap {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("gluing map serialization");
        text.push('\n');
        text
    }

    pub fn facet_fate(&self, facet: usize) -> &FacetFate {
        &self.facets[facet].fate
    }

    pub fn vertex_fate(&self, id: &str) -> Option<&VertexFate> {
        self.vertices.iter().find(|r| r.id == id).map(|r| &r.fate)
    }

    pub fn merged_count(&self) -> usize {
        self.facets
            .iter()
            .filter(|r| matches!(r.fate, FacetFate::Merged { .. }))
            .count()
    }
}

/// Facets g ≠ h sharing an (n − 2)-face with h: they share at least two
/// vertices, or (in dimension 2) a finite vertex.
fn adjacency(p: &CombinatorialPolytope, h: usize) -> Vec<bool> {
    let facet_vertices = p.facet_vertices();
    let on_h: HashSet<usize> = facet_vertices[h].iter().copied().collect();
    (0..p.facet_count())
        .map(|g| {
            if g == h {
                return false;
            }
            let shared: Vec<usize> = facet_vertices[g]
                .iter()
                .copied()
                .filter(|v| on_h.contains(v))
                .collect();
            shared.len() >= 2 || shared.iter().any(|&v| !p.vertex(v).is_ideal())
        })
        .collect()
}

fn check_facet(p: &CombinatorialPolytope, h: usize) -> Result<(), GluingError> {
    if h >= p.facet_count() {
        return Err(GluingError::FacetOutOfRange {
            facet: h,
            facet_count: p.facet_count(),
        });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PredictedCounts {
    pub facets: usize,
    pub v_fin: usize,
    pub v_inf: usize,
}

/// Counts of the double without building it:
/// facets 2(F − 1) − m, v_fin 2(v_fin − f_h), v_inf i_h + 2(v_inf − i_h),
/// with m the facets adjacent to h and f_h, i_h the finite and ideal
/// vertices on h.
pub fn predict_counts(p: &CombinatorialPolytope, h: usize) -> Result<PredictedCounts, GluingError> {
    check_facet(p, h)?;
    let m = adjacency(p, h).into_iter().filter(|&a| a).count();
    let on_h = |kind: VertexKind| {
        p.vertices()
            .iter()
            .filter(|v| v.kind == kind && v.facets.contains(h))
            .count()
    };
    let (f_h, i_h) = (on_h(VertexKind::Finite), on_h(VertexKind::Ideal));
    Ok(PredictedCounts {
        facets: 2 * (p.facet_count() - 1) - m,
        v_fin: 2 * (p.finite_count() - f_h),
        v_inf: i_h + 2 * (p.ideal_count() - i_h),
    })
}

/// Doubles `p` along facet `h`.
pub fn double(
    p: &CombinatorialPolytope,
    h: usize,
) -> Result<(CombinatorialPolytope, GluingMap), GluingError> {
    check_facet(p, h)?;
    let pairings = resolve_pairings(p)?;
    let adjacent = adjacency(p, h);

    let survivors = p.facet_count() - 1;
    let mut fates = Vec::with_capacity(p.facet_count());
    let mut next_mirror = survivors;
    for (g, &is_adjacent) in adjacent.iter().enumerate() {
        let original = if g < h { g } else { g.wrapping_sub(1) };
        let fate = if g == h {
            FacetFate::Removed
        } else if is_adjacent {
            FacetFate::Merged { new: original }
        } else {
            next_mirror += 1;
            FacetFate::KeptPair {
                original,
                mirror: next_mirror - 1,
            }
        };
        fates.push(fate);
    }
    let facet_count = next_mirror;

    // image of an input facet on the original and on the mirror side
    let on_original = |g: usize| match fates[g] {
        FacetFate::Merged { new } => new,
        FacetFate::KeptPair { original, .. } => original,
        FacetFate::Removed => unreachable!("gluing facet has no image"),
    };
    let on_mirror = |g: usize| match fates[g] {
        FacetFate::Merged { new } => new,
        FacetFate::KeptPair { mirror, .. } => mirror,
        FacetFate::Removed => unreachable!("gluing facet has no image"),
    };

    let mut taken: HashSet<String> = p.vertices().iter().map(|v| v.id.clone()).collect();
    let mut fresh_id = |id: &str| {
        let mut candidate = format!("{id}'");
        while taken.contains(&candidate) {
            candidate.push('\'');
        }
        taken.insert(candidate.clone());
        candidate
    };

    let mut originals = Vec::new();
    let mut mirrors = Vec::new();
    let mut new_pairings = Pairings::new();
    let mut vertex_fates = Vec::with_capacity(p.vertices().len());

    for (index, v) in p.vertices().iter().enumerate() {
        let pairing = pairings[index].as_ref();
        let fate = if v.facets.contains(h) {
            match v.kind {
                VertexKind::Finite => VertexFate::Dropped,
                VertexKind::Ideal => {
                    let pairing = pairing.expect("resolved ideal pairing");
                    let mut facets = Vec::new();
                    for g in v.facets.iter().filter(|&g| g != h) {
                        facets.push(on_original(g));
                        if matches!(fates[g], FacetFate::KeptPair { .. }) {
                            facets.push(on_mirror(g));
                        }
                    }
                    let pairs = pairing.iter().map(|&(a, b)| {
                        if a == h || b == h {
                            let tangent = partner(pairing, h).expect("h is paired");
                            (on_original(tangent), on_mirror(tangent))
                        } else {
                            (on_original(a), on_original(b))
                        }
                    });
                    new_pairings.insert(v.id.clone(), pairs.collect());
                    originals.push(VertexRecord::new(v.id.clone(), v.kind, facets));
                    VertexFate::Identified { id: v.id.clone() }
                }
            }
        } else {
            let mirror_id = fresh_id(&v.id);
            originals.push(VertexRecord::new(
                v.id.clone(),
                v.kind,
                v.facets.iter().map(on_original),
            ));
            mirrors.push(VertexRecord::new(
                mirror_id.clone(),
                v.kind,
                v.facets.iter().map(on_mirror),
            ));
            if let Some(pairing) = pairing {
                let map = |image: &dyn Fn(usize) -> usize| {
                    pairing.iter().map(|&(a, b)| (image(a), image(b))).collect()
                };
                new_pairings.insert(v.id.clone(), map(&on_original));
                new_pairings.insert(mirror_id.clone(), map(&on_mirror));
            }
            VertexFate::Duplicated {
                original: v.id.clone(),
                mirror: mirror_id,
            }
        };
        vertex_fates.push(VertexFateRecord {
            id: v.id.clone(),
            fate,
        });
    }

    let vertices: Vec<VertexRecord> = originals.into_iter().chain(mirrors).collect();
    let mut seen: HashMap<&FacetSet, &str> = HashMap::new();
    for v in &vertices {
        if let Some(first) = seen.insert(&v.facets, &v.id) {
            return Err(GluingError::Degenerate {
                first: first.to_string(),
                second: v.id.clone(),
            });
        }
    }

    let pairings = (!new_pairings.is_empty()).then_some(new_pairings);
    let doubled = CombinatorialPolytope::new(p.dim(), facet_count, vertices, pairings)?;
    let map = GluingMap {
        gluing_facet: h,
        facet_count,
        facets: fates
            .into_iter()
            .enumerate()
            .map(|(facet, fate)| FacetRecord { facet, fate })
            .collect(),
        vertices: vertex_fates,
    };
    Ok((doubled, map))
}

/// Dimension of the minimal common face of two vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CommonDim {
    Face(usize),
    /// No facet contains both vertices.
    WholePolytope,
}

impl CommonDim {
    fn of(dim: usize, common: usize) -> Self {
        if common == 0 {
            CommonDim::WholePolytope
        } else {
            CommonDim::Face(dim - common)
        }
    }
}

impl fmt::Display for CommonDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CommonDim::Face(d) => write!(f, "{d}"),
            CommonDim::WholePolytope => f.write_str("P"),
        }
    }
}

/// How the gluing facet is picked among the common facets.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FacetChoice {
    #[default]
    SmallestIndex,
    LargestIndex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReductionOptions {
    /// Stop once the minimal common face has at least this dimension.
    pub target_dim: usize,
    pub choice: FacetChoice,
}

impl Default for ReductionOptions {
    fn default() -> Self {
        ReductionOptions {
            target_dim: 4,
            choice: FacetChoice::SmallestIndex,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    /// Gluing facet, indexed in the polytope before this step.
    pub facet: usize,
    pub common_before: usize,
    pub common_after: usize,
    pub dim_before: CommonDim,
    pub dim_after: CommonDim,
    pub facets_after: usize,
    pub v_inf_after: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub u: String,
    pub v: String,
    pub initial_dim: CommonDim,
    pub steps: Vec<ReductionStep>,
    pub result: CombinatorialPolytope,
}

impl ReductionTrace {
    pub fn final_dim(&self) -> CommonDim {
        self.steps.last().map_or(self.initial_dim, |s| s.dim_after)
    }
}

fn common_facets(p: &CombinatorialPolytope, u: &str, v: &str) -> Result<FacetSet, GluingError> {
    let find = |id: &str| {
        p.vertex_index(id)
            .map(|i| p.vertex(i))
            .ok_or_else(|| GluingError::UnknownVertex(id.to_string()))
    };
    Ok(find(u)?.facets.intersection(&find(v)?.facets))
}

/// Doubles along common facets of two ideal vertices until they share none,
/// or until their minimal common face reaches `options.target_dim`. Both
/// vertices lie on every gluing facet, so they are never duplicated and keep
/// their ids; each step removes exactly one common facet.
pub fn reduce_ideal_pair(
    p: &CombinatorialPolytope,
    u: &str,
    v: &str,
    options: ReductionOptions,
) -> Result<ReductionTrace, GluingError> {
    if u == v {
        return Err(GluingError::SameVertex(u.to_string()));
    }
    for id in [u, v] {
        let index = p
            .vertex_index(id)
            .ok_or_else(|| GluingError::UnknownVertex(id.to_string()))?;
        if !p.vertex(index).is_ideal() {
            return Err(GluingError::NotIdeal(id.to_string()));
        }
    }
    let n = p.dim();
    let mut current = p.clone();
    let mut common = common_facets(&current, u, v)?;
    let initial_dim = CommonDim::of(n, common.len());
    let mut steps = Vec::new();
    while !common.is_empty() && n - common.len() < options.target_dim {
        let facet = match options.choice {
            FacetChoice::SmallestIndex => common.iter().next(),
            FacetChoice::LargestIndex => common.iter().last(),
        }
        .expect("non-empty common set");
        let (next, _) = double(&current, facet)?;
        let after = common_facets(&next, u, v)?;
        steps.push(ReductionStep {
            facet,
            common_before: common.len(),
            common_after: after.len(),
            dim_before: CommonDim::of(n, common.len()),
            dim_after: CommonDim::of(n, after.len()),
            facets_after: next.facet_count(),
            v_inf_after: next.ideal_count(),
        });
        current = next;
        common = after;
    }
    Ok(ReductionTrace {
        u: u.to_string(),
        v: v.to_string(),
        initial_dim,
        steps,
        result: current,
    })
}

/// Facet fates grouped for summaries: (merged, kept pairs).
pub fn fate_counts(map: &GluingMap) -> BTreeMap<&'static str, usize> {
    let mut out = BTreeMap::new();
    for r in &map.facets {
        let key = match r.fate {
            FacetFate::Removed => "removed",
            FacetFate::Merged { .. } => "merged",
            FacetFate::KeptPair { .. } => "kept_pair",
        };
        *out.entry(key).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::face_lattice::{face_vector, validate};

    fn counts(p: &CombinatorialPolytope) -> (usize, usize, usize) {
        (p.facet_count(), p.finite_count(), p.ideal_count())
    }

    #[test]
    fn octahedron_double() {
        let p = catalog::build("ideal-octahedron").unwrap();
        let (q, map) = double(&p, 0).unwrap();
        assert_eq!(counts(&q), (11, 0, 9));
        assert!(validate(&q).is_valid(), "{:?}", validate(&q).violations);
        assert_eq!(face_vector(&q).unwrap().a[1], 18);
        assert_eq!(map.merged_count(), 3);
        assert_eq!(fate_counts(&map)["kept_pair"], 4);
    }

    #[test]
    fn bipyramid_double() {
        let p = catalog::build("triangular-bipyramid").unwrap();
        let (q, map) = double(&p, 0).unwrap();
        assert_eq!(counts(&q), (7, 2, 4));
        assert_eq!(map.vertex_fate("N"), Some(&VertexFate::Dropped));
        assert_eq!(
            map.vertex_fate("v1"),
            Some(&VertexFate::Identified { id: "v1".into() })
        );
        assert_eq!(
            map.vertex_fate("v3"),
            Some(&VertexFate::Duplicated {
                original: "v3".into(),
                mirror: "v3'".into()
            })
        );
        // L31 is tangent to U12 at v1: duplicated, not merged
        assert!(matches!(map.facet_fate(5), FacetFate::KeptPair { .. }));
        assert!(validate(&q).is_valid());
        let v1 = &q.vertices()[q.vertex_index("v1").unwrap()];
        assert_eq!(v1.facets.len(), 4);
    }

    #[test]
    fn predictions() {
        let cases = [
            ("ideal-octahedron", (11, 0, 9)),
            ("triangular-bipyramid", (7, 2, 4)),
            ("right-angled-dodecahedron", (17, 30, 0)),
            ("ideal-24-cell", (38, 0, 42)),
        ];
        for (name, expected) in cases {
            let p = catalog::build(name).unwrap();
            let c = predict_counts(&p, 0).unwrap();
            assert_eq!((c.facets, c.v_fin, c.v_inf), expected, "{name}");
        }
    }

    #[test]
    fn bad_facet() {
        let p = catalog::build("ideal-octahedron").unwrap();
        assert_eq!(
            double(&p, 99).unwrap_err(),
            GluingError::FacetOutOfRange {
                facet: 99,
                facet_count: 8
            }
        );
        assert!(predict_counts(&p, 8).is_err());
    }

    #[test]
    fn mirror_ids_stay_unique_across_doublings() {
        let p = catalog::build("ideal-octahedron").unwrap();
        let (q, _) = double(&p, 0).unwrap();
        let (r, _) = double(&q, q.facet_count() - 1).unwrap();
        let ids: HashSet<&str> = r.vertices().iter().map(|v| v.id.as_str()).collect();
        assert_eq!(ids.len(), r.vertices().len());
        assert!(validate(&r).is_valid());
    }

    #[test]
    fn degenerate_double_is_an_error() {
        // a and d share a facet set, so their images collide
        let p = CombinatorialPolytope::new(
            2,
            3,
            vec![
                VertexRecord::new("a", VertexKind::Finite, [0, 1]),
                VertexRecord::new("b", VertexKind::Finite, [1, 2]),
                VertexRecord::new("c", VertexKind::Finite, [2, 0]),
                VertexRecord::new("d", VertexKind::Finite, [0, 1]),
            ],
            None,
        )
        .unwrap();
        assert!(matches!(double(&p, 2), Err(GluingError::Degenerate { .. })));
    }

    #[test]
    fn reduction_on_octahedron() {
        let p = catalog::build("ideal-octahedron").unwrap();
        let trace = reduce_ideal_pair(&p, "+x", "+y", ReductionOptions::default()).unwrap();
        assert_eq!(trace.initial_dim, CommonDim::Face(1));
        assert_eq!(trace.steps.len(), 2);
        assert_eq!(trace.final_dim(), CommonDim::WholePolytope);
        assert_eq!(trace.steps[0].dim_after, CommonDim::Face(2));

        let none = reduce_ideal_pair(&p, "+x", "-x", ReductionOptions::default()).unwrap();
        assert!(none.steps.is_empty());
        assert_eq!(none.result, p);
    }

    #[test]
    fn reduction_rejects_finite_and_unknown() {
        let p = catalog::build("triangular-bipyramid").unwrap();
        let opts = ReductionOptions::default();
        assert_eq!(
            reduce_ideal_pair(&p, "N", "v1", opts),
            Err(GluingError::NotIdeal("N".into()))
        );
        assert_eq!(
            reduce_ideal_pair(&p, "v1", "zz", opts),
            Err(GluingError::UnknownVertex("zz".into()))
        );
        assert!(matches!(
            reduce_ideal_pair(&p, "v1", "v1", opts),
            Err(GluingError::SameVertex(_))
        ));
    }

    #[test]
    fn largest_index_choice() {
        let p = catalog::build("ideal-octahedron").unwrap();
        let opts = ReductionOptions {
            choice: FacetChoice::LargestIndex,
            ..Default::default()
        };
        let trace = reduce_ideal_pair(&p, "+x", "+y", opts).unwrap();
        assert_eq!(trace.steps.len(), 2);
        assert_eq!(trace.steps[0].facet, 4);
    }

    #[test]
    fn sidecar_json() {
        let p = catalog::build("triangular-bipyramid").unwrap();
        let (_, map) = double(&p, 0).unwrap();
        let json = map.to_json();
        assert!(json.contains("\"fate\": \"removed\""));
        assert!(json.contains("\"fate\": \"kept_pair\""));
        assert!(json.contains("\"mirror\": \"v3'\""));
    }
}
