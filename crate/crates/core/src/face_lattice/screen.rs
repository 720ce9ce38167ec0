//! Necessary conditions for realizability as a right-angled hyperbolic
//! polytope of finite volume. Failing any of them excludes the input; passing
//! all of them certifies nothing.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::cusp;
use super::faces::{avg_incidence, enumerate_with, induced_polytope, FaceError};
use super::polytope::{CombinatorialPolytope, FacetSet};
use super::validate::validate;
use crate::bounds::{nk_bound, CascadeTable};

/// Fewest 2-faces of a right-angled 3-polytope with at most one ideal vertex.
pub const NONAKA_MIN_FACETS: usize = 12;

/// A 3-face (or the 3-polytope itself) with at most one ideal vertex and
/// fewer than twelve 2-faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonakaWitness {
    /// Facets cutting out the 3-face; empty when the polytope itself is 3-dimensional.
    pub face: FacetSet,
    pub v_inf: usize,
    pub a2: usize,
}

/// Outcome of the Nonaka condition on one 3-face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonakaCheck {
    pub face: FacetSet,
    pub v_inf: usize,
    pub a2: usize,
}

impl NonakaCheck {
    pub fn applies(&self) -> bool {
        self.v_inf <= 1
    }

    pub fn fails(&self) -> bool {
        self.applies() && self.a2 < NONAKA_MIN_FACETS
    }
}

/// Face counts of every 3-face (or of the polytope itself in dimension 3).
pub fn nonaka_checks(p: &CombinatorialPolytope) -> Result<Vec<NonakaCheck>, FaceError> {
    let n = p.dim();
    if n < 3 {
        return Ok(Vec::new());
    }
    if n == 3 {
        return Ok(vec![NonakaCheck {
            face: FacetSet::new(),
            v_inf: p.ideal_count(),
            a2: p.facet_count(),
        }]);
    }
    let pairings = cusp::resolve(p)?;
    enumerate_with(p, &pairings, 3)
        .iter()
        .map(|face| {
            let sub = induced_polytope(p, face)?;
            Ok(NonakaCheck {
                face: face.facet_set.clone(),
                v_inf: sub.ideal_count(),
                a2: sub.facet_count(),
            })
        })
        .collect()
}

pub fn nonaka_screen(p: &CombinatorialPolytope) -> Result<Vec<NonakaWitness>, FaceError> {
    Ok(nonaka_checks(p)?
        .into_iter()
        .filter(NonakaCheck::fails)
        .map(|c| NonakaWitness {
            face: c.face,
            v_inf: c.v_inf,
            a2: c.a2,
        })
        .collect())
}

/// One average-incidence value against its bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NkCheck {
    pub k: usize,
    pub l: usize,
    pub average: BigRational,
    pub bound: BigRational,
}

impl NkCheck {
    pub fn violated(&self) -> bool {
        self.average >= self.bound
    }
}

impl fmt::Display for NkCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.violated() { "≥" } else { "<" };
        write!(
            f,
            "a_{}^{} = {} {rel} {}",
            self.k, self.l, self.average, self.bound
        )
    }
}

/// Evaluates every pair 1 ≤ l < k ≤ ⌈n/2⌉ (l = 0 too when `include_l0`).
pub fn nk_checks(p: &CombinatorialPolytope, include_l0: bool) -> Result<Vec<NkCheck>, FaceError> {
    let n = p.dim();
    let mut out = Vec::new();
    if n < 3 {
        return Ok(out);
    }
    let first_l = if include_l0 { 0 } else { 1 };
    for k in 1..=n.div_ceil(2) {
        for l in first_l..k {
            let bound = nk_bound(n, k, l).expect("pair within domain");
            let average = avg_incidence(p, k, l)?;
            out.push(NkCheck { k, l, average, bound });
        }
    }
    Ok(out)
}

/// Pairs (k, l) where the average incidence reaches the strict bound.
pub fn nk_screen(p: &CombinatorialPolytope, include_l0: bool) -> Result<Vec<(usize, usize)>, FaceError> {
    Ok(nk_checks(p, include_l0)?
        .into_iter()
        .filter(NkCheck::violated)
        .map(|c| (c.k, c.l))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ScreenRule {
    /// No right-angled polytope of finite volume exists for n ≥ 13.
    DimensionAtLeast13,
    /// No compact right-angled polytope exists for n ≥ 5.
    CompactInDimension5Plus,
    /// No ideal right-angled polytope exists for n ≥ 7.
    IdealInDimension7Plus,
    /// Every right-angled 3-polytope has an even number of finite vertices.
    OddFiniteVertices3d,
    Nonaka,
    NikulinKhovanskii,
    FacetCount,
    IdealVertexCount,
    FiniteVertexCount,
    /// The input does not validate; face-based rules were skipped.
    InvalidLattice,
}

impl fmt::Display for ScreenRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScreenRule::DimensionAtLeast13 => "dimension ≥ 13",
            ScreenRule::CompactInDimension5Plus => "compact in dimension ≥ 5",
            ScreenRule::IdealInDimension7Plus => "ideal in dimension ≥ 7",
            ScreenRule::OddFiniteVertices3d => "odd finite-vertex count in dimension 3",
            ScreenRule::Nonaka => "Nonaka",
            ScreenRule::NikulinKhovanskii => "Nikulin–Khovanskii",
            ScreenRule::FacetCount => "facet-count lower bound",
            ScreenRule::IdealVertexCount => "ideal-vertex lower bound",
            ScreenRule::FiniteVertexCount => "finite-vertex lower bound",
            ScreenRule::InvalidLattice => "invalid lattice",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScreenFinding {
    pub rule: ScreenRule,
    pub detail: String,
}

impl fmt::Display for ScreenFinding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.rule, self.detail)
    }
}

/// Every fired rule. Empty means "not excluded by these criteria".
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScreenReport {
    pub findings: Vec<ScreenFinding>,
}

impl ScreenReport {
    pub fn is_empty(&self) -> bool {
        self.findings.is_empty()
    }

    pub fn fired(&self, rule: ScreenRule) -> bool {
        self.findings.iter().any(|f| f.rule == rule)
    }

    fn push(&mut self, rule: ScreenRule, detail: String) {
        self.findings.push(ScreenFinding { rule, detail });
    }
}

/// Runs every screening rule. The counting rules only need vertex kinds and
/// the facet count; the Nonaka and Nikulin–Khovanskii rules need a valid
/// lattice and are replaced by an `InvalidLattice` finding otherwise.
pub fn realizability_screen(
    p: &CombinatorialPolytope,
    table: &CascadeTable,
) -> Result<ScreenReport, FaceError> {
    let mut report = ScreenReport::default();
    let n = p.dim();
    let (v_fin, v_inf) = (p.finite_count(), p.ideal_count());

    if n >= 13 {
        report.push(
            ScreenRule::DimensionAtLeast13,
            format!("right-angled polytopes of finite volume do not exist for n ≥ 13 (n = {n})"),
        );
    }
    if n >= 5 && v_inf == 0 {
        report.push(
            ScreenRule::CompactInDimension5Plus,
            format!("compact right-angled polytopes do not exist for n ≥ 5 (n = {n}, v_inf = 0)"),
        );
    }
    if n >= 7 && v_fin == 0 {
        report.push(
            ScreenRule::IdealInDimension7Plus,
            format!("ideal right-angled polytopes do not exist for n ≥ 7 (n = {n}, v_fin = 0)"),
        );
    }
    if n == 3 && v_fin % 2 == 1 {
        report.push(
            ScreenRule::OddFiniteVertices3d,
            format!("v_fin = {v_fin} is odd, but 2·a_1 = 3·v_fin + 4·v_inf forces it even"),
        );
    }

    if let Some(row) = table.row(n) {
        if BigInt::from(p.facet_count()) < row.a_min {
            report.push(
                ScreenRule::FacetCount,
                format!("{} facets < 1 + ν_{} = {}", p.facet_count(), n - 1, row.a_min),
            );
        }
        if BigInt::from(v_inf) < row.v_inf_min {
            report.push(
                ScreenRule::IdealVertexCount,
                format!("v_inf = {v_inf} < {}", row.v_inf_min),
            );
        }
        if let Some(min) = &row.v_fin_min {
            if BigInt::from(v_fin) < *min {
                report.push(ScreenRule::FiniteVertexCount, format!("v_fin = {v_fin} < {min}"));
            }
        }
    }

    let validation = validate(p);
    if !validation.is_valid() {
        report.push(
            ScreenRule::InvalidLattice,
            format!(
                "{} validation violation(s); face-based rules skipped",
                validation.violations.len()
            ),
        );
        return Ok(report);
    }

    for w in nonaka_screen(p)? {
        let face = if w.face.is_empty() {
            "the polytope".to_string()
        } else {
            format!("3-face {}", w.face)
        };
        report.push(
            ScreenRule::Nonaka,
            format!("{face} has v_inf = {} ≤ 1 and a_2 = {} < 12", w.v_inf, w.a2),
        );
    }
    for check in nk_checks(p, false)?.into_iter().filter(NkCheck::violated) {
        report.push(ScreenRule::NikulinKhovanskii, check.to_string());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{compute_tables, BoundsConfig};
    use crate::catalog;

    #[test]
    fn dodecahedron_passes_at_the_boundary() {
        let p = catalog::build("right-angled-dodecahedron").unwrap();
        let checks = nonaka_checks(&p).unwrap();
        assert_eq!(checks.len(), 1);
        assert!(checks[0].applies());
        assert_eq!(checks[0].a2, 12);
        assert!(nonaka_screen(&p).unwrap().is_empty());
    }

    #[test]
    fn cube_is_flagged() {
        let cube = catalog::three_cube();
        assert!(validate(&cube).is_valid());
        let witnesses = nonaka_screen(&cube).unwrap();
        assert_eq!(witnesses.len(), 1);
        assert_eq!(witnesses[0].a2, 6);
    }

    #[test]
    fn octahedron_is_out_of_scope_for_nonaka() {
        let p = catalog::build("ideal-octahedron").unwrap();
        assert!(!nonaka_checks(&p).unwrap()[0].applies());
        assert!(nonaka_screen(&p).unwrap().is_empty());
    }

    #[test]
    fn nonaka_on_24_cell_faces() {
        let p = catalog::build("ideal-24-cell").unwrap();
        let checks = nonaka_checks(&p).unwrap();
        assert_eq!(checks.len(), 24);
        assert!(checks.iter().all(|c| c.v_inf == 6 && c.a2 == 8 && !c.fails()));
    }

    #[test]
    fn nk_octahedron() {
        let p = catalog::build("ideal-octahedron").unwrap();
        let checks = nk_checks(&p, false).unwrap();
        assert_eq!(checks.len(), 1);
        assert_eq!(checks[0].to_string(), "a_2^1 = 3 < 6");
        assert!(nk_screen(&p, false).unwrap().is_empty());
        assert_eq!(nk_screen(&p, true).unwrap(), vec![(1, 0)]);
    }

    #[test]
    fn nk_24_cell() {
        let p = catalog::build("ideal-24-cell").unwrap();
        assert!(nk_screen(&p, false).unwrap().is_empty());
    }

    #[test]
    fn screen_silent_on_catalog() {
        let table = compute_tables(&BoundsConfig::default()).unwrap();
        for name in catalog::list() {
            let report = realizability_screen(&catalog::build(name).unwrap(), &table).unwrap();
            assert!(report.is_empty(), "{name}: {:?}", report.findings);
        }
    }

    #[test]
    fn screen_names_nonaka_for_cube() {
        let table = compute_tables(&BoundsConfig::default()).unwrap();
        let report = realizability_screen(&catalog::three_cube(), &table).unwrap();
        assert!(report.fired(ScreenRule::Nonaka));
        assert_eq!(report.findings.len(), 1);
    }
}
