//! Exact lower bounds: the Nikulin–Khovanskii average-incidence bound and
//! the recurrence cascades for the minimal numbers of facets, ideal vertices
//! and finite vertices in dimensions 5 through 12.
//!
//! Everything here is integer or rational arithmetic on arbitrary-precision
//! values. The per-facet minima in the double-counting steps are instantiated
//! with the previous dimension's global minima: a facet of an n-polytope is
//! itself a right-angled (n − 1)-polytope of finite volume.

mod emit;
mod reference;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use emit::{TableFormat, TableParseError};
pub use reference::{verify_against_published, DiffEntry, DiffReport, Discrepancy, Quantity};

/// Highest dimension in which right-angled polytopes of finite volume exist.
pub const MAX_DIM: usize = 12;
/// First dimension of the cascade.
pub const FIRST_DIM: usize = 5;
/// First dimension of the finite-vertex cascade.
pub const FIRST_FINITE_DIM: usize = 7;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("incidence pair (k, l) = ({k}, {l}) outside 0 ≤ l < k ≤ ⌈n/2⌉ for n = {n}")]
    NkDomain { n: usize, k: usize, l: usize },
    #[error("divisor must be positive, got {0}")]
    NonPositiveDivisor(BigInt),
    #[error("dividend must be non-negative, got {0}")]
    NegativeDividend(BigInt),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("dimension {n} is outside the table range {first}..={last}")]
    OutOfRange { n: usize, first: usize, last: usize },
    #[error("the finite-vertex cascade needs max_dim ≥ 7, got {0}")]
    MaxDimTooSmall(usize),
}

/// C(n, k) by the multiplicative formula; zero when k > n.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Strict upper bound on the average number of l-faces in a k-face of an
/// edge-simple n-polytope:
///
/// C(n−l, n−k) · (C(⌊n/2⌋, l) + C(⌈n/2⌉, l)) / (C(⌊n/2⌋, k) + C(⌈n/2⌉, k)).
pub fn nk_bound(n: usize, k: usize, l: usize) -> Result<BigRational, BoundsError> {
    let half_up = n.div_ceil(2);
    if n < 3 || l >= k || k > half_up {
        return Err(BoundsError::NkDomain { n, k, l });
    }
    let (lo, hi) = ((n / 2) as u64, half_up as u64);
    let (n, k, l) = (n as u64, k as u64, l as u64);
    let numer = binomial(n - l, n - k) * (binomial(lo, l) + binomial(hi, l));
    let denom = binomial(lo, k) + binomial(hi, k);
    Ok(BigRational::new(numer, denom))
}

/// ⌈a / b⌉ for a ≥ 0 and b > 0.
pub fn ceil_div(a: &BigInt, b: &BigInt) -> Result<BigInt, BoundsError> {
    if !b.is_positive() {
        return Err(BoundsError::NonPositiveDivisor(b.clone()));
    }
    if a.is_negative() {
        return Err(BoundsError::NegativeDividend(a.clone()));
    }
    let (q, r) = a.div_rem(b);
    Ok(if r.is_zero() { q } else { q + 1 })
}

/// How ν_n is updated from one dimension to the next.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NuRule {
    /// ν_n = max(5 − 2n + 2ν_{n−1}, a_min(n) + v_n)
    Max,
    /// ν_n = 5 − 2n + 2ν_{n−1}
    Linear,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsConfig {
    /// Known values of ν_n for small n; 4 and 5 are required.
    pub nu_bases: BTreeMap<usize, BigInt>,
    /// Lower bound on ideal vertices in dimension 5.
    pub v5_base: BigInt,
    /// Lower bound on finite vertices in dimension 7.
    pub vfin7_base: BigInt,
    pub nu_rule: NuRule,
    pub max_dim: usize,
}

impl Default for BoundsConfig {
    fn default() -> Self {
        BoundsConfig {
            nu_bases: [(3, 9), (4, 15), (5, 26)]
                .into_iter()
                .map(|(n, nu)| (n, BigInt::from(nu)))
                .collect(),
            v5_base: BigInt::from(3),
            vfin7_base: BigInt::from(4),
            nu_rule: NuRule::Max,
            max_dim: MAX_DIM,
        }
    }
}

impl BoundsConfig {
    pub fn validate(&self) -> Result<(), BoundsError> {
        if !(FIRST_DIM..=MAX_DIM).contains(&self.max_dim) {
            return Err(BoundsError::Config(format!(
                "max_dim must lie in {FIRST_DIM}..={MAX_DIM}, got {}",
                self.max_dim
            )));
        }
        for n in [FIRST_DIM - 1, FIRST_DIM] {
            if !self.nu_bases.contains_key(&n) {
                return Err(BoundsError::Config(format!("missing ν base for n = {n}")));
            }
        }
        if let Some((n, nu)) = self.nu_bases.iter().find(|(_, nu)| !nu.is_positive()) {
            return Err(BoundsError::Config(format!("ν_{n} = {nu} is not positive")));
        }
        for (name, value) in [("v5_base", &self.v5_base), ("vfin7_base", &self.vfin7_base)] {
            if !value.is_positive() {
                return Err(BoundsError::Config(format!("{name} = {value} is not positive")));
            }
        }
        Ok(())
    }
}

/// Lower bounds for one dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionRow {
    pub n: usize,
    /// Lower bound on ν_n (facets plus ideal vertices).
    pub nu: BigInt,
    /// Lower bound on the number of facets, 1 + ν_{n−1}.
    pub a_min: BigInt,
    pub v_inf_min: BigInt,
    /// Lower bound on finite vertices; present from dimension 7 on.
    pub v_fin_min: Option<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CascadeTable {
    pub config: BoundsConfig,
    pub rows: Vec<DimensionRow>,
}

impl CascadeTable {
    pub fn row(&self, n: usize) -> Option<&DimensionRow> {
        self.rows.iter().find(|r| r.n == n)
    }

    pub fn dims(&self) -> std::ops::RangeInclusive<usize> {
        let first = self.rows.first().map_or(FIRST_DIM, |r| r.n);
        let last = self.rows.last().map_or(FIRST_DIM - 1, |r| r.n);
        first..=last
    }
}

/// The ideal-vertex cascade. Row 5 is seeded from ν_4, ν_5 and the base
/// bound; each later row takes a_min = 1 + ν_{n−1} facets, each facet carrying
/// at least v_{n−1} ideal vertices, each ideal vertex lying on 2(n − 1) facets.
pub fn cascade_ideal(config: &BoundsConfig) -> Result<CascadeTable, BoundsError> {
    config.validate()?;
    let mut rows = vec![DimensionRow {
        n: FIRST_DIM,
        nu: config.nu_bases[&FIRST_DIM].clone(),
        a_min: BigInt::one() + &config.nu_bases[&(FIRST_DIM - 1)],
        v_inf_min: config.v5_base.clone(),
        v_fin_min: None,
    }];
    for n in FIRST_DIM + 1..=config.max_dim {
        let prev = rows.last().expect("seed row");
        let a_min = BigInt::one() + &prev.nu;
        let v_inf_min = ceil_div(&(&a_min * &prev.v_inf_min), &BigInt::from(2 * (n - 1)))?;
        let linear = BigInt::from(5) - BigInt::from(2 * n) + BigInt::from(2) * &prev.nu;
        let nu = match config.nu_rule {
            NuRule::Linear => linear,
            NuRule::Max => linear.max(&a_min + &v_inf_min),
        };
        rows.push(DimensionRow {
            n,
            nu,
            a_min,
            v_inf_min,
            v_fin_min: None,
        });
    }
    Ok(CascadeTable {
        config: config.clone(),
        rows,
    })
}

/// Fills in finite-vertex bounds from dimension 7 on: each of the a_min
/// facets carries at least v_fin(n − 1) finite vertices, each finite vertex
/// lying on n facets.
pub fn cascade_finite(
    config: &BoundsConfig,
    ideal_table: &CascadeTable,
) -> Result<CascadeTable, BoundsError> {
    config.validate()?;
    if config.max_dim < FIRST_FINITE_DIM {
        return Err(BoundsError::MaxDimTooSmall(config.max_dim));
    }
    let mut table = ideal_table.clone();
    table.config = config.clone();
    let mut previous: Option<BigInt> = None;
    for n in FIRST_FINITE_DIM..=config.max_dim {
        let row = table
            .rows
            .iter_mut()
            .find(|r| r.n == n)
            .ok_or(BoundsError::OutOfRange {
                n,
                first: FIRST_DIM,
                last: ideal_table.dims().end().to_owned(),
            })?;
        let value = match &previous {
            None => config.vfin7_base.clone(),
            Some(prev) => ceil_div(&(&row.a_min * prev), &BigInt::from(n))?,
        };
        row.v_fin_min = Some(value.clone());
        previous = Some(value);
    }
    Ok(table)
}

/// Both cascades for a configuration; the finite column is left empty when
/// max_dim < 7.
pub fn compute_tables(config: &BoundsConfig) -> Result<CascadeTable, BoundsError> {
    let ideal = cascade_ideal(config)?;
    if config.max_dim < FIRST_FINITE_DIM {
        return Ok(ideal);
    }
    cascade_finite(config, &ideal)
}

/// Minimal facet count, ideal-vertex count and (from dimension 7) finite-vertex
/// count for dimension n.
pub fn min_table_lookup(
    table: &CascadeTable,
    n: usize,
) -> Result<(BigInt, BigInt, Option<BigInt>), BoundsError> {
    let range = table.dims();
    let row = table.row(n).ok_or(BoundsError::OutOfRange {
        n,
        first: *range.start(),
        last: *range.end(),
    })?;
    Ok((row.a_min.clone(), row.v_inf_min.clone(), row.v_fin_min.clone()))
}
