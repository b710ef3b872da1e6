//! Layered existence verdicts for QMDS parameters.
//!
//! Layers, in order: quantum Singleton bound, maximal-length bound, symmetric
//! shadow non-negativity. Within a family (fixed `n + k`) the `k = 0` and
//! `k = 1` members are paired, and exclusions propagate to larger distance.

pub mod catalog;
pub mod expr;

use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::enumerators::{qmds_unitary, shadow, CodeParams};
use crate::error::{Error, Result};
use crate::exactmath::{format_rational, Rational};

pub use catalog::{Catalog, CatalogEntry, CatalogHit, Derivation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Trivial,
    Excluded,
    NotExcluded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reason {
    Singleton,
    LengthBound,
    Shadow,
    Propagation,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Trivial => "trivial",
            Status::Excluded => "excluded",
            Status::NotExcluded => "not-excluded",
        }
    }
}

impl Reason {
    pub fn as_str(self) -> &'static str {
        match self {
            Reason::Singleton => "singleton",
            Reason::LengthBound => "length-bound",
            Reason::Shadow => "shadow",
            Reason::Propagation => "propagation",
        }
    }
}

/// First negative shadow coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub index: usize,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityVerdict {
    pub params: CodeParams,
    pub status: Status,
    pub reason: Option<Reason>,
    pub witness: Option<Witness>,
    /// Distance of the family member an exclusion was propagated from.
    pub propagated_from: Option<u32>,
    pub citation: Option<String>,
}

impl FeasibilityVerdict {
    fn new(params: CodeParams, status: Status) -> Self {
        FeasibilityVerdict { params, status, reason: None, witness: None, propagated_from: None, citation: None }
    }

    fn excluded(params: CodeParams, reason: Reason) -> Self {
        FeasibilityVerdict { reason: Some(reason), ..Self::new(params, Status::Excluded) }
    }

    pub fn is_excluded(&self) -> bool {
        self.status == Status::Excluded
    }
}

impl fmt::Display for FeasibilityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.params, self.status.as_str())?;
        if let Some(r) = self.reason {
            write!(f, " ({}", r.as_str())?;
            if let Some(w) = &self.witness {
                write!(f, ", S_{} = {}", w.index, format_rational(&w.value))?;
            }
            if let Some(d) = self.propagated_from {
                write!(f, ", from d = {d}")?;
            }
            f.write_str(")")?;
        }
        if let Some(c) = &self.citation {
            write!(f, " [{c}]")?;
        }
        Ok(())
    }
}

/// `K <= D^{n - 2(d-1)}`.
pub fn singleton_ok(p: &CodeParams) -> bool {
    p.k <= Rational::from_integer(BigInt::from(p.n as i64 - 2 * (p.d as i64 - 1)))
}

/// [`singleton_ok`] for an explicit dimension `K`, which need not be a power of `D`.
pub fn singleton_ok_dimension(n: u32, dimension: &BigInt, d: u32, local_dim: u32) -> bool {
    let exp = n as i64 - 2 * (d as i64 - 1);
    if exp < 0 {
        return false;
    }
    *dimension <= num_traits::pow(BigInt::from(local_dim), exp as usize)
}

/// `n <= D² + d - 2`; only meaningful for QMDS-form parameters with `d >= 3`.
pub fn length_bound_ok(p: &CodeParams) -> bool {
    let d2 = p.local_dim as u64 * p.local_dim as u64;
    p.n as u64 + 2 <= d2 + p.d as u64
}

/// Shadow layer on its own; parameters must be QMDS- or AME-form.
pub fn shadow_verdict(p: &CodeParams) -> Result<FeasibilityVerdict> {
    let s = shadow(&qmds_unitary(p)?)?;
    Ok(match s.first_negative() {
        Some((index, value)) => FeasibilityVerdict {
            witness: Some(Witness { index, value: value.clone() }),
            ..FeasibilityVerdict::excluded(p.clone(), Reason::Shadow)
        },
        None => FeasibilityVerdict::new(p.clone(), Status::NotExcluded),
    })
}

/// Largest distance allowed for qubit codes of length `n`: pure `K = 1`
/// states when `pure_k1`, otherwise codes with `K > 1`.
pub fn qubit_max_distance(n: u32, pure_k1: bool) -> u32 {
    if pure_k1 {
        2 * (n / 6) + if n % 6 == 5 { 3 } else { 2 }
    } else {
        2 * ((n + 1) / 6) + if n % 6 == 4 { 2 } else { 1 }
    }
}

/// Necessary length condition for AME states: `n <= 2(D²-1)` for even `n`,
/// `n <= 2D(D+1) - 1` for odd `n`.
pub fn scott_ame_check(n: u32, local_dim: u32) -> bool {
    let dd = local_dim as u64;
    let n = n as u64;
    if n % 2 == 0 {
        n <= 2 * (dd * dd - 1)
    } else {
        n <= 2 * dd * (dd + 1) - 1
    }
}

/// Verdicts of one family, from the parent (`d = α + 1`, `k = 0`) down to the
/// trivial `d = 2` member, plus the resulting upper bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyScan {
    pub n_plus_k: u32,
    pub local_dim: u32,
    pub upper: CodeParams,
    pub verdict_chain: Vec<FeasibilityVerdict>,
}

impl FamilyScan {
    pub fn member(&self, d: u32) -> Option<&FeasibilityVerdict> {
        self.verdict_chain.iter().find(|v| v.params.d == d)
    }
}

/// Verdict from the per-member layers only (no pairing or propagation).
fn member_layers(p: &CodeParams) -> Result<FeasibilityVerdict> {
    if p.d <= 2 {
        return Ok(FeasibilityVerdict::new(p.clone(), Status::Trivial));
    }
    if !singleton_ok(p) {
        return Ok(FeasibilityVerdict::excluded(p.clone(), Reason::Singleton));
    }
    if p.is_qmds_form() && !length_bound_ok(p) {
        return Ok(FeasibilityVerdict::excluded(p.clone(), Reason::LengthBound));
    }
    shadow_verdict(p)
}

pub fn family_scan(n_plus_k: u32, local_dim: u32) -> Result<FamilyScan> {
    if n_plus_k % 2 != 0 || n_plus_k < 4 {
        return Err(Error::domain(format!("n+k must be even and at least 4, got {n_plus_k}")));
    }
    if local_dim < 2 {
        return Err(Error::domain(format!("local dimension must be >= 2, got {local_dim}")));
    }
    let alpha = n_plus_k / 2;
    let members: Vec<CodeParams> = (2..=alpha + 1)
        .rev()
        .map(|d| CodeParams::qmds_member(n_plus_k, d, local_dim))
        .collect::<Result<_>>()?;
    let mut chain: Vec<FeasibilityVerdict> = members.iter().map(member_layers).collect::<Result<_>>()?;

    // chain[0] is the k = 0 parent, chain[1] the k = 1 member
    if chain.len() >= 3 {
        let pair = |from: &FeasibilityVerdict, to: &mut FeasibilityVerdict| {
            if from.is_excluded() && !to.is_excluded() {
                *to = FeasibilityVerdict {
                    propagated_from: Some(from.params.d),
                    ..FeasibilityVerdict::excluded(to.params.clone(), Reason::Propagation)
                };
            }
        };
        let (parent, rest) = chain.split_at_mut(1);
        pair(&rest[0], &mut parent[0]);
        pair(&parent[0], &mut rest[0]);
    }
    // descent: an excluded member excludes every member of larger distance
    let mut lowest: Option<u32> = None;
    for v in chain.iter_mut().rev() {
        match lowest {
            Some(d0) if !v.is_excluded() && v.status != Status::Trivial => {
                *v = FeasibilityVerdict {
                    propagated_from: Some(d0),
                    ..FeasibilityVerdict::excluded(v.params.clone(), Reason::Propagation)
                };
            }
            _ => {}
        }
        if v.is_excluded() && lowest.is_none() {
            lowest = Some(v.params.d);
        }
    }
    let upper = chain
        .iter()
        .find(|v| !v.is_excluded())
        .map(|v| v.params.clone())
        .expect("the trivial member is never excluded");
    Ok(FamilyScan { n_plus_k, local_dim, upper, verdict_chain: chain })
}

/// Full layered verdict for one parameter set. QMDS-form parameters are judged
/// within their family; AME-form ones by their own shadow.
pub fn check(p: &CodeParams) -> Result<FeasibilityVerdict> {
    check_with(&Catalog::default(), p)
}

/// [`check`] with citations taken from `catalog`.
pub fn check_with(catalog: &Catalog, p: &CodeParams) -> Result<FeasibilityVerdict> {
    let mut verdict = if p.d <= 2 {
        FeasibilityVerdict::new(p.clone(), Status::Trivial)
    } else if !singleton_ok(p) {
        FeasibilityVerdict::excluded(p.clone(), Reason::Singleton)
    } else if p.is_qmds_form() {
        let sum = p.n_plus_k().expect("QMDS form has integer k");
        family_scan(sum, p.local_dim)?
            .member(p.d)
            .cloned()
            .expect("family contains every QMDS member")
    } else if p.is_ame_form() {
        shadow_verdict(p)?
    } else {
        FeasibilityVerdict::new(p.clone(), Status::NotExcluded)
    };
    verdict.citation = catalog.lookup(p)?.map(|h| h.citation);
    Ok(verdict)
}

/// Best known member of the family `n + k` from the shipped catalog.
pub fn catalog_lower(n_plus_k: u32, local_dim: u32) -> Result<Option<CatalogHit>> {
    Catalog::default().lower(n_plus_k, local_dim)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub n_plus_k: u32,
    pub upper: CodeParams,
    pub lower: Option<CatalogHit>,
    pub optimal: bool,
}

impl TableRow {
    pub fn to_csv_line(&self) -> String {
        let (lower, citation) = match &self.lower {
            Some(h) => (h.params.to_string(), h.citation.clone()),
            None => (String::new(), String::new()),
        };
        format!(
            "{},{},{},{},{}",
            self.n_plus_k,
            csv_field(&self.upper.to_string()),
            csv_field(&lower),
            self.optimal,
            csv_field(&citation)
        )
    }
}

pub const TABLE_CSV_HEADER: &str = "n+k,upper,lower,optimal,citation";

/// Quotes a CSV field when it contains a separator or quote.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// One row per even `n + k` in `4..=max_n_plus_k`.
pub fn make_table(local_dim: u32, max_n_plus_k: u32) -> Result<Vec<TableRow>> {
    make_table_with(&Catalog::default(), local_dim, max_n_plus_k)
}

pub fn make_table_with(catalog: &Catalog, local_dim: u32, max_n_plus_k: u32) -> Result<Vec<TableRow>> {
    let sums: Vec<u32> = (4..=max_n_plus_k).step_by(2).collect();
    sums.par_iter()
        .map(|&sum| {
            let upper = family_scan(sum, local_dim)?.upper;
            let lower = catalog.lower(sum, local_dim)?;
            let optimal = lower.as_ref().is_some_and(|h| h.params == upper);
            Ok(TableRow { n_plus_k: sum, upper, lower, optimal })
        })
        .collect()
}

/// Default table range, `n + k <= 2(D² - 1)`.
pub fn default_table_max(local_dim: u32) -> u32 {
    2 * (local_dim * local_dim - 1)
}
