//! Known QMDS constructions as a JSON-lines data file.
//!
//! Each line is an object with
//!
//! * `family`, `citation`: names; `citation` is the key reported by lookups;
//! * `q_constraint` (optional): condition on `q = p^m`, `p`, `m` and the family sum `t = n + k`;
//! * `s_range`, `d_range` (optional): inclusive `[min, max]` bounds, iterated `s` outer and `d` inner;
//! * `params`: `[n, k, d]` expressions;
//! * `constraint` (optional): condition that may also read `n` and `k`.
//!
//! Expressions follow the grammar in [`super::expr`]. Instantiated parameters
//! must have QMDS form `k = n - 2d + 2`; those with `k < 0` are dropped.

use serde::Deserialize;

use super::expr::{Env, Expr};
use crate::enumerators::CodeParams;
use crate::error::{Error, Result};

pub const DEFAULT_CATALOG: &str = include_str!("../../data/catalog.jsonl");

const MAX_RANGE: i128 = 10_000;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    family: String,
    citation: String,
    #[serde(default)]
    q_constraint: Option<String>,
    #[serde(default)]
    s_range: Option<[String; 2]>,
    #[serde(default)]
    d_range: Option<[String; 2]>,
    params: [String; 3],
    #[serde(default)]
    constraint: Option<String>,
}

/// One construction rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub family: String,
    pub citation: String,
    q_constraint: Option<Expr>,
    s_range: Option<[Expr; 2]>,
    d_range: Option<[Expr; 2]>,
    params: [Expr; 3],
    constraint: Option<Expr>,
}

/// How a catalog hit was obtained from an entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Derivation {
    Direct,
    /// `[[n, 1, d]] -> [[n+1, 0, d+1]]`.
    Purified,
    /// `[[n, k, d]] -> [[n-1, k+1, d-1]]`, possibly repeated.
    Descendant,
}

/// A code known to exist, with the entry it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogHit {
    pub params: CodeParams,
    pub family: String,
    pub citation: String,
    pub derivation: Derivation,
    /// Position of the source entry in the catalog.
    pub order: usize,
}

/// Parsed construction catalog.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

/// `(p, m)` with `q = p^m`, if `q` is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut m = 0;
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

fn parse_opt(src: &Option<String>) -> Result<Option<Expr>> {
    src.as_deref().map(Expr::parse).transpose()
}

fn parse_range(src: &Option<[String; 2]>) -> Result<Option<[Expr; 2]>> {
    match src {
        Some([a, b]) => Ok(Some([Expr::parse(a)?, Expr::parse(b)?])),
        None => Ok(None),
    }
}

impl Default for Catalog {
    fn default() -> Self {
        Catalog::from_jsonl(DEFAULT_CATALOG).expect("shipped catalog parses")
    }
}

impl Catalog {
    /// Parses JSON-lines text; blank lines and lines starting with `#` are skipped.
    pub fn from_jsonl(text: &str) -> Result<Catalog> {
        let mut entries = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let wrap = |e: Error| match e {
                Error::Catalog(m) => Error::Parse { line: line_no, message: m },
                other => other,
            };
            let raw: RawEntry = serde_json::from_str(trimmed)
                .map_err(|e| Error::Parse { line: line_no, message: e.to_string() })?;
            let entry = CatalogEntry {
                q_constraint: parse_opt(&raw.q_constraint).map_err(wrap)?,
                s_range: parse_range(&raw.s_range).map_err(wrap)?,
                d_range: parse_range(&raw.d_range).map_err(wrap)?,
                params: [
                    Expr::parse(&raw.params[0]).map_err(wrap)?,
                    Expr::parse(&raw.params[1]).map_err(wrap)?,
                    Expr::parse(&raw.params[2]).map_err(wrap)?,
                ],
                constraint: parse_opt(&raw.constraint).map_err(wrap)?,
                family: raw.family,
                citation: raw.citation,
            };
            entries.push(entry);
        }
        Ok(Catalog { entries })
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    /// Codes instantiated directly from the entries, for local dimension `q`
    /// and family sum `n + k = sum`. Empty when `q` is not a prime power.
    pub fn instances(&self, q: u32, sum: u32) -> Result<Vec<CatalogHit>> {
        let Some((p, m)) = prime_power(q) else {
            return Ok(Vec::new());
        };
        let mut env: Env = Env::new();
        env.insert("q", q as i128);
        env.insert("p", p as i128);
        env.insert("m", m as i128);
        env.insert("t", sum as i128);
        let mut out = Vec::new();
        for (order, entry) in self.entries.iter().enumerate() {
            entry.instantiate(&mut env.clone(), order, q, sum, &mut out)?;
        }
        Ok(out)
    }

    /// All codes of the family `n + k = sum` known from the catalog, closed under
    /// purification of `k = 1` members and descent to smaller distance.
    pub fn family_hits(&self, q: u32, sum: u32) -> Result<Vec<CatalogHit>> {
        let direct = self.instances(q, sum)?;
        let mut out = direct.clone();
        for hit in &direct {
            if hit.params.k_int() == Some(1) {
                let params = CodeParams::with_k(hit.params.n + 1, 0, hit.params.d + 1, q)?;
                out.push(CatalogHit { params, derivation: Derivation::Purified, ..hit.clone() });
            }
        }
        let sources = out.clone();
        for hit in &sources {
            let (n, d) = (hit.params.n, hit.params.d);
            let k = hit.params.k_int().unwrap_or(0);
            for s in 1..d.saturating_sub(1) {
                let params = CodeParams::with_k(n - s, k + s, d - s, q)?;
                out.push(CatalogHit { params, derivation: Derivation::Descendant, ..hit.clone() });
            }
        }
        Ok(out)
    }

    /// Best known member of the family: highest distance, then direct
    /// constructions before derived ones, then catalog order.
    pub fn lower(&self, sum: u32, q: u32) -> Result<Option<CatalogHit>> {
        let hits = self.family_hits(q, sum)?;
        Ok(hits.into_iter().min_by_key(|h| (std::cmp::Reverse(h.params.d), h.derivation, h.order)))
    }

    /// Citation of an exact parameter set, if the catalog covers it.
    pub fn lookup(&self, params: &CodeParams) -> Result<Option<CatalogHit>> {
        let Some(sum) = params.n_plus_k() else {
            return Ok(None);
        };
        let hits = self.family_hits(params.local_dim, sum)?;
        Ok(hits
            .into_iter()
            .filter(|h| h.params == *params)
            .min_by_key(|h| (h.derivation, h.order)))
    }
}

impl CatalogEntry {
    fn range(&self, r: &Option<[Expr; 2]>, env: &Env) -> Result<Option<(i128, i128)>> {
        match r {
            None => Ok(None),
            Some([lo, hi]) => {
                let (lo, hi) = (lo.eval(env)?, hi.eval(env)?);
                if hi - lo > MAX_RANGE {
                    return Err(Error::Catalog(format!("{}: range {lo}..={hi} too large", self.family)));
                }
                Ok(Some((lo, hi)))
            }
        }
    }

    fn instantiate(&self, env: &mut Env, order: usize, q: u32, sum: u32, out: &mut Vec<CatalogHit>) -> Result<()> {
        if let Some(c) = &self.q_constraint {
            if !c.eval_bool(env)? {
                return Ok(());
            }
        }
        let s_values: Vec<Option<i128>> = match self.range(&self.s_range, env)? {
            Some((lo, hi)) => (lo..=hi).map(Some).collect(),
            None => vec![None],
        };
        for s in s_values {
            if let Some(s) = s {
                env.insert("s", s);
            }
            let d_values: Vec<Option<i128>> = match self.range(&self.d_range, env)? {
                Some((lo, hi)) => (lo..=hi).map(Some).collect(),
                None => vec![None],
            };
            for d in d_values {
                if let Some(d) = d {
                    env.insert("d", d);
                }
                let [n, k, dd] = [0, 1, 2].map(|i| self.params[i].eval(env));
                let (n, k, dd) = (n?, k?, dd?);
                if k < 0 || n < 1 || dd < 1 || dd > n || n + k != sum as i128 {
                    continue;
                }
                env.insert("n", n);
                env.insert("k", k);
                if let Some(c) = &self.constraint {
                    if !c.eval_bool(env)? {
                        continue;
                    }
                }
                if k != n - 2 * dd + 2 {
                    return Err(Error::Catalog(format!(
                        "{} yields [[{n},{k},{dd}]], which is not of QMDS form",
                        self.family
                    )));
                }
                let params = CodeParams::with_k(n as u32, k as u32, dd as u32, q)?;
                out.push(CatalogHit {
                    params,
                    family: self.family.clone(),
                    citation: self.citation.clone(),
                    derivation: Derivation::Direct,
                    order,
                });
            }
        }
        Ok(())
    }
}
