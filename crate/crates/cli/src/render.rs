//! Output documents and their `table`, `csv` and `json` renderings.

use clap::ValueEnum;
use qweight_core::exactmath::format_rational;
use qweight_core::feasibility::{csv_field, CatalogHit, FamilyScan, FeasibilityVerdict, TableRow, TABLE_CSV_HEADER};
use qweight_core::{CodeCheck, Rational, WeightDistribution};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Csv,
    Json,
}

fn rational_csv(r: &Rational) -> String {
    let s = format_rational(r);
    if s.contains('/') {
        format!("\"{s}\"")
    } else {
        s
    }
}

fn opt_csv<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(|x| csv_field(&x.to_string())).unwrap_or_default()
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

/// Pads columns to a common width.
fn aligned(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r.iter().enumerate().map(|(i, s)| format!("{s:<w$}", w = widths[i])).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
pub struct WeightsDoc {
    pub params: String,
    pub kind: String,
    pub trace: String,
    pub values: Vec<String>,
}

impl WeightsDoc {
    pub fn new(params: String, w: &WeightDistribution) -> Self {
        WeightsDoc {
            params,
            kind: w.kind().to_string(),
            trace: format_rational(w.trace()),
            values: w.values().iter().map(format_rational).collect(),
        }
    }
}

pub fn weights(doc: &WeightsDoc, w: &WeightDistribution, format: Format) -> String {
    match format {
        Format::Table => format!("{}\n", doc.values.join(",")),
        Format::Csv => format!("{}\n", w.values().iter().map(rational_csv).collect::<Vec<_>>().join(",")),
        Format::Json => json(doc),
    }
}

#[derive(Serialize)]
pub struct WitnessDoc {
    pub index: usize,
    pub value: String,
}

#[derive(Serialize)]
pub struct VerdictDoc {
    pub params: String,
    pub status: String,
    pub reason: Option<String>,
    pub witness: Option<WitnessDoc>,
    pub propagated_from: Option<u32>,
    pub citation: Option<String>,
}

impl From<&FeasibilityVerdict> for VerdictDoc {
    fn from(v: &FeasibilityVerdict) -> Self {
        VerdictDoc {
            params: v.params.to_string(),
            status: v.status.as_str().to_string(),
            reason: v.reason.map(|r| r.as_str().to_string()),
            witness: v.witness.as_ref().map(|w| WitnessDoc { index: w.index, value: format_rational(&w.value) }),
            propagated_from: v.propagated_from,
            citation: v.citation.clone(),
        }
    }
}

const VERDICT_CSV_HEADER: &str = "params,status,reason,witness_index,witness_value,propagated_from,citation";

fn verdict_csv(v: &FeasibilityVerdict) -> String {
    format!(
        "{},{},{},{},{},{},{}",
        csv_field(&v.params.to_string()),
        v.status.as_str(),
        v.reason.map(|r| r.as_str()).unwrap_or(""),
        opt_csv(&v.witness.as_ref().map(|w| w.index)),
        v.witness.as_ref().map(|w| rational_csv(&w.value)).unwrap_or_default(),
        opt_csv(&v.propagated_from),
        opt_csv(&v.citation),
    )
}

pub fn verdict(v: &FeasibilityVerdict, format: Format) -> String {
    match format {
        Format::Table => format!("{v}\n"),
        Format::Csv => format!("{VERDICT_CSV_HEADER}\n{}\n", verdict_csv(v)),
        Format::Json => json(&VerdictDoc::from(v)),
    }
}

/// Verdict for an explicit dimension that is not a power of `D`; only the
/// Singleton layer applies.
#[derive(Serialize)]
pub struct DimensionVerdictDoc {
    pub params: String,
    pub status: String,
    pub reason: Option<String>,
}

pub fn dimension_verdict(doc: &DimensionVerdictDoc, format: Format) -> String {
    let reason = doc.reason.as_deref().unwrap_or("");
    match format {
        Format::Table if reason.is_empty() => format!("{}: {}\n", doc.params, doc.status),
        Format::Table => format!("{}: {} ({reason})\n", doc.params, doc.status),
        Format::Csv => format!("params,status,reason\n{},{},{reason}\n", csv_field(&doc.params), doc.status),
        Format::Json => json(doc),
    }
}

#[derive(Serialize)]
struct FamilyDoc {
    n_plus_k: u32,
    local_dim: u32,
    upper: String,
    members: Vec<VerdictDoc>,
}

pub fn family(scan: &FamilyScan, format: Format) -> String {
    match format {
        Format::Table => {
            let mut out = format!("n+k = {}, D = {}: upper bound {}\n", scan.n_plus_k, scan.local_dim, scan.upper);
            for v in &scan.verdict_chain {
                out.push_str(&format!("  d = {:<3} {v}\n", v.params.d));
            }
            out
        }
        Format::Csv => {
            let mut out = format!("d,{VERDICT_CSV_HEADER}\n");
            for v in &scan.verdict_chain {
                out.push_str(&format!("{},{}\n", v.params.d, verdict_csv(v)));
            }
            out
        }
        Format::Json => json(&FamilyDoc {
            n_plus_k: scan.n_plus_k,
            local_dim: scan.local_dim,
            upper: scan.upper.to_string(),
            members: scan.verdict_chain.iter().map(VerdictDoc::from).collect(),
        }),
    }
}

#[derive(Serialize)]
struct RowDoc {
    n_plus_k: u32,
    upper: String,
    lower: Option<String>,
    optimal: bool,
    citation: Option<String>,
}

pub fn table(rows: &[TableRow], format: Format) -> String {
    match format {
        Format::Table => {
            let mut cells = vec![["n+k", "upper", "lower", "optimal", "citation"].map(String::from).to_vec()];
            for r in rows {
                let (lower, citation) = match &r.lower {
                    Some(h) => (h.params.to_string(), h.citation.clone()),
                    None => ("-".into(), String::new()),
                };
                let optimal = if r.optimal { "yes" } else { "no" };
                cells.push(vec![r.n_plus_k.to_string(), r.upper.to_string(), lower, optimal.into(), citation]);
            }
            aligned(&cells)
        }
        Format::Csv => {
            let mut out = format!("{TABLE_CSV_HEADER}\n");
            for r in rows {
                out.push_str(&r.to_csv_line());
                out.push('\n');
            }
            out
        }
        Format::Json => json(
            &rows
                .iter()
                .map(|r| RowDoc {
                    n_plus_k: r.n_plus_k,
                    upper: r.upper.to_string(),
                    lower: r.lower.as_ref().map(|h| h.params.to_string()),
                    optimal: r.optimal,
                    citation: r.lower.as_ref().map(|h| h.citation.clone()),
                })
                .collect::<Vec<_>>(),
        ),
    }
}

#[derive(Serialize)]
pub struct OracleDoc {
    pub p: u32,
    pub n: usize,
    pub k: usize,
    pub purified: bool,
    /// Traced-out systems, 1-based.
    pub reduced: Vec<usize>,
    pub dimension: String,
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub shadow: Vec<String>,
    pub distance: usize,
    pub pure: bool,
}

impl OracleDoc {
    pub fn weights(
        &mut self,
        a: &WeightDistribution,
        b: &WeightDistribution,
        s: &WeightDistribution,
        check: CodeCheck,
    ) {
        let strings = |w: &WeightDistribution| w.values().iter().map(format_rational).collect();
        self.a = strings(a);
        self.b = strings(b);
        self.shadow = strings(s);
        self.distance = check.distance;
        self.pure = check.pure;
    }
}

pub fn oracle(doc: &OracleDoc, format: Format) -> String {
    let quoted = |v: &[String]| {
        v.iter().map(|s| if s.contains('/') { format!("\"{s}\"") } else { s.clone() }).collect::<Vec<_>>().join(",")
    };
    match format {
        Format::Table => {
            let mut out = format!("code: p = {}, n = {}, k = {}\n", doc.p, doc.n, doc.k);
            if doc.purified {
                out.push_str("purified\n");
            }
            if !doc.reduced.is_empty() {
                let sites: Vec<String> = doc.reduced.iter().map(|s| s.to_string()).collect();
                out.push_str(&format!("traced out: {{{}}}\n", sites.join(",")));
            }
            out.push_str(&format!("K = {}\n", doc.dimension));
            out.push_str(&format!("A = {}\n", doc.a.join(",")));
            out.push_str(&format!("B = {}\n", doc.b.join(",")));
            out.push_str(&format!("S = {}\n", doc.shadow.join(",")));
            out.push_str(&format!("distance = {}, pure = {}\n", doc.distance, doc.pure));
            out
        }
        Format::Csv => {
            let mut out = String::from("series,values\n");
            for (name, v) in [("A", &doc.a), ("B", &doc.b), ("S", &doc.shadow)] {
                out.push_str(&format!("{name},{}\n", quoted(v)));
            }
            out.push_str(&format!("distance,{}\npure,{}\n", doc.distance, doc.pure));
            out
        }
        Format::Json => json(doc),
    }
}

#[derive(Serialize)]
struct HitDoc {
    params: String,
    family: String,
    citation: String,
    derivation: String,
}

pub fn catalog_hits(hits: &[CatalogHit], format: Format) -> String {
    let derivation = |h: &CatalogHit| format!("{:?}", h.derivation).to_lowercase();
    match format {
        Format::Table => {
            let mut cells = vec![["params", "derivation", "citation"].map(String::from).to_vec()];
            for h in hits {
                cells.push(vec![h.params.to_string(), derivation(h), h.citation.clone()]);
            }
            aligned(&cells)
        }
        Format::Csv => {
            let mut out = String::from("params,derivation,family,citation\n");
            for h in hits {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    csv_field(&h.params.to_string()),
                    derivation(h),
                    csv_field(&h.family),
                    csv_field(&h.citation)
                ));
            }
            out
        }
        Format::Json => json(
            &hits
                .iter()
                .map(|h| HitDoc {
                    params: h.params.to_string(),
                    family: h.family.clone(),
                    citation: h.citation.clone(),
                    derivation: derivation(h),
                })
                .collect::<Vec<_>>(),
        ),
    }
}

#[derive(Serialize)]
struct EntryDoc<'a> {
    family: &'a str,
    citation: &'a str,
}

pub fn catalog_entries(entries: &[(&str, &str)], format: Format) -> String {
    match format {
        Format::Table => {
            let mut cells = vec![vec!["family".to_string(), "citation".to_string()]];
            cells.extend(entries.iter().map(|(f, c)| vec![f.to_string(), c.to_string()]));
            aligned(&cells)
        }
        Format::Csv => {
            let mut out = String::from("family,citation\n");
            for (f, c) in entries {
                out.push_str(&format!("{},{}\n", csv_field(f), csv_field(c)));
            }
            out
        }
        Format::Json => json(&entries.iter().map(|&(family, citation)| EntryDoc { family, citation }).collect::<Vec<_>>()),
    }
}
