//! `qweight`: weight enumerators, feasibility verdicts and bound tables for
//! quantum MDS codes.
//!
//! Exit codes: 0 success (or not excluded), 1 excluded, 2 usage or input
//! error, 3 invalid code or inconsistent enumerators.

mod render;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use num_bigint::BigInt;
use qweight_core::enumerators::{code_check, integer_log, qmds_sl, qmds_unitary, shadow, unitary_from_sl};
use qweight_core::feasibility::{
    check_with, default_table_max, family_scan, make_table_with, singleton_ok_dimension, Catalog, FamilyScan,
};
use qweight_core::oracle::{group_sl_weights, parse_code, reduced_weights, Subset};
use qweight_core::{CodeParams, Error, Rational};

use render::Format;

const CATALOG_ENV: &str = "QWEIGHT_CATALOG";

#[derive(Parser)]
#[command(name = "qweight", version, about = "Exact weight enumerators and existence bounds for quantum MDS codes")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form weight distribution of a QMDS or AME parameter set.
    Weights {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = Kind::Sl)]
        kind: Kind,
    },
    /// Shadow coefficients of a QMDS or AME parameter set.
    Shadow {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Layered verdict for `[[N,K,d]]_D` given as `N K d D`, or `N d D` together with `--K`.
    Check {
        #[arg(num_args = 3..=4, required = true, value_name = "N [K] d D")]
        values: Vec<u32>,
        /// Explicit code dimension instead of the log-dimension `K`.
        #[arg(long = "K", value_name = "DIM")]
        dimension: Option<BigInt>,
    },
    /// All members of the QMDS family with the given `n + k`.
    Family {
        #[arg(value_name = "SUM")]
        n_plus_k: u32,
        #[arg(value_name = "D")]
        local_dim: u32,
    },
    /// Upper and lower bounds on the distance for every family up to `--max`.
    Table {
        #[arg(long = "D")]
        local_dim: u32,
        /// Largest `n + k`; defaults to `2(D² - 1)`.
        #[arg(long)]
        max: Option<u32>,
    },
    /// Stabilizer oracle on a code file.
    Oracle {
        file: PathBuf,
        /// Systems to trace out, 1-based and comma separated.
        #[arg(long, value_delimiter = ',', value_name = "SITES")]
        reduce: Vec<usize>,
        /// Purify the code with a reference system before anything else.
        #[arg(long)]
        purify: bool,
    },
    /// Catalog entries, or the codes known for one family.
    #[command(group(ArgGroup::new("family").args(["local_dim", "n_plus_k"]).multiple(true).requires_all(["local_dim", "n_plus_k"])))]
    Catalog {
        #[arg(long = "D")]
        local_dim: Option<u32>,
        #[arg(long = "sum", value_name = "N+K")]
        n_plus_k: Option<u32>,
    },
}

#[derive(Args)]
#[command(group(ArgGroup::new("size").required(true).args(["k", "dimension"])))]
struct ParamArgs {
    #[arg(long)]
    n: u32,
    /// Log-dimension `k` with `K = D^k`.
    #[arg(long)]
    k: Option<u32>,
    /// Code dimension; must be a power of `D`.
    #[arg(long = "K", value_name = "DIM")]
    dimension: Option<BigInt>,
    #[arg(long = "D")]
    local_dim: u32,
    /// Distance; defaults to the QMDS value `(n - k)/2 + 1`, or `⌊n/2⌋ + 1` for odd-length states.
    #[arg(long)]
    d: Option<u32>,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Kind {
    Sl,
    Unitary,
}

/// A failure together with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Inconsistent { .. } | Error::InvalidCode(_) | Error::Dense(_) => 3,
            Error::Domain(_) | Error::Budget(_) | Error::Parse { .. } | Error::Catalog(_) => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

type Outcome = Result<(String, u8), Failure>;

fn log_dimension(dimension: &BigInt, local_dim: u32) -> Result<u32, Failure> {
    integer_log(dimension, local_dim)
        .ok_or_else(|| Failure::usage(format!("K = {dimension} is not a power of D = {local_dim}")))
}

impl ParamArgs {
    fn resolve(&self) -> Result<CodeParams, Failure> {
        if self.local_dim < 2 {
            return Err(Failure::usage(format!("D must be at least 2, got {}", self.local_dim)));
        }
        let k = match (&self.k, &self.dimension) {
            (Some(k), _) => *k,
            (None, Some(dim)) => log_dimension(dim, self.local_dim)?,
            (None, None) => unreachable!("clap requires --k or --K"),
        };
        let n = self.n;
        let d = match self.d {
            Some(d) => d,
            None if k <= n && (n - k) % 2 == 0 => (n - k) / 2 + 1,
            None if k == 0 => n / 2 + 1,
            None => return Err(Failure::usage(format!("n = {n}, k = {k} has no QMDS distance; pass --d"))),
        };
        Ok(CodeParams::with_k(n, k, d, self.local_dim)?)
    }
}

fn load_catalog() -> Result<Catalog, Failure> {
    match std::env::var_os(CATALOG_ENV) {
        None => Ok(Catalog::default()),
        Some(path) => {
            let shown = PathBuf::from(&path).display().to_string();
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Failure::usage(format!("{CATALOG_ENV}={shown}: {e}")))?;
            Catalog::from_jsonl(&text).map_err(|e| {
                let f = Failure::from(e);
                Failure { message: format!("{CATALOG_ENV}={shown}: {}", f.message), ..f }
            })
        }
    }
}

fn run_check(values: &[u32], dimension: &Option<BigInt>, format: Format) -> Outcome {
    let (n, local_dim, d, dimension) = match (values, dimension) {
        ([n, k, d, dd], None) => {
            let params = CodeParams::with_k(*n, *k, *d, *dd)?;
            let verdict = check_with(&load_catalog()?, &params)?;
            let code = if verdict.is_excluded() { 1 } else { 0 };
            return Ok((render::verdict(&verdict, format), code));
        }
        ([n, d, dd], Some(dim)) => (*n, *dd, *d, dim.clone()),
        (_, None) => return Err(Failure::usage("check expects N K d D")),
        (_, Some(_)) => return Err(Failure::usage("with --K, check expects N d D")),
    };
    if local_dim < 2 {
        return Err(Failure::usage(format!("D must be at least 2, got {local_dim}")));
    }
    if let Some(k) = integer_log(&dimension, local_dim) {
        return run_check(&[n, k, d, local_dim], &None, format);
    }
    // K not a power of D: only the Singleton bound applies
    if d < 1 || d > n || dimension < BigInt::from(1) {
        return Err(Failure::usage(format!("need 1 <= d <= n and K >= 1, got n={n}, K={dimension}, d={d}")));
    }
    let excluded = d > 2 && !singleton_ok_dimension(n, &dimension, d, local_dim);
    let doc = render::DimensionVerdictDoc {
        params: format!("(({n},{dimension},{d}))_{local_dim}"),
        status: if d <= 2 { "trivial" } else if excluded { "excluded" } else { "not-excluded" }.into(),
        reason: excluded.then(|| "singleton".into()),
    };
    Ok((render::dimension_verdict(&doc, format), u8::from(excluded)))
}

fn with_citations(mut scan: FamilyScan, catalog: &Catalog) -> Result<FamilyScan, Failure> {
    for v in &mut scan.verdict_chain {
        v.citation = catalog.lookup(&v.params)?.map(|h| h.citation);
    }
    Ok(scan)
}

fn run_oracle(file: &PathBuf, reduce: &[usize], purify: bool, format: Format) -> Outcome {
    let text = std::fs::read_to_string(file).map_err(|e| Failure::usage(format!("{}: {e}", file.display())))?;
    let with_file = |e: Error| {
        let f = Failure::from(e);
        Failure { message: format!("{}: {}", file.display(), f.message), ..f }
    };
    let mut code = parse_code(&text).map_err(with_file)?;
    if purify {
        code = code.purify().map_err(with_file)?;
    }
    let n = code.n();
    if let Some(bad) = reduce.iter().find(|&&s| s == 0 || s > n) {
        return Err(Failure::usage(format!("--reduce site {bad} is outside 1..={n}")));
    }
    let v = Subset::from_sites(reduce.iter().map(|s| s - 1));
    let (a, b) = if v.is_empty() { group_sl_weights(&code)? } else { reduced_weights(&code, v)? };
    let dimension = Rational::from_integer(code.dimension() * num_traits::pow(BigInt::from(code.p()), v.len()));
    let check = code_check(&a, &b, &dimension)?;
    let s = shadow(&unitary_from_sl(&a)?)?;
    let mut doc = render::OracleDoc {
        p: code.p(),
        n,
        k: code.k(),
        purified: purify,
        reduced: v.sites().map(|s| s + 1).collect(),
        dimension: dimension.to_string(),
        a: Vec::new(),
        b: Vec::new(),
        shadow: Vec::new(),
        distance: 0,
        pure: false,
    };
    doc.weights(&a, &b, &s, check);
    Ok((render::oracle(&doc, format), 0))
}

fn run(cli: &Cli) -> Outcome {
    let format = cli.format;
    match &cli.command {
        Command::Weights { params, kind } => {
            let p = params.resolve()?;
            let w = match kind {
                Kind::Sl => qmds_sl(&p)?,
                Kind::Unitary => qmds_unitary(&p)?,
            };
            let doc = render::WeightsDoc::new(p.to_string(), &w);
            Ok((render::weights(&doc, &w, format), 0))
        }
        Command::Shadow { params } => {
            let p = params.resolve()?;
            let s = shadow(&qmds_unitary(&p)?)?;
            let doc = render::WeightsDoc::new(p.to_string(), &s);
            Ok((render::weights(&doc, &s, format), 0))
        }
        Command::Check { values, dimension } => run_check(values, dimension, format),
        Command::Family { n_plus_k, local_dim } => {
            let scan = with_citations(family_scan(*n_plus_k, *local_dim)?, &load_catalog()?)?;
            Ok((render::family(&scan, format), 0))
        }
        Command::Table { local_dim, max } => {
            if *local_dim < 2 {
                return Err(Failure::usage(format!("D must be at least 2, got {local_dim}")));
            }
            let max = max.unwrap_or_else(|| default_table_max(*local_dim));
            let rows = make_table_with(&load_catalog()?, *local_dim, max)?;
            Ok((render::table(&rows, format), 0))
        }
        Command::Oracle { file, reduce, purify } => run_oracle(file, reduce, *purify, format),
        Command::Catalog { local_dim, n_plus_k } => {
            let catalog = load_catalog()?;
            match (local_dim, n_plus_k) {
                (Some(q), Some(sum)) => {
                    let mut hits = catalog.family_hits(*q, *sum)?;
                    hits.sort_by_key(|h| (std::cmp::Reverse(h.params.d), h.derivation, h.order));
                    hits.dedup_by(|a, b| a.params == b.params && a.citation == b.citation);
                    Ok((render::catalog_hits(&hits, format), 0))
                }
                _ => {
                    let entries: Vec<(&str, &str)> =
                        catalog.entries().iter().map(|e| (e.family.as_str(), e.citation.as_str())).collect();
                    Ok((render::catalog_entries(&entries, format), 0))
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code)
        }
    }
}
