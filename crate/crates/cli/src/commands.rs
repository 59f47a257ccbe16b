//! Subcommands. Each writes its output to the given writer, so tests can run
//! them in-process.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use carlitz_core::{
    enumerate_monic, predict_low_coeffs, relative_zeta, relative_zeta_with, DetEngine, FieldCtx, FqPoly, Options,
    UnitSystem, ZetaReport, DEFAULT_GROUP_LIMIT,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rayon::prelude::*;

use crate::cache::Cache;
use crate::error::CliError;
use crate::parse::{format_poly, parse_modulus};
use crate::report::ReportJson;

#[derive(Debug, Parser)]
#[command(name = "carlitz", version, about = "Relative zeta polynomials of cyclotomic function fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the report for one modulus.
    Zeta(ZetaArgs),
    /// Compute reports for every monic modulus up to a degree, as CSV.
    Table(TableArgs),
    /// Run every cross-check over a sweep and print a pass/fail matrix.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct FieldArgs {
    /// Characteristic.
    #[arg(long)]
    pub p: u64,
    /// Extension degree, q = p^n.
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    /// Defining polynomial of F_q over F_p, constant term first, e.g. `1,1,1`.
    #[arg(long, value_delimiter = ',')]
    pub defining_poly: Option<Vec<u32>>,
}

impl FieldArgs {
    pub fn field(&self) -> Result<FieldCtx, CliError> {
        Ok(FieldCtx::new(self.p, self.n, self.defining_poly.clone())?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Bareiss,
    Interpolation,
}

impl From<Engine> for DetEngine {
    fn from(e: Engine) -> Self {
        match e {
            Engine::Bareiss => DetEngine::Bareiss,
            Engine::Interpolation => DetEngine::Interpolation,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ComputeArgs {
    /// Also recompute P, J and each per-character determinant from L-functions.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long, value_enum, default_value_t = Engine::Bareiss)]
    pub engine: Engine,
    /// Largest group order the oracle accepts.
    #[arg(long, default_value_t = DEFAULT_GROUP_LIMIT)]
    pub limit: u64,
    /// Directory of cached reports.
    #[arg(long, env = "CARLITZ_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
}

impl ComputeArgs {
    fn options(&self) -> Options {
        Options { with_oracle: self.oracle, engine: self.engine.into(), limit: self.limit }
    }

    fn cache(&self) -> Result<Option<Cache>, CliError> {
        self.cache_dir.as_ref().map(Cache::new).transpose()
    }
}

#[derive(Debug, Clone, Args)]
pub struct ZetaArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Monic modulus, e.g. `T^2+1` or `1,0,1`.
    #[arg(long)]
    pub modulus: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(flatten)]
    pub compute: ComputeArgs,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long)]
    pub max_deg: usize,
    /// CSV destination; standard output if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long)]
    pub jobs: Option<usize>,
    #[command(flatten)]
    pub compute: ComputeArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long)]
    pub max_deg: usize,
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_GROUP_LIMIT)]
    pub limit: u64,
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Zeta(args) => cmd_zeta(args, out),
        Command::Table(args) => cmd_table(args, out),
        Command::Verify(args) => cmd_verify(args, out),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(|e| CliError::io("<stdout>", e))
}

/// The JSON text of a report, from the cache when possible. A cached file
/// that no longer parses is recomputed and overwritten.
pub fn report_json(
    field: &FieldCtx,
    m: &FqPoly,
    options: &Options,
    cache: Option<&Cache>,
) -> Result<String, CliError> {
    let key = Cache::key(field, m, options);
    if let Some(cache) = cache {
        if let Some(text) = cache.get(&key)? {
            if ReportJson::from_json(&text).is_ok() {
                return Ok(text);
            }
        }
    }
    let report = relative_zeta(field, m, *options)?;
    let mut text = ReportJson::from_report(field, options, &report).to_json();
    text.push('\n');
    if let Some(cache) = cache {
        cache.put(&key, &text)?;
    }
    Ok(text)
}

pub fn cmd_zeta(args: &ZetaArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let field = args.field.field()?;
    let m = parse_modulus(&args.modulus, &field)?;
    let cache = args.compute.cache()?;
    let text = report_json(&field, &m, &args.compute.options(), cache.as_ref())?;
    match args.format {
        Format::Json => emit(out, &text),
        Format::Text => emit(out, &ReportJson::from_json(&text)?.to_text()),
    }
}

fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))
}

/// Every monic modulus of degree `1..=max_deg`, in enumeration order.
pub fn sweep(field: &FieldCtx, max_deg: usize) -> Vec<FqPoly> {
    (1..=max_deg).flat_map(|d| enumerate_monic(field, d)).collect()
}

fn at(field: &FieldCtx, m: &FqPoly) -> impl Fn(CliError) -> CliError {
    let modulus = format_poly(m, field);
    move |e| CliError::AtModulus { modulus: modulus.clone(), source: Box::new(e) }
}

pub const CSV_HEADER: [&str; 9] = ["q", "m", "Phi", "N_m", "h_minus", "w_minus", "P", "J", "checks_passed"];

pub fn cmd_table(args: &TableArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let field = args.field.field()?;
    if args.max_deg == 0 {
        return Err(CliError::Usage("--max-deg must be at least 1".into()));
    }
    let options = args.compute.options();
    let cache = args.compute.cache()?;
    let moduli = sweep(&field, args.max_deg);
    let rows: Vec<Result<ReportJson, CliError>> = pool(args.jobs)?.install(|| {
        moduli
            .par_iter()
            .map(|m| {
                report_json(&field, m, &options, cache.as_ref())
                    .and_then(|text| ReportJson::from_json(&text))
                    .map_err(at(&field, m))
            })
            .collect()
    });

    let mut csv = csv::Writer::from_writer(Vec::new());
    csv.write_record(CSV_HEADER)?;
    for row in rows {
        let r = row?;
        let poly = |p: &carlitz_core::IntPoly| {
            let coeffs: Vec<serde_json::Number> =
                p.coeffs().iter().map(|c| c.to_string().parse().expect("integers are JSON numbers")).collect();
            serde_json::to_string(&coeffs).expect("arrays serialize")
        };
        csv.write_record([
            r.field.q.to_string(),
            r.modulus.clone(),
            r.phi.to_string(),
            r.n_m.to_string(),
            r.h_minus.to_string(),
            r.w_minus.to_string(),
            poly(&r.p_minus),
            poly(&r.j_poly),
            r.checks_passed().to_string(),
        ])?;
    }
    let bytes = csv.into_inner().map_err(|e| CliError::io("<csv>", e.into_error()))?;
    match &args.out {
        Some(path) => std::fs::write(path, &bytes).map_err(|e| CliError::io(path, e)),
        None => out.write_all(&bytes).map_err(|e| CliError::io("<stdout>", e)),
    }
}

/// Columns of the verification matrix.
pub const VERIFY_COLUMNS: [&str; 7] =
    ["identity", "p_oracle", "j_char", "per_lambda", "lowdeg", "maillet", "canonical"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cell {
    Pass,
    Fail,
    /// Not applicable to this modulus.
    Skip,
}

impl Cell {
    fn of(ok: bool) -> Self {
        if ok {
            Cell::Pass
        } else {
            Cell::Fail
        }
    }

    fn label(&self) -> &'static str {
        match self {
            Cell::Pass => "pass",
            Cell::Fail => "FAIL",
            Cell::Skip => "-",
        }
    }
}

/// One matrix row. `error` holds the message when the pipeline itself failed.
#[derive(Clone, Debug)]
pub struct VerifyRow {
    pub modulus: String,
    pub cells: Vec<Cell>,
    pub error: Option<String>,
}

impl VerifyRow {
    pub fn passed(&self) -> bool {
        self.error.is_none() && !self.cells.contains(&Cell::Fail)
    }
}

fn same_invariants(a: &ZetaReport, b: &ZetaReport) -> bool {
    a.det_poly == b.det_poly
        && a.j_poly == b.j_poly
        && a.p_minus == b.p_minus
        && a.h_minus == b.h_minus
        && a.maillet == b.maillet
}

/// Recomputes under another generator of F_q^× (when one exists) and the
/// reversed order of representatives.
fn canonical_check(field: &FieldCtx, m: &FqPoly, report: &ZetaReport) -> Result<bool, CliError> {
    let other = match field.generators().into_iter().rev().find(|&g| g != field.generator()) {
        Some(g) => field.with_generator(g)?,
        None => field.clone(),
    };
    let mut reps = UnitSystem::new(field, m)?.reps().to_vec();
    reps.reverse();
    let sys = UnitSystem::with_order(&other, m, reps)?;
    Ok(same_invariants(report, &relative_zeta_with(&other, &sys, Options::default())?))
}

pub fn verify_one(field: &FieldCtx, m: &FqPoly, limit: u64) -> VerifyRow {
    let modulus = format_poly(m, field);
    let failed = |e: CliError| VerifyRow {
        modulus: modulus.clone(),
        cells: vec![Cell::Fail; VERIFY_COLUMNS.len()],
        error: Some(e.to_string()),
    };
    let options = Options { with_oracle: true, limit, ..Options::default() };
    let report = match relative_zeta(field, m, options) {
        Ok(r) => r,
        Err(e) => return failed(e.into()),
    };
    let check = |name: &str| Cell::of(report.checks.get(name).copied().unwrap_or(false));
    let identity = ["det_at_zero_is_one", "det_equals_p_times_j", "p_at_zero_is_one", "h_minus_positive"]
        .iter()
        .all(|n| report.checks.get(*n) == Some(&true));
    let lowdeg = if m.degree().unwrap_or(0) < 2 {
        Cell::Skip
    } else {
        match UnitSystem::new(field, m).and_then(|sys| predict_low_coeffs(field, &sys)) {
            Ok(prediction) => Cell::of(prediction.matches(&report.det_poly)),
            Err(e) => return failed(e.into()),
        }
    };
    let canonical = match canonical_check(field, m, &report) {
        Ok(ok) => Cell::of(ok),
        Err(e) => return failed(e),
    };
    VerifyRow {
        modulus,
        cells: vec![
            Cell::of(identity),
            check("oracle_p_minus"),
            check("oracle_j_poly"),
            check("oracle_det_per_lambda"),
            lowdeg,
            Cell::of(report.maillet == &report.w_minus * &report.h_minus && report.h_minus > BigInt::from(0)),
            canonical,
        ],
        error: None,
    }
}

pub fn render_matrix(rows: &[VerifyRow]) -> String {
    let width = rows.iter().map(|r| r.modulus.len()).max().unwrap_or(1).max(1);
    let mut s = String::new();
    let _ = write!(s, "{:width$}", "m");
    for c in VERIFY_COLUMNS {
        let _ = write!(s, "  {c}");
    }
    s.push('\n');
    for row in rows {
        let _ = write!(s, "{:width$}", row.modulus);
        for (c, cell) in VERIFY_COLUMNS.iter().zip(&row.cells) {
            let _ = write!(s, "  {:>w$}", cell.label(), w = c.len());
        }
        if let Some(e) = &row.error {
            let _ = write!(s, "  ({e})");
        }
        s.push('\n');
    }
    let failures = rows.iter().filter(|r| !r.passed()).count();
    let _ = writeln!(s, "{} moduli, {} failing", rows.len(), failures);
    s
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let field = args.field.field()?;
    if args.max_deg == 0 {
        return Err(CliError::Usage("--max-deg must be at least 1".into()));
    }
    let moduli = sweep(&field, args.max_deg);
    let rows: Vec<VerifyRow> =
        pool(args.jobs)?.install(|| moduli.par_iter().map(|m| verify_one(&field, m, args.limit)).collect());
    emit(out, &render_matrix(&rows))?;
    let failures = rows.iter().filter(|r| !r.passed()).count();
    if failures > 0 {
        Err(CliError::VerifyFailed(failures))
    } else {
        Ok(())
    }
}
