//! The `frullani` command line.
//!
//! Everything goes through [`run_with`], which takes the argument vector and
//! two sinks and returns the exit code, so the binary is a thin shell and the
//! tests drive the real thing in-process.
//!
//! Exit codes: `0` when no record is FAIL or ORACLE_FAILED, `1` when one is
//! (or output could not be written), `2` for usage errors.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::catalog::{self, list_entries, parse_grid_file, parse_pairs, verify_all, verify_entry, Catalog};
use crate::expr::{parse, INTEGRATION_VARIABLE};
use crate::frullani::{evaluate_pipeline, FrullaniProblem};
use crate::limits::{limit_at_infinity, limit_at_zero_plus, LimitVerdict, ProbeConfig, ProbeError};
use crate::record::{emit_report, format_e3, format_g17, Format, Params, Summary, VerificationRecord};
use crate::series::{gr_4_324_2_closed, gr_4_324_2_series, SeriesError, SeriesParams};

/// Name of the environment variable that supplies a default tolerance.
pub const TOL_ENV: &str = "FRULLANI_TOL";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "frullani",
    version,
    about = "Check Frullani-type integral identities against numerical quadrature"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the catalog table
    List {
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Verify one catalog entry at one parameter set
    Verify {
        id: String,
        /// Comma-separated `name=value` pairs; omitted names take the first grid point
        #[arg(long)]
        params: Option<String>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Verify every entry over its grid
    VerifyAll {
        #[arg(long)]
        tol: Option<f64>,
        /// Grid file replacing the default grids of the entries it names
        #[arg(long)]
        grid: Option<PathBuf>,
        /// Write the report here instead of standard output
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Apply the Frullani formula to f(x) and check it by quadrature
    Eval {
        expr: String,
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, default_value_t = 1.0)]
        power: f64,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Compare the log-cosine closed form with its partial sum
    Series {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        q: f64,
        #[arg(long)]
        terms: usize,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Probe f(0+) and f(∞)
    Limits {
        expr: String,
        #[arg(long, default_value = "text")]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    List,
    Verify,
    VerifyAll,
    Eval,
    Series,
    Limits,
}

/// The settings a command resolves to once flags and environment are merged.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub tolerance: Option<f64>,
    pub grid: Option<PathBuf>,
    pub report: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    fn new(command: CommandKind, format: Format) -> Self {
        RunConfig {
            command,
            tolerance: None,
            grid: None,
            report: None,
            format,
        }
    }

    /// Fills in the tolerance from `--tol`, falling back to the environment.
    fn with_tolerance(mut self, flag: Option<f64>, env: Option<&str>) -> Result<Self, Usage> {
        let tol = match (flag, env) {
            (Some(t), _) => Some(t),
            (None, Some(text)) => Some(
                text.trim()
                    .parse::<f64>()
                    .map_err(|_| Usage(format!("{TOL_ENV}={text:?} is not a number")))?,
            ),
            (None, None) => None,
        };
        if let Some(t) = tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Usage(format!("tolerance must be positive and finite, got {t}")));
            }
        }
        self.tolerance = tol;
        Ok(self)
    }
}

/// A usage error: reported on standard error with exit code 2.
#[derive(Debug)]
struct Usage(String);

impl From<catalog::CatalogError> for Usage {
    fn from(e: catalog::CatalogError) -> Self {
        Usage(e.to_string())
    }
}

enum Failure {
    Usage(Usage),
    Io(io::Error),
}

impl From<Usage> for Failure {
    fn from(u: Usage) -> Self {
        Failure::Usage(u)
    }
}

impl From<catalog::CatalogError> for Failure {
    fn from(e: catalog::CatalogError) -> Self {
        Failure::Usage(e.into())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Runs the CLI with the tolerance default taken from `FRULLANI_TOL`.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let env = std::env::var(TOL_ENV).ok();
    run_with_env(argv, env.as_deref(), out, err)
}

/// [`run_with`] with the environment tolerance passed explicitly.
pub fn run_with_env<I, T>(argv: I, tol_env: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, tol_env, out, err) {
        Ok(code) => code,
        Err(Failure::Usage(Usage(msg))) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
    }
}

fn dispatch(command: Command, tol_env: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let catalog = Catalog::standard();
    match command {
        Command::List { format } => {
            list(&catalog, format, out)?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            id,
            params,
            tol,
            format,
        } => {
            let cfg = RunConfig::new(CommandKind::Verify, format).with_tolerance(tol, tol_env)?;
            let params = match params {
                Some(text) => parse_pairs(&text, 1).map_err(|e| Usage(format!("--params: {e}")))?,
                None => Params::default(),
            };
            let record = verify_entry(&catalog, &id, &params, cfg.tolerance)?;
            emit_single(&record, cfg.format, out, err)
        }
        Command::VerifyAll {
            tol,
            grid,
            report,
            format,
        } => {
            let mut cfg = RunConfig::new(CommandKind::VerifyAll, format).with_tolerance(tol, tol_env)?;
            cfg.grid = grid;
            cfg.report = report;
            verify_all_command(&catalog, &cfg, out, err)
        }
        Command::Eval {
            expr,
            a,
            b,
            power,
            tol,
            format,
        } => {
            let cfg = RunConfig::new(CommandKind::Eval, format).with_tolerance(tol, tol_env)?;
            let f = parse(&expr).map_err(|e| Usage(e.to_string()))?;
            let prob = FrullaniProblem::new(f, a, b, power).map_err(|e| Usage(e.to_string()))?;
            let record = evaluate_pipeline(&prob, cfg.tolerance.unwrap_or(catalog::SMOOTH_TOL));
            emit_single(&record, cfg.format, out, err)
        }
        Command::Series { a, p, q, terms, format } => series(a, p, q, terms, format, out),
        Command::Limits { expr, format } => limits(&expr, format, out),
    }
}

fn emit_single(
    record: &VerificationRecord,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    match format {
        Format::Text => writeln!(out, "{}", record.text_line())?,
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, record).map_err(io::Error::from)?;
            writeln!(out)?;
        }
    }
    if let Some(note) = &record.note {
        let _ = writeln!(err, "note: {note}");
    }
    Ok(exit_code(std::slice::from_ref(record)))
}

fn exit_code(records: &[VerificationRecord]) -> i32 {
    if records.iter().any(|r| r.status.is_failure()) {
        EXIT_FAILURE
    } else {
        EXIT_OK
    }
}

fn verify_all_command(
    catalog: &Catalog,
    cfg: &RunConfig,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let overrides = match &cfg.grid {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
            let lines = parse_grid_file(&text).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
            if let Some(bad) = lines.iter().find(|l| !catalog.contains(&l.entry)) {
                return Err(Usage(format!(
                    "{}: line {}: unknown entry `{}`",
                    path.display(),
                    bad.line,
                    bad.entry
                ))
                .into());
            }
            lines
        }
        None => Vec::new(),
    };
    // open the report before spending time on the run
    let mut report = match &cfg.report {
        Some(path) => Some(BufWriter::new(
            File::create(path).map_err(|e| Usage(format!("{}: {e}", path.display())))?,
        )),
        None => None,
    };

    let jobs = catalog::jobs(catalog, &overrides);
    let records = verify_all(catalog, &jobs, cfg.tolerance)?;
    let summary = Summary::of(&records);

    match report.as_mut() {
        Some(sink) => {
            emit_report(&records, cfg.format, sink)?;
            sink.flush()?;
            writeln!(out, "{summary}")?;
        }
        None => {
            emit_report(&records, cfg.format, out)?;
            if cfg.format == Format::Json {
                let _ = writeln!(err, "{summary}");
            }
        }
    }
    Ok(exit_code(&records))
}

#[derive(Serialize)]
struct ListRow<'a> {
    id: &'a str,
    source: &'a str,
    class: &'a str,
    constraints: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    alias_of: Option<&'a str>,
}

fn list(catalog: &Catalog, format: Format, out: &mut dyn Write) -> io::Result<()> {
    let listings = list_entries(catalog);
    let alias_sources: Vec<String> = catalog
        .aliases()
        .iter()
        .map(|a| {
            let renames: Vec<String> = a.rename.iter().map(|(from, to)| format!("{from}->{to}")).collect();
            format!("alias of {} ({})", a.target, renames.join(", "))
        })
        .collect();
    let mut rows: Vec<ListRow> = listings
        .iter()
        .map(|l| ListRow {
            id: l.id,
            source: &l.source,
            class: l.class.name(),
            constraints: &l.constraints,
            alias_of: None,
        })
        .collect();
    for (alias, text) in catalog.aliases().iter().zip(&alias_sources) {
        let target = catalog.get(alias.target).expect("alias targets are catalog entries");
        rows.push(ListRow {
            id: alias.id,
            source: text,
            class: target.class.name(),
            constraints: "as target",
            alias_of: Some(alias.target),
        });
    }

    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &rows).map_err(io::Error::from)?;
            writeln!(out)
        }
        Format::Text => {
            let w_id = rows.iter().map(|r| r.id.len()).max().unwrap_or(0);
            let w_src = rows.iter().map(|r| r.source.chars().count()).max().unwrap_or(0);
            let w_class = rows.iter().map(|r| r.class.len()).max().unwrap_or(0);
            for r in &rows {
                writeln!(
                    out,
                    "{:<w_id$}  {:<w_src$}  {:<w_class$}  {}",
                    r.id, r.source, r.class, r.constraints
                )?;
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct SeriesReport {
    a: f64,
    p: f64,
    q: f64,
    terms: usize,
    big_a: f64,
    q_param: f64,
    closed: f64,
    partial: f64,
    abs_diff: f64,
}

fn series(a: f64, p: f64, q: f64, terms: usize, format: Format, out: &mut dyn Write) -> Result<i32, Failure> {
    if !(p > 0.0 && q > 0.0 && p.is_finite() && q.is_finite()) {
        return Err(Usage(format!("p and q must be positive, got p={p} q={q}")).into());
    }
    let usage = |e: SeriesError| match e {
        SeriesError::Domain(msg) => Failure::Usage(Usage(msg)),
        other => Failure::Io(io::Error::other(other.to_string())),
    };
    let params = SeriesParams::new(a).map_err(usage)?;
    let closed = gr_4_324_2_closed(a, p, q).map_err(usage)?;
    let partial = gr_4_324_2_series(a, p, q, terms).map_err(usage)?;
    let report = SeriesReport {
        a,
        p,
        q,
        terms,
        big_a: params.big_a(),
        q_param: params.q(),
        closed,
        partial,
        abs_diff: (closed - partial).abs(),
    };
    match format {
        Format::Text => {
            writeln!(out, "a={a} p={p} q={q} terms={terms}")?;
            writeln!(out, "A={} Q={}", format_g17(report.big_a), format_g17(report.q_param))?;
            writeln!(out, "closed={}", format_g17(closed))?;
            writeln!(out, "partial={}", format_g17(partial))?;
            writeln!(out, "abs_diff={}", format_e3(report.abs_diff))?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &report).map_err(io::Error::from)?;
            writeln!(out)?;
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct LimitsReport {
    zero: Option<LimitVerdict>,
    infinity: Option<LimitVerdict>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    errors: Vec<String>,
}

fn limits(expr: &str, format: Format, out: &mut dyn Write) -> Result<i32, Failure> {
    let f = parse(expr).map_err(|e| Usage(e.to_string()))?;
    let unbound: Vec<String> = f
        .free_variables()
        .into_iter()
        .filter(|v| v != INTEGRATION_VARIABLE)
        .collect();
    if !unbound.is_empty() {
        return Err(Usage(format!("f may only depend on x; unbound: {}", unbound.join(", "))).into());
    }
    let cfg = ProbeConfig::default();
    let g = |x: f64| f.evaluate_at(x);
    let zero = limit_at_zero_plus(g, &cfg);
    let infinity = limit_at_infinity(g, &cfg);

    let describe = |r: &Result<LimitVerdict, ProbeError>| match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {e}"),
    };
    let failed = zero.is_err() || infinity.is_err();
    match format {
        Format::Text => {
            writeln!(out, "f(0+) = {}", describe(&zero))?;
            writeln!(out, "f(inf) = {}", describe(&infinity))?;
        }
        Format::Json => {
            let errors = [&zero, &infinity]
                .iter()
                .filter_map(|r| r.as_ref().err().map(|e| e.to_string()))
                .collect();
            let report = LimitsReport {
                zero: zero.ok(),
                infinity: infinity.ok(),
                errors,
            };
            serde_json::to_writer_pretty(&mut *out, &report).map_err(io::Error::from)?;
            writeln!(out)?;
        }
    }
    Ok(if failed { EXIT_FAILURE } else { EXIT_OK })
}
