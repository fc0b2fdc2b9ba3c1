//! `rls`: command-line front end for the verification toolkit.
//!
//! Five subcommands: `verify` runs one catalog identity at a point,
//! `table1` and `table2` rebuild the two reference tables against
//! golden files, `roots` reports the root geometry of one polynomial,
//! and `scan` audits both root conjectures over a `(p, k)` grid.
//!
//! Configuration wins in the order: explicit flag, then `RLS_*`
//! environment variable, then built-in default (50 digits, 15 guard
//! digits, JSON output). Exit codes: 0 verification passed, 1 a
//! verification failed, 2 usage error, 3 numeric or domain failure.
//! Identical invocations produce byte-identical output: every numeric
//! field is rendered to a string before serialization and parallel
//! scans merge their cells in grid order.

mod expr;
mod grid;
mod render;
mod tables;

pub use expr::{parse_complex, parse_k_range, parse_real};
pub use grid::{DEFAULT_MODULUS_TOL, DEFAULT_SEPARATION_TOL};
pub use render::Format;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use rls_core::bigfloat::Precision;
use rls_core::identities::{lookup, IdentityError, Params, VerificationReport, CATALOG};

use render::{md_value, write_csv_line, write_json, write_md_table};

pub const DEFAULT_DIGITS: u32 = 50;
pub const DEFAULT_GUARD: u32 = 15;

const ENV_HELP: &str = "Environment defaults (flags win): RLS_DIGITS, RLS_GUARD, RLS_FORMAT, \
RLS_JOBS, RLS_MODULUS_TOL, RLS_SEP_TOL.

Real expressions: pi, pi/2, 2*pi/5, 3/4, 0.25, 1e-3. Complex points: RE,IM \
with real-expression components, or a bare real, or 0.5i / i for purely \
imaginary.";

#[derive(Debug)]
pub enum CliError {
    /// Bad invocation: unknown identity, malformed value, missing
    /// parameter. Exit code 2.
    Usage(String),
    /// The computation itself refused or failed: domain violation,
    /// non-convergence. Exit code 3.
    Math(String),
}

#[derive(Parser)]
#[command(
    name = "rls",
    version,
    about = "Verification toolkit for Ramanujan-type series and polynomial identities",
    after_help = ENV_HELP
)]
pub struct Cli {
    /// Decimal digits of reported precision (env RLS_DIGITS, default 50).
    #[arg(long, global = true)]
    digits: Option<u32>,
    /// Extra working digits on top of the request (env RLS_GUARD, default 15).
    #[arg(long, global = true)]
    guard: Option<u32>,
    /// Output format (env RLS_FORMAT, default json).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Verify one identity from the catalog at the given parameters.
    Verify(VerifyArgs),
    /// Rebuild the polynomial table: exact coefficients and closed-form roots.
    Table1,
    /// Recompute the nine-row two-sided series table.
    Table2(Table2Args),
    /// Root-geometry report for one (p, k) polynomial.
    Roots(RootsArgs),
    /// Audit both root conjectures over a (p, k) grid in parallel.
    Scan(ScanArgs),
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Catalog identifier; `rls verify help` lists them all.
    identity: String,
    /// Prime modulus.
    #[arg(long)]
    p: Option<u64>,
    /// Integer index (negative where the identity allows it).
    #[arg(long, allow_hyphen_values = true)]
    k: Option<i64>,
    /// Positive real, e.g. `pi/2`, `3/4`, `0.25`.
    #[arg(long)]
    alpha: Option<String>,
    /// Upper-half-plane point `RE,IM`, e.g. `0,0.5` or `0.25,1.25`.
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    /// First coordinate of the partial-fraction identities.
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    /// Second coordinate of the partial-fraction identities.
    #[arg(long, allow_hyphen_values = true)]
    y: Option<String>,
    /// Explicit series truncation (default: chosen from the precision).
    #[arg(long)]
    n: Option<u64>,
}

#[derive(Args)]
pub struct Table2Args {
    /// Truncation order for both sides of every row.
    #[arg(long, default_value_t = 1000)]
    n: u64,
}

#[derive(Args)]
pub struct RootsArgs {
    /// Prime modulus.
    #[arg(long)]
    pub(crate) p: u64,
    /// Polynomial index, k >= 1.
    #[arg(long)]
    pub(crate) k: u32,
    /// Largest allowed | |root| - 1/p | (env RLS_MODULUS_TOL, default 1e-25).
    #[arg(long, value_name = "TOL")]
    pub(crate) modulus_tol: Option<String>,
    /// Smallest allowed distance between nonzero roots (env RLS_SEP_TOL, default 1e-10).
    #[arg(long, value_name = "TOL")]
    pub(crate) sep_tol: Option<String>,
}

#[derive(Args)]
pub struct ScanArgs {
    /// Comma-separated primes, e.g. `2,3,5,7,11,13`.
    #[arg(long, value_delimiter = ',', required = true, value_name = "P,...")]
    pub(crate) p: Vec<u64>,
    /// Single k or inclusive range `LO..HI`, e.g. `1..20`.
    #[arg(long, value_name = "K | LO..HI")]
    pub(crate) k: String,
    /// Worker threads (env RLS_JOBS, default: one per CPU).
    #[arg(long)]
    pub(crate) jobs: Option<usize>,
    /// Largest allowed | |root| - 1/p | (env RLS_MODULUS_TOL, default 1e-25).
    #[arg(long, value_name = "TOL")]
    pub(crate) modulus_tol: Option<String>,
    /// Smallest allowed distance between nonzero roots (env RLS_SEP_TOL, default 1e-10).
    #[arg(long, value_name = "TOL")]
    pub(crate) sep_tol: Option<String>,
}

/// Resolved run configuration after flag/environment/default merging.
pub struct Config {
    pub digits: u32,
    pub guard: u32,
    pub format: Format,
}

impl Config {
    pub fn precision(&self) -> Precision {
        Precision::with_guard(self.digits, self.guard)
    }

    fn resolve(cli: &Cli) -> Result<Self, CliError> {
        let digits = resolve_u32(cli.digits, "RLS_DIGITS", DEFAULT_DIGITS)?;
        if digits == 0 || digits > 100_000 {
            return Err(CliError::Usage(
                "--digits must be between 1 and 100000".to_string(),
            ));
        }
        let guard = resolve_u32(cli.guard, "RLS_GUARD", DEFAULT_GUARD)?;
        if guard > 10_000 {
            return Err(CliError::Usage("--guard must be at most 10000".to_string()));
        }
        let format = match cli.format {
            Some(f) => f,
            None => match std::env::var("RLS_FORMAT") {
                Ok(s) => Format::from_name(&s).ok_or_else(|| {
                    CliError::Usage(format!(
                        "RLS_FORMAT must be json, csv, or md, got `{s}`"
                    ))
                })?,
                Err(_) => Format::Json,
            },
        };
        Ok(Config { digits, guard, format })
    }
}

fn resolve_u32(flag: Option<u32>, env_name: &str, default: u32) -> Result<u32, CliError> {
    if let Some(v) = flag {
        return Ok(v);
    }
    match std::env::var(env_name) {
        Ok(s) => s.trim().parse::<u32>().map_err(|_| {
            CliError::Usage(format!(
                "{env_name} must be a nonnegative integer, got `{s}`"
            ))
        }),
        Err(_) => Ok(default),
    }
}

/// Parses and runs one invocation, writing the report to `out` and
/// diagnostics to `err`. Returns the process exit code.
pub fn run_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let _ = write!(err, "{e}");
            return 2;
        }
    };
    let cfg = match Config::resolve(&cli) {
        Ok(cfg) => cfg,
        Err(e) => return emit(e, err),
    };
    let result = match &cli.command {
        Cmd::Verify(a) => cmd_verify(a, &cfg, out),
        Cmd::Table1 => tables::cmd_table1(&cfg, out),
        Cmd::Table2(a) => tables::cmd_table2(a.n, &cfg, out),
        Cmd::Roots(a) => grid::cmd_roots(a, &cfg, out),
        Cmd::Scan(a) => grid::cmd_scan(a, &cfg, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => emit(e, err),
    }
}

fn emit(e: CliError, err: &mut dyn Write) -> i32 {
    match e {
        CliError::Usage(msg) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        CliError::Math(msg) => {
            let _ = writeln!(err, "error: {msg}");
            3
        }
    }
}

fn cmd_verify(a: &VerifyArgs, cfg: &Config, out: &mut dyn Write) -> Result<i32, CliError> {
    if a.identity == "help" || a.identity == "list" {
        list_identities(out);
        return Ok(0);
    }
    let op = lookup(&a.identity).ok_or_else(|| {
        let ids: Vec<&str> = CATALOG.iter().map(|op| op.id()).collect();
        CliError::Usage(format!(
            "unknown identity `{}`; available: {}",
            a.identity,
            ids.join(", ")
        ))
    })?;
    let prec = cfg.precision();
    let bits = prec.bits();
    let parse_real_flag = |name: &str, src: &Option<String>| {
        src.as_deref()
            .map(|s| expr::parse_real(s, bits))
            .transpose()
            .map_err(|e| CliError::Usage(format!("--{name}: {e}")))
    };
    let parse_complex_flag = |name: &str, src: &Option<String>| {
        src.as_deref()
            .map(|s| expr::parse_complex(s, bits))
            .transpose()
            .map_err(|e| CliError::Usage(format!("--{name}: {e}")))
    };
    let params = Params {
        p: a.p,
        k: a.k,
        alpha: parse_real_flag("alpha", &a.alpha)?,
        z: parse_complex_flag("z", &a.z)?,
        x: parse_complex_flag("x", &a.x)?,
        y: parse_complex_flag("y", &a.y)?,
        n: a.n,
    };
    let report = op.verify(&params, prec).map_err(|e| match e {
        IdentityError::MissingParam(name) => CliError::Usage(format!(
            "identity `{}` requires --{name}",
            a.identity
        )),
        other => CliError::Math(other.to_string()),
    })?;
    render_verify(&report, cfg.format, out);
    Ok(if report.pass { 0 } else { 1 })
}

fn list_identities(out: &mut dyn Write) {
    for op in CATALOG {
        let _ = writeln!(out, "{:<20} {}", op.id(), op.summary());
    }
}

fn render_verify(report: &VerificationReport, format: Format, out: &mut dyn Write) {
    let json = report.to_json();
    let params_joined = json
        .params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join("; ");
    match format {
        Format::Json => write_json(&json, out),
        Format::Csv => {
            write_csv_line(
                &[
                    "identity",
                    "params",
                    "lhs",
                    "rhs",
                    "abs_residual",
                    "rel_residual",
                    "threshold",
                    "pass",
                    "n_used",
                    "digits",
                ]
                .map(String::from),
                out,
            );
            write_csv_line(
                &[
                    json.identity_id.clone(),
                    params_joined,
                    json.lhs.clone(),
                    json.rhs.clone(),
                    json.abs_residual.clone(),
                    json.rel_residual.clone(),
                    json.threshold.clone(),
                    json.pass.to_string(),
                    json.n_used.to_string(),
                    json.digits.to_string(),
                ],
                out,
            );
        }
        Format::Md => {
            write_md_table(
                &["identity", "parameters", "lhs", "rhs", "abs residual", "verdict"],
                &[vec![
                    json.identity_id.clone(),
                    params_joined,
                    md_value(&report.lhs),
                    md_value(&report.rhs),
                    json.abs_residual.clone(),
                    if report.pass { "pass" } else { "FAIL" }.to_string(),
                ]],
                out,
            );
        }
    }
}
