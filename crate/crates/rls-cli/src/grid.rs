//! Root-geometry reports: a single `(p, k)` cell or a parallel grid
//! audit of both conjectures.
//!
//! Grid cells are evaluated on a dedicated thread pool sized by
//! `--jobs`, collected in grid order, and rendered from that fixed
//! order, so the output is byte-identical whatever the thread count.
//! A cell that errors is reported in place and never disturbs its
//! neighbours; any such error turns the exit code into 3.

use std::io::Write;

use rayon::prelude::*;
use rls_core::bigfloat::{to_sig_string, BigReal};
use rls_core::exact::is_prime;
use rls_core::rootfinder::{conjecture1_check, Conjecture2Verdict, RootReport};
use serde::Serialize;

use crate::expr::{parse_k_range, parse_real};
use crate::render::{write_csv_line, write_json, write_md_table, Format};
use crate::{CliError, Config, RootsArgs, ScanArgs};

pub const DEFAULT_MODULUS_TOL: &str = "1e-25";
pub const DEFAULT_SEPARATION_TOL: &str = "1e-10";

#[derive(Serialize, Clone)]
pub struct RootReportOut {
    pub p: u64,
    pub k: u32,
    pub origin_multiplicity: usize,
    pub max_modulus_deviation: String,
    pub min_pairwise_separation: String,
    pub conjecture1_pass: bool,
    pub conjecture2_verdict: String,
    /// The verdict expected from the parity of `k`: common roots
    /// exactly at `+-i/p` when `k` is even, none when `k` is odd.
    pub parity_consistent: bool,
    pub gcd_poly: String,
    pub escalated: bool,
    pub pass: bool,
}

fn report_out(r: &RootReport) -> RootReportOut {
    let expected = if r.k % 2 == 0 {
        Conjecture2Verdict::OnlyPlusMinusIOverP
    } else {
        Conjecture2Verdict::NoCommonRoots
    };
    let parity_consistent = r.conjecture2_verdict == expected;
    RootReportOut {
        p: r.p,
        k: r.k,
        origin_multiplicity: r.origin_multiplicity,
        max_modulus_deviation: to_sig_string(&r.max_modulus_deviation, 6),
        min_pairwise_separation: to_sig_string(&r.min_pairwise_separation, 6),
        conjecture1_pass: r.conjecture1_pass,
        conjecture2_verdict: r.conjecture2_verdict.to_string(),
        parity_consistent,
        gcd_poly: r.gcd_poly.pretty("z"),
        escalated: r.escalated,
        pass: r.conjecture1_pass && parity_consistent,
    }
}

/// Resolves a tolerance: flag, then environment, then default.
pub(crate) fn resolve_tol(
    flag: Option<&str>,
    env_name: &str,
    default: &str,
    bits: u32,
) -> Result<BigReal, CliError> {
    let src = match flag {
        Some(s) => s.to_string(),
        None => std::env::var(env_name).unwrap_or_else(|_| default.to_string()),
    };
    let v = parse_real(&src, bits)
        .map_err(|e| CliError::Usage(format!("tolerance `{src}`: {e}")))?;
    if v.cmp0() != Some(std::cmp::Ordering::Greater) {
        return Err(CliError::Usage(format!("tolerance `{src}` must be positive")));
    }
    Ok(v)
}

fn resolve_jobs(flag: Option<usize>) -> Result<Option<usize>, CliError> {
    let jobs = match flag {
        Some(j) => Some(j),
        None => match std::env::var("RLS_JOBS") {
            Ok(s) => Some(s.trim().parse::<usize>().map_err(|_| {
                CliError::Usage(format!("RLS_JOBS must be a positive integer, got `{s}`"))
            })?),
            Err(_) => None,
        },
    };
    if jobs == Some(0) {
        return Err(CliError::Usage("--jobs must be >= 1".to_string()));
    }
    Ok(jobs)
}

fn require_prime(p: u64) -> Result<(), CliError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(CliError::Usage(format!("p must be prime, got {p}")))
    }
}

const ROOTS_CSV_HEADER: [&str; 11] = [
    "p",
    "k",
    "origin_multiplicity",
    "max_modulus_deviation",
    "min_pairwise_separation",
    "conjecture1_pass",
    "conjecture2_verdict",
    "parity_consistent",
    "escalated",
    "pass",
    "outcome",
];

fn report_csv_row(r: &RootReportOut, outcome: &str) -> Vec<String> {
    vec![
        r.p.to_string(),
        r.k.to_string(),
        r.origin_multiplicity.to_string(),
        r.max_modulus_deviation.clone(),
        r.min_pairwise_separation.clone(),
        r.conjecture1_pass.to_string(),
        r.conjecture2_verdict.clone(),
        r.parity_consistent.to_string(),
        r.escalated.to_string(),
        r.pass.to_string(),
        outcome.to_string(),
    ]
}

const ROOTS_MD_HEADER: [&str; 8] = [
    "p",
    "k",
    "modulus deviation",
    "min separation",
    "conjecture 1",
    "conjecture 2",
    "escalated",
    "status",
];

fn report_md_row(r: &RootReportOut, outcome: &str) -> Vec<String> {
    vec![
        r.p.to_string(),
        r.k.to_string(),
        r.max_modulus_deviation.clone(),
        r.min_pairwise_separation.clone(),
        if r.conjecture1_pass { "pass" } else { "FAIL" }.to_string(),
        r.conjecture2_verdict.clone(),
        r.escalated.to_string(),
        outcome.to_string(),
    ]
}

pub fn cmd_roots(args: &RootsArgs, cfg: &Config, out: &mut dyn Write) -> Result<i32, CliError> {
    require_prime(args.p)?;
    if args.k == 0 {
        return Err(CliError::Usage("k = 0 has no polynomial; use k >= 1".to_string()));
    }
    let prec = cfg.precision();
    let bits = prec.bits();
    let mtol = resolve_tol(
        args.modulus_tol.as_deref(),
        "RLS_MODULUS_TOL",
        DEFAULT_MODULUS_TOL,
        bits,
    )?;
    let stol = resolve_tol(
        args.sep_tol.as_deref(),
        "RLS_SEP_TOL",
        DEFAULT_SEPARATION_TOL,
        bits,
    )?;
    let report = conjecture1_check(args.p, args.k, prec, &mtol, &stol)
        .map_err(|e| CliError::Math(e.to_string()))?;
    let row = report_out(&report);
    let outcome = if row.pass { "pass" } else { "fail" };
    match cfg.format {
        Format::Json => write_json(&row, out),
        Format::Csv => {
            write_csv_line(&ROOTS_CSV_HEADER.map(String::from), out);
            write_csv_line(&report_csv_row(&row, outcome), out);
        }
        Format::Md => write_md_table(&ROOTS_MD_HEADER, &[report_md_row(&row, outcome)], out),
    }
    Ok(if row.pass { 0 } else { 1 })
}

#[derive(Serialize)]
pub struct ScanCell {
    pub p: u64,
    pub k: u32,
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<RootReportOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Serialize)]
pub struct ScanSummary {
    pub cells: usize,
    pub passed: usize,
    pub conjecture_failures: usize,
    pub errors: usize,
}

#[derive(Serialize)]
pub struct ScanOut {
    pub digits: u32,
    pub modulus_tol: String,
    pub separation_tol: String,
    pub summary: ScanSummary,
    pub cells: Vec<ScanCell>,
}

pub fn cmd_scan(args: &ScanArgs, cfg: &Config, out: &mut dyn Write) -> Result<i32, CliError> {
    let mut primes = args.p.clone();
    primes.sort_unstable();
    primes.dedup();
    if primes.is_empty() {
        return Err(CliError::Usage("--p needs at least one prime".to_string()));
    }
    for &p in &primes {
        require_prime(p)?;
    }
    let ks = parse_k_range(&args.k).map_err(|e| CliError::Usage(format!("--k: {e}")))?;
    let prec = cfg.precision();
    let bits = prec.bits();
    let mtol = resolve_tol(
        args.modulus_tol.as_deref(),
        "RLS_MODULUS_TOL",
        DEFAULT_MODULUS_TOL,
        bits,
    )?;
    let stol = resolve_tol(
        args.sep_tol.as_deref(),
        "RLS_SEP_TOL",
        DEFAULT_SEPARATION_TOL,
        bits,
    )?;
    let jobs = resolve_jobs(args.jobs)?;

    let grid: Vec<(u64, u32)> = primes
        .iter()
        .flat_map(|&p| ks.iter().map(move |&k| (p, k)))
        .collect();

    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j);
    }
    let pool = builder.build().map_err(|e| CliError::Math(e.to_string()))?;
    // Indexed collect keeps grid order, so the merge is deterministic
    // for every thread count.
    let cells: Vec<ScanCell> = pool.install(|| {
        grid.par_iter()
            .map(|&(p, k)| match conjecture1_check(p, k, prec, &mtol, &stol) {
                Ok(report) => {
                    let row = report_out(&report);
                    let outcome = if row.pass {
                        "pass".to_string()
                    } else {
                        let mut faults = Vec::new();
                        if !row.conjecture1_pass {
                            faults.push("conjecture 1 failed");
                        }
                        if !row.parity_consistent {
                            faults.push("conjecture 2 parity mismatch");
                        }
                        faults.join("; ")
                    };
                    ScanCell { p, k, outcome, report: Some(row), error: None }
                }
                Err(e) => ScanCell {
                    p,
                    k,
                    outcome: "error".to_string(),
                    report: None,
                    error: Some(e.to_string()),
                },
            })
            .collect()
    });

    let passed = cells.iter().filter(|c| c.outcome == "pass").count();
    let errors = cells.iter().filter(|c| c.error.is_some()).count();
    let conjecture_failures = cells.len() - passed - errors;
    let scan = ScanOut {
        digits: cfg.digits,
        modulus_tol: to_sig_string(&mtol, 6),
        separation_tol: to_sig_string(&stol, 6),
        summary: ScanSummary {
            cells: cells.len(),
            passed,
            conjecture_failures,
            errors,
        },
        cells,
    };
    match cfg.format {
        Format::Json => write_json(&scan, out),
        Format::Csv => {
            write_csv_line(&ROOTS_CSV_HEADER.map(String::from), out);
            for c in &scan.cells {
                match &c.report {
                    Some(r) => write_csv_line(&report_csv_row(r, &c.outcome), out),
                    None => {
                        let mut row = vec![c.p.to_string(), c.k.to_string()];
                        row.extend(std::iter::repeat(String::new()).take(8));
                        row.push(format!(
                            "error: {}",
                            c.error.as_deref().unwrap_or("unknown")
                        ));
                        write_csv_line(&row, out);
                    }
                }
            }
        }
        Format::Md => {
            let rows: Vec<Vec<String>> = scan
                .cells
                .iter()
                .map(|c| match &c.report {
                    Some(r) => report_md_row(r, &c.outcome),
                    None => {
                        let mut row = vec![c.p.to_string(), c.k.to_string()];
                        row.extend(std::iter::repeat("-".to_string()).take(5));
                        row.push(format!(
                            "error: {}",
                            c.error.as_deref().unwrap_or("unknown")
                        ));
                        row
                    }
                })
                .collect();
            write_md_table(&ROOTS_MD_HEADER, &rows, out);
            let _ = writeln!(
                out,
                "\n{} cells: {} passed, {} conjecture failures, {} errors",
                scan.summary.cells,
                scan.summary.passed,
                scan.summary.conjecture_failures,
                scan.summary.errors
            );
        }
    }
    Ok(if scan.summary.errors > 0 {
        3
    } else if scan.summary.conjecture_failures > 0 {
        1
    } else {
        0
    })
}
