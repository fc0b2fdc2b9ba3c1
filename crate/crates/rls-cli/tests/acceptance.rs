//! Acceptance gate: seven criteria, each printing a single verdict line.
//!
//! Every criterion is asserted, so a red criterion fails the build. The
//! series-table criterion carries one documented divergence: the last
//! published left-hand cell reflects 16-digit machine evaluation, while
//! correct 50-digit arithmetic makes both sides agree; the golden file
//! records the published pair verbatim together with a deviation note,
//! and the test asserts exactly that behaviour.

use std::time::{Duration, Instant};

use rls_core::bigfloat::{pow10, BigComplex, BigReal, Precision};
use rls_core::exact::{bernoulli, convolution_coefficient_check, is_prime};
use rls_core::identities::{lookup, Params};
use rls_core::polynomials::{build_ramanujan_type, self_reciprocal_check};
use rls_core::rootfinder::{
    classical_roots_of_unity_check, conjecture2_check, find_roots, Conjecture2Verdict,
};
use rls_core::{RatPoly, Rational};
use serde_json::Value;

const SCAN_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];
const SCAN_K_MAX: u32 = 20;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("rls").chain(args.iter().copied()).map(String::from);
    let code = rls_cli::run_with_args(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).expect("stdout is UTF-8"),
        String::from_utf8(err).expect("stderr is UTF-8"),
    )
}

fn verdict(label: &str, started: Instant, budget: Duration, checks: Result<(), String>) {
    let elapsed = started.elapsed();
    match checks {
        Ok(()) if elapsed <= budget => {
            println!("acceptance criterion {label}: PASS ({elapsed:.2?})");
        }
        Ok(()) => {
            println!(
                "acceptance criterion {label}: FAIL (over budget: {elapsed:.2?} > {budget:.2?})"
            );
            panic!("criterion {label} exceeded its runtime budget");
        }
        Err(why) => {
            println!("acceptance criterion {label}: FAIL ({why})");
            panic!("criterion {label} failed: {why}");
        }
    }
}

fn ensure(cond: bool, why: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why.to_string())
    }
}

/// Published 15-decimal-place cells of the series table, row by row.
/// The last left-hand cell is the 16-digit machine artifact.
const PUBLISHED_TABLE2: [(&str, &str); 9] = [
    ("0.154212568767021", "0.154212568767021"),
    ("0.018857641090379", "0.018857641090379"),
    ("-0.030279567070605", "-0.030279567070605"),
    ("0.003699346990223", "0.003699346990223"),
    ("0.010833801899940", "0.010833801899940"),
    ("-0.226840615859532", "-0.226840615859532"),
    ("0.161004035376020", "0.161004035376020"),
    ("1.579136704174297", "1.579136704174297"),
    ("3.915620336334279", "3.915620336334286"),
];

#[test]
fn criterion_1_series_table_reproduction() {
    let t0 = Instant::now();
    let checks = (|| {
        let (code, out, err) = run(&["table2", "--digits", "50", "--format", "json"]);
        ensure(code == 0, &format!("exit code {code}, stderr: {err}"))?;
        let v: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
        ensure(v["n"] == 1000, "default truncation is 1000 terms")?;
        ensure(v["all_rows_ok"] == true, "a row failed the golden comparison")?;
        let rows = v["rows"].as_array().ok_or("rows array")?;
        ensure(rows.len() == 9, "nine rows")?;
        for (i, row) in rows.iter().enumerate().take(8) {
            let (lhs, rhs) = PUBLISHED_TABLE2[i];
            ensure(
                row["lhs"] == lhs && row["rhs"] == rhs,
                &format!("row {i} must reproduce the published cells verbatim"),
            )?;
            ensure(row["status"] == "match", &format!("row {i} status"))?;
        }
        // The published final-row pair disagrees with itself; correct
        // arithmetic agrees on the published right-hand value.
        let last = &rows[8];
        ensure(
            last["lhs"] == PUBLISHED_TABLE2[8].1 && last["rhs"] == PUBLISHED_TABLE2[8].1,
            "final row: both recomputed sides truncate to the published right-hand cell",
        )?;
        let status = last["status"].as_str().unwrap_or("");
        ensure(status.starts_with("deviation:"), "final row carries the deviation note")?;
        // The golden file still records the published pair verbatim.
        let golden = include_str!("../golden/table2.json");
        ensure(
            golden.contains(PUBLISHED_TABLE2[8].0) && golden.contains("deviation"),
            "golden file records the published final-row pair and its note",
        )?;
        Ok(())
    })();
    verdict("1 (series table reproduction)", t0, Duration::from_secs(30), checks);
}

#[test]
fn criterion_2_polynomial_table_reproduction() {
    let t0 = Instant::now();
    let checks = (|| {
        let (code, out, err) = run(&["table1", "--digits", "50", "--format", "json"]);
        ensure(code == 0, &format!("exit code {code}, stderr: {err}"))?;
        let v: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
        ensure(v["all_rows_ok"] == true, "a row failed")?;
        let rows = v["rows"].as_array().ok_or("rows array")?;
        ensure(rows.len() == 7, "seven published rows")?;
        for row in rows {
            let tag = format!("(p={}, k={})", row["p"], row["k"]);
            ensure(
                row["coeffs_match"] == true,
                &format!("{tag}: exact coefficient match"),
            )?;
            ensure(row["origin_multiplicity"] == 2, &format!("{tag}: double root at 0"))?;
            ensure(row["roots_match"] == true, &format!("{tag}: closed-form roots"))?;
            let d: f64 = row["max_closed_form_distance"]
                .as_str()
                .ok_or("distance string")?
                .parse()
                .map_err(|_| "distance parses")?;
            ensure(d < 1e-25, &format!("{tag}: root distance {d} below 1e-25"))?;
        }
        // Every closed-form root is exactly unimodular: for the radical
        // families, a^2 + b^2 d = 1 as rationals.
        let golden: Value =
            serde_json::from_str(include_str!("../golden/table1.json")).map_err(|e| e.to_string())?;
        for row in golden["rows"].as_array().ok_or("golden rows")? {
            if row["radical"].is_null() {
                continue;
            }
            let a: Rational = row["radical"]["a"].as_str().unwrap().parse().unwrap();
            let b: Rational = row["radical"]["b"].as_str().unwrap().parse().unwrap();
            let d = row["radical"]["d"].as_u64().unwrap();
            let unit = a.clone() * &a + b.clone() * &b * Rational::from(d);
            ensure(
                unit == 1u32,
                &format!("radical family of (p={}, k={}) sits on the unit circle", row["p"], row["k"]),
            )?;
        }
        Ok(())
    })();
    verdict("2 (polynomial table reproduction)", t0, Duration::from_secs(10), checks);
}

#[test]
fn criterion_3_conjecture_1_grid() {
    let t0 = Instant::now();
    let checks = (|| {
        let (code, out, err) = run(&[
            "scan",
            "--p",
            "2,3,5,7,11,13",
            "--k",
            "1..20",
            "--digits",
            "50",
            "--modulus-tol",
            "1e-25",
            "--sep-tol",
            "1e-10",
            "--format",
            "json",
        ]);
        ensure(code == 0, &format!("exit code {code}, stderr: {err}"))?;
        let v: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
        ensure(v["summary"]["cells"] == 120, "120 grid cells")?;
        ensure(v["summary"]["errors"] == 0, "no cell errors")?;
        ensure(v["summary"]["passed"] == 120, "every cell passes")?;
        for cell in v["cells"].as_array().ok_or("cells array")? {
            let r = &cell["report"];
            let tag = format!("(p={}, k={})", cell["p"], cell["k"]);
            ensure(r["origin_multiplicity"] == 2, &format!("{tag}: origin multiplicity 2"))?;
            ensure(r["conjecture1_pass"] == true, &format!("{tag}: conjecture 1"))?;
            let dev: f64 = r["max_modulus_deviation"].as_str().unwrap().parse().unwrap();
            ensure(dev < 1e-25, &format!("{tag}: modulus deviation {dev}"))?;
            let sep: f64 = r["min_pairwise_separation"].as_str().unwrap().parse().unwrap();
            ensure(sep > 1e-10, &format!("{tag}: separation {sep}"))?;
        }
        Ok(())
    })();
    verdict("3 (conjecture 1 over the grid)", t0, Duration::from_secs(600), checks);
}

#[test]
fn criterion_4_conjecture_2_grid_exact() {
    let t0 = Instant::now();
    let checks = (|| {
        for &p in &SCAN_PRIMES {
            for k in 1..=SCAN_K_MAX {
                let (verdict, gcd) =
                    conjecture2_check(p, k).map_err(|e| format!("(p={p}, k={k}): {e}"))?;
                let expected = if k % 2 == 0 {
                    Conjecture2Verdict::OnlyPlusMinusIOverP
                } else {
                    Conjecture2Verdict::NoCommonRoots
                };
                ensure(
                    verdict == expected,
                    &format!("(p={p}, k={k}): verdict {verdict} vs parity expectation {expected}"),
                )?;
                let max_gcd_degree = if k % 2 == 0 { Some(2) } else { Some(0) };
                ensure(
                    gcd.degree() == max_gcd_degree,
                    &format!("(p={p}, k={k}): gcd degree {:?}", gcd.degree()),
                )?;
            }
        }
        Ok(())
    })();
    verdict("4 (conjecture 2 over the grid, exact)", t0, Duration::from_secs(300), checks);
}

/// One identity evaluation point: catalog id plus the parameter bundle,
/// with real/complex parameters as expression strings.
struct Case {
    id: &'static str,
    p: Option<u64>,
    k: Option<i64>,
    alpha: Option<&'static str>,
    z: Option<&'static str>,
}

const fn real_case(id: &'static str, p: Option<u64>, k: Option<i64>, alpha: Option<&'static str>) -> Case {
    Case { id, p, k, alpha, z: None }
}

const fn z_case(id: &'static str, p: Option<u64>, k: i64, z: &'static str) -> Case {
    Case { id, p, k: Some(k), alpha: None, z: Some(z) }
}

/// Three points per verification operation; the polynomially decaying
/// partial-fraction checks and the quantity-valued quotient are module
/// concerns, not residual-suite members.
const CASES: [Case; 42] = [
    real_case("euler", None, Some(1), None),
    real_case("euler", None, Some(6), None),
    real_case("euler", None, Some(10), None),
    real_case("ramanujan", None, Some(1), Some("pi")),
    real_case("ramanujan", None, Some(2), Some("1")),
    real_case("ramanujan", None, Some(-1), Some("2")),
    real_case("lerch", None, Some(0), None),
    real_case("lerch", None, Some(1), None),
    real_case("lerch", None, Some(2), None),
    real_case("thm_2_1", None, Some(1), Some("pi/2")),
    real_case("thm_2_1", None, Some(3), Some("pi")),
    real_case("thm_2_1", None, Some(-2), Some("1")),
    real_case("tanh_sum", None, Some(0), None),
    real_case("tanh_sum", None, Some(1), None),
    real_case("tanh_sum", None, Some(2), None),
    real_case("main", Some(3), Some(2), Some("pi")),
    real_case("main", Some(5), Some(1), Some("pi/5")),
    real_case("main", Some(5), Some(3), Some("pi")),
    real_case("lerch_analogue", Some(2), Some(0), None),
    real_case("lerch_analogue", Some(3), Some(1), None),
    real_case("lerch_analogue", Some(5), Some(1), None),
    real_case("negative_k", Some(2), Some(0), Some("pi/2")),
    real_case("negative_k", Some(3), Some(1), Some("1")),
    real_case("negative_k", Some(2), Some(2), Some("pi")),
    real_case("eq_2_8", None, Some(1), Some("pi")),
    real_case("eq_2_8", None, Some(2), Some("2")),
    real_case("eq_2_8", None, Some(3), Some("pi/3")),
    real_case("k0", Some(3), None, Some("pi/3")),
    real_case("k0", Some(2), None, Some("pi")),
    real_case("k0", Some(5), None, Some("1")),
    real_case("dedekind_analogue", None, None, Some("pi/2")),
    real_case("dedekind_analogue", None, None, Some("pi")),
    real_case("dedekind_analogue", None, None, Some("1/2")),
    real_case("dedekind", None, None, Some("pi")),
    real_case("dedekind", None, None, Some("2*pi")),
    real_case("dedekind", None, None, Some("1")),
    z_case("grosswald_classic", None, 1, "0,0.5"),
    z_case("grosswald_classic", None, 2, "0,1"),
    z_case("grosswald_classic", None, 3, "0.5,1.5"),
    z_case("grosswald_analogue", Some(2), 1, "0,0.5"),
    z_case("grosswald_analogue", Some(2), 2, "0,1"),
    z_case("grosswald_analogue", Some(3), 1, "0.25,1.25"),
];

fn residual_suite_at(digits: u32) -> Result<(), String> {
    let prec = Precision::new(digits);
    let bits = prec.bits();
    let bound = pow10(bits, -(i64::from(digits) - 5));
    for case in &CASES {
        let op = lookup(case.id).ok_or_else(|| format!("unknown id {}", case.id))?;
        let params = Params {
            p: case.p,
            k: case.k,
            alpha: case
                .alpha
                .map(|s| rls_cli::parse_real(s, bits))
                .transpose()
                .map_err(|e| format!("{}: {e}", case.id))?,
            z: case
                .z
                .map(|s| rls_cli::parse_complex(s, bits))
                .transpose()
                .map_err(|e| format!("{}: {e}", case.id))?,
            ..Params::default()
        };
        let report = op
            .verify(&params, prec)
            .map_err(|e| format!("{} at {:?}/{:?}/{:?}: {e}", case.id, case.p, case.k, case.alpha))?;
        let tag = format!(
            "{} (p={:?}, k={:?}) at {digits} digits",
            case.id, case.p, case.k
        );
        if !report.pass {
            return Err(format!("{tag}: report failed"));
        }
        if report.abs_residual >= bound {
            return Err(format!(
                "{tag}: residual {:?} is not below 1e-{}",
                report.abs_residual,
                digits - 5
            ));
        }
    }
    Ok(())
}

#[test]
fn criterion_5_identity_residual_suite() {
    let t0 = Instant::now();
    let checks = (|| {
        residual_suite_at(50)?;
        residual_suite_at(100)?;
        Ok(())
    })();
    verdict("5 (identity residual suite, 50 and 100 digits)", t0, Duration::from_secs(300), checks);
}

#[test]
fn criterion_6_exact_property_suite() {
    let t0 = Instant::now();
    let checks = (|| {
        // Dirichlet convolution of the twisted coefficients.
        for &p in &[2u64, 3, 5, 7] {
            for &k in &[-2i64, -1, 1, 2, 3, 4] {
                for n in 1..=500u64 {
                    let ok = convolution_coefficient_check(n, k, p)
                        .map_err(|e| format!("(n={n}, k={k}, p={p}): {e}"))?;
                    ensure(ok, &format!("convolution identity at (n={n}, k={k}, p={p})"))?;
                }
            }
        }
        // Von Staudt-Clausen: B_2m plus the reciprocals of the primes q
        // with (q-1) | 2m is an integer.
        for m in 1..=30u32 {
            let mut s = bernoulli(2 * m);
            for q in 2..=(2 * m + 1) {
                if is_prime(u64::from(q)) && (2 * m) % (q - 1) == 0 {
                    s += Rational::from((1u32, q));
                }
            }
            ensure(s.is_integer(), &format!("Von Staudt-Clausen at 2m = {}", 2 * m))?;
        }
        // Self-reciprocity of the scaled polynomial divided by z^2,
        // over the full scan grid.
        for &p in &SCAN_PRIMES {
            for k in 1..=SCAN_K_MAX {
                let rt = build_ramanujan_type(p, k).map_err(|e| e.to_string())?;
                let core = rt.scaled.shift_down(2).map_err(|e| e.to_string())?;
                let ok = self_reciprocal_check(&core).map_err(|e| e.to_string())?;
                ensure(ok, &format!("(p={p}, k={k}): scaled polynomial over z^2 is palindromic"))?;
            }
        }
        // Classical roots of unity: +-i are roots exactly when 2 | k,
        // the primitive sixth/third roots exactly when 3 | k.
        for k in 1..=30u32 {
            let r = classical_roots_of_unity_check(k).map_err(|e| e.to_string())?;
            ensure(
                r.has_pm_i == (k % 2 == 0),
                &format!("k = {k}: +-i root presence follows the parity of k"),
            )?;
            ensure(
                r.has_rho == (k % 3 == 0),
                &format!("k = {k}: rho-family presence follows divisibility by 3"),
            )?;
        }
        Ok(())
    })();
    verdict("6 (exact property suite)", t0, Duration::from_secs(300), checks);
}

/// xorshift64*: deterministic, dependency-free.
struct Rng(u64);

impl Rng {
    fn new(seed: u64) -> Self {
        Rng(seed | 1)
    }
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }
    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
    /// Nonzero rational with numerator in [-9, 9] and denominator in [1, 9].
    fn rational(&mut self) -> Rational {
        let num = 1 + self.below(9) as i64;
        let num = if self.below(2) == 0 { num } else { -num };
        let den = 1 + self.below(9);
        Rational::from((num, den))
    }
}

#[test]
fn criterion_7_root_recovery_oracle() {
    let t0 = Instant::now();
    let digits = 50u32;
    let prec = Precision::new(digits);
    let bits = prec.bits();
    let tol = pow10(bits, -i64::from(digits / 2));
    let checks = (|| {
        for trial in 0..50u64 {
            let mut rng = Rng::new(0x9E37_79B9_7F4A_7C15 ^ (trial.wrapping_mul(0xA24B_AED4_963E_E407)));
            let origin = rng.below(3) as usize;
            let mut n_real = rng.below(4) as usize;
            let n_pairs = rng.below(4) as usize;
            if origin + n_real + 2 * n_pairs == 0 {
                n_real = 1;
            }

            let mut reals: Vec<Rational> = Vec::new();
            while reals.len() < n_real {
                let r = rng.rational();
                if !reals.contains(&r) {
                    reals.push(r);
                }
            }
            let mut pairs: Vec<(Rational, Rational)> = Vec::new();
            while pairs.len() < n_pairs {
                let c = rng.rational();
                let d = Rational::from(rng.rational().abs());
                if !pairs.contains(&(c.clone(), d.clone())) {
                    pairs.push((c, d));
                }
            }

            let mut q = RatPoly::monomial(rng.rational(), origin);
            for r in &reals {
                q = q.mul(&RatPoly::new(vec![-r.clone(), Rational::from(1)]));
            }
            for (c, d) in &pairs {
                let norm = c.clone() * c + d.clone() * d;
                let lin = Rational::from(-2) * c;
                q = q.mul(&RatPoly::new(vec![norm, lin, Rational::from(1)]));
            }
            let degree = origin + reals.len() + 2 * pairs.len();
            ensure(q.degree() == Some(degree), "constructed degree")?;
            ensure(degree <= 12, "degree stays within the oracle bound")?;

            let found = find_roots(&q, prec).map_err(|e| format!("trial {trial}: {e}"))?;
            let zeros = found.roots.iter().filter(|z| z.is_zero()).count();
            ensure(zeros == origin, &format!("trial {trial}: origin multiplicity"))?;

            let mut expected: Vec<BigComplex> = Vec::new();
            for r in &reals {
                expected.push(BigComplex::with_val(bits, (BigReal::with_val(bits, r), 0)));
            }
            for (c, d) in &pairs {
                let re = BigReal::with_val(bits, c);
                let im = BigReal::with_val(bits, d);
                expected.push(BigComplex::with_val(bits, (re.clone(), im.clone())));
                expected.push(BigComplex::with_val(bits, (re, -im)));
            }
            let mut computed: Vec<BigComplex> =
                found.roots.iter().filter(|z| !z.is_zero()).cloned().collect();
            ensure(
                computed.len() == expected.len(),
                &format!("trial {trial}: nonzero root count"),
            )?;
            for e in &expected {
                let mut best: Option<(usize, BigReal)> = None;
                for (i, z) in computed.iter().enumerate() {
                    let dist = BigReal::with_val(bits, BigComplex::with_val(bits, e - z).abs_ref());
                    if best.as_ref().map_or(true, |(_, bd)| dist < *bd) {
                        best = Some((i, dist));
                    }
                }
                let (i, dist) = best.ok_or_else(|| format!("trial {trial}: no candidates left"))?;
                computed.swap_remove(i);
                if dist > tol {
                    return Err(format!(
                        "trial {trial}: a constructed root was recovered to {dist:?} only"
                    ));
                }
            }
        }
        Ok(())
    })();
    verdict("7 (root recovery oracle)", t0, Duration::from_secs(120), checks);
}
