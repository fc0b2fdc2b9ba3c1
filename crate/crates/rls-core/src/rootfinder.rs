//! Simultaneous root finding (Aberth-Ehrlich) and the root-location
//! checks behind the two conjectures.
//!
//! The origin multiplicity is always stripped exactly from the coefficient
//! list before any iteration, so the reported multiplicity-two root at zero
//! of the Ramanujan-type polynomials is a statement about exact rationals,
//! not about clustered numerical roots.

use rug::float::Special;
use rug::ops::Pow;

use crate::bigfloat::{pow10, real_from_rational, BigComplex, BigReal, Precision};
use crate::exact::{eval_gaussian, poly_gcd, ExactError, GaussianRational, Integer, RatPoly, Rational};
use crate::polynomials::{build_classical, build_ramanujan_type, PolynomialError};

/// Errors raised by root finding.
#[derive(Debug, thiserror::Error)]
pub enum RootError {
    #[error("domain error: {0}")]
    Domain(String),
    /// The iteration did not converge; the partial approximations at the
    /// point of failure are carried for inspection.
    #[error("root iteration failed to converge after {iterations} sweeps")]
    NonConvergence {
        iterations: usize,
        partial: Vec<BigComplex>,
    },
    #[error(transparent)]
    Polynomial(#[from] PolynomialError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Roots of one polynomial, sorted by (modulus, principal argument),
/// with the residual `|q(root)|` for each.
#[derive(Clone, Debug)]
pub struct RootSet {
    pub roots: Vec<BigComplex>,
    pub residuals: Vec<BigReal>,
    pub precision: Precision,
}

/// Finds all complex roots of `q` (degree >= 1) at the given precision.
///
/// The origin multiplicity is removed exactly; an even remaining
/// polynomial is reduced through `w = z^2` and both square roots of every
/// `w`-root are re-expanded; every root is then Newton-polished against
/// the full deflated polynomial. Residuals are evaluated on the original
/// `q` and must all fall below `10^-(digits/2)`.
pub fn find_roots(q: &RatPoly, prec: Precision) -> Result<RootSet, RootError> {
    find_roots_with(q, prec, true)
}

/// As [`find_roots`], with the even-polynomial reduction switchable (it is
/// disabled when re-verifying counterexample candidates, so the two runs
/// take genuinely different numerical paths).
pub fn find_roots_with(
    q: &RatPoly,
    prec: Precision,
    allow_even_reduction: bool,
) -> Result<RootSet, RootError> {
    if !matches!(q.degree(), Some(d) if d >= 1) {
        return Err(RootError::Domain(
            "root finding requires degree >= 1".into(),
        ));
    }
    let bits = prec.bits();
    let m0 = q.origin_multiplicity();
    let reduced = q.shift_down(m0).map_err(RootError::Exact)?;
    let mut roots: Vec<BigComplex> = (0..m0).map(|_| BigComplex::new(bits)).collect();

    if let Some(rdeg) = reduced.degree() {
        if rdeg >= 1 {
            let rc: Vec<BigComplex> = reduced
                .coeffs()
                .iter()
                .map(|c| BigComplex::with_val(bits, (real_from_rational(c, prec), 0)))
                .collect();
            let mut found = if allow_even_reduction && reduced.is_even_poly() && rdeg >= 2 {
                let wc: Vec<BigComplex> = (0..=(rdeg / 2))
                    .map(|i| {
                        BigComplex::with_val(bits, (real_from_rational(&reduced.coeff(2 * i), prec), 0))
                    })
                    .collect();
                let w_roots = aberth(&wc, prec)?;
                let mut expanded = Vec::with_capacity(2 * w_roots.len());
                for w in w_roots {
                    let s = w.sqrt();
                    expanded.push(s.clone());
                    expanded.push(-s);
                }
                expanded
            } else {
                aberth(&rc, prec)?
            };
            let drc = derivative_coeffs(&rc, bits);
            for z in &mut found {
                newton_polish(z, &rc, &drc);
            }
            roots.extend(found);
        }
    }

    // Residuals against the original polynomial.
    let qc: Vec<BigComplex> = q
        .coeffs()
        .iter()
        .map(|c| BigComplex::with_val(bits, (real_from_rational(c, prec), 0)))
        .collect();
    let residual_limit = pow10(bits, -i64::from(prec.digits / 2));
    let mut residuals = Vec::with_capacity(roots.len());
    for z in &roots {
        let r = cabs(&horner(&qc, z), bits);
        if r >= residual_limit {
            return Err(RootError::NonConvergence {
                iterations: 0,
                partial: roots.clone(),
            });
        }
        residuals.push(r);
    }

    // Sort by (modulus, principal argument), keeping residuals aligned.
    let mut idx: Vec<usize> = (0..roots.len()).collect();
    let keys: Vec<(BigReal, BigReal)> = roots
        .iter()
        .map(|z| {
            let m = cabs(z, bits);
            let arg = BigReal::with_val(bits, z.imag()).atan2(&BigReal::with_val(bits, z.real()));
            (m, arg)
        })
        .collect();
    idx.sort_by(|&a, &b| {
        keys[a]
            .0
            .partial_cmp(&keys[b].0)
            .unwrap()
            .then(keys[a].1.partial_cmp(&keys[b].1).unwrap())
    });
    let roots = idx.iter().map(|&i| roots[i].clone()).collect();
    let residuals = idx.iter().map(|&i| residuals[i].clone()).collect();
    Ok(RootSet {
        roots,
        residuals,
        precision: prec,
    })
}

fn cabs(z: &BigComplex, bits: u32) -> BigReal {
    BigReal::with_val(bits, z.abs_ref())
}

fn horner(coeffs: &[BigComplex], z: &BigComplex) -> BigComplex {
    let bits = z.prec().0;
    let mut acc = BigComplex::new(bits);
    for c in coeffs.iter().rev() {
        acc *= z;
        acc += c;
    }
    acc
}

fn derivative_coeffs(coeffs: &[BigComplex], bits: u32) -> Vec<BigComplex> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| BigComplex::with_val(bits, c * BigComplex::with_val(bits, (i as u32, 0))))
        .collect()
}

fn newton_polish(z: &mut BigComplex, coeffs: &[BigComplex], deriv: &[BigComplex]) {
    for _ in 0..3 {
        let p = horner(coeffs, z);
        let dp = horner(deriv, z);
        if dp.is_zero() {
            return;
        }
        *z -= p / dp;
    }
}

/// Aberth-Ehrlich simultaneous iteration on a monic copy of `coeffs`
/// (ascending, leading nonzero, degree >= 1).
///
/// Starting points sit on the Cauchy-bound circle at golden-ratio angles,
/// which are never symmetric under conjugation or negation, so symmetric
/// root constellations cannot trap the iteration. The sweep stops when the
/// largest correction falls below `10^-(working_digits - 5)`; more than
/// `200 * degree` sweeps is a hard error carrying the partial state.
fn aberth(coeffs: &[BigComplex], prec: Precision) -> Result<Vec<BigComplex>, RootError> {
    let bits = prec.bits();
    let n = coeffs.len() - 1;
    let lead = coeffs.last().expect("nonzero leading coefficient");
    let monic: Vec<BigComplex> = coeffs
        .iter()
        .map(|c| BigComplex::with_val(bits, c / lead))
        .collect();
    let deriv = derivative_coeffs(&monic, bits);

    // Cauchy bound: all roots lie within 1 + max |c_i|.
    let mut radius = BigReal::with_val(bits, 1);
    for c in monic.iter().take(n) {
        let m = cabs(c, bits);
        if m > radius {
            radius = m;
        }
    }
    radius += 1u32;

    const GOLDEN_FRAC: f64 = 0.618_033_988_749_894_9;
    let two_pi = crate::bigfloat::pi(prec) * 2u32;
    let mut z: Vec<BigComplex> = (0..n)
        .map(|i| {
            let theta = BigReal::with_val(bits, ((i as f64 + 1.0) * GOLDEN_FRAC).fract()) * &two_pi;
            let (sin, cos) = theta.sin_cos(BigReal::new(bits));
            BigComplex::with_val(bits, (cos * &radius, sin * &radius))
        })
        .collect();

    let tol = pow10(bits, -(i64::from(prec.working_digits()) - 5));
    let max_sweeps = 200 * n;
    for _sweep in 0..max_sweeps {
        let mut max_correction = BigReal::new(bits);
        for i in 0..n {
            let p = horner(&monic, &z[i]);
            if p.is_zero() {
                continue;
            }
            let dp = horner(&deriv, &z[i]);
            if dp.is_zero() {
                // A critical point: nudge off it and keep sweeping.
                z[i] += BigComplex::with_val(bits, (&radius * pow10(bits, -3), 0));
                max_correction = BigReal::with_val(bits, Special::Infinity);
                continue;
            }
            let newton = p / dp;
            let mut s = BigComplex::new(bits);
            let mut collided = false;
            for j in 0..n {
                if j == i {
                    continue;
                }
                let d = BigComplex::with_val(bits, &z[i] - &z[j]);
                if d.is_zero() {
                    collided = true;
                    break;
                }
                s += d.recip();
            }
            if collided {
                z[i] += BigComplex::with_val(bits, (&radius * pow10(bits, -3), 0));
                max_correction = BigReal::with_val(bits, Special::Infinity);
                continue;
            }
            let denom = BigComplex::with_val(bits, (1, 0)) - newton.clone() * &s;
            let w = if denom.is_zero() {
                newton
            } else {
                newton / denom
            };
            let wm = cabs(&w, bits);
            if wm > max_correction {
                max_correction = wm;
            }
            z[i] -= w;
        }
        if max_correction < tol {
            return Ok(z);
        }
    }
    Err(RootError::NonConvergence {
        iterations: max_sweeps,
        partial: z,
    })
}

/// Verdict of the exact GCD comparison behind the second conjecture.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conjecture2Verdict {
    /// `gcd = 1`: no common roots at all.
    NoCommonRoots,
    /// `gcd` is a rational multiple of `p^2 z^2 + 1`: exactly `+-i/p`.
    OnlyPlusMinusIOverP,
    /// Anything else (never observed; would be a counterexample).
    Other,
}

impl std::fmt::Display for Conjecture2Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::NoCommonRoots => write!(f, "no common roots"),
            Self::OnlyPlusMinusIOverP => write!(f, "common roots exactly +-i/p"),
            Self::Other => write!(f, "unexpected common-root structure"),
        }
    }
}

/// Exact check of the common roots of `R_{2k+1, p}(z)` and `(pz)^(2k) - 1`.
///
/// Everything is rational: the verdict cannot be contaminated by floating
/// point. Returns the verdict and the monic GCD itself.
pub fn conjecture2_check(p: u64, k: u32) -> Result<(Conjecture2Verdict, RatPoly), RootError> {
    let rt = build_ramanujan_type(p, k)?;
    let mut cyc = vec![Rational::new(); 2 * k as usize + 1];
    cyc[0] = Rational::from(-1);
    cyc[2 * k as usize] = Rational::from(Integer::from(p).pow(2 * k));
    let cyc = RatPoly::new(cyc);
    let g = poly_gcd(&rt.poly, &cyc).map_err(RootError::Exact)?;
    let expected = RatPoly::new(vec![
        Rational::from((Integer::from(1), Integer::from(p * p))),
        Rational::new(),
        Rational::from(1),
    ]);
    let verdict = if g.degree() == Some(0) {
        Conjecture2Verdict::NoCommonRoots
    } else if g == expected {
        Conjecture2Verdict::OnlyPlusMinusIOverP
    } else {
        Conjecture2Verdict::Other
    };
    Ok((verdict, g))
}

/// Full numerical and exact report for one `(p, k)` cell.
#[derive(Clone, Debug)]
pub struct RootReport {
    pub p: u64,
    pub k: u32,
    /// Exact multiplicity of the root at the origin.
    pub origin_multiplicity: usize,
    /// `max | |root| - 1/p |` over the nonzero roots of the unscaled
    /// polynomial.
    pub max_modulus_deviation: BigReal,
    /// Minimal pairwise distance between nonzero roots (infinite when
    /// fewer than two).
    pub min_pairwise_separation: BigReal,
    pub conjecture1_pass: bool,
    pub conjecture2_verdict: Conjecture2Verdict,
    /// The exact monic GCD behind the conjecture-2 verdict.
    pub gcd_poly: RatPoly,
    /// True when the first pass failed and the cell was re-verified at
    /// four times the precision with the even reduction disabled.
    pub escalated: bool,
}

/// Checks Conjecture 1 (and embeds the exact Conjecture 2 verdict) for one
/// `(p, k)` cell.
///
/// A failing first pass is never reported directly: the cell is re-run at
/// four times the digits with the `w = z^2` reduction disabled, and the
/// escalated run decides.
pub fn conjecture1_check(
    p: u64,
    k: u32,
    prec: Precision,
    modulus_tol: &BigReal,
    separation_tol: &BigReal,
) -> Result<RootReport, RootError> {
    let rt = build_ramanujan_type(p, k)?;
    let origin_multiplicity = rt.poly.origin_multiplicity();

    let evaluate = |prec: Precision,
                    allow_even: bool|
     -> Result<(BigReal, BigReal, bool), RootError> {
        let bits = prec.bits();
        let rs = find_roots_with(&rt.poly, prec, allow_even)?;
        let inv_p = BigReal::with_val(bits, p).recip();
        let mut max_dev = BigReal::new(bits);
        let nonzero: Vec<&BigComplex> = rs.roots.iter().filter(|z| !z.is_zero()).collect();
        for z in &nonzero {
            let dev = (cabs(z, bits) - &inv_p).abs();
            if dev > max_dev {
                max_dev = dev;
            }
        }
        let mut min_sep = BigReal::with_val(bits, Special::Infinity);
        for (a, za) in nonzero.iter().enumerate() {
            for zb in nonzero.iter().skip(a + 1) {
                let d = cabs(&BigComplex::with_val(bits, *za - *zb), bits);
                if d < min_sep {
                    min_sep = d;
                }
            }
        }
        let pass = origin_multiplicity == 2
            && rs.roots.len() == 2 * k as usize
            && max_dev < *modulus_tol
            && min_sep > *separation_tol;
        Ok((max_dev, min_sep, pass))
    };

    let (mut max_dev, mut min_sep, mut pass) = evaluate(prec, true)?;
    let mut escalated = false;
    if !pass {
        escalated = true;
        let (d, s, p2) = evaluate(prec.escalate(), false)?;
        max_dev = d;
        min_sep = s;
        pass = p2;
    }
    let (conjecture2_verdict, gcd_poly) = conjecture2_check(p, k)?;
    Ok(RootReport {
        p,
        k,
        origin_multiplicity,
        max_modulus_deviation: max_dev,
        min_pairwise_separation: min_sep,
        conjecture1_pass: pass,
        conjecture2_verdict,
        gcd_poly,
        escalated,
    })
}

/// Exact unimodular-root census for the classical polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootsOfUnityReport {
    pub k: u32,
    /// `+-i` are roots.
    pub has_pm_i: bool,
    /// `+-rho, +-rho^2` (`rho = e^(2 pi i / 3)`) are roots.
    pub has_rho: bool,
}

/// Evaluates the classical polynomial exactly at the candidate roots of
/// unity: at `+-i` through Gaussian rationals, at the sixth-root family
/// through exact remainders modulo `z^2 + z + 1` and `z^2 - z + 1`.
pub fn classical_roots_of_unity_check(k: u32) -> Result<RootsOfUnityReport, RootError> {
    let c = build_classical(k)?;
    let at_i = eval_gaussian(&c.poly, &GaussianRational::i());
    let minus_i = GaussianRational::new(Rational::new(), Rational::from(-1));
    let at_minus_i = eval_gaussian(&c.poly, &minus_i);
    let has_pm_i = at_i.is_zero() && at_minus_i.is_zero();

    let rho_min = RatPoly::new(vec![Rational::from(1), Rational::from(1), Rational::from(1)]);
    let neg_rho_min = RatPoly::new(vec![Rational::from(1), Rational::from(-1), Rational::from(1)]);
    let has_rho = c.poly.rem(&rho_min).map_err(RootError::Exact)?.is_zero()
        && c.poly.rem(&neg_rho_min).map_err(RootError::Exact)?.is_zero();
    Ok(RootsOfUnityReport { k, has_pm_i, has_rho })
}
