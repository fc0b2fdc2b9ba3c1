//! Complex-valued verification operations: the upper-half-plane
//! transformations, the quotient quantity built from them, and the two
//! truncated partial-fraction decompositions.
//!
//! The partial-fraction identities converge only polynomially, so their
//! reports carry a threshold of the form `default + 4 * tail`, where `tail`
//! is a proven bound on the discarded terms; the bound itself is recorded
//! via the threshold field rather than silently absorbed.

use std::collections::BTreeMap;

use rug::ops::Pow;

use crate::bigfloat::{
    complex_to_sig_string, frak_f, grosswald_f, l_principal, pi, pow10, real_from_rational,
    zeta_int_via_series, BigComplex, BigReal, Precision, SeriesParams,
};
use crate::exact::{check_prime, Integer, Rational};
use crate::polynomials::{build_classical, build_ramanujan_type};

use super::{
    check_k_cap, eval_poly_complex, two_pi_i_odd_power, IdentityError, Value, VerificationReport,
};

fn cabs(z: &BigComplex, bits: u32) -> BigReal {
    BigReal::with_val(bits, z.abs_ref())
}

fn require_upper_half(z: &BigComplex) -> Result<(), IdentityError> {
    let im = z.imag();
    if !(im.is_finite() && z.real().is_finite()) {
        return Err(IdentityError::Domain("z must be finite".into()));
    }
    if !(im.is_sign_positive() && !im.is_zero()) {
        return Err(IdentityError::Domain("z must lie in the upper half plane".into()));
    }
    Ok(())
}

/// With no explicit truncation index the series cutoffs are derived from
/// the exponential decay rates `Im z` and `Im(-1/(c z))`; below `1e-6`
/// the derived cutoff would be astronomically large, so such points are
/// rejected instead of ground through.
fn decay_floor(ims: [&BigReal; 2], bits: u32) -> Result<(), IdentityError> {
    let floor = pow10(bits, -6);
    for im in ims {
        if *im <= floor {
            return Err(IdentityError::Domain(
                "the series decay rate is below 1e-6; pass an explicit n to force truncation"
                    .into(),
            ));
        }
    }
    Ok(())
}

/// The classical transformation on the upper half plane, `k >= 1`:
///
/// `F_{2k+1}(z) - z^(2k) F_{2k+1}(-1/z)
///    = zeta(2k+1)/2 * (z^(2k) - 1) + (2 pi i)^(2k+1)/(2z) * R_{2k+1}(z)`
///
/// with `R_{2k+1}` the classical Ramanujan polynomial.
pub fn verify_grosswald_classic(
    k: u32,
    z: &BigComplex,
    n_max: Option<u64>,
    prec: Precision,
) -> Result<VerificationReport, IdentityError> {
    if k < 1 {
        return Err(IdentityError::Domain("k must be >= 1".into()));
    }
    check_k_cap(k.into())?;
    let bits = prec.bits();
    let z = BigComplex::with_val(bits, z);
    require_upper_half(&z)?;
    let w = -z.clone().recip();
    if n_max.is_none() {
        decay_floor([z.imag(), w.imag()], bits)?;
    }
    let fa = grosswald_f(k, &z, n_max, prec)?;
    let fb = grosswald_f(k, &w, n_max, prec)?;
    let z2k = z.clone().pow(2 * k);
    let lhs = fa.value - z2k.clone() * fb.value;
    let zeta = zeta_int_via_series(2 * k + 1, prec)?;
    let poly = eval_poly_complex(&build_classical(k)?.poly, &z, prec);
    let rhs = (z2k - 1u32) * &BigReal::with_val(bits, &zeta / 2u32)
        + two_pi_i_odd_power(k, prec) * poly / (z.clone() * 2u32);
    let mut params = BTreeMap::new();
    params.insert("k".into(), k.to_string());
    params.insert("z".into(), complex_to_sig_string(&z, prec.digits));
    if let Some(n) = n_max {
        params.insert("n".into(), n.to_string());
    }
    Ok(VerificationReport::build(
        "grosswald_classic",
        params,
        Value::Complex(lhs),
        Value::Complex(rhs),
        prec.threshold(),
        fa.n_used.max(fb.n_used),
        prec,
    ))
}

/// The twisted transformation on the upper half plane, prime `p`, `k >= 1`:
///
/// `(pz)^(2k) frak_F(-1/(p^2 z)) - frak_F(z)
///    = (p-1)/2 * L(2k+1, chi_1) * ((pz)^(2k) - 1)
///      + (2 pi i)^(2k+1) / (2z p^(2k+2)) * R_{2k+1, p}(z)`.
pub fn verify_grosswald_analogue(
    p: u64,
    k: u32,
    z: &BigComplex,
    n_max: Option<u64>,
    prec: Precision,
) -> Result<VerificationReport, IdentityError> {
    check_prime(p)?;
    if k < 1 {
        return Err(IdentityError::Domain("k must be >= 1".into()));
    }
    check_k_cap(k.into())?;
    let bits = prec.bits();
    let z = BigComplex::with_val(bits, z);
    require_upper_half(&z)?;
    let w = -(z.clone() * p * p).recip();
    if n_max.is_none() {
        decay_floor([z.imag(), w.imag()], bits)?;
    }
    let mut series = SeriesParams::new(p, i64::from(k))?;
    if let Some(n) = n_max {
        series = series.with_n_max(n);
    }
    let fa = frak_f(&series, &w, prec)?;
    let fb = frak_f(&series, &z, prec)?;
    let pz2k = (z.clone() * p).pow(2 * k);
    let lhs = pz2k.clone() * fa.value - fb.value;
    let l_value = l_principal(2 * k + 1, p, prec)?;
    let half_pm1 = real_from_rational(&Rational::from((Integer::from(p) - 1u32, Integer::from(2))), prec);
    let poly = eval_poly_complex(&build_ramanujan_type(p, k)?.poly, &z, prec);
    let p_pow = real_from_rational(&Rational::from(Integer::from(p).pow(2 * k + 2)), prec);
    let rhs = (pz2k - 1u32) * &BigReal::with_val(bits, half_pm1 * l_value)
        + two_pi_i_odd_power(k, prec) * poly / (z.clone() * 2u32 * &p_pow);
    let mut params = BTreeMap::new();
    params.insert("p".into(), p.to_string());
    params.insert("k".into(), k.to_string());
    params.insert("z".into(), complex_to_sig_string(&z, prec.digits));
    if let Some(n) = n_max {
        params.insert("n".into(), n.to_string());
    }
    Ok(VerificationReport::build(
        "grosswald_analogue",
        params,
        Value::Complex(lhs),
        Value::Complex(rhs),
        prec.threshold(),
        fa.n_used.max(fb.n_used),
        prec,
    ))
}

/// The quotient quantity
///
/// `frak_G(z) = ((pz)^(2k) frak_F(-1/(p^2 z)) - frak_F(z)) / ((pz)^(2k) - 1)`
///
/// from its definition; defined for `z` in the upper half plane away from
/// the locus `(pz)^(2k) = 1` (points within `10^-digits` of it are
/// rejected). Returns the value and the truncation index used.
pub fn frak_g(
    p: u64,
    k: u32,
    z: &BigComplex,
    prec: Precision,
) -> Result<(BigComplex, u64), IdentityError> {
    check_prime(p)?;
    if k < 1 {
        return Err(IdentityError::Domain("k must be >= 1".into()));
    }
    check_k_cap(k.into())?;
    let bits = prec.bits();
    let z = BigComplex::with_val(bits, z);
    require_upper_half(&z)?;
    let w = -(z.clone() * p * p).recip();
    decay_floor([z.imag(), w.imag()], bits)?;
    let denom = (z.clone() * p).pow(2 * k) - 1u32;
    if cabs(&denom, bits) < pow10(bits, -i64::from(prec.digits)) {
        return Err(IdentityError::Domain(format!(
            "z is within 10^-{} of the locus (pz)^(2k) = 1, where frak_G is undefined",
            prec.digits
        )));
    }
    let series = SeriesParams::new(p, i64::from(k))?;
    let fa = frak_f(&series, &w, prec)?;
    let fb = frak_f(&series, &z, prec)?;
    let value = ((z.clone() * p).pow(2 * k) * fa.value - fb.value) / denom;
    Ok((value, fa.n_used.max(fb.n_used)))
}

/// `frak_G` computed from its series definition against the closed form
/// the transformation forces:
///
/// `frak_G(z) = (p-1)/2 * L(2k+1, chi_1)
///      + (2 pi i)^(2k+1) R_{2k+1, p}(z) / (2z p^(2k+2) ((pz)^(2k) - 1))`.
pub fn verify_frak_g(
    p: u64,
    k: u32,
    z: &BigComplex,
    prec: Precision,
) -> Result<VerificationReport, IdentityError> {
    let bits = prec.bits();
    let (lhs, n_used) = frak_g(p, k, z, prec)?;
    let z = BigComplex::with_val(bits, z);
    let l_value = l_principal(2 * k + 1, p, prec)?;
    let half_pm1 = real_from_rational(&Rational::from((Integer::from(p) - 1u32, Integer::from(2))), prec);
    let poly = eval_poly_complex(&build_ramanujan_type(p, k)?.poly, &z, prec);
    let p_pow = real_from_rational(&Rational::from(Integer::from(p).pow(2 * k + 2)), prec);
    let denom = (z.clone() * p).pow(2 * k) - 1u32;
    let rhs = BigComplex::with_val(bits, (BigReal::with_val(bits, half_pm1 * l_value), BigReal::new(bits)))
        + two_pi_i_odd_power(k, prec) * poly / (z.clone() * 2u32 * &p_pow * denom);
    let mut params = BTreeMap::new();
    params.insert("p".into(), p.to_string());
    params.insert("k".into(), k.to_string());
    params.insert("z".into(), complex_to_sig_string(&z, prec.digits));
    Ok(VerificationReport::build(
        "frak_g",
        params,
        Value::Complex(lhs),
        Value::Complex(rhs),
        prec.threshold(),
        n_used,
        prec,
    ))
}

/// Shared guards for the truncated partial-fraction identities: nonzero
/// arguments and a ratio bounded away from the imaginary axis (where the
/// hyperbolic factors stop decaying and the tail bound degenerates).
/// Returns `(|Re(x/y)|, |Re(y/x)|)`.
fn ratio_guards(
    x: &BigComplex,
    y: &BigComplex,
    bits: u32,
) -> Result<(BigReal, BigReal), IdentityError> {
    for v in [x, y] {
        if !(v.real().is_finite() && v.imag().is_finite()) || v.is_zero() {
            return Err(IdentityError::Domain("x and y must be finite and nonzero".into()));
        }
    }
    let t_xy = BigReal::with_val(bits, BigComplex::with_val(bits, x / y).real()).abs();
    let t_yx = BigReal::with_val(bits, BigComplex::with_val(bits, y / x).real()).abs();
    let floor = pow10(bits, -6);
    if t_xy < floor || t_yx < floor {
        return Err(IdentityError::Domain(
            "y/x is within 1e-6 of the imaginary axis: the identity's hypothesis fails and the tail bound degenerates".into(),
        ));
    }
    Ok((t_xy, t_yx))
}

/// `coth(t)` for real `t > 0`, written as `1 + 2/(e^(2t) - 1)`: the
/// uniform bound on `|tanh|` and `|coth|` along the truncated series.
fn coth_bound(t: &BigReal, bits: u32) -> BigReal {
    let e = BigReal::with_val(bits, t * 2u32).exp() - 1u32;
    BigReal::with_val(bits, 2u32 / e) + 1u32
}

/// The tangent partial-fraction decomposition, truncated after `n` terms
/// of each series:
///
/// `pi/4 tan(pi x/2) tanh(pi y/2)
///    = y^2 sum_{n>=0} tanh((2n+1) pi x/(2y)) / ((2n+1)((2n+1)^2 + y^2))
///    + x^2 sum_{n>=0} tanh((2n+1) pi y/(2x)) / ((2n+1)((2n+1)^2 - x^2))`.
///
/// The discarded tail is bounded by `(|y|^2 C1 + |x|^2 C2) / (8 n^2)` with
/// `C = coth(pi t / 2)` at the respective ratio's real part `t`, using
/// `|den| >= (2m+1)^2 / 2` (guaranteed by the truncation guard) and
/// `sum_{m>=n} (2m+1)^(-3) <= 1/(16 n^2)`; the report's threshold is the
/// default plus four times that bound.
pub fn verify_tan_partial_fraction(
    x: &BigComplex,
    y: &BigComplex,
    n: u64,
    prec: Precision,
) -> Result<VerificationReport, IdentityError> {
    let bits = prec.bits();
    let x = BigComplex::with_val(bits, x);
    let y = BigComplex::with_val(bits, y);
    let (t_xy, t_yx) = ratio_guards(&x, &y, bits)?;
    if n < 1 {
        return Err(IdentityError::Domain("n must be >= 1".into()));
    }
    let max_sq = cabs(&x, bits).square().max(&cabs(&y, bits).square());
    let edge = BigReal::with_val(bits, 2 * n + 1).square();
    if edge < BigReal::with_val(bits, &max_sq * 2u32) {
        return Err(IdentityError::Domain(
            "n is too small for |x|, |y|: need (2n+1)^2 >= 2 max(|x|^2, |y|^2)".into(),
        ));
    }
    let half_pi = pi(prec) / 2u32;
    let lhs = BigComplex::with_val(bits, (x.clone() * &half_pi).tan() * (y.clone() * &half_pi).tanh())
        * &BigReal::with_val(bits, pi(prec) / 4u32);

    let x_sq = x.clone().square();
    let y_sq = y.clone().square();
    let base1 = x.clone() * &half_pi / &y;
    let base2 = y.clone() * &half_pi / &x;
    let mut s1 = BigComplex::new(bits);
    let mut s2 = BigComplex::new(bits);
    let den_floor = pow10(bits, -6);
    for i in 0..n {
        let m = 2 * i + 1;
        let m_sq = BigReal::with_val(bits, m).square();
        let den1 = BigComplex::with_val(bits, &y_sq + &m_sq);
        let den2 = -BigComplex::with_val(bits, &x_sq - &m_sq);
        for den in [&den1, &den2] {
            if cabs(den, bits) < den_floor {
                return Err(IdentityError::Domain(format!(
                    "a series denominator at 2n+1 = {m} is within 1e-6 of zero"
                )));
            }
        }
        s1 += BigComplex::with_val(bits, &base1 * m).tanh() / (den1 * m);
        s2 += BigComplex::with_val(bits, &base2 * m).tanh() / (den2 * m);
    }
    let rhs = y_sq.clone() * s1 + x_sq.clone() * s2;

    let c1 = coth_bound(&BigReal::with_val(bits, &t_xy * &half_pi), bits);
    let c2 = coth_bound(&BigReal::with_val(bits, &t_yx * &half_pi), bits);
    let tail = (BigReal::with_val(bits, y_sq.abs_ref()) * c1
        + BigReal::with_val(bits, x_sq.abs_ref()) * c2)
        / BigReal::with_val(bits, 8 * n * n);
    let threshold = prec.threshold() + tail * 4u32;

    let mut params = BTreeMap::new();
    params.insert("x".into(), complex_to_sig_string(&x, prec.digits));
    params.insert("y".into(), complex_to_sig_string(&y, prec.digits));
    params.insert("n".into(), n.to_string());
    Ok(VerificationReport::build(
        "tan_pf",
        params,
        Value::Complex(lhs),
        Value::Complex(rhs),
        threshold,
        n,
        prec,
    ))
}

/// The corrected cotangent partial-fraction decomposition, truncated after
/// `n` terms:
///
/// `pi^2 xy cot(pi x) coth(pi y) = 1 + pi^2/3 (y^2 - x^2)
///    - 2 pi xy sum_{m>=1} ( y^2 coth(pi m x/y) / (m(m^2 + y^2))
///                         + x^2 coth(pi m y/x) / (m(m^2 - x^2)) )`.
///
/// The discarded tail is bounded by
/// `2 pi |xy| (|y|^2 C1 + |x|^2 C2) / n^2` with `C = coth(pi t)` at the
/// respective ratio's real part `t`, using `|den| >= m^2 / 2` (guaranteed
/// by the truncation guard) and `sum_{m>n} m^(-3) <= 1/(2 n^2)`.
pub fn verify_cot_coth_partial_fraction(
    x: &BigComplex,
    y: &BigComplex,
    n: u64,
    prec: Precision,
) -> Result<VerificationReport, IdentityError> {
    let bits = prec.bits();
    let x = BigComplex::with_val(bits, x);
    let y = BigComplex::with_val(bits, y);
    let (t_xy, t_yx) = ratio_guards(&x, &y, bits)?;
    if n < 1 {
        return Err(IdentityError::Domain("n must be >= 1".into()));
    }
    let max_sq = cabs(&x, bits).square().max(&cabs(&y, bits).square());
    if BigReal::with_val(bits, n * n) < BigReal::with_val(bits, &max_sq * 2u32) {
        return Err(IdentityError::Domain(
            "n is too small for |x|, |y|: need n^2 >= 2 max(|x|^2, |y|^2)".into(),
        ));
    }
    let xy = x.clone() * &y;
    let lhs = BigComplex::with_val(
        bits,
        (x.clone() * &pi(prec)).tan().recip() * (y.clone() * &pi(prec)).tanh().recip(),
    ) * &xy
        * &pi(prec).square();

    let x_sq = x.clone().square();
    let y_sq = y.clone().square();
    let base1 = x.clone() * &pi(prec) / &y;
    let base2 = y.clone() * &pi(prec) / &x;
    let mut bracket = BigComplex::new(bits);
    let den_floor = pow10(bits, -6);
    for m in 1..=n {
        let m_sq = BigReal::with_val(bits, m).square();
        let den1 = BigComplex::with_val(bits, &y_sq + &m_sq);
        let den2 = -BigComplex::with_val(bits, &x_sq - &m_sq);
        for den in [&den1, &den2] {
            if cabs(den, bits) < den_floor {
                return Err(IdentityError::Domain(format!(
                    "a series denominator at m = {m} is within 1e-6 of zero"
                )));
            }
        }
        let coth1 = BigComplex::with_val(bits, &base1 * m).tanh().recip();
        let coth2 = BigComplex::with_val(bits, &base2 * m).tanh().recip();
        bracket += y_sq.clone() * coth1 / (den1 * m) + x_sq.clone() * coth2 / (den2 * m);
    }
    let third_pi_sq = pi(prec).square() / 3u32;
    let rhs = BigComplex::with_val(bits, &y_sq - &x_sq) * &third_pi_sq + 1u32
        - xy.clone() * bracket * &BigReal::with_val(bits, pi(prec) * 2u32);

    let c1 = coth_bound(&BigReal::with_val(bits, &t_xy * &pi(prec)), bits);
    let c2 = coth_bound(&BigReal::with_val(bits, &t_yx * &pi(prec)), bits);
    let tail = BigReal::with_val(bits, xy.abs_ref())
        * (BigReal::with_val(bits, y_sq.abs_ref()) * c1
            + BigReal::with_val(bits, x_sq.abs_ref()) * c2)
        * BigReal::with_val(bits, pi(prec) * 2u32)
        / BigReal::with_val(bits, n * n);
    let threshold = prec.threshold() + tail * 4u32;

    let mut params = BTreeMap::new();
    params.insert("x".into(), complex_to_sig_string(&x, prec.digits));
    params.insert("y".into(), complex_to_sig_string(&y, prec.digits));
    params.insert("n".into(), n.to_string());
    Ok(VerificationReport::build(
        "cot_coth_pf",
        params,
        Value::Complex(lhs),
        Value::Complex(rhs),
        threshold,
        n,
        prec,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigfloat::{lambert_twisted, nat_lambert};

    fn p50() -> Precision {
        Precision::new(50)
    }

    fn cplx(prec: Precision, re: f64, im: f64) -> BigComplex {
        BigComplex::with_val(prec.bits(), (re, im))
    }

    fn assert_tight(report: &VerificationReport, log10: i64) {
        assert!(report.pass, "{} residual {:?}", report.identity_id, report.abs_residual);
        let bits = Precision::new(report.digits).bits();
        assert!(
            report.abs_residual.clone() < pow10(bits, log10),
            "{} residual {:?} above 1e{}",
            report.identity_id,
            report.abs_residual,
            log10
        );
    }

    fn complex_of(v: &Value) -> BigComplex {
        match v {
            Value::Complex(z) => z.clone(),
            Value::Real(_) => panic!("expected complex value"),
        }
    }

    #[test]
    fn grosswald_classic_examples() {
        let prec = p50();
        let bits = prec.bits();
        assert_tight(&verify_grosswald_classic(1, &cplx(prec, 0.0, 0.5), None, prec).unwrap(), -45);
        assert_tight(&verify_grosswald_classic(2, &cplx(prec, 0.0, 1.0), None, prec).unwrap(), -45);
        let z = BigComplex::with_val(bits, (0.5, 1.5));
        assert_tight(&verify_grosswald_classic(3, &z, None, prec).unwrap(), -45);
    }

    /// On the imaginary axis `z = i beta / pi` (with `alpha beta = pi^2`)
    /// the series side collapses to the two real Lambert sums.
    #[test]
    fn grosswald_classic_reduces_to_real_lambert_sums() {
        let prec = Precision::new(40);
        let bits = prec.bits();
        let beta = BigReal::with_val(bits, 2);
        let alpha = pi(prec).square() / &beta;
        let z = BigComplex::with_val(bits, (BigReal::new(bits), beta.clone() / pi(prec)));
        let report = verify_grosswald_classic(2, &z, None, prec).unwrap();
        assert_tight(&report, -35);
        let expected = nat_lambert(5, &beta, None, prec).unwrap().value
            - (beta.clone() / pi(prec)).pow(4) * nat_lambert(5, &alpha, None, prec).unwrap().value;
        let lhs = complex_of(&report.lhs);
        assert!(BigReal::with_val(bits, lhs.real() - &expected).abs() < pow10(bits, -35));
        assert!(BigReal::with_val(bits, lhs.imag()).abs() < pow10(bits, -35));
    }

    #[test]
    fn grosswald_classic_rejections() {
        let prec = p50();
        assert!(verify_grosswald_classic(0, &cplx(prec, 0.0, 1.0), None, prec).is_err());
        assert!(matches!(
            verify_grosswald_classic(2, &cplx(prec, 0.0, -1.0), None, prec),
            Err(IdentityError::Domain(_))
        ));
        // Decay rate below the floor: rejected without an explicit n,
        // honest failure with one.
        let slow = cplx(prec, 0.0, 1e-8);
        assert!(matches!(
            verify_grosswald_classic(2, &slow, None, prec),
            Err(IdentityError::Domain(_))
        ));
        let forced = verify_grosswald_classic(2, &slow, Some(50), prec).unwrap();
        assert!(!forced.pass);
    }

    #[test]
    fn grosswald_analogue_examples() {
        let prec = p50();
        assert_tight(
            &verify_grosswald_analogue(2, 1, &cplx(prec, 0.0, 0.5), None, prec).unwrap(),
            -45,
        );
        assert_tight(
            &verify_grosswald_analogue(2, 2, &cplx(prec, 0.0, 1.0), None, prec).unwrap(),
            -45,
        );
        assert_tight(
            &verify_grosswald_analogue(3, 1, &cplx(prec, 0.25, 1.25), None, prec).unwrap(),
            -45,
        );
        assert!(verify_grosswald_analogue(4, 1, &cplx(prec, 0.0, 1.0), None, prec).is_err());
        assert!(verify_grosswald_analogue(2, 0, &cplx(prec, 0.0, 1.0), None, prec).is_err());
    }

    /// On the imaginary axis `z = i alpha / pi` the twisted series equals
    /// the real twisted Lambert sum at `alpha`.
    #[test]
    fn frak_f_matches_twisted_lambert_on_imaginary_axis() {
        let prec = Precision::new(40);
        let bits = prec.bits();
        let alpha = pi(prec) / 2u32;
        let z = BigComplex::with_val(bits, (BigReal::new(bits), alpha.clone() / pi(prec)));
        let series = SeriesParams::new(2, 1).unwrap();
        let via_f = frak_f(&series, &z, prec).unwrap().value;
        let via_lambert = lambert_twisted(&series, &alpha, prec).unwrap().value;
        assert!(BigReal::with_val(bits, via_f.real() - &via_lambert).abs() < pow10(bits, -35));
        assert!(BigReal::with_val(bits, via_f.imag()).abs() < pow10(bits, -35));
    }

    #[test]
    fn frak_g_examples() {
        let prec = p50();
        assert_tight(&verify_frak_g(2, 1, &cplx(prec, 0.0, 2.0), prec).unwrap(), -45);
        assert_tight(&verify_frak_g(5, 2, &cplx(prec, 0.0, 0.5), prec).unwrap(), -45);
    }

    #[test]
    fn frak_g_rejections() {
        let prec = p50();
        // (pz)^(2k) = (i)^4 = 1: on the undefined locus.
        let err = verify_frak_g(2, 2, &cplx(prec, 0.0, 0.5), prec).unwrap_err();
        assert!(matches!(err, IdentityError::Domain(msg) if msg.contains("locus")));
        assert!(verify_frak_g(2, 1, &cplx(prec, 0.0, -1.0), prec).is_err());
        assert!(verify_frak_g(2, 1, &cplx(prec, 1.0, 0.0), prec).is_err());
    }

    #[test]
    fn tan_pf_examples() {
        let prec = p50();
        let bits = prec.bits();
        for (x, y) in [(0.5, 0.5), (1.0 / 3.0, 1.0 / 3.0)] {
            let report = verify_tan_partial_fraction(
                &cplx(prec, x, 0.0),
                &cplx(prec, y, 0.0),
                2000,
                prec,
            )
            .unwrap();
            assert!(report.pass, "residual {:?}", report.abs_residual);
            assert_eq!(report.n_used, 2000);
        }
        // The truncation error is genuinely polynomial: the residual sits
        // well above the working precision but below the recorded bound.
        let x = BigComplex::with_val(bits, (real_from_rational(&crate::exact::rat(1, 3), prec), BigReal::new(bits)));
        let y = BigComplex::with_val(bits, (real_from_rational(&crate::exact::rat(2, 5), prec), BigReal::new(bits)));
        let report = verify_tan_partial_fraction(&x, &y, 2000, prec).unwrap();
        assert!(report.pass);
        assert!(report.abs_residual.clone() > pow10(bits, -12));
        assert!(report.abs_residual.clone() < pow10(bits, -7));
    }

    #[test]
    fn tan_pf_rejections() {
        let prec = p50();
        assert!(verify_tan_partial_fraction(
            &cplx(prec, 0.0, 0.0),
            &cplx(prec, 0.5, 0.0),
            100,
            prec
        )
        .is_err());
        // y/x purely imaginary: the stated hypothesis fails.
        assert!(matches!(
            verify_tan_partial_fraction(&cplx(prec, 1.0, 0.0), &cplx(prec, 0.0, 1.0), 100, prec),
            Err(IdentityError::Domain(_))
        ));
        // n too small for the magnitudes.
        assert!(matches!(
            verify_tan_partial_fraction(&cplx(prec, 200.0, 0.0), &cplx(prec, 1.0, 0.0), 100, prec),
            Err(IdentityError::Domain(_))
        ));
        // A retained denominator vanishes: x = 3 makes (2n+1)^2 - x^2 = 0
        // at 2n+1 = 3.
        assert!(matches!(
            verify_tan_partial_fraction(&cplx(prec, 3.0, 0.0), &cplx(prec, 0.5, 0.0), 100, prec),
            Err(IdentityError::Domain(_))
        ));
    }

    #[test]
    fn cot_coth_examples() {
        let prec = p50();
        for (x, y) in [(0.25, 1.0 / 3.0), (1.0 / 3.0, 0.5), (0.5, 0.5)] {
            let report = verify_cot_coth_partial_fraction(
                &cplx(prec, x, 0.0),
                &cplx(prec, y, 0.0),
                2000,
                prec,
            )
            .unwrap();
            assert!(report.pass, "x={x} y={y} residual {:?}", report.abs_residual);
        }
    }

    #[test]
    fn cot_coth_rejections() {
        let prec = p50();
        // x within 1e-6 of an integer hits a retained denominator.
        assert!(matches!(
            verify_cot_coth_partial_fraction(
                &cplx(prec, 3.0 + 1e-9, 0.0),
                &cplx(prec, 0.5, 0.0),
                100,
                prec
            ),
            Err(IdentityError::Domain(_))
        ));
        assert!(matches!(
            verify_cot_coth_partial_fraction(&cplx(prec, 0.0, 1.0), &cplx(prec, 1.0, 0.0), 100, prec),
            Err(IdentityError::Domain(_))
        ));
    }

    /// Quadrupling the truncation index must shrink the residual by the
    /// quadratic factor the tail bound promises (with margin).
    #[test]
    fn partial_fraction_residual_scales_quadratically() {
        let prec = p50();
        let x = cplx(prec, 1.0 / 3.0, 0.0);
        let y = cplx(prec, 0.4, 0.0);
        let r1 = verify_tan_partial_fraction(&x, &y, 1000, prec).unwrap().abs_residual;
        let r4 = verify_tan_partial_fraction(&x, &y, 4000, prec).unwrap().abs_residual;
        assert!(r4.clone() * 4u32 < r1, "r1={r1:?} r4={r4:?}");
        let c1 = verify_cot_coth_partial_fraction(&x, &y, 1000, prec).unwrap().abs_residual;
        let c4 = verify_cot_coth_partial_fraction(&x, &y, 4000, prec).unwrap().abs_residual;
        assert!(c4.clone() * 4u32 < c1, "c1={c1:?} c4={c4:?}");
    }
}
