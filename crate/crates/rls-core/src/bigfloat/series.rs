//! Exponentially convergent series with proven truncation bounds.
//!
//! Every evaluator here picks its truncation index `N` so that a rigorous
//! bound on the dropped tail falls below `10^-(digits + guard)`; the bound
//! arithmetic runs in conservatively rounded `f64` (the decay rate is
//! always rounded toward slower decay), so the chosen `N` can only be
//! larger than necessary.

use rug::float::Round;
use rug::ops::Pow;

use crate::exact::{a_coeff, check_prime, divisors, sigma_chi, Integer, Rational};

use super::{pi, real_from_rational, BigComplex, BigReal, BigfloatError, Precision};

/// Parameters shared by the twisted series: a prime modulus `p`, the
/// integer `k` (the series weight is `2k+1`), and an optional override for
/// the truncation index.
#[derive(Clone, Copy, Debug)]
pub struct SeriesParams {
    pub p: u64,
    pub k: i64,
    pub n_max: Option<u64>,
}

impl SeriesParams {
    /// Parameters for nonzero `k`; `k = 0` has its own constructor because
    /// it belongs only to the logarithmic identity.
    pub fn new(p: u64, k: i64) -> Result<Self, BigfloatError> {
        check_prime(p)?;
        if k == 0 {
            return Err(BigfloatError::Domain(
                "k = 0 is reserved for the logarithmic identity; use new_k0".into(),
            ));
        }
        Ok(Self { p, k, n_max: None })
    }

    /// Parameters for the `k = 0` (logarithmic) identity.
    pub fn new_k0(p: u64) -> Result<Self, BigfloatError> {
        check_prime(p)?;
        Ok(Self { p, k: 0, n_max: None })
    }

    /// Overrides the computed truncation index with a fixed term count
    /// (used to reproduce fixed-N reference tables).
    pub fn with_n_max(mut self, n: u64) -> Self {
        self.n_max = Some(n);
        self
    }

    /// Coefficient growth envelope: `|a_n * sigma_chi(n, 2k+1, p)|`
    /// is at most `1.3 * p * n^E` with `E` as returned here.
    ///
    /// For `k >= 1` the divisor sum is at most `zeta(3) < 1.3`; for
    /// `k = 0` it is the harmonic-type bound `1 + ln n <= 1.3 n`; for
    /// `k <= -1` the positive-power sum is at most `1.3 n^(2|k|)`.
    fn growth_exponent(&self) -> f64 {
        if self.k >= 1 {
            0.0
        } else if self.k == 0 {
            1.0
        } else {
            2.0 * self.k.unsigned_abs() as f64
        }
    }
}

/// Result of a real-valued series evaluation.
#[derive(Clone, Debug)]
pub struct RealSeries {
    pub value: BigReal,
    /// Number of terms actually summed.
    pub n_used: u64,
}

/// Result of a complex-valued series evaluation.
#[derive(Clone, Debug)]
pub struct ComplexSeries {
    pub value: BigComplex,
    /// Number of terms actually summed.
    pub n_used: u64,
}

/// Smallest `N` such that `sum_{n>N} C n^E q^n <= 10^target_log10`,
/// using the closed bound
/// `C (N+1)^E q^(N+1) / (1 - q e^(E/(N+1)))`.
///
/// `ln_q` must be negative (strict decay). All quantities are handled so
/// that rounding errs toward a larger `N`.
fn truncation_index(
    log10_c: f64,
    e_pow: f64,
    ln_q: f64,
    target_log10: f64,
) -> Result<u64, BigfloatError> {
    const LN_10: f64 = std::f64::consts::LN_10;
    if !(ln_q < 0.0) {
        return Err(BigfloatError::NonConvergence(
            "series does not decay: the decay exponent is not negative".into(),
        ));
    }
    let bound_ok = |n: u64| -> bool {
        let nf = n as f64;
        let geo = ln_q + e_pow / (nf + 1.0);
        if geo >= -1e-9 {
            return false;
        }
        let denom = 1.0 - geo.exp();
        let log10_bound = log10_c + e_pow * (nf + 1.0).log10() + (nf + 1.0) * ln_q / LN_10
            - denom.log10();
        log10_bound <= target_log10
    };
    let mut hi = 8u64;
    while !bound_ok(hi) {
        hi *= 2;
        if hi > 100_000_000 {
            return Err(BigfloatError::NonConvergence(format!(
                "series truncation index exceeds 10^8 (decay rate {ln_q:.3e} per term)"
            )));
        }
    }
    let mut lo = hi / 2;
    while lo + 1 < hi {
        let mid = lo + (hi - lo) / 2;
        if bound_ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi + 2)
}

/// Conservative `f64` image of a positive decay exponent: rounded toward
/// zero (slower decay), with a relative safety margin on top.
fn conservative_rate(x: &BigReal) -> Result<f64, BigfloatError> {
    if !(x.is_sign_positive() && !x.is_zero() && x.is_finite()) {
        return Err(BigfloatError::Domain(
            "series decay exponent must be positive and finite".into(),
        ));
    }
    let lo = x.to_f64_round(Round::Zero);
    if lo <= 0.0 {
        return Err(BigfloatError::NonConvergence(
            "decay exponent underflows f64; the series cannot be truncated".into(),
        ));
    }
    Ok(lo * (1.0 - 1e-12))
}

/// The twisted Lambert-type series
/// `sum_{n>=1} a_n * sigma_chi(n, 2k+1, p) * e^(-2nx)` for real `x > 0`.
///
/// Coefficients are exact rationals; only the multiplication by `e^(-2nx)`
/// rounds. The truncation index comes from the coefficient envelope in
/// [`SeriesParams::growth_exponent`]; `n_max` overrides it when set.
pub fn lambert_twisted(
    params: &SeriesParams,
    x: &BigReal,
    prec: Precision,
) -> Result<RealSeries, BigfloatError> {
    let bits = prec.bits();
    let s = 2 * params.k + 1;
    let x_lo = conservative_rate(x)?;
    let ln_q = -2.0 * x_lo;
    let n = match params.n_max {
        Some(m) => m,
        None => truncation_index(
            (1.3 * params.p as f64).log10(),
            params.growth_exponent(),
            ln_q,
            -f64::from(prec.working_digits()),
        )?,
    };
    let q = BigReal::with_val(bits, x * -2i32).exp();
    let mut q_pow = BigReal::with_val(bits, 1);
    let mut sum = BigReal::new(bits);
    for m in 1..=n {
        q_pow *= &q;
        let mut coeff = sigma_chi(m, s, params.p)?;
        coeff *= a_coeff(m, params.p)?;
        if coeff.cmp0() == std::cmp::Ordering::Equal {
            continue;
        }
        sum += real_from_rational(&coeff, prec) * &q_pow;
    }
    Ok(RealSeries { value: sum, n_used: n })
}

/// The twisted Eisenstein-like series
/// `frak_F_{2k+1, chi_1}(z) = sum_{n>=1} a_n * sigma_chi(n, 2k+1, p) * e^(2 pi i n z)`
/// for `Im z > 0`.
pub fn frak_f(
    params: &SeriesParams,
    z: &BigComplex,
    prec: Precision,
) -> Result<ComplexSeries, BigfloatError> {
    let s = 2 * params.k + 1;
    let im_lo = conservative_rate(&BigReal::with_val(z.imag().prec(), z.imag()))?;
    let ln_q = -2.0 * std::f64::consts::PI * im_lo * (1.0 - 1e-12);
    let n = match params.n_max {
        Some(m) => m,
        None => truncation_index(
            (1.3 * params.p as f64).log10(),
            params.growth_exponent(),
            ln_q,
            -f64::from(prec.working_digits()),
        )?,
    };
    let q = cis_exp(z, prec);
    let bits = prec.bits();
    let mut q_pow = BigComplex::with_val(bits, (1, 0));
    let mut sum = BigComplex::new(bits);
    for m in 1..=n {
        q_pow *= &q;
        let mut coeff = sigma_chi(m, s, params.p)?;
        coeff *= a_coeff(m, params.p)?;
        if coeff.cmp0() == std::cmp::Ordering::Equal {
            continue;
        }
        sum += q_pow.clone() * &real_from_rational(&coeff, prec);
    }
    Ok(ComplexSeries { value: sum, n_used: n })
}

/// The classical Grosswald series
/// `F_{2k+1}(z) = sum_{n>=1} sigma_{-(2k+1)}(n) * e^(2 pi i n z)`
/// for `k >= 1` and `Im z > 0`.
pub fn grosswald_f(
    k: u32,
    z: &BigComplex,
    n_max: Option<u64>,
    prec: Precision,
) -> Result<ComplexSeries, BigfloatError> {
    if k < 1 {
        return Err(BigfloatError::Domain("grosswald_f requires k >= 1".into()));
    }
    let s = 2 * k + 1;
    let im_lo = conservative_rate(&BigReal::with_val(z.imag().prec(), z.imag()))?;
    let ln_q = -2.0 * std::f64::consts::PI * im_lo * (1.0 - 1e-12);
    let n = match n_max {
        Some(m) => m,
        // sigma_{-(2k+1)}(n) <= zeta(3) < 1.3 for k >= 1.
        None => truncation_index(1.3f64.log10(), 0.0, ln_q, -f64::from(prec.working_digits()))?,
    };
    let q = cis_exp(z, prec);
    let bits = prec.bits();
    let mut q_pow = BigComplex::with_val(bits, (1, 0));
    let mut sum = BigComplex::new(bits);
    for m in 1..=n {
        q_pow *= &q;
        let coeff = sigma_minus(m, s);
        sum += q_pow.clone() * &real_from_rational(&coeff, prec);
    }
    Ok(ComplexSeries { value: sum, n_used: n })
}

/// `sum_{d | n} d^(-s)` over all divisors, exact.
fn sigma_minus(n: u64, s: u32) -> Rational {
    let mut acc = Rational::new();
    for d in divisors(n) {
        acc += Rational::from((Integer::from(1), Integer::from(d).pow(s)));
    }
    acc
}

/// `e^(2 pi i z)` at the working precision.
fn cis_exp(z: &BigComplex, prec: Precision) -> BigComplex {
    let bits = prec.bits();
    let two_pi = pi(prec) * 2u32;
    let re = BigReal::with_val(bits, z.imag() * &two_pi);
    let im = BigReal::with_val(bits, z.real() * &two_pi);
    BigComplex::with_val(bits, (-re, im)).exp()
}

/// The classical Lambert-type sum
/// `sum_{n>=1} n^(-s) / (e^(2nx) - 1)` for real `x > 0`; `s` may be
/// negative (positive powers of `n`).
pub fn nat_lambert(
    s: i64,
    x: &BigReal,
    n_max: Option<u64>,
    prec: Precision,
) -> Result<RealSeries, BigfloatError> {
    let bits = prec.bits();
    let x_lo = conservative_rate(x)?;
    let ln_q = -2.0 * x_lo;
    let n = match n_max {
        Some(m) => m,
        None => {
            // 1/(e^(2nx) - 1) <= q^n / (1 - q); fold 1/(1-q) into C.
            let log10_c = -(1.0 - ln_q.exp()).log10();
            truncation_index(log10_c, (-s).max(0) as f64, ln_q, -f64::from(prec.working_digits()))?
        }
    };
    let q = BigReal::with_val(bits, x * -2i32).exp();
    let mut q_pow = BigReal::with_val(bits, 1);
    let mut sum = BigReal::new(bits);
    for m in 1..=n {
        q_pow *= &q;
        let weight = int_power(m, -s, prec);
        let denom = BigReal::with_val(bits, 1i32 - &q_pow);
        sum += weight * &q_pow / denom;
    }
    Ok(RealSeries { value: sum, n_used: n })
}

/// The odd-index alternating-denominator sum
/// `sum_{n>=0} (2n+1)^(-s) / (e^(2(2n+1)x) + 1)` for real `x > 0`; `s` may
/// be negative. `n_max`, when set, is the number of terms taken.
pub fn odd_lambert(
    s: i64,
    x: &BigReal,
    n_max: Option<u64>,
    prec: Precision,
) -> Result<RealSeries, BigfloatError> {
    let bits = prec.bits();
    let x_lo = conservative_rate(x)?;
    let ln_q = -2.0 * x_lo;
    let terms = match n_max {
        Some(m) => m,
        None => {
            // 1/(e^(2mx) + 1) <= q^m; the tail over odd m > M is at most the
            // tail over all integers > M, so the generic index applies.
            let idx = truncation_index(0.0, (-s).max(0) as f64, ln_q, -f64::from(prec.working_digits()))?;
            idx / 2 + 1
        }
    };
    let q = BigReal::with_val(bits, x * -2i32).exp();
    let q_sq = q.clone() * &q;
    let mut q_pow = q.clone(); // q^(2n+1), starting at n = 0
    let mut sum = BigReal::new(bits);
    for t in 0..terms {
        let m = 2 * t + 1;
        let weight = int_power(m, -s, prec);
        let denom = BigReal::with_val(bits, 1i32 + &q_pow);
        sum += weight * &q_pow / denom;
        q_pow *= &q_sq;
    }
    Ok(RealSeries { value: sum, n_used: terms })
}

/// `m^e` as a float, exact before the single final rounding.
fn int_power(m: u64, e: i64, prec: Precision) -> BigReal {
    let bits = prec.bits();
    if e >= 0 {
        BigReal::with_val(bits, Integer::from(m).pow(e as u32))
    } else {
        BigReal::with_val(bits, Integer::from(m).pow((-e) as u32)).recip()
    }
}
