//! Integer zeta values and principal-character L-values.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use rug::ops::Pow;

use crate::exact::{
    bernoulli_over_factorial, check_prime, euler_even_zeta_rational, Integer, Rational,
};

use super::{pi, pow10, real_from_rational, BigReal, BigfloatError, Precision};

static ZETA_CACHE: OnceLock<RwLock<HashMap<(u32, u32), BigReal>>> = OnceLock::new();

/// `zeta(s)` for integer `s >= 2` at the working precision.
///
/// Even `s` goes through Euler's exact closed form `r * pi^s` with `r`
/// rational; odd `s` is summed by Euler-Maclaurin. Results are cached per
/// `(s, bit width)`.
pub fn zeta_int(s: u32, prec: Precision) -> Result<BigReal, BigfloatError> {
    if s < 2 {
        return Err(BigfloatError::Domain(format!(
            "zeta_int requires s >= 2, got {s}"
        )));
    }
    let key = (s, prec.bits());
    let cache = ZETA_CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(v) = cache.read().expect("zeta cache poisoned").get(&key) {
        return Ok(v.clone());
    }
    let v = if s % 2 == 0 {
        zeta_even_exact(s, prec)
    } else {
        zeta_int_via_series(s, prec)?
    };
    cache
        .write()
        .expect("zeta cache poisoned")
        .insert(key, v.clone());
    Ok(v)
}

/// Euler's closed form for even `s = 2k`: an exact rational times `pi^s`.
pub fn zeta_even_exact(s: u32, prec: Precision) -> BigReal {
    assert!(s >= 2 && s % 2 == 0, "zeta_even_exact requires even s >= 2");
    let r = euler_even_zeta_rational(s / 2);
    real_from_rational(&r, prec) * pi(prec).pow(s)
}

/// `zeta(s)` by Euler-Maclaurin summation, for any integer `s >= 2`
/// regardless of parity.
///
/// `zeta(s) = sum_{n<N} n^-s + N^(1-s)/(s-1) + N^-s/2
///          + sum_{r>=1} B_2r/(2r)! * s(s+1)...(s+2r-2) * N^(-s-2r+1)`,
/// with the remainder after stopping bounded by the first omitted term.
/// Terms are added until they fall below `10^-(working_digits + 5)`.
pub fn zeta_int_via_series(s: u32, prec: Precision) -> Result<BigReal, BigfloatError> {
    if s < 2 {
        return Err(BigfloatError::Domain(format!(
            "zeta series requires s >= 2, got {s}"
        )));
    }
    let bits = prec.bits();
    let n_terms = 50u32.max(prec.digits);
    let cutoff = pow10(bits, -(i64::from(prec.working_digits()) + 5));

    let mut sum = BigReal::new(bits);
    for n in 1..n_terms {
        sum += BigReal::with_val(bits, Integer::from(n).pow(s)).recip();
    }
    let nf = BigReal::with_val(bits, n_terms);
    // N^(1-s)/(s-1) + N^(-s)/2
    sum += nf.clone().pow(1i32 - s as i32) / (s - 1);
    let n_pow_ms = nf.clone().pow(-(s as i32));
    sum += n_pow_ms.clone() / 2u32;

    // Correction terms: maintain the rising factorial s(s+1)...(s+2r-2)
    // and the power N^(-s-2r+1) incrementally.
    let mut rising = Integer::from(s);
    let mut n_pow = n_pow_ms * &nf; // N^(-s+1), becomes N^(-s-2r+1) after dividing by N^2
    let nf_sq = nf.clone() * &nf;
    let mut prev_mag: Option<BigReal> = None;
    let max_r = 8 * n_terms;
    let mut r = 1u32;
    loop {
        n_pow /= &nf_sq;
        let bf = bernoulli_over_factorial(2 * r);
        let term = real_from_rational(&bf, prec) * BigReal::with_val(bits, &rising) * &n_pow;
        let mag = term.clone().abs();
        sum += term;
        if mag < cutoff {
            break;
        }
        if let Some(prev) = prev_mag {
            if mag > prev {
                return Err(BigfloatError::NonConvergence(format!(
                    "Euler-Maclaurin terms for zeta({s}) started growing at r={r} \
                     before reaching the target precision"
                )));
            }
        }
        prev_mag = Some(mag);
        if r >= max_r {
            return Err(BigfloatError::NonConvergence(format!(
                "Euler-Maclaurin for zeta({s}) did not reach the target \
                 precision within {max_r} correction terms"
            )));
        }
        // rising *= (s+2r-1)(s+2r) advances to the next correction term.
        rising *= Integer::from(s + 2 * r - 1) * Integer::from(s + 2 * r);
        r += 1;
    }
    Ok(sum)
}

/// `L(s, chi_1 mod p) = zeta(s) * (1 - p^-s)` for integer `s >= 2` and
/// prime `p`; the Euler-factor removal is exact rational arithmetic.
pub fn l_principal(s: u32, p: u64, prec: Precision) -> Result<BigReal, BigfloatError> {
    check_prime(p)?;
    if s < 2 {
        return Err(BigfloatError::Domain(format!(
            "l_principal requires s >= 2, got {s}"
        )));
    }
    let ps = Integer::from(p).pow(s);
    let factor = Rational::from((Integer::from(&ps - 1u32), ps));
    Ok(zeta_int(s, prec)? * real_from_rational(&factor, prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigfloat::to_sig_string;

    fn close_to(x: &BigReal, decimal: &str, prec: Precision) -> bool {
        let want = BigReal::with_val(prec.bits(), BigReal::parse(decimal).unwrap());
        let diff = (x.clone() - want).abs();
        diff < pow10(prec.bits(), -(decimal.len() as i64 - 3))
    }

    #[test]
    fn domain_errors() {
        let prec = Precision::new(30);
        assert!(zeta_int(0, prec).is_err());
        assert!(zeta_int(1, prec).is_err());
        assert!(l_principal(1, 3, prec).is_err());
        assert!(l_principal(3, 4, prec).is_err());
    }

    #[test]
    fn zeta3_reference() {
        let prec = Precision::new(50);
        let z3 = zeta_int(3, prec).unwrap();
        assert!(
            close_to(&z3, "1.20205690315959428539973816151145", prec),
            "zeta(3) = {}",
            to_sig_string(&z3, 35)
        );
    }

    #[test]
    fn zeta5_reference() {
        let prec = Precision::new(50);
        let z5 = zeta_int(5, prec).unwrap();
        assert!(close_to(
            &z5,
            "1.0369277551433699263313654864570342",
            prec
        ));
    }

    /// Brute-force oracle: a million direct terms plus an integral
    /// enclosure of the tail bracket zeta(3); the Euler-Maclaurin value
    /// must land inside the bracket.
    #[test]
    fn zeta3_brute_force_enclosure() {
        let prec = Precision::new(50);
        let bits = prec.bits();
        let n: u32 = 1_000_000;
        let mut partial = BigReal::new(bits);
        for m in 1..=n {
            partial += BigReal::with_val(bits, Integer::from(m).pow(3u32)).recip();
        }
        // integral_{N+1}^inf t^-3 dt <= tail <= integral_N^inf t^-3 dt
        let np1 = u64::from(n) + 1;
        let lo = partial.clone() + BigReal::with_val(bits, 2 * np1 * np1).recip();
        let hi = partial + BigReal::with_val(bits, 2 * u64::from(n) * u64::from(n)).recip();
        let z3 = zeta_int(3, prec).unwrap();
        assert!(lo < z3 && z3 < hi, "zeta(3) outside brute-force enclosure");
    }

    /// The series route must agree with the exact even-s closed form.
    #[test]
    fn series_route_matches_even_closed_form() {
        for prec in [Precision::new(30), Precision::new(60)] {
            for s in [2u32, 4, 8, 12, 20] {
                let exact = zeta_even_exact(s, prec);
                let series = zeta_int_via_series(s, prec).unwrap();
                let diff = (exact - &series).abs();
                assert!(
                    diff < pow10(prec.bits(), -i64::from(prec.working_digits() - 2)),
                    "zeta({s}) routes disagree at {} digits",
                    prec.digits
                );
            }
        }
    }

    #[test]
    fn l_values_reference() {
        let prec = Precision::new(50);
        // L(3, chi_1 mod 3) = zeta(3) * 26/27
        let l33 = l_principal(3, 3, prec).unwrap();
        assert!(close_to(
            &l33,
            "1.1575362771166463489034515629369518",
            prec
        ));
        // L(7, chi_1 mod 5) = zeta(7) * (1 - 5^-7)
        let l75 = l_principal(7, 5, prec).unwrap();
        assert!(close_to(
            &l75,
            "1.0083363705111723382276140004411587",
            prec
        ));
    }

    /// Direct-summation oracle for the Euler-factor identity: summing
    /// n^-5 over n not divisible by 3 must bracket L(5, chi_1 mod 3).
    #[test]
    fn l_principal_direct_sum_enclosure() {
        let prec = Precision::new(50);
        let bits = prec.bits();
        let n: u64 = 20_000;
        let mut partial = BigReal::new(bits);
        for m in 1..=n {
            if m % 3 != 0 {
                partial += BigReal::with_val(bits, Integer::from(m).pow(5u32)).recip();
            }
        }
        // The skipped residues only shrink the tail: 0 <= tail <= integral_N^inf t^-5 dt.
        let hi = partial.clone() + BigReal::with_val(bits, 4u64 * n * n * n * n).recip();
        let l53 = l_principal(5, 3, prec).unwrap();
        assert!(partial < l53 && l53 < hi);
    }

    #[test]
    fn cache_is_consistent() {
        let prec = Precision::new(40);
        let a = zeta_int(7, prec).unwrap();
        let b = zeta_int(7, prec).unwrap();
        assert_eq!(a, b);
    }
}
