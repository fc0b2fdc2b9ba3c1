//! Divisor sums twisted by the principal character, the coefficients
//! `a_n`, tangent/hyperbolic-tangent Taylor coefficients, and primality.

use std::collections::HashSet;
use std::sync::{OnceLock, RwLock};

use rug::ops::Pow;

use super::{bernoulli_over_factorial, ExactError, Integer, Rational};

/// Deterministic Miller-Rabin primality test, exact for all `u64` inputs
/// (the fixed base set below is a proven witness set for this range).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

static VALIDATED_PRIMES: OnceLock<RwLock<HashSet<u64>>> = OnceLock::new();

/// Validates that `p` is prime, memoising the answer for the session.
///
/// Every operation parameterised by a modulus calls this; a composite
/// modulus is a hard error, never a silent fallback.
pub fn check_prime(p: u64) -> Result<(), ExactError> {
    let set = VALIDATED_PRIMES.get_or_init(|| RwLock::new(HashSet::new()));
    if set.read().expect("prime cache poisoned").contains(&p) {
        return Ok(());
    }
    if is_prime(p) {
        set.write().expect("prime cache poisoned").insert(p);
        Ok(())
    } else {
        Err(ExactError::CompositeModulus(p))
    }
}

/// The arithmetic weight `a_n` attached to the prime `p`:
/// `a_n = 1` if `p` does not divide `n`, and `1 - p` otherwise.
pub fn a_coeff(n: u64, p: u64) -> Result<i64, ExactError> {
    check_prime(p)?;
    if n == 0 {
        return Err(ExactError::Domain("a_coeff requires n >= 1".into()));
    }
    Ok(if n % p == 0 { 1 - p as i64 } else { 1 })
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "divisors requires n >= 1");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// The divisor sum twisted by the principal character mod `p`:
/// `sigma_chi(n, s, p) = sum over divisors d of n with p not dividing d
/// of d^(-s)`, as an exact rational.
///
/// `s` may be negative, in which case the terms are the positive powers
/// `d^(-s) = d^|s|`; `s = 0` counts the character-coprime divisors.
pub fn sigma_chi(n: u64, s: i64, p: u64) -> Result<Rational, ExactError> {
    check_prime(p)?;
    if n == 0 {
        return Err(ExactError::Domain("sigma_chi requires n >= 1".into()));
    }
    let mut acc = Rational::new();
    for d in divisors(n) {
        if d % p == 0 {
            continue;
        }
        if s >= 0 {
            acc += Rational::from((Integer::from(1), Integer::from(d).pow(s as u32)));
        } else {
            acc += Integer::from(d).pow((-s) as u32);
        }
    }
    Ok(acc)
}

/// Checks the defining convolution of the twisted series coefficients:
/// `sum over d | n, p not dividing d of d^(-(2k+1)) * a_(n/d)`
/// must equal `a_n * sigma_chi(n, 2k+1, p)` exactly.
pub fn convolution_coefficient_check(n: u64, k: i64, p: u64) -> Result<bool, ExactError> {
    check_prime(p)?;
    if n == 0 {
        return Err(ExactError::Domain(
            "convolution_coefficient_check requires n >= 1".into(),
        ));
    }
    let s = 2 * k + 1;
    let mut lhs = Rational::new();
    for d in divisors(n) {
        if d % p == 0 {
            continue;
        }
        let term = if s >= 0 {
            Rational::from((Integer::from(1), Integer::from(d).pow(s as u32)))
        } else {
            Rational::from(Integer::from(d).pow((-s) as u32))
        };
        lhs += term * a_coeff(n / d, p)?;
    }
    let rhs = sigma_chi(n, s, p)? * a_coeff(n, p)?;
    Ok(lhs == rhs)
}

/// Taylor coefficient of `z^m` in `tan z` for odd `m = 2j - 1`:
/// `(-1)^(j-1) * 2^(2j) * (2^(2j) - 1) * B_(2j) / (2j)!`.
///
/// Even `m` (and `m = 0`) are rejected: those coefficients vanish and a
/// request for one is a caller bug, not a zero.
pub fn tan_coeff(m: u32) -> Result<Rational, ExactError> {
    if m == 0 || m % 2 == 0 {
        return Err(ExactError::Domain(format!(
            "tan z has no nonzero coefficient at z^{m}"
        )));
    }
    let j = (m + 1) / 2;
    let pow = Integer::from(1) << (2 * j);
    let mut c = bernoulli_over_factorial(2 * j);
    c *= Rational::from(Integer::from(&pow - 1u32));
    c *= Rational::from(pow);
    if j % 2 == 0 {
        c = -c;
    }
    Ok(c)
}

/// Taylor coefficient of `z^m` in `tanh z` for odd `m = 2j - 1`:
/// the `tan` coefficient without the alternating sign.
pub fn tanh_coeff(m: u32) -> Result<Rational, ExactError> {
    let c = tan_coeff(m)?;
    let j = (m + 1) / 2;
    Ok(if j % 2 == 0 { -c } else { c })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn primality() {
        for &p in &[2u64, 3, 5, 7, 11, 13, 97, 7919, 2_147_483_647] {
            assert!(is_prime(p), "{p} is prime");
        }
        for &c in &[0u64, 1, 4, 9, 15, 91, 6_700_417u64 * 97] {
            assert!(!is_prime(c), "{c} is composite");
        }
        assert!(check_prime(13).is_ok());
        assert!(matches!(
            check_prime(15),
            Err(ExactError::CompositeModulus(15))
        ));
    }

    #[test]
    fn a_coeff_values() {
        assert_eq!(a_coeff(3, 5).unwrap(), 1);
        assert_eq!(a_coeff(5, 5).unwrap(), -4);
        assert_eq!(a_coeff(10, 5).unwrap(), -4);
        assert_eq!(a_coeff(4, 2).unwrap(), -1);
        assert!(a_coeff(4, 6).is_err());
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }

    #[test]
    fn sigma_chi_values() {
        // 6 has divisors 1, 2, 3, 6, none divisible by 5.
        assert_eq!(sigma_chi(6, 1, 5).unwrap(), rat(2, 1));
        // Odd divisors of 12 are 1 and 3.
        assert_eq!(sigma_chi(12, 3, 2).unwrap(), rat(28, 27));
        assert_eq!(sigma_chi(12, -3, 2).unwrap(), rat(28, 1));
        // All divisors of 9 are powers of 3.
        assert_eq!(sigma_chi(9, 2, 3).unwrap(), rat(1, 1));
        assert_eq!(sigma_chi(1, 7, 11).unwrap(), rat(1, 1));
    }

    /// sigma_chi is multiplicative: for coprime m, n the value at m*n is
    /// the product of the values.
    #[test]
    fn sigma_chi_multiplicative() {
        let pairs = [(4u64, 9u64), (5, 8), (7, 25), (9, 16), (11, 27), (8, 15)];
        for &p in &[2u64, 3, 5, 7] {
            for s in [-3i64, -1, 1, 2, 5] {
                for &(m, n) in &pairs {
                    let lhs = sigma_chi(m * n, s, p).unwrap();
                    let rhs = sigma_chi(m, s, p).unwrap() * sigma_chi(n, s, p).unwrap();
                    assert_eq!(lhs, rhs, "sigma_chi({m}*{n}, {s}, {p})");
                }
            }
        }
    }

    #[test]
    fn convolution_small_grid() {
        for &p in &[2u64, 3, 5] {
            for k in [-2i64, -1, 1, 2] {
                for n in 1..=60u64 {
                    assert!(
                        convolution_coefficient_check(n, k, p).unwrap(),
                        "convolution failed at n={n}, k={k}, p={p}"
                    );
                }
            }
        }
    }

    #[test]
    fn tan_tanh_values() {
        assert_eq!(tan_coeff(1).unwrap(), rat(1, 1));
        assert_eq!(tan_coeff(3).unwrap(), rat(1, 3));
        assert_eq!(tan_coeff(5).unwrap(), rat(2, 15));
        assert_eq!(tan_coeff(7).unwrap(), rat(17, 315));
        assert_eq!(tanh_coeff(1).unwrap(), rat(1, 1));
        assert_eq!(tanh_coeff(3).unwrap(), rat(-1, 3));
        assert_eq!(tanh_coeff(5).unwrap(), rat(2, 15));
        assert_eq!(tanh_coeff(7).unwrap(), rat(-17, 315));
        assert!(tan_coeff(0).is_err());
        assert!(tan_coeff(4).is_err());
        assert!(tanh_coeff(2).is_err());
    }

    /// Independent construction: divide the Taylor series of sin by cos
    /// (sinh by cosh) over Q and compare coefficients through z^15.
    #[test]
    fn tan_tanh_match_series_division() {
        let n = 16usize;
        let fact = |m: usize| Rational::from(Integer::from(Integer::factorial(m as u32)));
        // sin, cos, sinh, cosh coefficient lists up to degree n.
        let mut sin = vec![Rational::new(); n + 1];
        let mut cos = vec![Rational::new(); n + 1];
        let mut sinh = vec![Rational::new(); n + 1];
        let mut cosh = vec![Rational::new(); n + 1];
        for m in 0..=n {
            let inv = Rational::from(1) / fact(m);
            match m % 4 {
                0 => cosh[m] = inv.clone(),
                1 => sinh[m] = inv.clone(),
                2 => cosh[m] = inv.clone(),
                _ => sinh[m] = inv.clone(),
            }
            match m % 4 {
                0 => cos[m] = inv,
                1 => sin[m] = inv,
                2 => cos[m] = -inv,
                _ => sin[m] = -inv,
            }
        }
        // Power-series division: t = num/den with den[0] = 1.
        let divide = |num: &[Rational], den: &[Rational]| -> Vec<Rational> {
            let mut t = vec![Rational::new(); n + 1];
            for m in 0..=n {
                let mut acc = num[m].clone();
                for j in 0..m {
                    acc -= Rational::from(&t[j] * &den[m - j]);
                }
                t[m] = acc / den[0].clone();
            }
            t
        };
        let tan_series = divide(&sin, &cos);
        let tanh_series = divide(&sinh, &cosh);
        for m in (1..=15u32).step_by(2) {
            assert_eq!(
                tan_coeff(m).unwrap(),
                tan_series[m as usize],
                "tan coefficient at z^{m}"
            );
            assert_eq!(
                tanh_coeff(m).unwrap(),
                tanh_series[m as usize],
                "tanh coefficient at z^{m}"
            );
        }
        for m in (2..=14usize).step_by(2) {
            assert_eq!(tan_series[m], Rational::new());
            assert_eq!(tanh_series[m], Rational::new());
        }
    }
}
