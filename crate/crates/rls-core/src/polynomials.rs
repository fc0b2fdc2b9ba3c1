//! The Ramanujan-type polynomials attached to the principal character mod
//! `p`, and their classical counterparts.
//!
//! For prime `p` and `k >= 1` the polynomial is
//!
//! `R_{2k+1, p}(z) = sum_{j=1}^{k} (p^(2j) - 1)(p^(2k+2-2j) - 1)
//!                   * B_(2j)/(2j)! * B_(2k+2-2j)/(2k+2-2j)! * (pz)^(2k+2-2j)`
//!
//! of degree `2k` with a root of multiplicity exactly two at the origin.
//! The scaled variant substitutes `z/p`, i.e. drops the `p^e` factors.

use crate::exact::{
    bernoulli_over_factorial, check_prime, ExactError, Integer, RatPoly, Rational,
};
use rug::ops::Pow;

/// Errors raised while constructing the polynomials.
#[derive(Debug, thiserror::Error)]
pub enum PolynomialError {
    /// `k = 0` makes the defining sum empty; there is no polynomial.
    #[error("k = 0 gives an empty coefficient sum: no polynomial is defined")]
    EmptySum,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A Ramanujan-type polynomial together with its scaled form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamanujanTypePoly {
    pub p: u64,
    pub k: u32,
    /// `R_{2k+1, p}(z)`.
    pub poly: RatPoly,
    /// `R_{2k+1, p}(z / p)`.
    pub scaled: RatPoly,
}

/// `B_(2j)/(2j)! * B_(2k+2-2j)/(2k+2-2j)!`, the Bernoulli weight shared by
/// every polynomial and identity here.
pub fn bernoulli_pair(j: u32, k: u32) -> Rational {
    bernoulli_over_factorial(2 * j) * bernoulli_over_factorial(2 * k + 2 - 2 * j)
}

/// Builds `R_{2k+1, p}` for prime `p` and `k >= 1`.
///
/// `k = 0` is a distinct error ([`PolynomialError::EmptySum`]): the
/// coefficient sum over `j = 1..=k` is empty, which is not the zero
/// polynomial but the absence of one.
pub fn build_ramanujan_type(p: u64, k: u32) -> Result<RamanujanTypePoly, PolynomialError> {
    check_prime(p)?;
    if k == 0 {
        return Err(PolynomialError::EmptySum);
    }
    let deg = 2 * k as usize;
    let mut scaled = vec![Rational::new(); deg + 1];
    let mut unscaled = vec![Rational::new(); deg + 1];
    for j in 1..=k {
        let e = 2 * k + 2 - 2 * j;
        let fac = Rational::from(Integer::from(Integer::from(p).pow(2 * j) - 1u32))
            * Rational::from(Integer::from(Integer::from(p).pow(e) - 1u32));
        let c = bernoulli_pair(j, k) * fac;
        let pe = Rational::from(Integer::from(p).pow(e));
        unscaled[e as usize] = c.clone() * pe;
        scaled[e as usize] = c;
    }
    let poly = RatPoly::new(unscaled);
    let scaled = RatPoly::new(scaled);
    debug_assert_eq!(poly.degree(), Some(deg));
    debug_assert_eq!(poly.origin_multiplicity(), 2);
    Ok(RamanujanTypePoly { p, k, poly, scaled })
}

/// The classical Ramanujan polynomial attached to `zeta(2k+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalRamanujanPoly {
    pub k: u32,
    /// `sum_{j=0}^{k+1} B_(2j)/(2j)! * B_(2k+2-2j)/(2k+2-2j)! * z^(2k+2-2j)`.
    pub poly: RatPoly,
}

/// Builds the classical polynomial for `k >= 1`: degree `2k + 2`, constant
/// term `B_(2k+2)/(2k+2)!`.
pub fn build_classical(k: u32) -> Result<ClassicalRamanujanPoly, PolynomialError> {
    if k == 0 {
        return Err(PolynomialError::EmptySum);
    }
    let deg = (2 * k + 2) as usize;
    let mut coeffs = vec![Rational::new(); deg + 1];
    for j in 0..=(k + 1) {
        let e = (2 * k + 2 - 2 * j) as usize;
        coeffs[e] = bernoulli_pair(j, k);
    }
    let poly = RatPoly::new(coeffs);
    debug_assert_eq!(poly.degree(), Some(deg));
    Ok(ClassicalRamanujanPoly { k, poly })
}

/// True iff `q` equals its own coefficient reversal `z^deg * q(1/z)`.
/// The zero polynomial has no degree and is rejected.
pub fn self_reciprocal_check(q: &RatPoly) -> Result<bool, PolynomialError> {
    if q.is_zero() {
        return Err(PolynomialError::Exact(ExactError::Domain(
            "self-reciprocity is undefined for the zero polynomial".into(),
        )));
    }
    Ok(q.reversed() == *q)
}

/// Number of exceptional unimodular roots forced on the twisted side:
/// `0` if `k` is odd, `1` if `k` is even (including `k = 0`).
pub fn delta_k(k: u64) -> u32 {
    if k % 2 == 0 {
        1
    } else {
        0
    }
}

/// Classical analogue, driven by `gcd(k, 6)`:
/// `1 -> 0`, `2 -> 1`, `3 -> 2`, `6 -> 3`.
pub fn delta_k_classical(k: u64) -> u32 {
    match gcd(k, 6) {
        1 => 0,
        2 => 1,
        3 => 2,
        _ => 3,
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
