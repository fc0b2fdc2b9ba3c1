//! Exact integer and rational arithmetic.
//!
//! Everything in this module is exact: no floating point is involved and no
//! tolerance appears in any result. Rationals are always in lowest terms
//! with positive denominator (the backing GMP type canonicalises on
//! construction).

mod arith;
mod bernoulli;
mod gaussian;
mod poly;

pub use arith::{
    a_coeff, check_prime, convolution_coefficient_check, divisors, is_prime, sigma_chi,
    tan_coeff, tanh_coeff,
};
pub use bernoulli::{bernoulli, bernoulli_over_factorial, euler_even_zeta_rational};
pub use gaussian::GaussianRational;
pub use poly::{eval_gaussian, poly_gcd, RatPoly};

/// Arbitrary-precision integer, `a/b` exact rational in lowest terms.
pub type Integer = rug::Integer;
/// Arbitrary-precision rational, canonical form (lowest terms, positive denominator).
pub type Rational = rug::Rational;

/// Errors raised by exact-arithmetic operations.
#[derive(Debug, thiserror::Error)]
pub enum ExactError {
    /// A modulus argument was not a prime number.
    #[error("modulus {0} is not prime")]
    CompositeModulus(u64),
    /// An argument was outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
}

/// Convenience constructor for a rational from a signed numerator and
/// unsigned denominator.
pub fn rat(num: i64, den: u64) -> Rational {
    Rational::from((num, den))
}
