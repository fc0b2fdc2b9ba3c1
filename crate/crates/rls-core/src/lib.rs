//! Verification toolkit for Ramanujan-type identities for `zeta(2k+1)` and
//! `L(2k+1, chi_1)`, the associated Grosswald-type transformations, and the
//! Ramanujan-type polynomials attached to them.
//!
//! The crate is organised in five layers:
//!
//! * [`exact`] - exact rational arithmetic: Bernoulli numbers, twisted
//!   divisor sums, tangent coefficients, Gaussian rationals, and rational
//!   polynomial algebra including a fraction-free GCD.
//! * [`bigfloat`] - arbitrary-precision evaluation: integer zeta values via
//!   Euler-Maclaurin, principal-character L-values, and the exponentially
//!   convergent series (twisted Lambert series, Eisenstein-like series) with
//!   proven truncation bounds.
//! * [`polynomials`] - construction of the Ramanujan-type polynomials and
//!   their classical counterparts, plus exact structural predicates.
//! * [`rootfinder`] - Aberth-Ehrlich simultaneous root finding and the
//!   exact/numerical checks behind the two root-location conjectures.
//! * [`identities`] - the catalogue of verifiable identities; each entry
//!   evaluates both sides through disjoint code paths and reports residuals.

pub mod bigfloat;
pub mod exact;
pub mod identities;
pub mod polynomials;
pub mod rootfinder;

pub use bigfloat::{BigComplex, BigReal, Precision};
pub use exact::{GaussianRational, Integer, RatPoly, Rational};
