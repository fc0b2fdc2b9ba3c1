//! Arbitrary-precision numerical evaluation.
//!
//! All floating-point work in the crate flows through this module. A
//! [`Precision`] names a requested decimal accuracy plus guard digits; every
//! routine computes at the working precision (`digits + guard`) and chooses
//! its own truncation indices from proven tail bounds, so results are
//! accurate to the working precision, not merely to the requested one.

mod series;
mod zeta;

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use crate::exact::{ExactError, Rational};

pub use series::{
    frak_f, grosswald_f, lambert_twisted, nat_lambert, odd_lambert, ComplexSeries, RealSeries,
    SeriesParams,
};
pub use zeta::{l_principal, zeta_even_exact, zeta_int, zeta_int_via_series};

/// Arbitrary-precision real number (MPFR-backed).
pub type BigReal = rug::Float;
/// Arbitrary-precision complex number (MPC-backed).
pub type BigComplex = rug::Complex;

/// Errors raised during numerical evaluation.
#[derive(Debug, thiserror::Error)]
pub enum BigfloatError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("numerical failure: {0}")]
    NonConvergence(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Requested decimal precision. `digits` is the accuracy callers rely on;
/// `guard` extra digits absorb rounding and cancellation along the way.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Precision {
    pub digits: u32,
    pub guard: u32,
}

/// Default guard digits appended to every requested precision.
pub const DEFAULT_GUARD: u32 = 15;

impl Precision {
    /// Precision with the default guard of [`DEFAULT_GUARD`] digits.
    pub fn new(digits: u32) -> Self {
        assert!(digits >= 1, "precision requires at least one digit");
        Self {
            digits,
            guard: DEFAULT_GUARD,
        }
    }

    pub fn with_guard(digits: u32, guard: u32) -> Self {
        assert!(digits >= 1, "precision requires at least one digit");
        Self { digits, guard }
    }

    /// Total decimal digits carried internally.
    pub fn working_digits(&self) -> u32 {
        self.digits + self.guard
    }

    /// Binary precision for the working digits, with headroom.
    pub fn bits(&self) -> u32 {
        (f64::from(self.working_digits()) * std::f64::consts::LOG2_10).ceil() as u32 + 16
    }

    /// The same guard at four times the requested digits (escalation for
    /// counterexample re-verification).
    pub fn escalate(&self) -> Self {
        Self {
            digits: self.digits * 4,
            guard: self.guard,
        }
    }

    /// `10^-(digits - 5)`: the default verification threshold.
    pub fn threshold(&self) -> BigReal {
        pow10(self.bits(), 5 - i64::from(self.digits))
    }

    /// `10^-(working_digits)`: the series truncation target.
    pub fn tail_target(&self) -> BigReal {
        pow10(self.bits(), -i64::from(self.working_digits()))
    }
}

/// `10^e` at the given binary precision.
pub fn pow10(bits: u32, e: i64) -> BigReal {
    use rug::ops::Pow;
    BigReal::with_val(bits, 10).pow(e as i32)
}

static PI_CACHE: OnceLock<RwLock<HashMap<u32, BigReal>>> = OnceLock::new();

/// `pi` at the working precision, cached per bit width.
pub fn pi(prec: Precision) -> BigReal {
    let bits = prec.bits();
    let cache = PI_CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(v) = cache.read().expect("pi cache poisoned").get(&bits) {
        return v.clone();
    }
    let v = BigReal::with_val(bits, rug::float::Constant::Pi);
    cache
        .write()
        .expect("pi cache poisoned")
        .insert(bits, v.clone());
    v
}

/// Exact conversion of a rational to the working precision (one rounding).
pub fn real_from_rational(q: &Rational, prec: Precision) -> BigReal {
    BigReal::with_val(prec.bits(), q)
}

/// Renders with `sig` significant digits (the backing formatter treats the
/// precision as total significand length) in scientific notation, suitable
/// for re-parsing. Zero renders as `0`.
pub fn to_sig_string(x: &BigReal, sig: u32) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".to_string()
        } else if x.is_sign_positive() {
            "inf".to_string()
        } else {
            "-inf".to_string()
        };
    }
    format!("{:.*e}", sig.max(1) as usize, x)
}

/// Renders a complex value as `re`, `re + im*i`, or `im*i`.
pub fn complex_to_sig_string(z: &BigComplex, sig: u32) -> String {
    let re = z.real();
    let im = z.imag();
    if im.is_zero() {
        return to_sig_string(re, sig);
    }
    let im_part = format!("{}*i", to_sig_string(&im.clone().abs(), sig));
    let sign = if im.is_sign_positive() { "+" } else { "-" };
    if re.is_zero() {
        if im.is_sign_positive() {
            im_part
        } else {
            format!("-{im_part}")
        }
    } else {
        format!("{} {} {}", to_sig_string(re, sig), sign, im_part)
    }
}

/// Renders with exactly `places` digits after the decimal point, truncating
/// toward zero (no rounding). This is the convention of the printed tables
/// being reproduced.
pub fn to_fixed_trunc(x: &BigReal, places: u32) -> String {
    use rug::ops::Pow;
    let bits = x.prec();
    let scaled = BigReal::with_val(bits, 10).pow(places) * x.clone().abs();
    let int = scaled
        .to_integer_round(rug::float::Round::Zero)
        .expect("finite value")
        .0;
    let mut digits = int.to_string();
    let places = places as usize;
    if digits.len() <= places {
        digits = format!("{}{}", "0".repeat(places + 1 - digits.len()), digits);
    }
    let split = digits.len() - places;
    let sign = if x.is_sign_negative() { "-" } else { "" };
    format!("{}{}.{}", sign, &digits[..split], &digits[split..])
}
