//! The verification engine: one operation per transformation identity,
//! each returning a [`VerificationReport`] with both sides evaluated at a
//! requested precision.
//!
//! Every operation computes its two sides through disjoint code paths
//! (infinite series on one side, finite Bernoulli data on the other, or two
//! unrelated series), so a bug in a shared evaluator cannot cancel out of
//! the residual. Thresholds are always recorded in the report, never
//! implicit; `pass` is a pure function of residual and threshold.

mod complex_ops;
mod real_ops;

pub use complex_ops::{
    frak_g, verify_cot_coth_partial_fraction, verify_frak_g, verify_grosswald_analogue,
    verify_grosswald_classic, verify_tan_partial_fraction,
};
pub use real_ops::{
    verify_dedekind, verify_dedekind_analogue, verify_eq_2_8, verify_euler, verify_k0,
    verify_lerch, verify_lerch_analogue, verify_main, verify_negative_k,
    verify_ramanujan_formula, verify_tanh_sum, verify_thm_2_1,
};

use std::collections::BTreeMap;

use rug::ops::Pow;
use serde::{Deserialize, Serialize};

use crate::bigfloat::{
    complex_to_sig_string, pi, real_from_rational, to_sig_string, BigComplex, BigReal,
    BigfloatError, Precision,
};
use crate::exact::{bernoulli, ExactError, RatPoly, Rational};
use crate::polynomials::PolynomialError;

/// Errors raised by verification operations.
#[derive(Debug, thiserror::Error)]
pub enum IdentityError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("missing parameter `{0}`")]
    MissingParam(&'static str),
    #[error(transparent)]
    Numeric(#[from] BigfloatError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Polynomial(#[from] PolynomialError),
}

/// The product constraint tying `beta` to `alpha`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constraint {
    /// `alpha * beta = pi^2`
    PiSquared,
    /// `alpha * beta = pi^2 / 4`
    PiSquaredOverFour,
    /// `alpha * beta = pi^2 / p^2`
    PiSquaredOverPSquared(u64),
}

impl Constraint {
    pub fn label(&self) -> String {
        match self {
            Self::PiSquared => "alpha*beta = pi^2".into(),
            Self::PiSquaredOverFour => "alpha*beta = pi^2/4".into(),
            Self::PiSquaredOverPSquared(p) => format!("alpha*beta = pi^2/{}", p * p),
        }
    }
}

/// A positive pair `(alpha, beta)` satisfying one of the product
/// constraints; constructed from `alpha`, with `beta` derived at working
/// precision.
#[derive(Clone, Debug)]
pub struct AlphaBetaPair {
    pub alpha: BigReal,
    pub beta: BigReal,
    pub constraint: Constraint,
}

impl AlphaBetaPair {
    pub fn from_alpha(
        alpha: &BigReal,
        constraint: Constraint,
        prec: Precision,
    ) -> Result<Self, IdentityError> {
        if !(alpha.is_finite() && alpha.is_sign_positive() && !alpha.is_zero()) {
            return Err(IdentityError::Domain("alpha must be a positive real".into()));
        }
        let bits = prec.bits();
        let mut beta = pi(prec).square() / alpha;
        match constraint {
            Constraint::PiSquared => {}
            Constraint::PiSquaredOverFour => beta /= 4u32,
            Constraint::PiSquaredOverPSquared(p) => beta /= BigReal::with_val(bits, p).square(),
        }
        Ok(Self {
            alpha: BigReal::with_val(bits, alpha),
            beta,
            constraint,
        })
    }
}

/// One side of an identity: real-valued or complex-valued.
#[derive(Clone, Debug)]
pub enum Value {
    Real(BigReal),
    Complex(BigComplex),
}

impl Value {
    pub fn render(&self, sig: u32) -> String {
        match self {
            Self::Real(x) => to_sig_string(x, sig),
            Self::Complex(z) => complex_to_sig_string(z, sig),
        }
    }

    fn magnitude(&self, bits: u32) -> BigReal {
        match self {
            Self::Real(x) => x.clone().abs(),
            Self::Complex(z) => BigReal::with_val(bits, z.abs_ref()),
        }
    }

    fn diff_abs(&self, other: &Self, bits: u32) -> BigReal {
        match (self, other) {
            (Self::Real(a), Self::Real(b)) => BigReal::with_val(bits, a - b).abs(),
            (Self::Complex(a), Self::Complex(b)) => {
                BigReal::with_val(bits, BigComplex::with_val(bits, a - b).abs_ref())
            }
            (Self::Real(a), Self::Complex(b)) | (Self::Complex(b), Self::Real(a)) => {
                let ac = BigComplex::with_val(bits, (a, &BigReal::new(bits)));
                BigReal::with_val(bits, BigComplex::with_val(bits, ac - b).abs_ref())
            }
        }
    }
}

/// Outcome of one verification: both sides, residuals, and the recorded
/// threshold that `pass` was judged against.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub identity_id: &'static str,
    pub params: BTreeMap<String, String>,
    pub lhs: Value,
    pub rhs: Value,
    pub abs_residual: BigReal,
    pub rel_residual: BigReal,
    pub threshold: BigReal,
    pub pass: bool,
    pub n_used: u64,
    pub digits: u32,
}

impl VerificationReport {
    /// Assembles a report; `abs_residual`, `rel_residual`, and `pass` are
    /// derived here and nowhere else.
    pub fn build(
        identity_id: &'static str,
        params: BTreeMap<String, String>,
        lhs: Value,
        rhs: Value,
        threshold: BigReal,
        n_used: u64,
        prec: Precision,
    ) -> Self {
        let bits = prec.bits();
        let abs_residual = lhs.diff_abs(&rhs, bits);
        let scale = lhs.magnitude(bits).max(&rhs.magnitude(bits));
        let rel_residual = if scale.is_zero() {
            abs_residual.clone()
        } else {
            abs_residual.clone() / scale
        };
        let pass = abs_residual < threshold;
        Self {
            identity_id,
            params,
            lhs,
            rhs,
            abs_residual,
            rel_residual,
            threshold,
            pass,
            n_used,
            digits: prec.digits,
        }
    }

    pub fn to_json(&self) -> ReportJson {
        // Two digits beyond the request keep the printed sides re-parseable
        // to within 10^-digits: rounding at the last printed place can cost
        // half a unit there, which the extra digits absorb.
        ReportJson {
            identity_id: self.identity_id.to_string(),
            params: self.params.clone(),
            lhs: self.lhs.render(self.digits + 2),
            rhs: self.rhs.render(self.digits + 2),
            abs_residual: to_sig_string(&self.abs_residual, 6),
            rel_residual: to_sig_string(&self.rel_residual, 6),
            threshold: to_sig_string(&self.threshold, 6),
            pass: self.pass,
            n_used: self.n_used,
            digits: self.digits,
        }
    }
}

/// Plain-string serialization of a report; field contents are rendered
/// deterministically so identical runs are bit-identical.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ReportJson {
    pub identity_id: String,
    pub params: BTreeMap<String, String>,
    pub lhs: String,
    pub rhs: String,
    pub abs_residual: String,
    pub rel_residual: String,
    pub threshold: String,
    pub pass: bool,
    pub n_used: u64,
    pub digits: u32,
}

/// Parameter bundle for catalog-driven dispatch. Typed entry points under
/// `real_ops`/`complex_ops` are the primary API; this struct exists so a
/// command line can drive any catalog entry uniformly.
#[derive(Clone, Debug, Default)]
pub struct Params {
    pub p: Option<u64>,
    pub k: Option<i64>,
    pub alpha: Option<BigReal>,
    pub z: Option<BigComplex>,
    pub x: Option<BigComplex>,
    pub y: Option<BigComplex>,
    pub n: Option<u64>,
}

impl Params {
    fn need_p(&self) -> Result<u64, IdentityError> {
        self.p.ok_or(IdentityError::MissingParam("p"))
    }
    fn need_k(&self) -> Result<i64, IdentityError> {
        self.k.ok_or(IdentityError::MissingParam("k"))
    }
    fn need_k_u32(&self) -> Result<u32, IdentityError> {
        let k = self.need_k()?;
        u32::try_from(k).map_err(|_| IdentityError::Domain("k must be >= 0 here".into()))
    }
    fn need_alpha(&self) -> Result<&BigReal, IdentityError> {
        self.alpha.as_ref().ok_or(IdentityError::MissingParam("alpha"))
    }
    fn need_z(&self) -> Result<&BigComplex, IdentityError> {
        self.z.as_ref().ok_or(IdentityError::MissingParam("z"))
    }
    fn need_x(&self) -> Result<&BigComplex, IdentityError> {
        self.x.as_ref().ok_or(IdentityError::MissingParam("x"))
    }
    fn need_y(&self) -> Result<&BigComplex, IdentityError> {
        self.y.as_ref().ok_or(IdentityError::MissingParam("y"))
    }
}

/// A catalog entry: a named identity that can verify itself from a
/// [`Params`] bundle.
pub trait Identity: Sync {
    fn id(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn verify(&self, params: &Params, prec: Precision)
        -> Result<VerificationReport, IdentityError>;
}

macro_rules! catalog_entry {
    ($name:ident, $id:literal, $summary:literal, |$p:ident, $prec:ident| $body:expr) => {
        struct $name;
        impl Identity for $name {
            fn id(&self) -> &'static str {
                $id
            }
            fn summary(&self) -> &'static str {
                $summary
            }
            fn verify(
                &self,
                $p: &Params,
                $prec: Precision,
            ) -> Result<VerificationReport, IdentityError> {
                $body
            }
        }
    };
}

catalog_entry!(
    EulerOp,
    "euler",
    "zeta(2k) against the exact Bernoulli closed form",
    |p, prec| verify_euler(p.need_k_u32()?, prec)
);
catalog_entry!(
    RamanujanOp,
    "ramanujan",
    "the classical transformation for zeta(2k+1), alpha*beta = pi^2",
    |p, prec| verify_ramanujan_formula(p.need_k()?, p.need_alpha()?, prec)
);
catalog_entry!(
    LerchOp,
    "lerch",
    "zeta(4k+3) as a pure pi-power plus Lambert tail",
    |p, prec| verify_lerch(p.need_k_u32()?, prec)
);
catalog_entry!(
    TanPfOp,
    "tan_pf",
    "partial fractions for tan*tanh, truncated with an explicit tail bound",
    |p, prec| verify_tan_partial_fraction(p.need_x()?, p.need_y()?, p.n.unwrap_or(2000), prec)
);
catalog_entry!(
    CotCothPfOp,
    "cot_coth_pf",
    "corrected partial fractions for cot*coth, truncated with a tail bound",
    |p, prec| verify_cot_coth_partial_fraction(p.need_x()?, p.need_y()?, p.n.unwrap_or(2000), prec)
);
catalog_entry!(
    Thm21Op,
    "thm_2_1",
    "odd-index transformation at modulus 2, alpha*beta = pi^2/4",
    |p, prec| verify_thm_2_1(p.need_k()?, p.need_alpha()?, p.n, prec)
);
catalog_entry!(
    TanhSumOp,
    "tanh_sum",
    "exact evaluation of sum tanh((2n+1)pi/2)/(2n+1)^(4k+3)",
    |p, prec| verify_tanh_sum(p.need_k_u32()?, prec)
);
catalog_entry!(
    MainOp,
    "main",
    "twisted transformation for L(2k+1, chi_1), alpha*beta = pi^2/p^2",
    |p, prec| verify_main(p.need_p()?, p.need_k()?, p.need_alpha()?, p.n, prec)
);
catalog_entry!(
    LerchAnalogueOp,
    "lerch_analogue",
    "closed form for L(4k+3, chi_1) at the symmetric point",
    |p, prec| verify_lerch_analogue(p.need_p()?, p.need_k_u32()?, prec)
);
catalog_entry!(
    NegativeKOp,
    "negative_k",
    "positive-power twisted sums against a single Bernoulli number",
    |p, prec| verify_negative_k(p.need_p()?, p.need_k_u32()?, p.need_alpha()?, prec)
);
catalog_entry!(
    Eq28Op,
    "eq_2_8",
    "classical positive-power Lambert sums, alpha*beta = pi^2 (k >= 1)",
    |p, prec| verify_eq_2_8(p.need_k_u32()?, p.need_alpha()?, prec)
);
catalog_entry!(
    K0Op,
    "k0",
    "the k = 0 logarithmic transformation at modulus p",
    |p, prec| verify_k0(p.need_p()?, p.need_alpha()?, prec)
);
catalog_entry!(
    DedekindAnalogueOp,
    "dedekind_analogue",
    "odd-index log identity at modulus 2, alpha*beta = pi^2/4",
    |p, prec| verify_dedekind_analogue(p.need_alpha()?, prec)
);
catalog_entry!(
    DedekindOp,
    "dedekind",
    "the eta-logarithm transformation, alpha*beta = pi^2",
    |p, prec| verify_dedekind(p.need_alpha()?, prec)
);
catalog_entry!(
    GrosswaldClassicOp,
    "grosswald_classic",
    "the classical upper-half-plane transformation for F_{2k+1}",
    |p, prec| verify_grosswald_classic(p.need_k_u32()?, p.need_z()?, p.n, prec)
);
catalog_entry!(
    GrosswaldAnalogueOp,
    "grosswald_analogue",
    "the twisted upper-half-plane transformation for frak_F_{2k+1, chi_1}",
    |p, prec| verify_grosswald_analogue(p.need_p()?, p.need_k_u32()?, p.need_z()?, p.n, prec)
);
catalog_entry!(
    FrakGOp,
    "frak_g",
    "the quotient quantity frak_G computed two independent ways",
    |p, prec| verify_frak_g(p.need_p()?, p.need_k_u32()?, p.need_z()?, prec)
);

/// Every registered identity, in stable presentation order.
pub static CATALOG: &[&dyn Identity] = &[
    &EulerOp,
    &RamanujanOp,
    &LerchOp,
    &TanPfOp,
    &CotCothPfOp,
    &Thm21Op,
    &TanhSumOp,
    &MainOp,
    &LerchAnalogueOp,
    &NegativeKOp,
    &Eq28Op,
    &K0Op,
    &DedekindAnalogueOp,
    &DedekindOp,
    &GrosswaldClassicOp,
    &GrosswaldAnalogueOp,
    &FrakGOp,
];

/// Finds a catalog entry by its id.
pub fn lookup(id: &str) -> Option<&'static dyn Identity> {
    CATALOG.iter().copied().find(|op| op.id() == id)
}

// ---- shared evaluation helpers ----

/// Caps `|k|` so exact Bernoulli work stays bounded.
pub(crate) const K_CAP: i64 = 256;

pub(crate) fn check_k_cap(k: i64) -> Result<(), IdentityError> {
    if k.unsigned_abs() > K_CAP as u64 {
        return Err(IdentityError::Domain(format!(
            "|k| is capped at {K_CAP} to keep exact Bernoulli work bounded"
        )));
    }
    Ok(())
}

/// `zeta(1 - 2m) = -B_{2m} / (2m)` for `m >= 1`, exact.
pub(crate) fn zeta_negative_exact(m: u32) -> Rational {
    -bernoulli(2 * m) / Rational::from(2 * m)
}

/// `zeta(s)` for odd `s`: the Euler-Maclaurin series for `s >= 3`, the
/// exact rational for `s <= -1`.
pub(crate) fn zeta_odd(s: i64, prec: Precision) -> Result<BigReal, IdentityError> {
    if s >= 3 {
        Ok(crate::bigfloat::zeta_int_via_series(s as u32, prec)?)
    } else if s <= -1 && s % 2 != 0 {
        let m = ((1 - s) / 2) as u32;
        Ok(real_from_rational(&zeta_negative_exact(m), prec))
    } else {
        Err(IdentityError::Domain(format!("unsupported zeta argument {s}")))
    }
}

/// `L(s, chi_1)` mod `p` for odd `s`: via the principal-character Euler
/// factor for `s >= 3`, exact `B_{2m} (p^(2m-1) - 1) / (2m)` for
/// `s = 1 - 2m <= -1`.
pub(crate) fn l_chi1_odd(s: i64, p: u64, prec: Precision) -> Result<BigReal, IdentityError> {
    if s >= 3 {
        Ok(crate::bigfloat::l_principal(s as u32, p, prec)?)
    } else if s <= -1 && s % 2 != 0 {
        let m = ((1 - s) / 2) as u32;
        let factor = Rational::from(crate::exact::Integer::from(p).pow(2 * m - 1) - 1u32);
        let value = bernoulli(2 * m) * factor / Rational::from(2 * m);
        Ok(real_from_rational(&value, prec))
    } else {
        Err(IdentityError::Domain(format!("unsupported L argument {s}")))
    }
}

/// `x^e` for arbitrary-sign integer exponents.
pub(crate) fn real_pow(x: &BigReal, e: i64) -> BigReal {
    x.clone().pow(i32::try_from(e).expect("exponent fits i32"))
}

/// `(-1)^k` as an exact sign.
pub(crate) fn parity_sign(k: i64) -> i32 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Evaluates a rational-coefficient polynomial at a complex point.
pub(crate) fn eval_poly_complex(f: &RatPoly, z: &BigComplex, prec: Precision) -> BigComplex {
    let bits = prec.bits();
    let mut acc = BigComplex::new(bits);
    for c in f.coeffs().iter().rev() {
        acc *= z;
        acc += &real_from_rational(c, prec);
    }
    acc
}

/// `(2 pi i)^(2k+1) = i * (-1)^k * (2 pi)^(2k+1)`, with the sign and the
/// factor `i` expanded exactly (only the power of `2 pi` rounds).
pub(crate) fn two_pi_i_odd_power(k: u32, prec: Precision) -> BigComplex {
    let bits = prec.bits();
    let mag = (pi(prec) * 2u32).pow(2 * k + 1);
    let signed = if k % 2 == 0 { mag } else { -mag };
    BigComplex::with_val(bits, (BigReal::new(bits), signed))
}
