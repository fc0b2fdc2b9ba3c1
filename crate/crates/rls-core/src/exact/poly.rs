//! Dense univariate polynomials over `Q` with exact arithmetic and a
//! fraction-free GCD.

use std::fmt;

use super::{ExactError, GaussianRational, Integer, Rational};

/// A polynomial with rational coefficients, stored dense in ascending
/// degree order. The zero polynomial is the empty coefficient list; any
/// other representation has a nonzero leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    /// Builds a polynomial from ascending coefficients, trimming trailing
    /// zeros so the invariant on the leading coefficient holds.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs
            .last()
            .is_some_and(|c| c.cmp0() == std::cmp::Ordering::Equal)
        {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::new(vec![Rational::from(1)])
    }

    /// `c * z^e`.
    pub fn monomial(c: Rational, e: usize) -> Self {
        let mut coeffs = vec![Rational::new(); e + 1];
        coeffs[e] = c;
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `z^i` (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(Rational::from(self.coeff(i) + other.coeff(i)));
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(Rational::from(self.coeff(i) - other.coeff(i)));
        }
        Self::new(out)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::new(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.cmp0() == std::cmp::Ordering::Equal {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += Rational::from(a * b);
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| Rational::from(a * c)).collect())
    }

    /// Horner evaluation at a rational point.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(Rational::from(c * Rational::from(i as u64)));
        }
        Self::new(out)
    }

    /// Euclidean division: returns `(q, r)` with `self = q * d + r` and
    /// `deg r < deg d`. Division by zero is an error.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self), ExactError> {
        if d.is_zero() {
            return Err(ExactError::Domain("polynomial division by zero".into()));
        }
        let dd = d.degree().expect("nonzero divisor");
        let lead = d.leading().expect("nonzero divisor").clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let qlen = rem.len() - dd;
        let mut q = vec![Rational::new(); qlen];
        for i in (0..qlen).rev() {
            let top = rem[i + dd].clone();
            if top.cmp0() == std::cmp::Ordering::Equal {
                continue;
            }
            let f = top / &lead;
            for (j, dc) in d.coeffs.iter().enumerate() {
                let sub = Rational::from(dc * &f);
                rem[i + j] -= sub;
            }
            q[i] = f;
        }
        Ok((Self::new(q), Self::new(rem)))
    }

    /// Remainder of `self` modulo `d`.
    pub fn rem(&self, d: &Self) -> Result<Self, ExactError> {
        Ok(self.div_rem(d)?.1)
    }

    /// Scales to leading coefficient 1. The zero polynomial is an error.
    pub fn monic(&self) -> Result<Self, ExactError> {
        let lead = self
            .leading()
            .ok_or_else(|| ExactError::Domain("monic of zero polynomial".into()))?;
        let inv = Rational::from(lead.recip_ref());
        Ok(self.scale(&inv))
    }

    /// Number of trailing zero coefficients, i.e. the exact multiplicity of
    /// the root at the origin (zero for the zero polynomial by convention).
    pub fn origin_multiplicity(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| c.cmp0() != std::cmp::Ordering::Equal)
            .unwrap_or(0)
    }

    /// Divides by `z^m`; all removed coefficients must be zero.
    pub fn shift_down(&self, m: usize) -> Result<Self, ExactError> {
        if self.origin_multiplicity() < m {
            return Err(ExactError::Domain(
                "shift_down would drop nonzero coefficients".into(),
            ));
        }
        Ok(Self::new(self.coeffs[m.min(self.coeffs.len())..].to_vec()))
    }

    /// True if only even powers carry nonzero coefficients.
    pub fn is_even_poly(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| i % 2 == 0 || c.cmp0() == std::cmp::Ordering::Equal)
    }

    /// Coefficient reversal: `z^deg * self(1/z)`.
    pub fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::new(coeffs)
    }

    /// Renders descending-degree, e.g. `(-1/720)z^4 + (1/144)z^2 - 1/720`.
    pub fn pretty(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.cmp0() == std::cmp::Ordering::Equal {
                continue;
            }
            let mag = Rational::from(c.clone().abs());
            let neg = c.cmp0() == std::cmp::Ordering::Less;
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let coeff_str = if mag == 1u32 && i > 0 {
                String::new()
            } else if *mag.denom() == 1u32 || i == 0 {
                format!("{mag}")
            } else {
                format!("({mag})")
            };
            out.push_str(&coeff_str);
            if i > 0 {
                out.push_str(var);
                if i > 1 {
                    out.push_str(&format!("^{i}"));
                }
            }
        }
        out
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty("z"))
    }
}

/// Horner evaluation at a Gaussian rational point, exactly.
pub fn eval_gaussian(f: &RatPoly, x: &GaussianRational) -> GaussianRational {
    let mut acc = GaussianRational::zero();
    for c in f.coeffs().iter().rev() {
        acc = acc.mul(x);
        acc = acc.add(&GaussianRational::from_rational(c.clone()));
    }
    acc
}

/// Monic greatest common divisor over `Q`, computed by a fraction-free
/// primitive remainder sequence on integer polynomials.
///
/// Both inputs zero is an error; if exactly one is zero the result is the
/// monic normalisation of the other.
pub fn poly_gcd(a: &RatPoly, b: &RatPoly) -> Result<RatPoly, ExactError> {
    if a.is_zero() && b.is_zero() {
        return Err(ExactError::Domain("gcd of two zero polynomials".into()));
    }
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let mut u = primitive_integer(a);
    let mut v = primitive_integer(b);
    if u.len() < v.len() {
        std::mem::swap(&mut u, &mut v);
    }
    loop {
        if v.len() == 1 {
            // A nonzero constant divides everything: the gcd is 1.
            return Ok(RatPoly::one());
        }
        let r = pseudo_rem(&u, &v);
        if r.is_empty() {
            let monic_v: Vec<Rational> = {
                let lead = Rational::from(v.last().expect("nonzero").clone());
                v.iter()
                    .map(|c| Rational::from(c.clone()) / &lead)
                    .collect()
            };
            return Ok(RatPoly::new(monic_v));
        }
        u = v;
        v = primitive_of(r);
    }
}

/// Clears denominators and removes content; leading coefficient positive.
fn primitive_integer(f: &RatPoly) -> Vec<Integer> {
    let mut lcm = Integer::from(1);
    for c in f.coeffs() {
        lcm.lcm_mut(c.denom());
    }
    let ints: Vec<Integer> = f
        .coeffs()
        .iter()
        .map(|c| Integer::from(c.numer() * Integer::from(&lcm / c.denom())))
        .collect();
    primitive_of(ints)
}

fn primitive_of(mut f: Vec<Integer>) -> Vec<Integer> {
    while f.last().is_some_and(|c| c.cmp0() == std::cmp::Ordering::Equal) {
        f.pop();
    }
    if f.is_empty() {
        return f;
    }
    let mut content = Integer::new();
    for c in &f {
        content.gcd_mut(c);
    }
    if f.last().expect("nonempty").cmp0() == std::cmp::Ordering::Less {
        content = -content;
    }
    for c in &mut f {
        c.div_exact_mut(&content);
    }
    f
}

/// `lc(v)^(deg u - deg v + 1) * u mod v` over the integers, up to a
/// harmless scalar (the caller removes content immediately).
fn pseudo_rem(u: &[Integer], v: &[Integer]) -> Vec<Integer> {
    let dv = v.len() - 1;
    let lv = v.last().expect("nonzero divisor").clone();
    let mut r: Vec<Integer> = u.to_vec();
    while r.len() > dv {
        let top = r.last().expect("nonempty").clone();
        let shift = r.len() - 1 - dv;
        for c in r.iter_mut() {
            *c *= &lv;
        }
        for (j, vc) in v.iter().enumerate() {
            let sub = Integer::from(vc * &top);
            r[shift + j] -= sub;
        }
        while r.last().is_some_and(|c| c.cmp0() == std::cmp::Ordering::Equal) {
            r.pop();
        }
        if r.is_empty() {
            break;
        }
    }
    r
}
