//! Gaussian rationals `a + b*i` with exact rational parts.

use std::fmt;

use super::Rational;

/// An element of `Q(i)`, held exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::new(Rational::new(), Rational::new())
    }

    pub fn one() -> Self {
        Self::new(Rational::from(1), Rational::new())
    }

    /// The imaginary unit `i`.
    pub fn i() -> Self {
        Self::new(Rational::new(), Rational::from(1))
    }

    pub fn from_rational(re: Rational) -> Self {
        Self::new(re, Rational::new())
    }

    pub fn is_zero(&self) -> bool {
        self.re.cmp0() == std::cmp::Ordering::Equal && self.im.cmp0() == std::cmp::Ordering::Equal
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            Rational::from(&self.re + &other.re),
            Rational::from(&self.im + &other.im),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let re = Rational::from(&self.re * &other.re) - Rational::from(&self.im * &other.im);
        let im = Rational::from(&self.re * &other.im) + Rational::from(&self.im * &other.re);
        Self::new(re, im)
    }

    pub fn mul_rational(&self, c: &Rational) -> Self {
        Self::new(Rational::from(&self.re * c), Rational::from(&self.im * c))
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.cmp0() == std::cmp::Ordering::Equal {
            write!(f, "{}", self.re)
        } else if self.re.cmp0() == std::cmp::Ordering::Equal {
            write!(f, "{}*i", self.im)
        } else {
            write!(f, "{} + {}*i", self.re, self.im)
        }
    }
}
