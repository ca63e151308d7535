//! Points of the Riemann sphere.

use std::fmt;

use num_complex::Complex64;

/// A finite complex number or the point at infinity.
///
/// Constructors never produce a `Finite` value with a non-finite component;
/// overflowing arithmetic is routed to [`ExtComplex::Infinity`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtComplex {
    Finite(Complex64),
    Infinity,
}

impl ExtComplex {
    pub const ZERO: ExtComplex = ExtComplex::Finite(Complex64::new(0.0, 0.0));

    pub fn new(re: f64, im: f64) -> Self {
        Self::from(Complex64::new(re, im))
    }

    pub fn real(re: f64) -> Self {
        Self::new(re, 0.0)
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtComplex::Infinity)
    }

    pub fn finite(&self) -> Option<Complex64> {
        match *self {
            ExtComplex::Finite(z) => Some(z),
            ExtComplex::Infinity => None,
        }
    }

    /// Modulus, `+inf` at infinity.
    pub fn norm(&self) -> f64 {
        match self {
            ExtComplex::Finite(z) => z.norm(),
            ExtComplex::Infinity => f64::INFINITY,
        }
    }

    /// `1/z` on the sphere.
    pub fn recip(&self) -> Self {
        match *self {
            ExtComplex::Infinity => Self::ZERO,
            ExtComplex::Finite(z) if z == Complex64::new(0.0, 0.0) => ExtComplex::Infinity,
            ExtComplex::Finite(z) => Self::from(z.inv()),
        }
    }

    /// Chordal-free distance used for orbit matching; infinite if either side is.
    pub fn dist(&self, other: &ExtComplex) -> f64 {
        match (self, other) {
            (ExtComplex::Finite(a), ExtComplex::Finite(b)) => (a - b).norm(),
            (ExtComplex::Infinity, ExtComplex::Infinity) => 0.0,
            _ => f64::INFINITY,
        }
    }
}

impl From<Complex64> for ExtComplex {
    fn from(z: Complex64) -> Self {
        if z.re.is_finite() && z.im.is_finite() {
            ExtComplex::Finite(z)
        } else {
            ExtComplex::Infinity
        }
    }
}

impl fmt::Display for ExtComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtComplex::Finite(z) => write!(f, "{} {}", z.re, z.im),
            ExtComplex::Infinity => write!(f, "inf"),
        }
    }
}
