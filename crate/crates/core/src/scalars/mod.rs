//! The scalar tower shared by every other module.
//!
//! Two tiers implement [`Scalar`]: [`ExactScalar`] (Gaussian rationals graded
//! by half-integer powers of π, never rounded) and [`FloatScalar`] (complex
//! doubles compared under a [`Tolerance`]). Clifford elements, jets, operators
//! and symbols are generic over the tier.

mod exact;
mod float;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use exact::{gamma_half, sphere_volume, ExactScalar, GaussRational};
pub use float::FloatScalar;

/// Which scalar tier a computation runs in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Exact,
    Float,
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tier::Exact => f.write_str("exact"),
            Tier::Float => f.write_str("float"),
        }
    }
}

/// Mixed absolute/relative comparison policy for the float tier.
///
/// Two values agree when `|a - b| <= abs + rel * max(|a|, |b|)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { abs: 1e-10, rel: 1e-8 }
    }
}

impl Tolerance {
    pub fn new(abs: f64, rel: f64) -> Self {
        Tolerance { abs, rel }
    }

    pub fn close(&self, a: Complex64, b: Complex64) -> bool {
        (a - b).norm() <= self.abs + self.rel * a.norm().max(b.norm())
    }
}

/// Ring operations (plus the few partial field operations the engine needs)
/// common to both tiers.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const TIER: Tier;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    /// The imaginary unit.
    fn imag() -> Self;
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse, when it exists in this tier.
    fn inv(&self) -> Option<Self>;
    /// Principal square root of a positive real, when it exists in this tier.
    fn sqrt(&self) -> Option<Self>;
    fn to_complex(&self) -> Complex64;
    /// Embed an exact value. Always succeeds for both tiers.
    fn from_exact(x: &ExactScalar) -> Self;
    /// Embed a double. The exact tier converts every finite double exactly
    /// (it is a dyadic rational); non-finite input yields `None`.
    fn from_f64(x: f64) -> Option<Self>;

    fn from_int(k: i64) -> Self {
        Self::from_ratio(k, 1)
    }

    fn approx_eq(&self, other: &Self, tol: &Tolerance) -> bool {
        match Self::TIER {
            Tier::Exact => self == other,
            Tier::Float => tol.close(self.to_complex(), other.to_complex()),
        }
    }

    fn scale_int(&self, k: i64) -> Self {
        self.clone() * Self::from_int(k)
    }
}
