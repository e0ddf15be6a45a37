use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::{ExactScalar, Scalar, Tier};

/// A complex double. Comparisons go through [`super::Tolerance`].
#[derive(Clone, Copy, PartialEq, Debug, Default)]
pub struct FloatScalar(pub Complex64);

impl FloatScalar {
    pub fn real(x: f64) -> Self {
        FloatScalar(Complex64::new(x, 0.0))
    }

    pub fn re(&self) -> f64 {
        self.0.re
    }

    pub fn im(&self) -> f64 {
        self.0.im
    }
}

impl fmt::Display for FloatScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.im == 0.0 {
            write!(f, "{:e}", self.0.re)
        } else {
            write!(f, "({:e}{:+e}i)", self.0.re, self.0.im)
        }
    }
}

impl Add for FloatScalar {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        FloatScalar(self.0 + o.0)
    }
}

impl Sub for FloatScalar {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        FloatScalar(self.0 - o.0)
    }
}

impl Mul for FloatScalar {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        FloatScalar(self.0 * o.0)
    }
}

impl Neg for FloatScalar {
    type Output = Self;
    fn neg(self) -> Self {
        FloatScalar(-self.0)
    }
}

impl Scalar for FloatScalar {
    const TIER: Tier = Tier::Float;

    fn zero() -> Self {
        FloatScalar(Complex64::new(0.0, 0.0))
    }

    fn one() -> Self {
        Self::real(1.0)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::real(num as f64 / den as f64)
    }

    fn imag() -> Self {
        FloatScalar(Complex64::new(0.0, 1.0))
    }

    fn is_zero(&self) -> bool {
        self.0.re == 0.0 && self.0.im == 0.0
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(FloatScalar(self.0.inv()))
        }
    }

    fn sqrt(&self) -> Option<Self> {
        if self.0.im == 0.0 && self.0.re >= 0.0 {
            Some(Self::real(self.0.re.sqrt()))
        } else {
            None
        }
    }

    fn to_complex(&self) -> Complex64 {
        self.0
    }

    fn from_exact(x: &ExactScalar) -> Self {
        FloatScalar(x.to_f64_complex())
    }

    fn from_f64(x: f64) -> Option<Self> {
        x.is_finite().then(|| Self::real(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{sphere_volume, Tolerance};

    #[test]
    fn exact_to_float_examples() {
        assert_eq!(FloatScalar::from_exact(&ExactScalar::zero()).re(), 0.0);
        assert_eq!(FloatScalar::from_exact(&ExactScalar::rational(1, 2)).re(), 0.5);
        let om4 = FloatScalar::from_exact(&sphere_volume(4));
        let expect = FloatScalar::real(8.0 * std::f64::consts::PI.powi(2) / 3.0);
        assert!(om4.approx_eq(&expect, &Tolerance::default()));
        assert!((om4.re() - 26.3189).abs() < 1e-4);
    }

    #[test]
    fn tolerance_policy() {
        let tol = Tolerance::default();
        assert!(FloatScalar::real(1.0).approx_eq(&FloatScalar::real(1.0 + 5e-9), &tol));
        assert!(!FloatScalar::real(1.0).approx_eq(&FloatScalar::real(1.0 + 5e-8), &tol));
        assert!(FloatScalar::real(0.0).approx_eq(&FloatScalar::real(5e-11), &tol));
    }
}
