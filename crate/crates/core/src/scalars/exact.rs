use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Scalar, Tier};

/// `p/q + i·r/s` with arbitrary-precision numerators and denominators.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussRational {
    pub re: BigRational,
    pub im: BigRational,
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn fmt_ratio(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRational { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussRational { re, im: BigRational::zero() }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::real(ratio(num, den))
    }

    pub fn from_parts(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        GaussRational { re: ratio(re_num, re_den), im: ratio(im_num, im_den) }
    }

    pub fn zero() -> Self {
        Self::real(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::real(BigRational::one())
    }

    pub fn i() -> Self {
        GaussRational { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRational { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussRational { re: &self.re / &n, im: -&self.im / &n })
    }

    /// Integer power; negative exponents invert.
    pub fn powi(&self, k: i32) -> Option<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Some(acc)
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => f.write_str(&fmt_ratio(&self.re)),
            (true, false) => write!(f, "{}·i", fmt_ratio(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(f, "({}{}{}·i)", fmt_ratio(&self.re), sign, fmt_ratio(&self.im.abs()))
            }
        }
    }
}

impl<'a> Add<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn add(self, o: &GaussRational) -> GaussRational {
        GaussRational { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn sub(self, o: &GaussRational) -> GaussRational {
        GaussRational { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a GaussRational> for &'a GaussRational {
    type Output = GaussRational;
    fn mul(self, o: &GaussRational) -> GaussRational {
        GaussRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Neg for GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational { re: -self.re, im: -self.im }
    }
}

/// A finite sum `Σ_k c_k · π^(k/2)` with Gaussian-rational `c_k`.
///
/// Keys are twice the π-exponent, so half-integer powers (from Γ at
/// half-integers) are representable. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ExactScalar {
    terms: BTreeMap<i32, GaussRational>,
}

impl ExactScalar {
    pub fn from_gauss(c: GaussRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn rational(num: i64, den: i64) -> Self {
        Self::from_gauss(GaussRational::from_ratio(num, den))
    }

    pub fn from_big_rational(r: BigRational) -> Self {
        Self::from_gauss(GaussRational::real(r))
    }

    /// `c · π^(twice_exp/2)`.
    pub fn monomial(c: GaussRational, twice_exp: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(twice_exp, c);
        }
        ExactScalar { terms }
    }

    /// `π^(twice_exp/2)`.
    pub fn pi_pow_half(twice_exp: i32) -> Self {
        Self::monomial(GaussRational::one(), twice_exp)
    }

    pub fn pi() -> Self {
        Self::pi_pow_half(2)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &GaussRational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    /// Coefficient of `π^(twice_exp/2)`.
    pub fn coeff(&self, twice_exp: i32) -> GaussRational {
        self.terms.get(&twice_exp).cloned().unwrap_or_else(GaussRational::zero)
    }

    /// The single `(coefficient, twice_exp)` pair when the value is a monomial.
    pub fn as_monomial(&self) -> Option<(&GaussRational, i32)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(k, c)| (c, *k))
        } else {
            None
        }
    }

    /// The Gaussian rational when the value carries no π.
    pub fn as_gauss(&self) -> Option<GaussRational> {
        match self.terms.len() {
            0 => Some(GaussRational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            for (k, v) in &self.terms {
                terms.insert(*k, v * c);
            }
        }
        ExactScalar { terms }
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(GaussRational::is_real)
    }

    pub fn to_f64_complex(&self) -> Complex64 {
        self.terms
            .iter()
            .map(|(k, c)| c.to_complex() * std::f64::consts::PI.powf(*k as f64 / 2.0))
            .sum()
    }

    fn insert_add(terms: &mut BTreeMap<i32, GaussRational>, k: i32, c: GaussRational) {
        if c.is_zero() {
            return;
        }
        match terms.get_mut(&k) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    terms.remove(&k);
                }
            }
            None => {
                terms.insert(k, c);
            }
        }
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| match *k {
                0 => c.to_string(),
                k if k % 2 == 0 => format!("{}·π^{}", c, k / 2),
                k => format!("{}·π^({}/2)", c, k),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Serialized as its display string, e.g. `8/3·π^2`.
impl serde::Serialize for ExactScalar {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Add for ExactScalar {
    type Output = ExactScalar;
    fn add(mut self, o: ExactScalar) -> ExactScalar {
        for (k, c) in o.terms {
            Self::insert_add(&mut self.terms, k, c);
        }
        self
    }
}

impl Sub for ExactScalar {
    type Output = ExactScalar;
    fn sub(self, o: ExactScalar) -> ExactScalar {
        self + (-o)
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar { terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect() }
    }
}

impl Mul for ExactScalar {
    type Output = ExactScalar;
    fn mul(self, o: ExactScalar) -> ExactScalar {
        let mut terms = BTreeMap::new();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &o.terms {
                Self::insert_add(&mut terms, ka + kb, ca * cb);
            }
        }
        ExactScalar { terms }
    }
}

fn big_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

impl Scalar for ExactScalar {
    const TIER: Tier = Tier::Exact;

    fn zero() -> Self {
        ExactScalar::default()
    }

    fn one() -> Self {
        Self::rational(1, 1)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::rational(num, den)
    }

    fn imag() -> Self {
        Self::from_gauss(GaussRational::i())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn inv(&self) -> Option<Self> {
        let (c, k) = self.as_monomial()?;
        Some(Self::monomial(c.inv()?, -k))
    }

    fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (c, k) = self.as_monomial()?;
        if !c.is_real() || c.re.is_negative() || k % 2 != 0 {
            return None;
        }
        let num = big_sqrt_exact(c.re.numer())?;
        let den = big_sqrt_exact(c.re.denom())?;
        Some(Self::monomial(GaussRational::real(BigRational::new(num, den)), k / 2))
    }

    fn to_complex(&self) -> Complex64 {
        self.to_f64_complex()
    }

    fn from_exact(x: &ExactScalar) -> Self {
        x.clone()
    }

    fn from_f64(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(Self::from_big_rational)
    }
}

fn factorial(k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

/// `Γ(m/2)` for a positive integer `m`, exactly.
///
/// Even `m` gives `(m/2 - 1)!`; odd `m = 2k + 1` gives `(2k)!/(4^k k!) · √π`.
pub fn gamma_half(twice_arg: u32) -> ExactScalar {
    assert!(twice_arg > 0, "Γ has a pole at 0");
    if twice_arg % 2 == 0 {
        let k = (twice_arg / 2 - 1) as u64;
        ExactScalar::from_big_rational(BigRational::from_integer(factorial(k)))
    } else {
        let k = ((twice_arg - 1) / 2) as u64;
        let num = factorial(2 * k);
        let den = BigInt::from(4u32).pow(k as u32) * factorial(k);
        ExactScalar::monomial(GaussRational::real(BigRational::new(num, den)), 1)
    }
}

/// Volume of the unit sphere `S^d ⊂ R^(d+1)`: `2 π^((d+1)/2) / Γ((d+1)/2)`.
pub fn sphere_volume(d: u32) -> ExactScalar {
    let gamma = gamma_half(d + 1);
    let g_inv = gamma.inv().expect("Γ at a positive half-integer is a nonzero monomial");
    ExactScalar::rational(2, 1) * ExactScalar::pi_pow_half(d as i32 + 1) * g_inv
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> ExactScalar {
        ExactScalar::rational(n, d)
    }

    #[test]
    fn sphere_volumes_low_dimensions() {
        assert_eq!(sphere_volume(1), q(2, 1) * ExactScalar::pi());
        assert_eq!(sphere_volume(3), q(2, 1) * ExactScalar::pi_pow_half(4));
        assert_eq!(sphere_volume(4), q(8, 3) * ExactScalar::pi_pow_half(4));
        assert_eq!(sphere_volume(0), q(2, 1));
        assert_eq!(sphere_volume(2), q(4, 1) * ExactScalar::pi());
    }

    #[test]
    fn sphere_volume_matches_float_gamma_formula() {
        // Γ by the Lanczos-free route: Γ(x+1) = xΓ(x), Γ(1/2) = √π, Γ(1) = 1.
        fn gamma_f(twice: u32) -> f64 {
            if twice == 1 {
                return std::f64::consts::PI.sqrt();
            }
            if twice == 2 {
                return 1.0;
            }
            (twice as f64 / 2.0 - 1.0) * gamma_f(twice - 2)
        }
        for d in 0..12u32 {
            let expect =
                2.0 * std::f64::consts::PI.powf((d as f64 + 1.0) / 2.0) / gamma_f(d + 1);
            let got = sphere_volume(d).to_complex();
            assert!((got.re - expect).abs() < 1e-12 * expect, "d={d}");
            assert_eq!(got.im, 0.0);
        }
    }

    #[test]
    fn sphere_volume_recurrence() {
        for d in 3..16u32 {
            let lhs = sphere_volume(d);
            let rhs = sphere_volume(d - 2) * q(2, (d - 1) as i64) * ExactScalar::pi();
            assert_eq!(lhs, rhs, "d={d}");
        }
    }

    #[test]
    fn omega4_evaluates_and_prints() {
        let om4 = sphere_volume(4);
        assert!((om4.to_complex().re - 26.318945069571623).abs() < 1e-12);
        assert_eq!(om4.to_string(), "8/3·π^2");
        assert_eq!(ExactScalar::zero().to_string(), "0");
        assert_eq!(q(1, 2).to_complex().re, 0.5);
    }

    #[test]
    fn exact_sqrt_and_inverse() {
        assert_eq!(q(9, 4).sqrt(), Some(q(3, 2)));
        assert_eq!(q(2, 1).sqrt(), None);
        assert_eq!(q(-4, 1).sqrt(), None);
        assert_eq!(sphere_volume(4).inv().unwrap() * sphere_volume(4), q(1, 1));
        let two_terms = q(1, 1) + ExactScalar::pi();
        assert!(two_terms.inv().is_none());
    }

    #[test]
    fn gaussian_display() {
        let z = ExactScalar::from_gauss(GaussRational::from_parts(1, 2, -3, 4));
        assert_eq!(z.to_string(), "(1/2-3/4·i)");
        assert_eq!(ExactScalar::imag().to_string(), "1·i");
        assert_eq!(gamma_half(1).to_string(), "1·π^(1/2)");
    }
}
