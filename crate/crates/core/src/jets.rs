//! Truncated multivariate Taylor expansions at a chart base point.
//!
//! A [`Jet`] knows its coefficients up to total degree `order`. The order is
//! carried per value: products take the smaller order and each derivative
//! lowers it by one, so a jet never claims precision it does not have. A
//! negative order means every coefficient has been consumed.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalars::{Scalar, Tolerance};

pub const MAX_VARS: usize = 8;

/// Default truncation order for new jets.
pub const DEFAULT_ORDER: i32 = 6;

/// Exponent vector `α` of a monomial `x^α`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MultiIndex(pub [u8; MAX_VARS]);

impl MultiIndex {
    pub fn zero() -> Self {
        MultiIndex([0; MAX_VARS])
    }

    pub fn unit(i: usize) -> Self {
        let mut m = Self::zero();
        m.0[i] = 1;
        m
    }

    pub fn from_slice(a: &[u8]) -> Self {
        let mut m = Self::zero();
        m.0[..a.len()].copy_from_slice(a);
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&a| a as u32).sum()
    }

    pub fn get(&self, i: usize) -> u8 {
        self.0[i]
    }

    pub fn plus(&self, o: &Self) -> Self {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.0[i] += o.0[i];
        }
        m
    }

    pub fn plus_unit(&self, i: usize) -> Self {
        let mut m = *self;
        m.0[i] += 1;
        m
    }

    pub fn minus_unit(&self, i: usize) -> Option<Self> {
        let mut m = *self;
        m.0[i] = m.0[i].checked_sub(1)?;
        Some(m)
    }

    pub fn checked_sub(&self, o: &Self) -> Option<Self> {
        let mut m = *self;
        for i in 0..MAX_VARS {
            m.0[i] = m.0[i].checked_sub(o.0[i])?;
        }
        Some(m)
    }

    /// `α!`
    pub fn factorial(&self) -> i64 {
        self.0.iter().map(|&a| (1..=a as i64).product::<i64>()).product()
    }

    /// `Π_i binom(α_i, β_i)`, zero when `β ≰ α`.
    pub fn binomial(&self, beta: &Self) -> i64 {
        let mut acc = 1i64;
        for i in 0..MAX_VARS {
            let (a, b) = (self.0[i] as i64, beta.0[i] as i64);
            if b > a {
                return 0;
            }
            acc *= binom(a, b);
        }
        acc
    }

    /// All `β ≤ α` componentwise.
    pub fn sub_indices(&self) -> Vec<Self> {
        let mut out = vec![Self::zero()];
        for i in 0..MAX_VARS {
            let mut next = Vec::new();
            for m in &out {
                for v in 0..=self.0[i] {
                    let mut mm = *m;
                    mm.0[i] = v;
                    next.push(mm);
                }
            }
            out = next;
        }
        out
    }

    pub fn as_vec(&self, nvars: usize) -> Vec<u8> {
        self.0[..nvars].to_vec()
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|&a| a != 0).map_or(0, |p| p + 1);
        write!(f, "{:?}", &self.0[..last])
    }
}

pub fn binom(a: i64, b: i64) -> i64 {
    if b < 0 || b > a {
        return 0;
    }
    let mut r = 1i64;
    for k in 0..b {
        r = r * (a - k) / (k + 1);
    }
    r
}

/// Every multi-index in `nvars` variables with total degree `<= max_degree`,
/// in graded order.
pub fn multi_indices(nvars: usize, max_degree: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    for d in 0..=max_degree {
        multi_indices_of_degree(nvars, d, &mut out);
    }
    out
}

pub fn multi_indices_of_degree(nvars: usize, degree: u32, out: &mut Vec<MultiIndex>) {
    fn rec(i: usize, nvars: usize, left: u32, cur: &mut MultiIndex, out: &mut Vec<MultiIndex>) {
        if i + 1 == nvars {
            cur.0[i] = left as u8;
            out.push(*cur);
            cur.0[i] = 0;
            return;
        }
        for v in (0..=left).rev() {
            cur.0[i] = v as u8;
            rec(i + 1, nvars, left - v, cur, out);
        }
        cur.0[i] = 0;
    }
    if nvars == 0 {
        if degree == 0 {
            out.push(MultiIndex::zero());
        }
        return;
    }
    rec(0, nvars, degree, &mut MultiIndex::zero(), out);
}

#[derive(Clone, PartialEq, Debug)]
pub struct Jet<S> {
    nvars: usize,
    order: i32,
    terms: BTreeMap<MultiIndex, S>,
}

fn insert_add<S: Scalar>(terms: &mut BTreeMap<MultiIndex, S>, a: MultiIndex, c: S) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&a) {
        Some(v) => {
            let sum = v.clone() + c;
            if sum.is_zero() {
                terms.remove(&a);
            } else {
                *v = sum;
            }
        }
        None => {
            terms.insert(a, c);
        }
    }
}

impl<S: Scalar> Jet<S> {
    pub fn zero(nvars: usize, order: i32) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        Jet { nvars, order, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, order: i32, c: S) -> Self {
        Self::monomial(nvars, order, MultiIndex::zero(), c)
    }

    pub fn one(nvars: usize, order: i32) -> Self {
        Self::constant(nvars, order, S::one())
    }

    pub fn monomial(nvars: usize, order: i32, alpha: MultiIndex, c: S) -> Self {
        let mut j = Self::zero(nvars, order);
        if alpha.degree() as i32 <= order {
            insert_add(&mut j.terms, alpha, c);
        }
        j
    }

    /// The coordinate function `x_i` (0-based).
    pub fn variable(nvars: usize, order: i32, i: usize) -> Self {
        Self::monomial(nvars, order, MultiIndex::unit(i), S::one())
    }

    /// `Σ_m coeffs[m] · x_var^m`.
    pub fn from_univariate(nvars: usize, order: i32, var: usize, coeffs: &[S]) -> Self {
        let mut j = Self::zero(nvars, order);
        for (m, c) in coeffs.iter().enumerate() {
            if m as i32 > order {
                break;
            }
            let mut a = MultiIndex::zero();
            a.0[var] = m as u8;
            insert_add(&mut j.terms, a, c.clone());
        }
        j
    }

    pub fn from_terms(nvars: usize, order: i32, terms: impl IntoIterator<Item = (MultiIndex, S)>) -> Self {
        let mut j = Self::zero(nvars, order);
        for (a, c) in terms {
            if a.degree() as i32 <= order {
                insert_add(&mut j.terms, a, c);
            }
        }
        j
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: &MultiIndex) -> S {
        self.terms.get(a).cloned().unwrap_or_else(S::zero)
    }

    pub fn constant_term(&self) -> S {
        self.coeff(&MultiIndex::zero())
    }

    /// Value at the base point; fails when no coefficient survives truncation.
    pub fn value(&self) -> Result<S> {
        if self.order < 0 {
            return Err(Error::TruncationExhausted(
                "jet has no remaining coefficients at the base point".into(),
            ));
        }
        Ok(self.constant_term())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn truncate(&self, order: i32) -> Self {
        let order = order.min(self.order);
        Jet {
            nvars: self.nvars,
            order,
            terms: self
                .terms
                .iter()
                .filter(|(a, _)| a.degree() as i32 <= order)
                .map(|(a, c)| (*a, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = Self::zero(self.nvars, self.order);
        for (a, c) in &self.terms {
            insert_add(&mut out.terms, *a, c.clone() * s.clone());
        }
        out
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        if self.nvars != o.nvars {
            return Err(Error::DimensionMismatch(self.nvars, o.nvars));
        }
        let order = self.order.min(o.order);
        let mut out = self.truncate(order);
        for (a, c) in &o.terms {
            if a.degree() as i32 <= order {
                insert_add(&mut out.terms, *a, c.clone());
            }
        }
        Ok(out)
    }

    /// Cauchy product truncated at the smaller of the two orders.
    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        if self.nvars != o.nvars {
            return Err(Error::DimensionMismatch(self.nvars, o.nvars));
        }
        let order = self.order.min(o.order);
        let mut out = Self::zero(self.nvars, order);
        for (a, ca) in &self.terms {
            let da = a.degree() as i32;
            if da > order {
                continue;
            }
            for (b, cb) in &o.terms {
                if da + b.degree() as i32 > order {
                    continue;
                }
                insert_add(&mut out.terms, a.plus(b), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    /// `∂/∂x_i`; the result is known to one order less.
    pub fn derive(&self, i: usize) -> Self {
        assert!(i < self.nvars, "axis {i} out of range");
        let mut out = Self::zero(self.nvars, self.order - 1);
        for (a, c) in &self.terms {
            if let Some(b) = a.minus_unit(i) {
                insert_add(&mut out.terms, b, c.scale_int(a.get(i) as i64));
            }
        }
        out
    }

    pub fn derive_multi(&self, alpha: &MultiIndex) -> Self {
        let mut out = self.clone();
        for i in 0..self.nvars {
            for _ in 0..alpha.get(i) {
                out = out.derive(i);
            }
        }
        out
    }

    /// The nilpotent part `self - self(0)`.
    fn nilpotent_part(&self) -> Self {
        let mut out = self.clone();
        out.terms.remove(&MultiIndex::zero());
        out
    }

    /// `Σ_m coeffs[m] u^m` for nilpotent `u`, stopping once powers vanish.
    fn power_series(&self, u: &Self, coeffs: impl Fn(usize) -> S) -> Self {
        let mut acc = Self::constant(self.nvars, self.order, coeffs(0));
        let mut power = Self::one(self.nvars, self.order);
        for m in 1.. {
            power = &power * u;
            if power.is_zero() {
                break;
            }
            acc = &acc + &power.scale(&coeffs(m));
        }
        acc
    }

    /// Multiplicative inverse up to the jet's order.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.constant_term();
        let c0_inv = c0.inv().ok_or_else(|| Error::SingularJet(c0.to_string()))?;
        let u = self.nilpotent_part().scale(&c0_inv);
        // 1/(c0 (1 + u)) = c0^{-1} Σ (-u)^m
        let series = self.power_series(&u, |m| if m % 2 == 0 { S::one() } else { -S::one() });
        Ok(series.scale(&c0_inv))
    }

    /// `self^{-1/2}` up to the jet's order.
    pub fn sqrt_inverse(&self) -> Result<Self> {
        let c0 = self.constant_term();
        let positive = c0.to_complex().im == 0.0 && c0.to_complex().re > 0.0;
        let root = if positive { c0.sqrt() } else { None };
        let root = root.ok_or_else(|| Error::NonPositiveJet(c0.to_string()))?;
        let root_inv = root.inv().ok_or_else(|| Error::NonPositiveJet(c0.to_string()))?;
        let c0_inv = c0.inv().ok_or_else(|| Error::NonPositiveJet(c0.to_string()))?;
        let u = self.nilpotent_part().scale(&c0_inv);
        // (1 + u)^{-1/2} = Σ binom(-1/2, m) u^m, binom(-1/2, m) = (-1)^m (2m)! / (4^m m!^2)
        let coeffs = |m: usize| {
            let mut c = S::one();
            for k in 0..m {
                c = c * S::from_ratio(-(2 * k as i64 + 1), 2 * (k as i64 + 1));
            }
            c
        };
        Ok(self.power_series(&u, coeffs).scale(&root_inv))
    }

    /// Substitute `x = L y` (`L` is `nvars × nvars`, row-major), giving the
    /// jet of the same function in the `y` coordinates.
    pub fn linear_substitute(&self, l: &[Vec<S>]) -> Self {
        let n = self.nvars;
        let xs: Vec<Jet<S>> = (0..n)
            .map(|i| {
                Jet::from_terms(n, self.order, (0..n).map(|j| (MultiIndex::unit(j), l[i][j].clone())))
            })
            .collect();
        let mut out = Self::zero(n, self.order);
        for (a, c) in &self.terms {
            let mut term = Self::constant(n, self.order, c.clone());
            for (i, x) in xs.iter().enumerate() {
                for _ in 0..a.get(i) {
                    term = &term * x;
                }
            }
            out = &out + &term;
        }
        out
    }

    /// Evaluate the truncated polynomial at an offset from the base point.
    pub fn eval(&self, offset: &[S]) -> S {
        let mut acc = S::zero();
        for (a, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in offset.iter().enumerate() {
                for _ in 0..a.get(i) {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    pub fn approx_eq(&self, o: &Self, tol: &Tolerance) -> bool {
        let order = self.order.min(o.order);
        let a = self.truncate(order);
        let b = o.truncate(order);
        let keys: std::collections::BTreeSet<MultiIndex> =
            a.terms.keys().chain(b.terms.keys()).copied().collect();
        keys.into_iter().all(|k| a.coeff(&k).approx_eq(&b.coeff(&k), tol))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Jet<T> {
        let mut out = Jet::zero(self.nvars, self.order);
        for (a, c) in &self.terms {
            insert_add(&mut out.terms, *a, f(c));
        }
        out
    }
}

impl<S: Scalar> fmt::Display for Jet<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 + O({})", self.order.saturating_add(1));
        }
        for (k, (a, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}·x^{:?}", c, a)?;
        }
        write!(f, " + O({})", self.order.saturating_add(1))
    }
}

impl<S: Scalar> Add for &Jet<S> {
    type Output = Jet<S>;
    fn add(self, o: &Jet<S>) -> Jet<S> {
        self.try_add(o).expect("jet variable count mismatch")
    }
}

impl<S: Scalar> Sub for &Jet<S> {
    type Output = Jet<S>;
    fn sub(self, o: &Jet<S>) -> Jet<S> {
        self + &(-o.clone())
    }
}

impl<S: Scalar> Mul for &Jet<S> {
    type Output = Jet<S>;
    fn mul(self, o: &Jet<S>) -> Jet<S> {
        self.try_mul(o).expect("jet variable count mismatch")
    }
}

impl<S: Scalar> Neg for Jet<S> {
    type Output = Jet<S>;
    fn neg(self) -> Jet<S> {
        Jet {
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.into_iter().map(|(a, c)| (a, -c)).collect(),
        }
    }
}

/// Taylor coefficients of `sin(t0 + t)` in `t`.
pub fn sin_series(t0: f64, order: usize) -> Vec<f64> {
    shifted_trig_series(t0.sin(), t0.cos(), order)
}

/// Taylor coefficients of `cos(t0 + t)` in `t`.
pub fn cos_series(t0: f64, order: usize) -> Vec<f64> {
    shifted_trig_series(t0.cos(), -t0.sin(), order)
}

fn shifted_trig_series(f0: f64, f1: f64, order: usize) -> Vec<f64> {
    // derivatives cycle f0, f1, -f0, -f1, ...
    let mut fact = 1.0;
    (0..=order)
        .map(|m| {
            if m > 0 {
                fact *= m as f64;
            }
            let d = match m % 4 {
                0 => f0,
                1 => f1,
                2 => -f0,
                _ => -f1,
            };
            d / fact
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{ExactScalar, FloatScalar};

    type J = Jet<ExactScalar>;

    fn q(n: i64, d: i64) -> ExactScalar {
        ExactScalar::rational(n, d)
    }

    fn x(order: i32) -> J {
        J::variable(2, order, 0)
    }

    fn y(order: i32) -> J {
        J::variable(2, order, 1)
    }

    fn one(order: i32) -> J {
        J::one(2, order)
    }

    fn mono(a: &[u8], c: ExactScalar, order: i32) -> J {
        J::monomial(2, order, MultiIndex::from_slice(a), c)
    }

    #[test]
    fn mul_examples() {
        let lhs = &(&one(2) + &x(2)) * &(&one(2) - &x(2));
        assert_eq!(lhs, &one(2) - &mono(&[2], q(1, 1), 2));
        assert!((&x(1) * &x(1)).is_zero());
        let s = &(&one(2) + &x(2)) + &y(2);
        let sq = &s * &s;
        let expect = J::from_terms(
            2,
            2,
            [
                (MultiIndex::from_slice(&[0, 0]), q(1, 1)),
                (MultiIndex::from_slice(&[1, 0]), q(2, 1)),
                (MultiIndex::from_slice(&[0, 1]), q(2, 1)),
                (MultiIndex::from_slice(&[2, 0]), q(1, 1)),
                (MultiIndex::from_slice(&[1, 1]), q(2, 1)),
                (MultiIndex::from_slice(&[0, 2]), q(1, 1)),
            ],
        );
        assert_eq!(sq, expect);
    }

    #[test]
    fn derive_examples() {
        let x2 = mono(&[2], q(1, 1), 4);
        assert_eq!(x2.derive(0), mono(&[1], q(2, 1), 3));
        assert!(x(4).derive(1).is_zero());
        let f = &mono(&[1, 1], q(1, 1), 4) + &mono(&[2, 1], q(1, 1), 4);
        let expect = &mono(&[0, 1], q(1, 1), 3) + &mono(&[1, 1], q(2, 1), 3);
        assert_eq!(f.derive(0), expect);
        assert_eq!(f.derive(0).order(), 3);
    }

    #[test]
    fn inverse_examples() {
        let inv = (&one(4) + &x(4)).inverse().unwrap();
        let expect = J::from_univariate(2, 4, 0, &[q(1, 1), q(-1, 1), q(1, 1), q(-1, 1), q(1, 1)]);
        assert_eq!(inv, expect);
        assert_eq!(J::constant(2, 3, q(2, 1)).inverse().unwrap(), J::constant(2, 3, q(1, 2)));
        assert!(matches!(x(3).inverse(), Err(Error::SingularJet(_))));
    }

    #[test]
    fn sqrt_inverse_examples() {
        assert_eq!(J::constant(2, 3, q(4, 1)).sqrt_inverse().unwrap(), J::constant(2, 3, q(1, 2)));
        // binomial series of (1+x)^{-1/2}: 1 - x/2 + 3x²/8 - 5x³/16
        let got = (&one(3) + &x(3)).sqrt_inverse().unwrap();
        let expect = J::from_univariate(2, 3, 0, &[q(1, 1), q(-1, 2), q(3, 8), q(-5, 16)]);
        assert_eq!(got, expect);
        assert!(matches!(x(3).sqrt_inverse(), Err(Error::NonPositiveJet(_))));
        let neg = J::constant(2, 3, q(-1, 1));
        assert!(neg.sqrt_inverse().is_err());
    }

    #[test]
    fn exhausted_order_reports() {
        let j = x(1).derive(0).derive(0);
        assert!(matches!(j.value(), Err(Error::TruncationExhausted(_))));
    }

    #[test]
    fn multi_index_enumeration_counts() {
        assert_eq!(multi_indices(6, 6).len(), 924);
        assert_eq!(multi_indices(4, 2).len(), 15);
    }

    #[test]
    fn sin_and_cos_series_are_a_derivative_pair() {
        let (s, c) = (sin_series(0.3, 5), cos_series(0.3, 4));
        for m in 0..4 {
            assert!((s[m + 1] * (m + 1) as f64 - c[m]).abs() < 1e-15);
        }
    }

    #[test]
    fn sin_jet_evaluates_close_to_closed_form() {
        let order = 6;
        let t0 = std::f64::consts::FRAC_PI_4;
        let coeffs: Vec<FloatScalar> =
            sin_series(t0, order).into_iter().map(FloatScalar::real).collect();
        let j = Jet::from_univariate(1, order as i32, 0, &coeffs);
        for h in [1e-1, 5e-2, 2.5e-2] {
            let got = j.eval(&[FloatScalar::real(h)]).re();
            let err = (got - (t0 + h).sin()).abs();
            assert!(err < 2.0 * h.powi(order as i32 + 1) / 5040.0, "h={h} err={err}");
        }
    }
}
