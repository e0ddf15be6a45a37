//! Rational functions of one variable `t = ξ_n` with poles only at `±i`.

use std::collections::HashMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalars::{ExactScalar, GaussRational};

/// `p(t) + Σ_k a_k (t − i)^{-k} + Σ_k b_k (t + i)^{-k}`.
///
/// `plus[k-1] = a_k` and `minus[k-1] = b_k`; this is the unique partial
/// fraction form, so structural equality is equality of functions.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct HalfSymbol {
    poly: Vec<GaussRational>,
    plus: Vec<GaussRational>,
    minus: Vec<GaussRational>,
}

fn trim(v: &mut Vec<GaussRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn add_at(v: &mut Vec<GaussRational>, idx: usize, c: &GaussRational) {
    if v.len() <= idx {
        v.resize(idx + 1, GaussRational::zero());
    }
    v[idx] = &v[idx] + c;
}

impl HalfSymbol {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GaussRational) -> Self {
        let mut h = Self::zero();
        add_at(&mut h.poly, 0, &c);
        h.normalize()
    }

    pub fn one() -> Self {
        Self::constant(GaussRational::one())
    }

    /// `c · t^m`
    pub fn monomial(m: usize, c: GaussRational) -> Self {
        let mut h = Self::zero();
        add_at(&mut h.poly, m, &c);
        h.normalize()
    }

    /// `c · (t − i)^{-k}`
    pub fn plus_pole(k: usize, c: GaussRational) -> Self {
        if k == 0 {
            return Self::constant(c);
        }
        let mut h = Self::zero();
        add_at(&mut h.plus, k - 1, &c);
        h.normalize()
    }

    /// `c · (t + i)^{-k}`
    pub fn minus_pole(k: usize, c: GaussRational) -> Self {
        if k == 0 {
            return Self::constant(c);
        }
        let mut h = Self::zero();
        add_at(&mut h.minus, k - 1, &c);
        h.normalize()
    }

    /// `t^p (1 + t²)^{-k}`
    pub fn power_over_q(p: usize, k: usize) -> Self {
        let mut h = pole_pair(k, k);
        for _ in 0..p {
            h = h.mul_t();
        }
        h
    }

    /// Builds `num(t) / den(t)` (coefficients lowest degree first), which
    /// must have its poles at `±i` only.
    pub fn from_rational(num: &[GaussRational], den: &[GaussRational]) -> Result<Self> {
        let mut den: Vec<GaussRational> = den.to_vec();
        trim(&mut den);
        if den.is_empty() {
            return Err(Error::ForeignPole("zero denominator".into()));
        }
        let mut h = Self::one();
        for root in [GaussRational::i(), -GaussRational::i()] {
            while den.len() > 1 {
                let (q, r) = divide_linear(&den, &root);
                if !r.is_zero() {
                    break;
                }
                den = q;
                h = if root == GaussRational::i() {
                    h.mul(&Self::plus_pole(1, GaussRational::one()))
                } else {
                    h.mul(&Self::minus_pole(1, GaussRational::one()))
                };
            }
        }
        if den.len() > 1 {
            return Err(Error::ForeignPole(format!("denominator keeps degree {} after removing ±i", den.len() - 1)));
        }
        let lead = den[0].inv().expect("nonzero constant");
        let mut p = Self::zero();
        for (m, c) in num.iter().enumerate() {
            p = p.add(&Self::monomial(m, c.clone()));
        }
        Ok(h.mul(&p).scale(&lead))
    }

    fn normalize(mut self) -> Self {
        trim(&mut self.poly);
        trim(&mut self.plus);
        trim(&mut self.minus);
        self
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_empty() && self.plus.is_empty() && self.minus.is_empty()
    }

    pub fn poly(&self) -> &[GaussRational] {
        &self.poly
    }

    pub fn plus_part(&self) -> &[GaussRational] {
        &self.plus
    }

    pub fn minus_part(&self) -> &[GaussRational] {
        &self.minus
    }

    /// Behaviour `|t|^d` as `t → ∞` (`None` for zero).
    pub fn degree_at_infinity(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        if !self.poly.is_empty() {
            return Some(self.poly.len() as i64 - 1);
        }
        // Σ (a_k + b_k) t^{-k} + O(higher) : expand to the first nonzero order
        let n = self.plus.len().max(self.minus.len());
        let mut expansion = vec![GaussRational::zero(); 2 * n + 1];
        for (k0, a) in self.plus.iter().enumerate() {
            series_of_pole(k0 + 1, &GaussRational::i(), a, &mut expansion);
        }
        for (k0, b) in self.minus.iter().enumerate() {
            series_of_pole(k0 + 1, &(-GaussRational::i()), b, &mut expansion);
        }
        expansion.iter().position(|c| !c.is_zero()).map(|p| -(p as i64))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (i, c) in o.poly.iter().enumerate() {
            add_at(&mut out.poly, i, c);
        }
        for (i, c) in o.plus.iter().enumerate() {
            add_at(&mut out.plus, i, c);
        }
        for (i, c) in o.minus.iter().enumerate() {
            add_at(&mut out.minus, i, c);
        }
        out.normalize()
    }

    pub fn neg(&self) -> Self {
        self.scale(&-GaussRational::one())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        let f = |v: &Vec<GaussRational>| v.iter().map(|x| x * c).collect();
        HalfSymbol { poly: f(&self.poly), plus: f(&self.plus), minus: f(&self.minus) }.normalize()
    }

    /// Multiply by `t`.
    pub fn mul_t(&self) -> Self {
        let i = GaussRational::i();
        let mut out = Self::zero();
        out.poly = std::iter::once(GaussRational::zero()).chain(self.poly.iter().cloned()).collect();
        // t (t − i)^{-k} = (t − i)^{-(k−1)} + i (t − i)^{-k}
        for (k0, a) in self.plus.iter().enumerate() {
            out = out.add(&Self::plus_pole(k0, a.clone())).add(&Self::plus_pole(k0 + 1, a * &i));
        }
        // t (t + i)^{-k} = (t + i)^{-(k−1)} − i (t + i)^{-k}
        for (k0, b) in self.minus.iter().enumerate() {
            out = out.add(&Self::minus_pole(k0, b.clone())).add(&Self::minus_pole(k0 + 1, &(-b.clone()) * &i));
        }
        out.normalize()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        let mut cache: HashMap<(usize, usize), HalfSymbol> = HashMap::new();
        // polynomial parts against everything
        for (m, c) in self.poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut shifted = o.clone();
            for _ in 0..m {
                shifted = shifted.mul_t();
            }
            out = out.add(&shifted.scale(c));
        }
        let rest_self = HalfSymbol { poly: vec![], plus: self.plus.clone(), minus: self.minus.clone() };
        for (m, c) in o.poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut shifted = rest_self.clone();
            for _ in 0..m {
                shifted = shifted.mul_t();
            }
            out = out.add(&shifted.scale(c));
        }
        for (ka, a) in self.plus.iter().enumerate() {
            for (kb, b) in o.plus.iter().enumerate() {
                out = out.add(&Self::plus_pole(ka + kb + 2, a * b));
            }
            for (kb, b) in o.minus.iter().enumerate() {
                let pp = cache.entry((ka + 1, kb + 1)).or_insert_with(|| pole_pair(ka + 1, kb + 1));
                out = out.add(&pp.scale(&(a * b)));
            }
        }
        for (ka, a) in self.minus.iter().enumerate() {
            for (kb, b) in o.minus.iter().enumerate() {
                out = out.add(&Self::minus_pole(ka + kb + 2, a * b));
            }
            for (kb, b) in o.plus.iter().enumerate() {
                let pp = cache.entry((kb + 1, ka + 1)).or_insert_with(|| pole_pair(kb + 1, ka + 1));
                out = out.add(&pp.scale(&(a * b)));
            }
        }
        out
    }

    /// `d/dt`
    pub fn derive(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in self.poly.iter().enumerate().skip(1) {
            add_at(&mut out.poly, m - 1, &(c * &GaussRational::from_ratio(m as i64, 1)));
        }
        for (k0, a) in self.plus.iter().enumerate() {
            add_at(&mut out.plus, k0 + 1, &(a * &GaussRational::from_ratio(-(k0 as i64 + 1), 1)));
        }
        for (k0, b) in self.minus.iter().enumerate() {
            add_at(&mut out.minus, k0 + 1, &(b * &GaussRational::from_ratio(-(k0 as i64 + 1), 1)));
        }
        out.normalize()
    }

    /// `π⁺`: keep the principal parts at `t = +i`, the part holomorphic in
    /// the lower half-plane and vanishing at infinity.
    pub fn pi_plus(&self) -> Result<Self> {
        self.require_decay("π⁺")?;
        Ok(HalfSymbol { poly: vec![], plus: self.plus.clone(), minus: vec![] })
    }

    /// `π⁻`: keep the principal parts at `t = −i`.
    pub fn pi_minus(&self) -> Result<Self> {
        self.require_decay("π⁻")?;
        Ok(HalfSymbol { poly: vec![], plus: vec![], minus: self.minus.clone() })
    }

    fn require_decay(&self, what: &str) -> Result<()> {
        if !self.poly.is_empty() {
            return Err(Error::NotIntegrable(format!("{what} needs a symbol vanishing at infinity")));
        }
        Ok(())
    }

    fn require_integrable(&self) -> Result<()> {
        let d = self.degree_at_infinity();
        if d.is_some_and(|d| d > -2) {
            return Err(Error::NotIntegrable(format!("decays like |t|^{}", d.unwrap_or(0))));
        }
        Ok(())
    }

    /// `∫_ℝ h(t) dt = 2πi · Res_{t=i} h`, closing in the upper half-plane.
    pub fn contour_integrate(&self) -> Result<ExactScalar> {
        self.require_integrable()?;
        let a1 = self.plus.first().cloned().unwrap_or_else(GaussRational::zero);
        Ok(ExactScalar::monomial(&GaussRational::from_parts(0, 1, 2, 1) * &a1, 2))
    }

    /// The same integral closed in the lower half-plane: `−2πi · Res_{t=−i} h`.
    pub fn contour_integrate_lower(&self) -> Result<ExactScalar> {
        self.require_integrable()?;
        let b1 = self.minus.first().cloned().unwrap_or_else(GaussRational::zero);
        Ok(ExactScalar::monomial(&GaussRational::from_parts(0, 1, -2, 1) * &b1, 2))
    }

    pub fn eval(&self, t: Complex64) -> Complex64 {
        let i = Complex64::new(0.0, 1.0);
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in self.poly.iter().enumerate() {
            acc += c.to_complex() * t.powi(m as i32);
        }
        for (k0, a) in self.plus.iter().enumerate() {
            acc += a.to_complex() / (t - i).powi(k0 as i32 + 1);
        }
        for (k0, b) in self.minus.iter().enumerate() {
            acc += b.to_complex() / (t + i).powi(k0 as i32 + 1);
        }
        acc
    }
}

impl fmt::Display for HalfSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (m, c) in self.poly.iter().enumerate() {
            if !c.is_zero() {
                parts.push(format!("{c}·t^{m}"));
            }
        }
        for (k0, a) in self.plus.iter().enumerate() {
            if !a.is_zero() {
                parts.push(format!("{a}/(t−i)^{}", k0 + 1));
            }
        }
        for (k0, b) in self.minus.iter().enumerate() {
            if !b.is_zero() {
                parts.push(format!("{b}/(t+i)^{}", k0 + 1));
            }
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// `(t − i)^{-a} (t + i)^{-b}` in partial fractions, by
/// `1/((t−i)(t+i)) = (1/2i)(1/(t−i) − 1/(t+i))`.
fn pole_pair(a: usize, b: usize) -> HalfSymbol {
    let mut memo = HashMap::new();
    pole_pair_memo(a, b, &mut memo)
}

fn pole_pair_memo(a: usize, b: usize, memo: &mut HashMap<(usize, usize), HalfSymbol>) -> HalfSymbol {
    if a == 0 {
        return HalfSymbol::minus_pole(b, GaussRational::one());
    }
    if b == 0 {
        return HalfSymbol::plus_pole(a, GaussRational::one());
    }
    if let Some(h) = memo.get(&(a, b)) {
        return h.clone();
    }
    let half_over_i = GaussRational::from_parts(0, 1, -1, 2);
    let h = pole_pair_memo(a, b - 1, memo).sub(&pole_pair_memo(a - 1, b, memo)).scale(&half_over_i);
    memo.insert((a, b), h.clone());
    h
}

/// Adds `c (t − r)^{-k} = c t^{-k} Σ_m binom(k+m−1, m) r^m t^{-m}` into the
/// coefficients of `t^{-p}`, for `p` up to `out.len() − 1`.
fn series_of_pole(k: usize, r: &GaussRational, c: &GaussRational, out: &mut [GaussRational]) {
    let mut rm = GaussRational::one();
    for m in 0.. {
        let p = k + m;
        if p >= out.len() {
            break;
        }
        let binom = crate::jets::binom((k + m - 1) as i64, m as i64);
        out[p] = &out[p] + &(&(c * &rm) * &GaussRational::from_ratio(binom, 1));
        rm = &rm * r;
    }
}

/// Synthetic division by `(t − root)`: quotient and remainder.
fn divide_linear(p: &[GaussRational], root: &GaussRational) -> (Vec<GaussRational>, GaussRational) {
    let n = p.len();
    let mut q = vec![GaussRational::zero(); n - 1];
    let mut carry = GaussRational::zero();
    for k in (0..n).rev() {
        let v = &p[k] + &(&carry * root);
        if k == 0 {
            return (q, v);
        }
        q[k - 1] = v.clone();
        carry = v;
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Scalar;

    fn g(re: i64, re_d: i64, im: i64, im_d: i64) -> GaussRational {
        GaussRational::from_parts(re, re_d, im, im_d)
    }

    fn pi_times(c: GaussRational) -> ExactScalar {
        ExactScalar::monomial(c, 2)
    }

    #[test]
    fn pi_plus_examples() {
        let q = HalfSymbol::power_over_q(0, 1);
        let expect = HalfSymbol::plus_pole(1, g(0, 1, -1, 2));
        assert_eq!(q.pi_plus().unwrap(), expect);
        assert!(HalfSymbol::minus_pole(1, GaussRational::one()).pi_plus().unwrap().is_zero());
        let fixed = HalfSymbol::plus_pole(1, GaussRational::one());
        assert_eq!(fixed.pi_plus().unwrap(), fixed);
        // one derivative reproduces the kernel i/(2(t−i)²)
        assert_eq!(q.pi_plus().unwrap().derive(), HalfSymbol::plus_pole(2, g(0, 1, 1, 2)));
    }

    #[test]
    fn contour_examples() {
        assert_eq!(HalfSymbol::power_over_q(0, 1).contour_integrate().unwrap(), pi_times(GaussRational::one()));
        assert!(HalfSymbol::plus_pole(2, GaussRational::one()).contour_integrate().unwrap().is_zero());
        assert_eq!(
            HalfSymbol::power_over_q(2, 2).contour_integrate().unwrap(),
            pi_times(GaussRational::from_ratio(1, 2))
        );
        let nonint = HalfSymbol::plus_pole(1, GaussRational::one());
        assert!(matches!(nonint.contour_integrate(), Err(Error::NotIntegrable(_))));
        assert!(matches!(HalfSymbol::one().pi_plus(), Err(Error::NotIntegrable(_))));
    }

    #[test]
    fn rational_construction() {
        // t / (1 + t²)
        let num = [GaussRational::zero(), GaussRational::one()];
        let den = [GaussRational::one(), GaussRational::zero(), GaussRational::one()];
        assert_eq!(HalfSymbol::from_rational(&num, &den).unwrap(), HalfSymbol::power_over_q(1, 1));
        let bad = [GaussRational::from_ratio(-1, 1), GaussRational::zero(), GaussRational::one()];
        assert!(matches!(HalfSymbol::from_rational(&num, &bad), Err(Error::ForeignPole(_))));
    }

    #[test]
    fn products_match_pointwise_evaluation() {
        let a = HalfSymbol::power_over_q(3, 2).add(&HalfSymbol::plus_pole(3, g(1, 2, -1, 3)));
        let b = HalfSymbol::power_over_q(1, 3).add(&HalfSymbol::monomial(2, g(2, 1, 0, 1)));
        let p = a.mul(&b);
        for t in [0.3, -1.7, 4.0] {
            let t = Complex64::new(t, 0.25);
            assert!((p.eval(t) - a.eval(t) * b.eval(t)).norm() < 1e-12);
        }
        assert_eq!(HalfSymbol::power_over_q(2, 1).degree_at_infinity(), Some(0));
        assert_eq!(HalfSymbol::power_over_q(1, 2).degree_at_infinity(), Some(-3));
    }
}
