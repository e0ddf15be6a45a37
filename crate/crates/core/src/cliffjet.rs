//! Clifford-valued jets: an element of the Clifford algebra whose coefficients
//! are [`Jet`]s. This is the coefficient type of differential operators and
//! symbols.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::clifford::{blade_product, spinor_dim, Blade, Clifford};
use crate::error::{Error, Result};
use crate::jets::Jet;
use crate::scalars::{Scalar, Tolerance};

#[derive(Clone, PartialEq, Debug)]
pub struct CliffordJet<S> {
    dim: usize,
    nvars: usize,
    order: i32,
    terms: BTreeMap<Blade, Jet<S>>,
}

impl<S: Scalar> CliffordJet<S> {
    pub fn zero(dim: usize, nvars: usize, order: i32) -> Self {
        CliffordJet { dim, nvars, order, terms: BTreeMap::new() }
    }

    /// `f · Id`
    pub fn from_jet(dim: usize, f: Jet<S>) -> Self {
        let mut out = Self::zero(dim, f.nvars(), f.order());
        out.insert(0, f);
        out
    }

    /// A constant Clifford element.
    pub fn from_clifford(c: &Clifford<S>, nvars: usize, order: i32) -> Self {
        let mut out = Self::zero(c.dim(), nvars, order);
        for (b, s) in c.terms() {
            out.insert(b, Jet::constant(nvars, order, s.clone()));
        }
        out
    }

    /// `Σ_b f_b · c_b` with jet coefficients given per blade.
    pub fn from_blades(dim: usize, nvars: usize, order: i32, blades: impl IntoIterator<Item = (Blade, Jet<S>)>) -> Self {
        let mut out = Self::zero(dim, nvars, order);
        for (b, f) in blades {
            out.order = out.order.min(f.order());
            out.insert(b, f);
        }
        out.retruncate();
        out
    }

    fn insert(&mut self, b: Blade, f: Jet<S>) {
        let f = f.truncate(self.order);
        let sum = match self.terms.remove(&b) {
            Some(g) => &g + &f,
            None => f,
        };
        if !sum.is_zero() {
            self.terms.insert(b, sum);
        }
    }

    fn retruncate(&mut self) {
        let order = self.order;
        self.terms = std::mem::take(&mut self.terms)
            .into_iter()
            .map(|(b, f)| (b, f.truncate(order)))
            .filter(|(_, f)| !f.is_zero())
            .collect();
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, &Jet<S>)> {
        self.terms.iter().map(|(b, f)| (*b, f))
    }

    pub fn component(&self, b: Blade) -> Jet<S> {
        self.terms.get(&b).cloned().unwrap_or_else(|| Jet::zero(self.nvars, self.order))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when only the identity blade is present.
    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(|&b| b == 0)
    }

    pub fn truncate(&self, order: i32) -> Self {
        let mut out = self.clone();
        out.order = order.min(self.order);
        out.retruncate();
        out
    }

    /// The Clifford element at the base point.
    pub fn value(&self) -> Result<Clifford<S>> {
        if self.order < 0 {
            return Err(Error::TruncationExhausted(
                "Clifford jet has no remaining coefficients at the base point".into(),
            ));
        }
        let mut out = Clifford::zero(self.dim);
        for (b, f) in &self.terms {
            out = &out + &Clifford::monomial(self.dim, *b, f.constant_term());
        }
        Ok(out)
    }

    /// Spinor trace, as a scalar jet.
    pub fn trace(&self) -> Jet<S> {
        self.component(0).scale(&S::from_int(spinor_dim(self.dim)))
    }

    pub fn derive(&self, i: usize) -> Self {
        let mut out = Self::zero(self.dim, self.nvars, self.order - 1);
        for (b, f) in &self.terms {
            out.insert(*b, f.derive(i));
        }
        out
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = Self::zero(self.dim, self.nvars, self.order);
        for (b, f) in &self.terms {
            out.insert(*b, f.scale(s));
        }
        out
    }

    /// Multiply by a scalar jet.
    pub fn scale_jet(&self, f: &Jet<S>) -> Self {
        let mut out = Self::zero(self.dim, self.nvars, self.order.min(f.order()));
        for (b, g) in &self.terms {
            out.insert(*b, g * f);
        }
        out
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        if self.dim != o.dim {
            return Err(Error::DimensionMismatch(self.dim, o.dim));
        }
        if self.nvars != o.nvars {
            return Err(Error::DimensionMismatch(self.nvars, o.nvars));
        }
        let mut out = Self::zero(self.dim, self.nvars, self.order.min(o.order));
        for (a, fa) in &self.terms {
            for (b, fb) in &o.terms {
                let (sign, blade) = blade_product(*a, *b);
                let p = fa * fb;
                out.insert(blade, if sign < 0 { -p } else { p });
            }
        }
        Ok(out)
    }

    pub fn anticommutator(&self, o: &Self) -> Self {
        &(self * o) + &(o * self)
    }

    pub fn commutator(&self, o: &Self) -> Self {
        &(self * o) - &(o * self)
    }

    /// Substitute `x = L y` in every coefficient.
    pub fn linear_substitute(&self, l: &[Vec<S>]) -> Self {
        let mut out = Self::zero(self.dim, self.nvars, self.order);
        for (b, f) in &self.terms {
            out.insert(*b, f.linear_substitute(l));
        }
        out
    }

    pub fn approx_eq(&self, o: &Self, tol: &Tolerance) -> bool {
        let blades: std::collections::BTreeSet<Blade> =
            self.terms.keys().chain(o.terms.keys()).copied().collect();
        blades.into_iter().all(|b| self.component(b).approx_eq(&o.component(b), tol))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> CliffordJet<T> {
        CliffordJet {
            dim: self.dim,
            nvars: self.nvars,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(b, j)| (*b, j.map(&f)))
                .filter(|(_, j)| !j.is_zero())
                .collect(),
        }
    }
}

impl<S: Scalar> fmt::Display for CliffordJet<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 + O({})", self.order.saturating_add(1));
        }
        for (k, (b, j)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "[{}]·c{:b}", j, b)?;
        }
        Ok(())
    }
}

impl<S: Scalar> Mul for &CliffordJet<S> {
    type Output = CliffordJet<S>;
    fn mul(self, o: &CliffordJet<S>) -> CliffordJet<S> {
        self.try_mul(o).expect("Clifford jet shape mismatch")
    }
}

impl<S: Scalar> Add for &CliffordJet<S> {
    type Output = CliffordJet<S>;
    fn add(self, o: &CliffordJet<S>) -> CliffordJet<S> {
        assert_eq!(self.dim, o.dim, "Clifford dimension mismatch");
        let mut out = self.truncate(o.order);
        for (b, f) in &o.terms {
            out.insert(*b, f.clone());
        }
        out
    }
}

impl<S: Scalar> Sub for &CliffordJet<S> {
    type Output = CliffordJet<S>;
    fn sub(self, o: &CliffordJet<S>) -> CliffordJet<S> {
        self + &(-o.clone())
    }
}

impl<S: Scalar> Neg for CliffordJet<S> {
    type Output = CliffordJet<S>;
    fn neg(self) -> CliffordJet<S> {
        CliffordJet {
            dim: self.dim,
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.into_iter().map(|(b, f)| (b, -f)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jets::MultiIndex;
    use crate::scalars::ExactScalar;

    type CJ = CliffordJet<ExactScalar>;

    fn gen(i: usize) -> CJ {
        CJ::from_clifford(&Clifford::generator(4, i), 4, 3)
    }

    fn x(i: usize) -> Jet<ExactScalar> {
        Jet::variable(4, 3, i)
    }

    #[test]
    fn products_follow_clifford_and_jet_rules() {
        let a = gen(0).scale_jet(&x(0));
        let b = gen(1).scale_jet(&x(1));
        let ab = &a * &b;
        let ba = &b * &a;
        assert!((&ab + &ba).is_zero());
        let xy = Jet::monomial(4, 3, MultiIndex::from_slice(&[1, 1]), ExactScalar::one());
        assert_eq!(ab.component(0b11), xy);
        let sq = &a * &a;
        assert_eq!(sq.component(0), -(&x(0) * &x(0)));
    }

    #[test]
    fn trace_and_value() {
        let one = CJ::from_jet(4, Jet::one(4, 3));
        assert_eq!(one.trace().constant_term(), ExactScalar::rational(4, 1));
        assert_eq!(gen(2).trace().constant_term(), ExactScalar::zero());
        assert_eq!(gen(2).value().unwrap(), Clifford::generator(4, 2));
        let exhausted = gen(0).scale_jet(&x(0)).derive(0).derive(0).derive(0).derive(0);
        assert!(exhausted.value().is_err());
    }

    #[test]
    fn derivative_is_a_derivation() {
        let a = gen(0).scale_jet(&x(2));
        let b = gen(3).scale_jet(&(&x(2) * &x(1)));
        let lhs = (&a * &b).derive(2);
        let rhs = &(&a.derive(2) * &b) + &(&a * &b.derive(2));
        assert!(lhs.approx_eq(&rhs, &Tolerance::default()));
    }
}
