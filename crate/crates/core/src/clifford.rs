//! Clifford algebra of an even-dimensional Euclidean fiber with
//! `c(e_i)c(e_j) + c(e_j)c(e_i) = -2δ_ij`.
//!
//! Elements are stored in the basis of ordered monomials
//! `c(e_{i_1})···c(e_{i_k})`, `i_1 < … < i_k`, encoded as a bitmask
//! ([`Blade`]). Bit `i` stands for the generator `e_{i+1}`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalars::{Scalar, Tolerance};

pub type Blade = u16;

pub const MAX_DIM: usize = 8;

pub fn check_dim(n: usize) -> Result<()> {
    if (2..=MAX_DIM).contains(&n) && n % 2 == 0 {
        Ok(())
    } else {
        Err(Error::BadCliffordDimension(n))
    }
}

/// Product of two basis monomials: `(sign, blade)` with sign ∈ {+1, −1}.
pub fn blade_product(a: Blade, b: Blade) -> (i64, Blade) {
    // Move each generator of `b` left past the larger generators of `a`,
    // then contract repeated generators with c(e_i)^2 = -1.
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        swaps += (a >> (j + 1)).count_ones();
    }
    swaps += (a & b).count_ones();
    let sign = if swaps % 2 == 0 { 1 } else { -1 };
    (sign, a ^ b)
}

pub fn blade_grade(b: Blade) -> u32 {
    b.count_ones()
}

/// Blade from 0-based generator indices (any order; repeated indices are
/// rejected).
pub fn blade_of(indices: &[usize]) -> Option<(i64, Blade)> {
    let mut sign = 1;
    let mut blade: Blade = 0;
    for &i in indices {
        let (s, b) = blade_product(blade, 1 << i);
        if blade & (1 << i) != 0 {
            return None;
        }
        sign *= s;
        blade = b;
    }
    Some((sign, blade))
}

/// Spinor dimension `2^(n/2)`.
pub fn spinor_dim(n: usize) -> i64 {
    1i64 << (n / 2)
}

fn insert_add<S: Scalar>(terms: &mut BTreeMap<Blade, S>, b: Blade, c: S) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&b) {
        Some(v) => {
            let sum = v.clone() + c;
            if sum.is_zero() {
                terms.remove(&b);
            } else {
                *v = sum;
            }
        }
        None => {
            terms.insert(b, c);
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct Clifford<S> {
    dim: usize,
    terms: BTreeMap<Blade, S>,
}

impl<S: Scalar> Clifford<S> {
    pub fn zero(dim: usize) -> Self {
        debug_assert!(check_dim(dim).is_ok(), "bad Clifford dimension {dim}");
        Clifford { dim, terms: BTreeMap::new() }
    }

    pub fn scalar(dim: usize, s: S) -> Self {
        Self::monomial(dim, 0, s)
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, S::one())
    }

    pub fn monomial(dim: usize, blade: Blade, s: S) -> Self {
        let mut c = Self::zero(dim);
        insert_add(&mut c.terms, blade, s);
        c
    }

    /// `c(e_{i+1})`, 0-based.
    pub fn generator(dim: usize, i: usize) -> Self {
        Self::monomial(dim, 1 << i, S::one())
    }

    /// `Σ v_i c(e_i)`.
    pub fn from_vector(v: &[S]) -> Result<Self> {
        let n = v.len();
        check_dim(n)?;
        let mut c = Self::zero(n);
        for (i, vi) in v.iter().enumerate() {
            insert_add(&mut c.terms, 1 << i, vi.clone());
        }
        Ok(c)
    }

    /// `Σ_{i_1<…<i_k} T_{i_1…i_k} c(e_{i_1})···c(e_{i_k})` for an
    /// antisymmetric tensor.
    pub fn from_form(form: &FormTensor<S>) -> Result<Self> {
        check_dim(form.n)?;
        form.check_antisymmetric()?;
        let mut c = Self::zero(form.n);
        for idx in increasing_tuples(form.n, form.k) {
            let blade = idx.iter().fold(0, |b, &i| b | (1 << i));
            insert_add(&mut c.terms, blade, form.get(&idx).clone());
        }
        Ok(c)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, &S)> {
        self.terms.iter().map(|(b, s)| (*b, s))
    }

    pub fn coeff(&self, b: Blade) -> S {
        self.terms.get(&b).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scalar_part(&self) -> S {
        self.coeff(0)
    }

    /// Projection onto monomials of the given grade.
    pub fn grade(&self, k: u32) -> Self {
        Clifford {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| blade_grade(**b) == k)
                .map(|(b, s)| (*b, s.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut out = Self::zero(self.dim);
        for (b, c) in &self.terms {
            insert_add(&mut out.terms, *b, c.clone() * s.clone());
        }
        out
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        if self.dim != o.dim {
            return Err(Error::DimensionMismatch(self.dim, o.dim));
        }
        let mut out = Self::zero(self.dim);
        for (ba, ca) in &self.terms {
            for (bb, cb) in &o.terms {
                let (sign, bc) = blade_product(*ba, *bb);
                let v = ca.clone() * cb.clone();
                insert_add(&mut out.terms, bc, if sign > 0 { v } else { -v });
            }
        }
        Ok(out)
    }

    /// Fiber trace over the spinor module: identity coefficient times `2^(n/2)`.
    pub fn trace(&self) -> S {
        self.scalar_part().scale_int(spinor_dim(self.dim))
    }

    pub fn anticommutator(&self, o: &Self) -> Self {
        &(self * o) + &(o * self)
    }

    pub fn commutator(&self, o: &Self) -> Self {
        &(self * o) - &(o * self)
    }

    pub fn approx_eq(&self, o: &Self, tol: &Tolerance) -> bool {
        let blades: std::collections::BTreeSet<Blade> =
            self.terms.keys().chain(o.terms.keys()).copied().collect();
        blades.into_iter().all(|b| self.coeff(b).approx_eq(&o.coeff(b), tol))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Clifford<T> {
        let mut out = Clifford::zero(self.dim);
        for (b, c) in &self.terms {
            insert_add(&mut out.terms, *b, f(c));
        }
        out
    }
}

impl<S: Scalar> fmt::Display for Clifford<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(b, c)| {
                if *b == 0 {
                    c.to_string()
                } else {
                    let gens: Vec<String> =
                        (0..16).filter(|i| b & (1 << i) != 0).map(|i| (i + 1).to_string()).collect();
                    format!("{}·c[{}]", c, gens.join(","))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl<S: Scalar> Mul for &Clifford<S> {
    type Output = Clifford<S>;
    fn mul(self, o: &Clifford<S>) -> Clifford<S> {
        self.try_mul(o).expect("Clifford dimension mismatch")
    }
}

impl<S: Scalar> Add for &Clifford<S> {
    type Output = Clifford<S>;
    fn add(self, o: &Clifford<S>) -> Clifford<S> {
        assert_eq!(self.dim, o.dim, "Clifford dimension mismatch");
        let mut out = self.clone();
        for (b, c) in &o.terms {
            insert_add(&mut out.terms, *b, c.clone());
        }
        out
    }
}

impl<S: Scalar> Sub for &Clifford<S> {
    type Output = Clifford<S>;
    fn sub(self, o: &Clifford<S>) -> Clifford<S> {
        self + &(-o.clone())
    }
}

impl<S: Scalar> Neg for Clifford<S> {
    type Output = Clifford<S>;
    fn neg(self) -> Clifford<S> {
        Clifford { dim: self.dim, terms: self.terms.into_iter().map(|(b, c)| (b, -c)).collect() }
    }
}

/// Dense rank-`k` tensor over `n` indices, used for differential forms.
#[derive(Clone, Debug, PartialEq)]
pub struct FormTensor<S> {
    pub n: usize,
    pub k: usize,
    data: Vec<S>,
}

impl<S: Scalar> FormTensor<S> {
    pub fn zero(n: usize, k: usize) -> Self {
        FormTensor { n, k, data: vec![S::zero(); n.pow(k as u32)] }
    }

    fn offset(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.n + i)
    }

    pub fn get(&self, idx: &[usize]) -> &S {
        &self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: S) {
        let o = self.offset(idx);
        self.data[o] = v;
    }

    /// Set `T_{idx}` and every permutation with the matching sign.
    pub fn set_antisymmetric(&mut self, idx: &[usize], v: S) {
        for (perm, sign) in permutations_with_sign(idx) {
            let val = if sign > 0 { v.clone() } else { -v.clone() };
            self.set(&perm, val);
        }
    }

    pub fn check_antisymmetric(&self) -> Result<()> {
        let mut idx = vec![0usize; self.k];
        for flat in 0..self.data.len() {
            let mut f = flat;
            for slot in (0..self.k).rev() {
                idx[slot] = f % self.n;
                f /= self.n;
            }
            let v = &self.data[flat];
            for p in 0..self.k.saturating_sub(1) {
                let mut swapped = idx.clone();
                swapped.swap(p, p + 1);
                if *self.get(&swapped) != -v.clone() {
                    return Err(Error::NotAntisymmetric(format!("entry {idx:?}")));
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub(crate) fn permutations_with_sign(idx: &[usize]) -> Vec<(Vec<usize>, i64)> {
    if idx.len() <= 1 {
        return vec![(idx.to_vec(), 1)];
    }
    let mut out = Vec::new();
    for i in 0..idx.len() {
        let mut rest = idx.to_vec();
        let head = rest.remove(i);
        let sign_head = if i % 2 == 0 { 1 } else { -1 };
        for (mut p, s) in permutations_with_sign(&rest) {
            p.insert(0, head);
            out.push((p, s * sign_head));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::ExactScalar;

    type C = Clifford<ExactScalar>;

    fn q(n: i64) -> ExactScalar {
        ExactScalar::rational(n, 1)
    }

    #[test]
    fn generator_square_and_anticommutation() {
        let e1 = C::generator(4, 0);
        let e2 = C::generator(4, 1);
        assert_eq!(&e1 * &e1, C::scalar(4, q(-1)));
        assert_eq!(&e1 * &e2, C::monomial(4, 0b11, q(1)));
        assert_eq!(&e2 * &e1, C::monomial(4, 0b11, q(-1)));
    }

    #[test]
    fn product_of_bivectors() {
        let e12 = C::monomial(4, 0b011, q(1));
        let e23 = C::monomial(4, 0b110, q(1));
        // c1 c2 c2 c3 = -c1 c3
        assert_eq!(&e12 * &e23, C::monomial(4, 0b101, q(-1)));
    }

    #[test]
    fn traces() {
        assert_eq!(C::identity(6).trace(), q(8));
        assert_eq!(C::monomial(6, 0b11, q(1)).trace(), q(0));
        let e1 = C::generator(4, 0);
        assert_eq!((&e1 * &e1).trace(), q(-4));
    }

    #[test]
    fn from_vector_squares() {
        let v = C::from_vector(&[q(1), q(0), q(0), q(0)]).unwrap();
        assert_eq!(v, C::generator(4, 0));
        let w = C::from_vector(&[q(0), q(1), q(0), q(0)]).unwrap();
        assert_eq!(&w * &w, C::scalar(4, q(-1)));
        let u = C::from_vector(&[q(1), q(1), q(0), q(0)]).unwrap();
        assert_eq!(&u * &u, C::scalar(4, q(-2)));
        assert!(C::from_vector(&[q(1), q(1), q(1)]).is_err());
    }

    #[test]
    fn three_form_monomial() {
        let mut t = FormTensor::<ExactScalar>::zero(6, 3);
        t.set_antisymmetric(&[0, 1, 2], q(1));
        let c = C::from_form(&t).unwrap();
        assert_eq!(c, C::monomial(6, 0b111, q(1)));
        // (c1 c2 c3)^2: three swaps and three contractions, sign +1.
        assert_eq!(&c * &c, C::identity(6));
        assert_eq!(c.trace(), q(0));
    }

    #[test]
    fn non_antisymmetric_form_rejected() {
        let mut t = FormTensor::<ExactScalar>::zero(4, 2);
        t.set(&[0, 1], q(1));
        assert!(matches!(C::from_form(&t), Err(Error::NotAntisymmetric(_))));
    }

    #[test]
    fn dimension_mismatch() {
        let a = C::identity(4);
        let b = C::identity(6);
        assert!(matches!(a.try_mul(&b), Err(Error::DimensionMismatch(4, 6))));
    }

    #[test]
    fn blade_of_orders_generators() {
        assert_eq!(blade_of(&[1, 0]), Some((-1, 0b11)));
        assert_eq!(blade_of(&[2, 0, 1]), Some((1, 0b111)));
        assert_eq!(blade_of(&[1, 1]), None);
    }
}
