//! Differential operators with Clifford-valued jet coefficients, the Dirac
//! and Bismut operators, Laplace-type canonical forms and torsion terms.

use std::collections::BTreeMap;
use std::fmt;

use crate::cliffjet::CliffordJet;
use crate::clifford::{increasing_tuples, permutations_with_sign};
use crate::error::{Error, Result};
use crate::geometry::{moment_map, GeometryData, KillingField};
use crate::jets::{Jet, MultiIndex};
use crate::scalars::{Scalar, Tolerance};

/// `P = Σ_α a_α(x) ∂^α`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffOp<S> {
    dim: usize,
    nvars: usize,
    coeffs: BTreeMap<MultiIndex, CliffordJet<S>>,
}

impl<S: Scalar> DiffOp<S> {
    pub fn zero(dim: usize, nvars: usize) -> Self {
        DiffOp { dim, nvars, coeffs: BTreeMap::new() }
    }

    pub fn from_coeffs(dim: usize, nvars: usize, coeffs: impl IntoIterator<Item = (MultiIndex, CliffordJet<S>)>) -> Self {
        let mut op = Self::zero(dim, nvars);
        for (a, c) in coeffs {
            op.add_term(a, c);
        }
        op
    }

    /// Multiplication by `f`.
    pub fn multiplication(f: CliffordJet<S>) -> Self {
        Self::from_coeffs(f.dim(), f.nvars(), [(MultiIndex::zero(), f)])
    }

    pub fn identity(dim: usize, nvars: usize) -> Self {
        Self::multiplication(CliffordJet::from_jet(dim, Jet::one(nvars, i32::MAX)))
    }

    /// `∂_i`
    pub fn partial(dim: usize, nvars: usize, i: usize) -> Self {
        Self::from_coeffs(dim, nvars, [(MultiIndex::unit(i), CliffordJet::from_jet(dim, Jet::one(nvars, i32::MAX)))])
    }

    pub fn add_term(&mut self, a: MultiIndex, c: CliffordJet<S>) {
        let sum = match self.coeffs.remove(&a) {
            Some(old) => &old + &c,
            None => c,
        };
        // a zero known only to finite order still bounds what is known
        if !sum.is_zero() || sum.order() < i32::MAX {
            self.coeffs.insert(a, sum);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> u32 {
        self.coeffs.iter().filter(|(_, c)| !c.is_zero()).map(|(a, _)| a.degree()).max().unwrap_or(0)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&MultiIndex, &CliffordJet<S>)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, a: &MultiIndex) -> CliffordJet<S> {
        self.coeffs.get(a).cloned().unwrap_or_else(|| CliffordJet::zero(self.dim, self.nvars, i32::MAX))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (a, c) in &o.coeffs {
            out.add_term(*a, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        DiffOp {
            dim: self.dim,
            nvars: self.nvars,
            coeffs: self.coeffs.iter().map(|(a, c)| (*a, -c.clone())).collect(),
        }
    }

    /// Left multiplication of every coefficient.
    pub fn premultiply(&self, f: &CliffordJet<S>) -> Self {
        let mut out = Self::zero(self.dim, self.nvars);
        for (a, c) in &self.coeffs {
            out.add_term(*a, f * c);
        }
        out
    }

    /// `P ∘ Q` by the Leibniz rule:
    /// `a ∂^α ∘ b ∂^β = Σ_{γ ≤ α} binom(α, γ) a (∂^γ b) ∂^{α−γ+β}`.
    pub fn compose(&self, q: &Self) -> Result<Self> {
        if self.dim != q.dim {
            return Err(Error::DimensionMismatch(self.dim, q.dim));
        }
        let mut out = Self::zero(self.dim, self.nvars);
        for (alpha, a) in &self.coeffs {
            for gamma in alpha.sub_indices() {
                let rest = alpha.checked_sub(&gamma).expect("gamma <= alpha");
                let binom = alpha.binomial(&gamma);
                for (beta, b) in &q.coeffs {
                    let db = derive_multi(b, &gamma);
                    if db.is_zero() {
                        continue;
                    }
                    if db.order() < 0 {
                        return Err(Error::TruncationExhausted(format!(
                            "composition needs {} derivatives of a coefficient known to order {}",
                            gamma.degree(),
                            b.order()
                        )));
                    }
                    out.add_term(rest.plus(beta), (a * &db).scale(&S::from_int(binom)));
                }
            }
        }
        Ok(out)
    }

    pub fn truncate(&self, order: i32) -> Self {
        let mut out = Self::zero(self.dim, self.nvars);
        for (a, c) in &self.coeffs {
            out.add_term(*a, c.truncate(order));
        }
        out
    }

    /// Coefficient-wise comparison, each coefficient up to the smaller of
    /// the two known orders.
    pub fn approx_eq(&self, o: &Self, tol: &Tolerance) -> bool {
        let keys: std::collections::BTreeSet<MultiIndex> =
            self.coeffs.keys().chain(o.coeffs.keys()).copied().collect();
        keys.into_iter().all(|k| {
            let (a, b) = (self.coeff(&k), o.coeff(&k));
            let order = a.order().min(b.order());
            a.truncate(order).approx_eq(&b.truncate(order), tol)
        })
    }
}

impl<S: Scalar> fmt::Display for DiffOp<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (a, c)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "∂^{:?}: {}", a, c)?;
        }
        Ok(())
    }
}

fn derive_multi<S: Scalar>(c: &CliffordJet<S>, alpha: &MultiIndex) -> CliffordJet<S> {
    let mut out = c.clone();
    for i in 0..c.nvars() {
        for _ in 0..alpha.get(i) {
            out = out.derive(i);
        }
    }
    out
}

fn pair_index(i: usize, j: usize) -> MultiIndex {
    MultiIndex::unit(i).plus_unit(j)
}

/// `D = Σ_i c(∂^i)(∂_i + σ_i)`.
pub fn build_dirac<S: Scalar>(geo: &GeometryData<S>) -> DiffOp<S> {
    let n = geo.dim();
    let mut d = DiffOp::zero(n, n);
    for i in 0..n {
        d.add_term(MultiIndex::unit(i), geo.cliff_dual[i].clone());
        d.add_term(MultiIndex::zero(), &geo.cliff_dual[i] * &geo.spin_connection[i]);
    }
    d
}

/// `(D + ¼ c(X))²`
pub fn build_shifted_square<S: Scalar>(geo: &GeometryData<S>, x: &KillingField<S>) -> Result<DiffOp<S>> {
    let cx = geo.clifford_of(&x.components).scale(&S::from_ratio(1, 4));
    let d = build_dirac(geo).add(&DiffOp::multiplication(cx));
    d.compose(&d)
}

/// `L_X = X^i(∂_i + σ_i) + μ(X)`
pub fn build_lie_derivative<S: Scalar>(geo: &GeometryData<S>, x: &KillingField<S>) -> Result<DiffOp<S>> {
    let n = geo.dim();
    let mut l = DiffOp::multiplication(moment_map(geo, x)?);
    for i in 0..n {
        let xi = CliffordJet::from_jet(n, x.components[i].clone());
        l.add_term(MultiIndex::unit(i), xi.clone());
        l.add_term(MultiIndex::zero(), &xi * &geo.spin_connection[i]);
    }
    Ok(l)
}

/// `H_X = (D + ¼ c(X))² + L_X`.
pub fn build_bismut_laplacian<S: Scalar>(geo: &GeometryData<S>, x: &KillingField<S>) -> Result<DiffOp<S>> {
    Ok(build_shifted_square(geo, x)?.add(&build_lie_derivative(geo, x)?))
}

/// Expected `∂_j` coefficient of `H_X`:
/// `X^j − 2σ^j + Γ^j + ¼(c(∂^j)c(X) + c(X)c(∂^j))`.
pub fn bismut_first_order_prediction<S: Scalar>(geo: &GeometryData<S>, x: &KillingField<S>) -> Vec<CliffordJet<S>> {
    let n = geo.dim();
    let cx = geo.clifford_of(&x.components);
    (0..n)
        .map(|j| {
            let mut sigma_up = CliffordJet::zero(n, n, i32::MAX);
            for k in 0..n {
                sigma_up = &sigma_up + &geo.spin_connection[k].scale_jet(&geo.ginv[j][k]);
            }
            let mut acc = CliffordJet::from_jet(n, &x.components[j] + &geo.gamma[j]);
            acc = &acc - &sigma_up.scale(&S::from_int(2));
            &acc + &geo.cliff_dual[j].anticommutator(&cx).scale(&S::from_ratio(1, 4))
        })
        .collect()
}

/// The data `(ω, E)` of a Laplace-type operator
/// `P = −(g^{ij}∂_i∂_j + A^i∂_i + B) = −[g^{ij}(∇_i∇_j − Γ^k_ij ∇_k) + E]`.
#[derive(Clone, Debug)]
pub struct CanonicalForm<S> {
    pub omega: Vec<CliffordJet<S>>,
    pub e: CliffordJet<S>,
    pub a: Vec<CliffordJet<S>>,
    pub b: CliffordJet<S>,
}

pub fn extract_canonical_form<S: Scalar>(p: &DiffOp<S>, geo: &GeometryData<S>) -> Result<CanonicalForm<S>> {
    let n = geo.dim();
    let tol = Tolerance::default();
    for (alpha, c) in p.coeffs() {
        if alpha.degree() > 2 && !c.is_zero() {
            return Err(Error::NotLaplaceType(format!("term of order {} at {:?}", alpha.degree(), alpha)));
        }
    }
    for i in 0..n {
        for j in i..n {
            let mult = if i == j { 1 } else { 2 };
            let expect = CliffordJet::from_jet(n, geo.ginv[i][j].scale(&S::from_int(-mult)));
            let got = p.coeff(&pair_index(i, j));
            let order = got.order().min(expect.order());
            if !got.truncate(order).approx_eq(&expect.truncate(order), &tol) {
                return Err(Error::NotLaplaceType(format!("principal coefficient ({i}, {j}) is not −g^ij·Id")));
            }
        }
    }
    let a: Vec<CliffordJet<S>> = (0..n).map(|i| -p.coeff(&MultiIndex::unit(i))).collect();
    let b = -p.coeff(&MultiIndex::zero());
    let half = S::from_ratio(1, 2);
    // ω_i = ½ g_ij (A^j + Γ^j Id)
    let omega: Vec<CliffordJet<S>> = (0..n)
        .map(|i| {
            let mut acc = CliffordJet::zero(n, n, i32::MAX);
            for j in 0..n {
                let aj = &a[j] + &CliffordJet::from_jet(n, geo.gamma[j].clone());
                acc = &acc + &aj.scale_jet(&geo.g()[i][j]);
            }
            acc.scale(&half)
        })
        .collect();
    // E = B − g^{ij}(∂_i ω_j + ω_i ω_j − ω_k Γ^k_ij)
    let mut e = b.clone();
    for i in 0..n {
        for j in 0..n {
            if geo.ginv[i][j].is_zero() {
                continue;
            }
            let mut inner = &omega[j].derive(i) + &(&omega[i] * &omega[j]);
            for k in 0..n {
                inner = &inner - &omega[k].scale_jet(&geo.christoffel[k][i][j]);
            }
            e = &e - &inner.scale_jet(&geo.ginv[i][j]);
        }
    }
    Ok(CanonicalForm { omega, e, a, b })
}

/// `−[g^{ij}(∇_i∇_j − Γ^k_ij ∇_k) + E]` with `∇_i = ∂_i + ω_i`.
pub fn reassemble<S: Scalar>(cf: &CanonicalForm<S>, geo: &GeometryData<S>) -> Result<DiffOp<S>> {
    let n = geo.dim();
    let nabla: Vec<DiffOp<S>> = (0..n)
        .map(|i| DiffOp::partial(n, n, i).add(&DiffOp::multiplication(cf.omega[i].clone())))
        .collect();
    let mut acc = DiffOp::multiplication(cf.e.clone());
    for i in 0..n {
        for j in 0..n {
            if geo.ginv[i][j].is_zero() {
                continue;
            }
            let mut t = nabla[i].compose(&nabla[j])?;
            for k in 0..n {
                if geo.christoffel[k][i][j].is_zero() {
                    continue;
                }
                let gk = DiffOp::multiplication(CliffordJet::from_jet(n, geo.christoffel[k][i][j].clone()));
                t = t.sub(&gk.compose(&nabla[k])?);
            }
            let gij = CliffordJet::from_jet(n, geo.ginv[i][j].clone());
            acc = acc.add(&t.premultiply(&gij));
        }
    }
    Ok(acc.neg())
}

/// A 3-form `T = Σ_{i<j<k} T_ijk dx^i ∧ dx^j ∧ dx^k` with jet coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct TorsionData<S> {
    n: usize,
    comps: BTreeMap<[usize; 3], Jet<S>>,
}

impl<S: Scalar> TorsionData<S> {
    pub fn zero(n: usize) -> Self {
        TorsionData { n, comps: BTreeMap::new() }
    }

    /// Components on strictly increasing index triples.
    pub fn from_increasing(n: usize, comps: impl IntoIterator<Item = ([usize; 3], Jet<S>)>) -> Result<Self> {
        let mut t = Self::zero(n);
        for (idx, v) in comps {
            if !(idx[0] < idx[1] && idx[1] < idx[2] && idx[2] < n) {
                return Err(Error::NotAntisymmetric(format!("index triple {:?} is not strictly increasing in 0..{n}", idx)));
            }
            if !v.is_zero() {
                t.comps.insert(idx, v);
            }
        }
        Ok(t)
    }

    /// From a full `n×n×n` array, checking antisymmetry.
    pub fn from_full(n: usize, full: &[Vec<Vec<Jet<S>>>]) -> Result<Self> {
        let tol = Tolerance::default();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = &full[i][j][k];
                    for (perm, sign) in permutations_with_sign(&[i, j, k]) {
                        let w = &full[perm[0]][perm[1]][perm[2]];
                        let expect = if sign < 0 { -v.clone() } else { v.clone() };
                        if !w.approx_eq(&expect, &tol) {
                            return Err(Error::NotAntisymmetric(format!("T[{i}][{j}][{k}]")));
                        }
                    }
                }
            }
        }
        let comps = increasing_tuples(n, 3).into_iter().map(|t| ([t[0], t[1], t[2]], full[t[0]][t[1]][t[2]].clone()));
        Self::from_increasing(n, comps)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&[usize; 3], &Jet<S>)> {
        self.comps.iter()
    }

    /// `T_ijk` for any index order.
    pub fn get(&self, i: usize, j: usize, k: usize) -> Jet<S> {
        let mut idx = [i, j, k];
        let mut sign = 1;
        for a in 0..3 {
            for b in 0..2 - a {
                if idx[b] > idx[b + 1] {
                    idx.swap(b, b + 1);
                    sign = -sign;
                } else if idx[b] == idx[b + 1] {
                    return Jet::zero(self.n, i32::MAX);
                }
            }
        }
        if idx[0] == idx[1] || idx[1] == idx[2] {
            return Jet::zero(self.n, i32::MAX);
        }
        match self.comps.get(&idx) {
            Some(v) if sign < 0 => -v.clone(),
            Some(v) => v.clone(),
            None => Jet::zero(self.n, i32::MAX),
        }
    }

    /// `(dT)_ijkl = ∂_i T_jkl − ∂_j T_ikl + ∂_k T_ijl − ∂_l T_ijk` on
    /// increasing quadruples.
    pub fn exterior_derivative(&self) -> BTreeMap<[usize; 4], Jet<S>> {
        let mut out = BTreeMap::new();
        for q in increasing_tuples(self.n, 4) {
            let (i, j, k, l) = (q[0], q[1], q[2], q[3]);
            let v = &(&(&self.get(j, k, l).derive(i) - &self.get(i, k, l).derive(j)) + &self.get(i, j, l).derive(k))
                - &self.get(i, j, k).derive(l);
            if !v.is_zero() {
                out.insert([i, j, k, l], v);
            }
        }
        out
    }

    /// `‖T‖² = Σ_{i<j<k} T_ijk T^{ijk}`.
    pub fn norm_sq(&self, geo: &GeometryData<S>) -> Jet<S> {
        let n = self.n;
        // raise one index at a time
        let full: Vec<Vec<Vec<Jet<S>>>> =
            (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| self.get(i, j, k)).collect()).collect()).collect();
        let raise = |t: &Vec<Vec<Vec<Jet<S>>>>, slot: usize| {
            let mut out = vec![vec![vec![Jet::zero(n, i32::MAX); n]; n]; n];
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let mut acc = Jet::zero(n, i32::MAX);
                        for m in 0..n {
                            let (g, v) = match slot {
                                0 => (&geo.ginv[a][m], &t[m][b][c]),
                                1 => (&geo.ginv[b][m], &t[a][m][c]),
                                _ => (&geo.ginv[c][m], &t[a][b][m]),
                            };
                            if !g.is_zero() && !v.is_zero() {
                                acc = &acc + &(g * v);
                            }
                        }
                        out[a][b][c] = acc;
                    }
                }
            }
            out
        };
        let up = raise(&raise(&raise(&full, 0), 1), 2);
        let mut acc = Jet::zero(n, i32::MAX);
        for (idx, v) in &self.comps {
            acc = &acc + &(v * &up[idx[0]][idx[1]][idx[2]]);
        }
        acc
    }

    /// `c(T) = Σ_{i<j<k} T_ijk c(dx^i ∧ dx^j ∧ dx^k)`.
    pub fn clifford(&self, geo: &GeometryData<S>) -> CliffordJet<S> {
        let mut acc = CliffordJet::zero(self.n, self.n, i32::MAX);
        for (idx, v) in &self.comps {
            acc = &acc + &antisymmetrized(geo, idx).scale_jet(v);
        }
        acc
    }
}

/// `c(dx^{i_1} ∧ … ∧ dx^{i_k})` as the antisymmetrized product of `c(∂^i)`.
fn antisymmetrized<S: Scalar>(geo: &GeometryData<S>, idx: &[usize]) -> CliffordJet<S> {
    let n = geo.dim();
    let mut acc = CliffordJet::zero(n, n, i32::MAX);
    let mut count = 0i64;
    for (perm, sign) in permutations_with_sign(idx) {
        let mut prod = CliffordJet::from_jet(n, Jet::one(n, i32::MAX));
        for &p in &perm {
            prod = &prod * &geo.cliff_dual[p];
        }
        acc = &acc + &prod.scale(&S::from_int(sign));
        count += 1;
    }
    acc.scale(&S::from_ratio(1, count))
}

/// `c(dT)`
pub fn clifford_of_dt<S: Scalar>(geo: &GeometryData<S>, t: &TorsionData<S>) -> CliffordJet<S> {
    let n = geo.dim();
    let mut acc = CliffordJet::zero(n, n, i32::MAX);
    for (idx, v) in t.exterior_derivative() {
        acc = &acc + &antisymmetrized(geo, &idx).scale_jet(&v);
    }
    acc
}

/// Zeroth-order perturbation `(3/2)c(dT) − (3/4)‖T‖² + ¼(c(T)c(X) + c(X)c(T))`.
pub fn torsion_perturbation<S: Scalar>(geo: &GeometryData<S>, x: &KillingField<S>, t: &TorsionData<S>) -> CliffordJet<S> {
    let n = geo.dim();
    let ct = t.clifford(geo);
    let cx = geo.clifford_of(&x.components);
    let dt = clifford_of_dt(geo, t).scale(&S::from_ratio(3, 2));
    let norm = CliffordJet::from_jet(n, t.norm_sq(geo).scale(&S::from_ratio(-3, 4)));
    let cross = ct.anticommutator(&cx).scale(&S::from_ratio(1, 4));
    &(&dt + &norm) + &cross
}

/// `H_X^T = H_X + (3/2)c(dT) − (3/4)‖T‖² + ¼(c(T)c(X) + c(X)c(T))`.
pub fn build_torsion_laplacian<S: Scalar>(
    geo: &GeometryData<S>,
    x: &KillingField<S>,
    t: &TorsionData<S>,
) -> Result<DiffOp<S>> {
    if t.dim() != geo.dim() {
        return Err(Error::DimensionMismatch(geo.dim(), t.dim()));
    }
    let h = build_bismut_laplacian(geo, x)?;
    Ok(h.add(&DiffOp::multiplication(torsion_perturbation(geo, x, t))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charts;
    use crate::clifford::Clifford;
    use crate::geometry::{check_killing, derive_geometry};
    use crate::scalars::ExactScalar;

    type E = ExactScalar;

    fn id(n: usize) -> CliffordJet<E> {
        CliffordJet::from_jet(n, Jet::one(n, i32::MAX))
    }

    fn gen(n: usize, a: usize) -> CliffordJet<E> {
        CliffordJet::from_clifford(&Clifford::generator(n, a), n, i32::MAX)
    }

    fn constant_field(n: usize, v: &[i64]) -> Vec<Jet<E>> {
        v.iter().map(|&c| Jet::constant(n, 4, E::from_int(c))).collect()
    }

    #[test]
    fn leibniz_examples() {
        let n = 2;
        let d1 = DiffOp::<E>::partial(n, n, 0);
        let x1 = DiffOp::multiplication(CliffordJet::from_jet(n, Jet::variable(n, 3, 0)));
        let got = d1.compose(&x1).unwrap();
        let expect = x1.compose(&d1).unwrap().add(&DiffOp::identity(n, n));
        assert!(got.approx_eq(&expect, &Tolerance::default()));
        assert_eq!(d1.compose(&DiffOp::identity(n, n)).unwrap(), d1);

        let a = DiffOp::from_coeffs(n, n, [(MultiIndex::unit(0), gen(n, 0))]);
        let b = DiffOp::from_coeffs(n, n, [(MultiIndex::unit(1), gen(n, 1))]);
        let s = a.compose(&b).unwrap().add(&b.compose(&a).unwrap());
        assert!(s.coeff(&pair_index(0, 1)).is_zero());
    }

    #[test]
    fn flat_dirac_squares_to_minus_laplacian() {
        let geo = derive_geometry(&charts::flat::<E>(4, 3)).unwrap();
        let d = build_dirac(&geo);
        assert_eq!(d.order(), 1);
        let d2 = d.compose(&d).unwrap();
        let mut lap = DiffOp::zero(4, 4);
        for i in 0..4 {
            lap.add_term(pair_index(i, i), -id(4));
        }
        assert!(d2.approx_eq(&lap, &Tolerance::default()));
    }

    #[test]
    fn lichnerowicz_on_the_four_sphere() {
        let geo = derive_geometry(&charts::sphere_stereographic::<E>(4, 3).unwrap()).unwrap();
        let d = build_dirac(&geo);
        let cf = extract_canonical_form(&d.compose(&d).unwrap(), &geo).unwrap();
        assert_eq!(cf.e.value().unwrap(), Clifford::scalar(4, E::from_int(-3)));
    }

    #[test]
    fn flat_constant_field_hand_expansion() {
        let geo = derive_geometry(&charts::flat::<E>(4, 3)).unwrap();
        let x = check_killing(&geo, &constant_field(4, &[0, 0, 0, 2]), &Tolerance::default()).unwrap();
        let h = build_bismut_laplacian(&geo, &x).unwrap();
        // D² + ½v∂₄ − v²/16 with v = 2
        let d = build_dirac(&geo);
        let expect = d
            .compose(&d)
            .unwrap()
            .add(&DiffOp::from_coeffs(4, 4, [(MultiIndex::unit(3), id(4))]))
            .add(&DiffOp::multiplication(id(4).scale(&E::from_ratio(-1, 4))));
        assert!(h.approx_eq(&expect, &Tolerance::default()));
        let cf = extract_canonical_form(&h, &geo).unwrap();
        assert!(cf.e.value().unwrap().is_zero());
        assert_eq!(cf.omega[3].value().unwrap(), Clifford::scalar(4, E::from_ratio(-1, 2)));
    }

    #[test]
    fn zero_field_gives_dirac_square() {
        let geo = derive_geometry(&charts::sphere_stereographic::<E>(4, 3).unwrap()).unwrap();
        let x = check_killing(&geo, &constant_field(4, &[0, 0, 0, 0]), &Tolerance::default()).unwrap();
        let h = build_bismut_laplacian(&geo, &x).unwrap();
        let d = build_dirac(&geo);
        assert!(h.approx_eq(&d.compose(&d).unwrap(), &Tolerance::default()));
    }

    #[test]
    fn non_laplace_type_rejected() {
        let geo = derive_geometry(&charts::flat::<E>(2, 2)).unwrap();
        let d = build_dirac(&geo);
        let bad = d.compose(&d).unwrap().compose(&d).unwrap();
        assert!(matches!(extract_canonical_form(&bad, &geo), Err(Error::NotLaplaceType(_))));
        let mut half = DiffOp::zero(2, 2);
        half.add_term(pair_index(0, 0), -id(2));
        assert!(matches!(extract_canonical_form(&half, &geo), Err(Error::NotLaplaceType(_))));
    }

    #[test]
    fn constant_torsion_on_flat_chart() {
        let geo = derive_geometry(&charts::flat::<E>(4, 2)).unwrap();
        let t = TorsionData::from_increasing(4, [([0, 1, 2], Jet::constant(4, 2, E::from_int(2)))]).unwrap();
        assert!(t.exterior_derivative().is_empty());
        assert_eq!(t.norm_sq(&geo).constant_term(), E::from_int(4));
        let c = t.clifford(&geo).value().unwrap();
        assert_eq!(c, Clifford::monomial(4, 0b111, E::from_int(2)));
        assert!(clifford_of_dt(&geo, &t).value().unwrap().trace().is_zero());
        assert_eq!(t.get(2, 0, 1).constant_term(), E::from_int(2));
        assert_eq!(t.get(1, 0, 2).constant_term(), E::from_int(-2));
        assert!(t.get(1, 1, 2).is_zero());
    }

    #[test]
    fn torsion_rejects_non_antisymmetric_input() {
        let z = Jet::<E>::zero(3, 2);
        let mut full = vec![vec![vec![z.clone(); 3]; 3]; 3];
        full[0][1][2] = Jet::one(3, 2);
        assert!(matches!(TorsionData::from_full(3, &full), Err(Error::NotAntisymmetric(_))));
    }
}
