//! Polyhomogeneous symbol calculus on a normalized chart.
//!
//! A symbol is stored by homogeneous components; each component is a sum of
//! terms `c(x) ξ^β Q^{-k}` with `Q = |ξ|²` and Clifford-valued jet
//! coefficients `c(x)`. The degree of a term is `|β| − 2k`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::cliffjet::CliffordJet;
use crate::error::{Error, Result};
use crate::geometry::GeometryData;
use crate::jets::{multi_indices, Jet, MultiIndex};
use crate::operators::{extract_canonical_form, DiffOp};
use crate::scalars::{gamma_half, ExactScalar, GaussRational, Scalar};

/// `(β, k)` for the monomial `ξ^β Q^{-k}`.
pub type TermKey = (MultiIndex, u32);
pub type Component<S> = BTreeMap<TermKey, CliffordJet<S>>;

pub fn term_degree(key: &TermKey) -> i32 {
    key.0.degree() as i32 - 2 * key.1 as i32
}

#[derive(Clone, Debug, PartialEq)]
pub struct SymbolExpansion<S> {
    dim: usize,
    nvars: usize,
    comps: BTreeMap<i32, Component<S>>,
}

fn add_into<S: Scalar>(comp: &mut Component<S>, key: TermKey, c: CliffordJet<S>) {
    let sum = match comp.remove(&key) {
        Some(old) => &old + &c,
        None => c,
    };
    if !sum.is_zero() {
        comp.insert(key, sum);
    }
}

impl<S: Scalar> SymbolExpansion<S> {
    pub fn zero(dim: usize, nvars: usize) -> Self {
        SymbolExpansion { dim, nvars, comps: BTreeMap::new() }
    }

    /// `Q^{-k} · Id` with exact (constant) coefficient.
    pub fn q_power(dim: usize, nvars: usize, k: u32) -> Self {
        let mut s = Self::zero(dim, nvars);
        s.add_term(MultiIndex::zero(), k, CliffordJet::from_jet(dim, Jet::one(nvars, i32::MAX)));
        s
    }

    pub fn add_term(&mut self, beta: MultiIndex, k: u32, c: CliffordJet<S>) {
        let d = term_degree(&(beta, k));
        let comp = self.comps.entry(d).or_default();
        add_into(comp, (beta, k), c);
        if comp.is_empty() {
            self.comps.remove(&d);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Degrees present, highest first.
    pub fn degrees(&self) -> Vec<i32> {
        self.comps.keys().rev().copied().collect()
    }

    pub fn top_degree(&self) -> Option<i32> {
        self.comps.keys().next_back().copied()
    }

    pub fn component(&self, d: i32) -> Option<&Component<S>> {
        self.comps.get(&d)
    }

    pub fn component_or_empty(&self, d: i32) -> Component<S> {
        self.comps.get(&d).cloned().unwrap_or_default()
    }

    pub fn only(&self, d: i32) -> Self {
        let mut s = Self::zero(self.dim, self.nvars);
        if let Some(c) = self.comps.get(&d) {
            s.comps.insert(d, c.clone());
        }
        s
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for comp in o.comps.values() {
            for ((b, k), c) in comp {
                out.add_term(*b, *k, c.clone());
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c.clone())
    }

    pub fn map_coeffs(&self, f: impl Fn(&CliffordJet<S>) -> CliffordJet<S>) -> Self {
        let mut out = Self::zero(self.dim, self.nvars);
        for comp in self.comps.values() {
            for ((b, k), c) in comp {
                out.add_term(*b, *k, f(c));
            }
        }
        out
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map_coeffs(|c| c.scale(s))
    }

    /// Drop components below `min_degree`.
    pub fn cut(&self, min_degree: i32) -> Self {
        let mut out = self.clone();
        out.comps.retain(|d, _| *d >= min_degree);
        out
    }

    /// Truncate the component of degree `top − j` to jet order `depth − j`:
    /// enough to evaluate the degree `top − depth` part of any later
    /// composition at the base point.
    pub fn truncate_graded(&self, top: i32, depth: i32) -> Self {
        let mut out = Self::zero(self.dim, self.nvars);
        for (d, comp) in &self.comps {
            let order = depth - (top - d);
            if order < 0 {
                continue;
            }
            for ((b, k), c) in comp {
                out.add_term(*b, *k, c.truncate(order));
            }
        }
        out
    }

    /// `∂/∂ξ_i`
    pub fn derive_xi(&self, i: usize) -> Self {
        let mut out = Self::zero(self.dim, self.nvars);
        for comp in self.comps.values() {
            for ((b, k), c) in comp {
                if let Some(lower) = b.minus_unit(i) {
                    out.add_term(lower, *k, c.scale(&S::from_int(b.get(i) as i64)));
                }
                if *k > 0 {
                    out.add_term(b.plus_unit(i), k + 1, c.scale(&S::from_int(-2 * *k as i64)));
                }
            }
        }
        out
    }

    /// `∂/∂x_i`
    pub fn derive_x(&self, i: usize) -> Self {
        self.map_coeffs(|c| c.derive(i))
    }

    /// Pointwise product, keeping degrees `>= min_degree`.
    pub fn mul(&self, o: &Self, min_degree: i32) -> Self {
        let mut out = Self::zero(self.dim, self.nvars);
        for (da, ca) in &self.comps {
            for (db, cb) in &o.comps {
                if da + db < min_degree {
                    continue;
                }
                for ((b1, k1), c1) in ca {
                    for ((b2, k2), c2) in cb {
                        out.add_term(b1.plus(b2), k1 + k2, c1 * c2);
                    }
                }
            }
        }
        out
    }

    /// Value of the degree-`d` component at a covector `ξ`.
    pub fn eval_component(&self, d: i32, xi: &[S]) -> Result<CliffordJet<S>> {
        let q = xi.iter().fold(S::zero(), |acc, x| acc + x.clone() * x.clone());
        let q_inv = q.inv().ok_or_else(|| Error::NotElliptic("ξ = 0".into()))?;
        let mut acc = CliffordJet::zero(self.dim, self.nvars, i32::MAX);
        for ((b, k), c) in self.component_or_empty(d) {
            let mut s = S::one();
            for (i, x) in xi.iter().enumerate() {
                for _ in 0..b.get(i) {
                    s = s * x.clone();
                }
            }
            for _ in 0..k {
                s = s * q_inv.clone();
            }
            acc = &acc + &c.scale(&s);
        }
        Ok(acc)
    }

    /// Component `d` over a common denominator `Q^K`: returns `K` and the
    /// numerator polynomial in `ξ`. Zero components have zero numerators,
    /// so this gives an exact zero test.
    pub fn common_denominator(&self, d: i32) -> (u32, BTreeMap<MultiIndex, CliffordJet<S>>) {
        let comp = self.component_or_empty(d);
        let kmax = comp.keys().map(|(_, k)| *k).max().unwrap_or(0);
        let mut num: BTreeMap<MultiIndex, CliffordJet<S>> = BTreeMap::new();
        for ((b, k), c) in comp {
            for (m, coef) in q_power_expansion(self.nvars, kmax - k) {
                let key = b.plus(&m);
                let add = c.scale(&S::from_int(coef));
                let sum = match num.remove(&key) {
                    Some(old) => &old + &add,
                    None => add,
                };
                if !sum.is_zero() {
                    num.insert(key, sum);
                }
            }
        }
        (kmax, num)
    }

    pub fn component_is_zero(&self, d: i32) -> bool {
        self.common_denominator(d).1.is_empty()
    }

    /// Degree bookkeeping: every stored term has its component's degree.
    pub fn degrees_consistent(&self) -> bool {
        self.comps.iter().all(|(d, comp)| comp.keys().all(|key| term_degree(key) == *d))
    }
}

impl<S: Scalar> fmt::Display for SymbolExpansion<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in self.degrees() {
            writeln!(f, "degree {d}:")?;
            for ((b, k), c) in &self.comps[&d] {
                writeln!(f, "  ξ^{:?} Q^-{}: {}", b, k, c)?;
            }
        }
        Ok(())
    }
}

/// Monomials of `(ξ_1² + … + ξ_n²)^m` with multinomial coefficients.
fn q_power_expansion(n: usize, m: u32) -> Vec<(MultiIndex, i64)> {
    let mut out: BTreeMap<MultiIndex, i64> = BTreeMap::new();
    out.insert(MultiIndex::zero(), 1);
    for _ in 0..m {
        let mut next = BTreeMap::new();
        for (a, c) in &out {
            for i in 0..n {
                let mut b = *a;
                b.0[i] += 2;
                *next.entry(b).or_insert(0) += c;
            }
        }
        out = next;
    }
    out.into_iter().collect()
}

/// `σ(P) = Σ_α a_α (iξ)^α`, graded by `|α|`.
pub fn op_to_symbol<S: Scalar>(p: &DiffOp<S>) -> SymbolExpansion<S> {
    let mut s = SymbolExpansion::zero(p.dim(), p.nvars());
    for (alpha, c) in p.coeffs().filter(|(_, c)| !c.is_zero()) {
        s.add_term(*alpha, 0, c.scale(&i_pow::<S>(alpha.degree() as i32)));
    }
    s
}

/// `i^k`
pub fn i_pow<S: Scalar>(k: i32) -> S {
    match k.rem_euclid(4) {
        0 => S::one(),
        1 => S::imag(),
        2 => -S::one(),
        _ => -S::imag(),
    }
}

/// `a ∘ b = Σ_α (1/α!) ∂_ξ^α a · (−i)^{|α|} ∂_x^α b`, keeping degrees
/// `>= min_degree`.
pub fn compose_symbols<S: Scalar>(a: &SymbolExpansion<S>, b: &SymbolExpansion<S>, min_degree: i32) -> SymbolExpansion<S> {
    let n = a.nvars;
    let mut out = SymbolExpansion::zero(a.dim, n);
    let (Some(ta), Some(tb)) = (a.top_degree(), b.top_degree()) else {
        return out;
    };
    let max_alpha = ta + tb - min_degree;
    if max_alpha < 0 {
        return out;
    }
    let mut dxi: HashMap<MultiIndex, SymbolExpansion<S>> = HashMap::new();
    let mut dx: HashMap<MultiIndex, SymbolExpansion<S>> = HashMap::new();
    dxi.insert(MultiIndex::zero(), a.clone());
    dx.insert(MultiIndex::zero(), b.clone());
    for alpha in multi_indices(n, max_alpha as u32) {
        if alpha.degree() > 0 {
            let i = (0..n).find(|&i| alpha.get(i) > 0).expect("nonzero index");
            let prev = alpha.minus_unit(i).expect("positive entry");
            let da = dxi[&prev].derive_xi(i);
            let db = dx[&prev].derive_x(i);
            dxi.insert(alpha, da);
            dx.insert(alpha, db);
        }
        let da = &dxi[&alpha];
        let db = &dx[&alpha];
        let factor = i_pow::<S>(-(alpha.degree() as i32)) * S::from_ratio(1, alpha.factorial());
        let prod = da.mul(db, min_degree);
        if !prod.comps.is_empty() {
            out = out.add(&prod.scale(&factor));
        }
    }
    out
}

/// Parametrix of an elliptic second-order symbol with principal part
/// `g^{ij}(x) ξ_i ξ_j · Id` and `g^{ij}(0) = δ`, down to `min_degree`.
///
/// `r_{-2} = Σ_m (−1)^m (p_2 − Q)^m Q^{−m−1}`; deeper components solve the
/// composition equation order by order:
/// `r_{−2−j} = −r_{−2} · [σ ∘ (r_{−2} + … + r_{−1−j})]_{−j}`.
pub fn parametrix<S: Scalar>(sym: &SymbolExpansion<S>, min_degree: i32) -> Result<SymbolExpansion<S>> {
    let n = sym.nvars;
    let dim = sym.dim;
    if sym.top_degree() != Some(2) {
        return Err(Error::NotElliptic(format!("top degree {:?}, expected 2", sym.top_degree())));
    }
    let depth = -2 - min_degree;
    if depth < 0 {
        return Ok(SymbolExpansion::zero(dim, n));
    }
    let sym = sym.truncate_graded(2, depth);
    let p2 = sym.component_or_empty(2);
    let mut delta = SymbolExpansion::zero(dim, n);
    for ((b, k), c) in &p2 {
        if *k != 0 || !c.is_scalar() {
            return Err(Error::NotElliptic("principal symbol is not a scalar quadratic form".into()));
        }
        let mut c = c.clone();
        if b.0.iter().filter(|&&e| e == 2).count() == 1 && b.degree() == 2 {
            c = &c - &CliffordJet::from_jet(dim, Jet::one(n, i32::MAX));
        }
        let c0 = c.value()?;
        if !c0.is_zero() {
            return Err(Error::NotElliptic(
                "principal symbol at the base point is not |ξ|²; normalize the chart first".into(),
            ));
        }
        delta.add_term(*b, 0, c);
    }

    let mut r = SymbolExpansion::zero(dim, n);
    let mut power = SymbolExpansion::q_power(dim, n, 1);
    for _ in 0..=depth {
        let term = power.truncate_graded(-2, depth);
        if term.comps.is_empty() {
            break;
        }
        r = r.add(&term);
        // (−δ)^{m+1} Q^{−m−2}
        power = power.mul(&delta.neg(), i32::MIN).mul(&SymbolExpansion::q_power(dim, n, 1), i32::MIN);
    }
    let r2 = r.clone();
    for j in 1..=depth {
        let rest = compose_symbols(&sym, &r, -j).only(-j);
        let next = r2.mul(&rest, i32::MIN).neg().truncate_graded(-2, depth);
        r = r.add(&next.only(-2 - j));
    }
    Ok(r)
}

/// `σ(P^{-p})` from a parametrix `r` of `P`, keeping degrees `>= min_degree`.
pub fn symbol_power<S: Scalar>(r: &SymbolExpansion<S>, p: u32, min_degree: i32) -> Result<SymbolExpansion<S>> {
    if p == 0 {
        return Err(Error::Validation(vec!["power must be positive".into()]));
    }
    let mut acc = r.cut(min_degree);
    for _ in 1..p {
        acc = compose_symbols(&acc, r, min_degree);
    }
    Ok(acc)
}

/// `∫_{S^{n−1}} ξ^β dσ(ξ) = 2 Π Γ((β_i+1)/2) / Γ((|β|+n)/2)`, zero if any
/// `β_i` is odd.
pub fn cosphere_moment(beta: &MultiIndex, n: usize) -> ExactScalar {
    if beta.0.iter().any(|&b| b % 2 == 1) {
        return ExactScalar::zero();
    }
    let mut num = ExactScalar::rational(2, 1);
    for i in 0..n {
        num = num * gamma_half(beta.get(i) as u32 + 1);
    }
    let den = gamma_half(beta.degree() + n as u32);
    num * den.inv().expect("Γ at a positive half-integer is a monomial")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DensityMethod {
    Gilkey,
    Symbol,
}

/// A residue density at the base point, per unit volume.
#[derive(Clone, Debug, PartialEq)]
pub struct WresDensity<S> {
    pub value: S,
    pub method: DensityMethod,
    /// `p` in `P^{-p}`.
    pub power: u32,
    /// For the Gilkey path: the raw integrand `tr(r/6 + E)`.
    pub raw: Option<S>,
}

/// `∫_{|ξ|=1} tr σ_{−n}(P^{−p}) dσ(ξ)` at the base point.
pub fn wres_density_symbol<S: Scalar>(p: &DiffOp<S>, power: u32, geo: &GeometryData<S>) -> Result<WresDensity<S>> {
    let n = geo.dim();
    if n % 2 == 1 {
        return Err(Error::Validation(vec![format!("dimension {n} is odd")]));
    }
    if !geo.chart.is_normalized() {
        return Err(Error::NotElliptic("chart must satisfy g(base) = δ".into()));
    }
    let target = -(n as i32);
    let top = -2 * power as i32;
    if top < target {
        return Err(Error::Validation(vec![format!("P^-{power} has order below −{n}")]));
    }
    let depth = top - target;
    let sym = op_to_symbol(p);
    let r = parametrix(&sym, -2 - depth)?;
    let pw = symbol_power(&r, power, target)?;
    let value = symbol_density(&pw, target)?;
    Ok(WresDensity { value, method: DensityMethod::Symbol, power, raw: None })
}

/// `Σ tr(coefficient at base) · ∫ ξ^β` over the terms of component `d`.
pub fn symbol_density<S: Scalar>(sym: &SymbolExpansion<S>, d: i32) -> Result<S> {
    let n = sym.nvars;
    let mut acc = S::zero();
    for ((b, _), c) in sym.component_or_empty(d) {
        let m = cosphere_moment(&b, n);
        if m.is_zero() {
            continue;
        }
        let tr = c.trace().value()?;
        acc = acc + tr * S::from_exact(&m);
    }
    Ok(acc)
}

/// `(n−2) / ((4π)^{n/2} Γ(n/2))` for even `n`.
pub fn gilkey_normalization(n: usize) -> ExactScalar {
    let h = (n / 2) as i64;
    let fact: i64 = (1..h).product();
    let den = 4i64.pow(h as u32) * fact;
    ExactScalar::monomial(GaussRational::from_ratio(n as i64 - 2, den), -(n as i32))
}

/// Predicted ratio between the symbol-path and Gilkey-path raw values:
/// `2 (2π)^n / ((4π)^{n/2} Γ(n/2 − 1))`.
pub fn predicted_calibration(n: usize) -> ExactScalar {
    let h = (n / 2) as i64;
    let fact: i64 = (1..h - 1).product();
    let num = 2 * 2i64.pow(n as u32);
    let den = 4i64.pow(h as u32) * fact;
    ExactScalar::monomial(GaussRational::from_ratio(num, den), n as i32)
}

/// `tr(r/6 + E_P)` at the base point, plus its normalized density.
pub fn wres_density_gilkey<S: Scalar>(p: &DiffOp<S>, geo: &GeometryData<S>) -> Result<WresDensity<S>> {
    let n = geo.dim();
    let cf = extract_canonical_form(p, geo)?;
    let r = geo.scalar_curvature.value()?;
    let e = cf.e.value()?;
    let raw = r * S::from_ratio(crate::clifford::spinor_dim(n), 6) + e.trace();
    let value = raw.clone() * S::from_exact(&gilkey_normalization(n));
    Ok(WresDensity {
        value,
        method: DensityMethod::Gilkey,
        power: (n / 2).saturating_sub(1) as u32,
        raw: Some(raw),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charts;
    use crate::clifford::Clifford;
    use crate::geometry::{check_killing, derive_geometry};
    use crate::operators::{build_bismut_laplacian, build_dirac};
    use crate::scalars::{sphere_volume, Tolerance};

    type E = ExactScalar;

    fn id(n: usize) -> CliffordJet<E> {
        CliffordJet::from_jet(n, Jet::one(n, i32::MAX))
    }

    #[test]
    fn moments() {
        assert_eq!(cosphere_moment(&MultiIndex::zero(), 4), sphere_volume(3));
        let b = MultiIndex::from_slice(&[2, 0, 0, 0]);
        assert_eq!(cosphere_moment(&b, 4), E::monomial(GaussRational::from_ratio(1, 2), 4));
        assert!(cosphere_moment(&MultiIndex::from_slice(&[1, 1]), 4).is_zero());
    }

    #[test]
    fn flat_laplacian_symbol_and_parametrix() {
        let geo = derive_geometry(&charts::flat::<E>(4, 3)).unwrap();
        let d = build_dirac(&geo);
        let sym = op_to_symbol(&d.compose(&d).unwrap());
        assert_eq!(sym.degrees(), vec![2]);
        let r = parametrix(&sym, -4).unwrap();
        assert_eq!(r.degrees(), vec![-2]);
        assert_eq!(r.component(-2).unwrap().len(), 1);
        assert!(r.component(-2).unwrap().contains_key(&(MultiIndex::zero(), 1)));
    }

    #[test]
    fn constant_field_one_step_recursion() {
        let geo = derive_geometry(&charts::flat::<E>(4, 3)).unwrap();
        let x: Vec<Jet<E>> = (0..4).map(|i| Jet::constant(4, 3, E::from_int(if i == 3 { 2 } else { 0 }))).collect();
        let k = check_killing(&geo, &x, &Tolerance::default()).unwrap();
        let sym = op_to_symbol(&build_bismut_laplacian(&geo, &k).unwrap());
        let r = parametrix(&sym, -4).unwrap();
        // r_{-3} = −½v (iξ_4) Q^{-2}, v = 2
        let mut expect = SymbolExpansion::zero(4, 4);
        expect.add_term(MultiIndex::unit(3), 2, id(4).scale(&(-E::imag())));
        let diff = r.only(-3).add(&expect.neg());
        assert!(diff.component_is_zero(-3));
    }

    #[test]
    fn parametrix_defect_vanishes_on_sphere() {
        let geo = derive_geometry(&charts::sphere_stereographic::<E>(4, 3).unwrap()).unwrap();
        let d = build_dirac(&geo);
        let sym = op_to_symbol(&d.compose(&d).unwrap());
        let r = parametrix(&sym, -4).unwrap();
        let prod = compose_symbols(&sym, &r, -2);
        let one = SymbolExpansion::q_power(4, 4, 0);
        let defect = prod.add(&one.neg());
        for d in 0..=2 {
            let order = 2 - d;
            let (_, num) = defect.common_denominator(-d);
            assert!(num.values().all(|c| c.truncate(order).is_zero()), "degree {}", -d);
        }
        assert!(r.degrees_consistent());
    }

    #[test]
    fn gilkey_integrand_on_the_four_sphere() {
        let geo = derive_geometry(&charts::sphere_stereographic::<E>(4, 3).unwrap()).unwrap();
        let d = build_dirac(&geo);
        let w = wres_density_gilkey(&d.compose(&d).unwrap(), &geo).unwrap();
        assert_eq!(w.raw.unwrap(), E::from_int(-4));
    }

    #[test]
    fn symbol_and_gilkey_paths_on_the_four_sphere() {
        let geo = derive_geometry(&charts::sphere_stereographic::<E>(4, 3).unwrap()).unwrap();
        let d = build_dirac(&geo);
        let d2 = d.compose(&d).unwrap();
        let s = wres_density_symbol(&d2, 1, &geo).unwrap();
        let g = wres_density_gilkey(&d2, &geo).unwrap();
        assert_eq!(s.value, g.raw.unwrap() * predicted_calibration(4));
    }

    #[test]
    fn normalization_constants() {
        // (4−2)/((4π)² Γ(2)) = 1/(8π²)
        assert_eq!(gilkey_normalization(4), E::monomial(GaussRational::from_ratio(1, 8), -4));
        assert_eq!(predicted_calibration(4), E::monomial(GaussRational::from_ratio(2, 1), 4));
        assert_eq!(predicted_calibration(6), E::monomial(GaussRational::from_ratio(2, 1), 6));
        let _ = Clifford::<E>::identity(2);
    }
}
