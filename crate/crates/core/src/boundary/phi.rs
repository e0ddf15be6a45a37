//! The boundary term `Φ` of `π⁺P^{-p} ∘ π⁺P^{-q}` at a collar boundary point.

use std::collections::BTreeMap;

use serde::Serialize;

use super::halfsym::HalfSymbol;
use crate::clifford::{blade_product, spinor_dim, Blade};
use crate::error::{Error, Result};
use crate::geometry::{check_killing, derive_geometry, GeometryData, KillingField, MetricChart};
use crate::jets::{Jet, MultiIndex};
use crate::operators::build_bismut_laplacian;
use crate::scalars::{ExactScalar, GaussRational, Scalar, Tolerance};
use crate::symcalc::{op_to_symbol, parametrix, symbol_power, SymbolExpansion};

/// A boundary point of a collar chart `h(x_n)^{-1} g_∂M + dx_n²` (boundary at
/// `x_n = 0`, last coordinate), with a Killing field and an optional
/// multiplier `f` for the left factor.
#[derive(Clone, Debug)]
pub struct BoundaryChart {
    geo: GeometryData<ExactScalar>,
    killing: KillingField<ExactScalar>,
    f: Option<Jet<ExactScalar>>,
}

impl BoundaryChart {
    pub fn new(chart: MetricChart<ExactScalar>, x: &[Jet<ExactScalar>], f: Option<Jet<ExactScalar>>) -> Result<Self> {
        let n = chart.dim();
        if !chart.is_normalized() {
            return Err(Error::NotCollar("boundary point must satisfy g(0) = δ".into()));
        }
        let g = chart.metric();
        let one = Jet::one(n, chart.order());
        if g[n - 1][n - 1].truncate(chart.order()) != one {
            return Err(Error::NotCollar("g_nn must be identically 1".into()));
        }
        if (0..n - 1).any(|a| !g[a][n - 1].is_zero()) {
            return Err(Error::NotCollar("mixed components g_an must vanish".into()));
        }
        let geo = derive_geometry(&chart)?;
        let killing = check_killing(&geo, x, &Tolerance::default())?;
        if !killing.valid {
            return Err(Error::InvalidKilling(killing.residual));
        }
        Ok(BoundaryChart { geo, killing, f })
    }

    pub fn dim(&self) -> usize {
        self.geo.dim()
    }

    pub fn geometry(&self) -> &GeometryData<ExactScalar> {
        &self.geo
    }

    pub fn killing(&self) -> &KillingField<ExactScalar> {
        &self.killing
    }

    pub fn multiplier(&self) -> Option<&Jet<ExactScalar>> {
        self.f.as_ref()
    }

    /// The same point with `X = 0`.
    pub fn without_killing(&self) -> Self {
        let n = self.dim();
        let zero = vec![Jet::zero(n, i32::MAX); n];
        let killing = check_killing(&self.geo, &zero, &Tolerance::default()).expect("zero field is Killing");
        BoundaryChart { geo: self.geo.clone(), killing, f: self.f.clone() }
    }

    pub fn with_multiplier(&self, f: Option<Jet<ExactScalar>>) -> Self {
        BoundaryChart { f, ..self.clone() }
    }
}

/// One `(r, l, k, j, |α|)` summand of `Φ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PhiCase {
    pub label: String,
    pub r: i32,
    pub l: i32,
    pub k: u32,
    pub j: u32,
    pub alpha: u32,
    pub value: ExactScalar,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PhiResult {
    pub dim: usize,
    pub left_power: u32,
    pub right_power: u32,
    pub cases: Vec<PhiCase>,
    pub total: ExactScalar,
    /// Where the parametrix symbols came from; always computed by the engine.
    pub provenance: &'static str,
}

impl PhiResult {
    pub fn case(&self, label: &str) -> Option<&PhiCase> {
        self.cases.iter().find(|c| c.label == label)
    }
}

fn case_label(r: i32, l: i32, k: u32, j: u32, alpha: u32, top_l: i32, top_r: i32) -> String {
    match (r == top_l, l == top_r, k, j, alpha) {
        (true, true, 0, 0, 1) => "I(i)".into(),
        (true, true, 0, 1, 0) => "I(ii)".into(),
        (true, true, 1, 0, 0) => "I(iii)".into(),
        _ if k == 0 && j == 0 && alpha == 0 && r == top_l && l == top_r - 1 => "II".into(),
        _ if k == 0 && j == 0 && alpha == 0 && r == top_l - 1 && l == top_r => "III".into(),
        _ => format!("r={r},l={l},k={k},j={j},|α|={alpha}"),
    }
}

/// Every `(r, l, k, j, |α|)` with `r − k − |α| + l − j − 1 = −n`,
/// `r ≤ −2p`, `l ≤ −2q`.
pub fn enumerate_cases(n: usize, left_power: u32, right_power: u32) -> Vec<(i32, i32, u32, u32, u32)> {
    let top_l = -2 * left_power as i32;
    let top_r = -2 * right_power as i32;
    let budget = top_l + top_r + n as i32 - 1;
    let mut out = Vec::new();
    if budget < 0 {
        return out;
    }
    for dr in 0..=budget {
        for dl in 0..=budget - dr {
            let rest = (budget - dr - dl) as u32;
            for k in 0..=rest {
                for j in 0..=rest - k {
                    out.push((top_l - dr, top_r - dl, k, j, rest - k - j));
                }
            }
        }
    }
    out
}

/// `(blade, β′) ↦ h(ξ_n)` after setting `x = 0`, `|ξ′| = 1`.
type Restricted = BTreeMap<(Blade, MultiIndex), HalfSymbol>;

fn gauss(s: &ExactScalar) -> Result<GaussRational> {
    s.as_gauss()
        .ok_or_else(|| Error::Validation(vec![format!("boundary coefficient {s} is not a Gaussian rational")]))
}

fn restrict(sym: &SymbolExpansion<ExactScalar>) -> Result<Restricted> {
    let n = sym.nvars();
    let mut out: Restricted = BTreeMap::new();
    for d in sym.degrees() {
        for ((beta, k), c) in sym.component_or_empty(d) {
            let base = c.value()?;
            let mut tangential = beta;
            tangential.0[n - 1] = 0;
            let shape = HalfSymbol::power_over_q(beta.get(n - 1) as usize, k as usize);
            for (blade, coeff) in base.terms() {
                let coeff = gauss(coeff)?;
                if coeff.is_zero() {
                    continue;
                }
                let entry = out.entry((blade, tangential)).or_default();
                *entry = entry.add(&shape.scale(&coeff));
            }
        }
    }
    out.retain(|_, h| !h.is_zero());
    Ok(out)
}

fn pi_plus_all(r: &Restricted) -> Result<Restricted> {
    let mut out = BTreeMap::new();
    for (key, h) in r {
        let p = h.pi_plus()?;
        if !p.is_zero() {
            out.insert(*key, p);
        }
    }
    Ok(out)
}

/// `∫_{|ξ′|=1} ∫ tr(left · right) dξ_n σ(ξ′)`.
fn trace_integral(left: &Restricted, right: &Restricted, n: usize) -> Result<ExactScalar> {
    let mut by_moment: BTreeMap<MultiIndex, HalfSymbol> = BTreeMap::new();
    let dim_s = GaussRational::from_ratio(spinor_dim(n), 1);
    for ((b1, beta1), h1) in left {
        for ((b2, beta2), h2) in right {
            if b1 != b2 {
                continue;
            }
            let (sign, _) = blade_product(*b1, *b2);
            let coeff = &dim_s * &GaussRational::from_ratio(sign, 1);
            let entry = by_moment.entry(beta1.plus(beta2)).or_default();
            *entry = entry.add(&h1.mul(h2).scale(&coeff));
        }
    }
    let mut acc = ExactScalar::zero();
    for (beta, h) in by_moment {
        let m = crate::symcalc::cosphere_moment(&beta, n - 1);
        if m.is_zero() || h.is_zero() {
            continue;
        }
        acc = acc + h.contour_integrate()? * m;
    }
    Ok(acc)
}

fn factorial(k: u32) -> i64 {
    (1..=k as i64).product()
}

/// `σ(H^{-p})` for the Bismut Laplacian of the chart, down to `min_degree`.
pub fn inverse_power_symbol(bc: &BoundaryChart, power: u32, min_degree: i32) -> Result<SymbolExpansion<ExactScalar>> {
    let h = build_bismut_laplacian(&bc.geo, &bc.killing)?;
    let sym = op_to_symbol(&h);
    let r = parametrix(&sym, min_degree)?;
    symbol_power(&r, power, min_degree)
}

/// `Φ` for `π⁺ f P^{-p} ∘ π⁺ P^{-q}` with `P = H_X`, summed over all cases.
///
/// The left factor is `∂_{x_n}^j ∂_{ξ′}^α ∂_{ξ_n}^k σ_r`, the right factor
/// `∂_{x′}^α ∂_{ξ_n}^{j+1} ∂_{x_n}^k σ_l`; both are restricted to `x = 0`,
/// `|ξ′| = 1`, the left one is projected by `π⁺`, then the trace is taken,
/// integrated over `ξ_n` by residues and over `ξ′` by exact moments.
pub fn compute_phi(bc: &BoundaryChart, left_power: u32, right_power: u32) -> Result<PhiResult> {
    let n = bc.dim();
    if left_power == 0 || right_power == 0 {
        return Err(Error::Validation(vec!["powers must be positive".into()]));
    }
    let top_l = -2 * left_power as i32;
    let top_r = -2 * right_power as i32;
    let cases = enumerate_cases(n, left_power, right_power);
    let min_l = cases.iter().map(|c| c.0).min().unwrap_or(top_l);
    let min_r = cases.iter().map(|c| c.1).min().unwrap_or(top_r);
    let mut left_sym = inverse_power_symbol(bc, left_power, min_l)?;
    if let Some(f) = &bc.f {
        left_sym = left_sym.map_coeffs(|c| c.scale_jet(f));
    }
    let right_sym =
        if right_power == left_power && min_r == min_l && bc.f.is_none() { left_sym.clone() } else { inverse_power_symbol(bc, right_power, min_r)? };

    let xn = n - 1;
    let mut results: Vec<PhiCase> = Vec::new();
    for (r, l, k, j, alpha_deg) in cases {
        let mut value = ExactScalar::zero();
        let sr = left_sym.only(r);
        let sl = right_sym.only(l);
        let mut alphas = Vec::new();
        crate::jets::multi_indices_of_degree(n - 1, alpha_deg, &mut alphas);
        for alpha in alphas {
            let mut left = sr.clone();
            for _ in 0..j {
                left = left.derive_x(xn);
            }
            let mut right = sl.clone();
            for i in 0..n - 1 {
                for _ in 0..alpha.get(i) {
                    left = left.derive_xi(i);
                    right = right.derive_x(i);
                }
            }
            for _ in 0..k {
                left = left.derive_xi(xn);
                right = right.derive_x(xn);
            }
            for _ in 0..=j {
                right = right.derive_xi(xn);
            }
            let left = pi_plus_all(&restrict(&left)?)?;
            let right = restrict(&right)?;
            let integral = trace_integral(&left, &right, n)?;
            if integral.is_zero() {
                continue;
            }
            let power = (alpha_deg + j + k + 1) as i32;
            let denom = alpha.factorial() * factorial(j + k + 1);
            let coeff = &minus_i_pow(power) * &GaussRational::from_ratio(1, denom);
            value = value + integral.scale(&coeff);
        }
        results.push(PhiCase { label: case_label(r, l, k, j, alpha_deg, top_l, top_r), r, l, k, j, alpha: alpha_deg, value });
    }
    let total = results.iter().fold(ExactScalar::zero(), |acc, c| acc + c.value.clone());
    Ok(PhiResult { dim: n, left_power, right_power, cases: results, total, provenance: "engine-computed" })
}

fn minus_i_pow(k: i32) -> GaussRational {
    match k.rem_euclid(4) {
        0 => GaussRational::one(),
        1 => GaussRational::from_parts(0, 1, -1, 1),
        2 => GaussRational::from_ratio(-1, 1),
        _ => GaussRational::i(),
    }
}

/// Per-case `Φ(X) − Φ(0)`.
pub fn equivariant_extras(bc: &BoundaryChart, left_power: u32, right_power: u32) -> Result<PhiResult> {
    let with = compute_phi(bc, left_power, right_power)?;
    let without = compute_phi(&bc.without_killing(), left_power, right_power)?;
    let cases: Vec<PhiCase> = with
        .cases
        .iter()
        .zip(&without.cases)
        .map(|(a, b)| PhiCase { value: a.value.clone() - b.value.clone(), ..a.clone() })
        .collect();
    let total = cases.iter().fold(ExactScalar::zero(), |acc, c| acc + c.value.clone());
    Ok(PhiResult { cases, total, ..with })
}

/// `Φ` for `π⁺ f H_X^{-1} ∘ π⁺ H_X^{-1}`, per unit boundary volume.
pub fn perturbed_boundary_term(bc: &BoundaryChart, f: &Jet<ExactScalar>) -> Result<PhiResult> {
    compute_phi(&bc.with_multiplier(Some(f.clone())), 1, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charts::collar;

    fn e_n(n: usize, c: i64) -> Vec<Jet<ExactScalar>> {
        let mut x = vec![Jet::zero(n, 4); n];
        x[n - 1] = Jet::constant(n, 4, ExactScalar::from_int(c));
        x
    }

    #[test]
    fn five_cases_for_six_dimensions() {
        let cases = enumerate_cases(6, 1, 1);
        assert_eq!(cases.len(), 5);
        let labels: Vec<String> = cases.iter().map(|&(r, l, k, j, a)| case_label(r, l, k, j, a, -2, -2)).collect();
        for want in ["I(i)", "I(ii)", "I(iii)", "II", "III"] {
            assert!(labels.iter().any(|l| l == want), "{want} missing from {labels:?}");
        }
    }

    #[test]
    fn flat_collar_without_killing_vanishes() {
        let chart = collar(6, &[ExactScalar::one()], 3).unwrap();
        let bc = BoundaryChart::new(chart, &vec![Jet::zero(6, 3); 6], None).unwrap();
        let phi = compute_phi(&bc, 1, 1).unwrap();
        assert!(phi.total.is_zero(), "{}", phi.total);
    }

    #[test]
    fn extras_carry_a_factor_of_x_n() {
        let chart = collar(6, &[ExactScalar::one()], 3).unwrap();
        let one = equivariant_extras(&BoundaryChart::new(chart.clone(), &e_n(6, 1), None).unwrap(), 1, 1).unwrap();
        let two = equivariant_extras(&BoundaryChart::new(chart, &e_n(6, 2), None).unwrap(), 1, 1).unwrap();
        for (a, b) in one.cases.iter().zip(&two.cases) {
            assert_eq!(a.value.scale(&GaussRational::from_ratio(2, 1)), b.value, "{}", a.label);
        }
    }

    #[test]
    fn rejects_non_collar_chart() {
        let chart = crate::charts::sphere_stereographic::<ExactScalar>(6, 3).unwrap();
        assert!(matches!(BoundaryChart::new(chart, &vec![Jet::zero(6, 3); 6], None), Err(Error::NotCollar(_))));
    }
}
