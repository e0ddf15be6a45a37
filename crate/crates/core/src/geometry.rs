//! Riemannian data derived from metric jets: inverse metric, Christoffel
//! symbols, scalar curvature, a Gram–Schmidt frame, the spin connection,
//! Killing-field validation and the moment map.

use crate::cliffjet::CliffordJet;
use crate::clifford::{check_dim, Clifford};
use crate::error::{Error, Result};
use crate::jets::Jet;
use crate::scalars::{Scalar, Tolerance};

pub type JetMatrix<S> = Vec<Vec<Jet<S>>>;

/// Sign in front of the Kosmann-type moment map, fixed by
/// `[L_X, c(Y)] = c([X, Y])`; see [`calibration_residual`].
pub const MOMENT_SIGN: i64 = -1;

/// Jets of a metric `g_ij` at the chart base point.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricChart<S> {
    name: String,
    base_point: Vec<f64>,
    g: JetMatrix<S>,
}

impl<S: Scalar> MetricChart<S> {
    /// Validates symmetry and positive-definiteness at the base point.
    pub fn new(name: impl Into<String>, base_point: Vec<f64>, g: JetMatrix<S>) -> Result<Self> {
        let n = g.len();
        for (i, row) in g.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch(n, row.len()));
            }
            for (j, gij) in row.iter().enumerate() {
                if gij.nvars() != n {
                    return Err(Error::DimensionMismatch(n, gij.nvars()));
                }
                if !gij.approx_eq(&g[j][i], &Tolerance::default()) {
                    return Err(Error::Validation(vec![format!("metric is not symmetric in ({i}, {j})")]));
                }
            }
        }
        let base: Vec<Vec<f64>> =
            g.iter().map(|r| r.iter().map(|x| x.constant_term().to_complex().re).collect()).collect();
        if cholesky(&base).is_none() {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(MetricChart { name: name.into(), base_point, g })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.g.len()
    }

    pub fn base_point(&self) -> &[f64] {
        &self.base_point
    }

    pub fn metric(&self) -> &JetMatrix<S> {
        &self.g
    }

    pub fn order(&self) -> i32 {
        self.g.iter().flatten().map(|j| j.order()).min().unwrap_or(0)
    }

    /// Whether `g_ij(base) = δ_ij`.
    pub fn is_normalized(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.g[i][j].constant_term() == S::from_int((i == j) as i64)))
    }

    pub fn truncate(&self, order: i32) -> Self {
        MetricChart {
            name: self.name.clone(),
            base_point: self.base_point.clone(),
            g: self.g.iter().map(|r| r.iter().map(|x| x.truncate(order)).collect()).collect(),
        }
    }

    /// The same metric in coordinates `y` with `x = L y`:
    /// `g'_ab(y) = L_ia L_jb g_ij(L y)`.
    pub fn linear_transform(&self, l: &[Vec<S>]) -> Result<Self> {
        let n = self.dim();
        let sub: JetMatrix<S> =
            self.g.iter().map(|r| r.iter().map(|x| x.linear_substitute(l)).collect()).collect();
        let mut out = vec![vec![Jet::zero(n, self.order()); n]; n];
        for a in 0..n {
            for b in 0..n {
                let mut acc = Jet::zero(n, self.order());
                for i in 0..n {
                    for j in 0..n {
                        let c = l[i][a].clone() * l[j][b].clone();
                        if !c.is_zero() {
                            acc = &acc + &sub[i][j].scale(&c);
                        }
                    }
                }
                out[a][b] = acc;
            }
        }
        MetricChart::new(self.name.clone(), self.base_point.clone(), out)
    }

    /// A linear change of coordinates making `g(base) = δ`. Needs square
    /// roots of the Cholesky pivots, so exact charts must already have
    /// perfect-square pivots.
    pub fn normalized(&self) -> Result<Self> {
        if self.is_normalized() {
            return Ok(self.clone());
        }
        let n = self.dim();
        let g0: Vec<Vec<S>> = self.g.iter().map(|r| r.iter().map(|x| x.constant_term()).collect()).collect();
        // g0 = R^T R with R upper triangular; L = R^{-1}
        let mut r = vec![vec![S::zero(); n]; n];
        for i in 0..n {
            let mut d = g0[i][i].clone();
            for k in 0..i {
                d = d - r[k][i].clone() * r[k][i].clone();
            }
            let piv = d.sqrt().ok_or_else(|| Error::TierUnsupported(self.name.clone(), S::TIER))?;
            let piv_inv = piv.inv().ok_or(Error::NotPositiveDefinite)?;
            r[i][i] = piv;
            for j in i + 1..n {
                let mut s = g0[i][j].clone();
                for k in 0..i {
                    s = s - r[k][i].clone() * r[k][j].clone();
                }
                r[i][j] = s * piv_inv.clone();
            }
        }
        let l = invert_upper(&r).ok_or(Error::NotPositiveDefinite)?;
        let mut out = self.linear_transform(&l)?;
        // entries that should be exactly 0 or 1 may carry rounding in the float tier
        for i in 0..n {
            for j in 0..n {
                let target = S::from_int((i == j) as i64);
                let c0 = out.g[i][j].constant_term();
                if c0.approx_eq(&target, &Tolerance::default()) {
                    let fix = Jet::constant(n, out.g[i][j].order(), target - c0);
                    out.g[i][j] = &out.g[i][j] + &fix;
                }
            }
        }
        Ok(out)
    }
}

fn invert_upper<S: Scalar>(r: &[Vec<S>]) -> Option<Vec<Vec<S>>> {
    let n = r.len();
    let mut inv = vec![vec![S::zero(); n]; n];
    for j in 0..n {
        for i in (0..=j).rev() {
            let mut s = S::from_int((i == j) as i64);
            for k in i + 1..=j {
                s = s - r[i][k].clone() * inv[k][j].clone();
            }
            inv[i][j] = s * r[i][i].inv()?;
        }
    }
    Some(inv)
}

fn cholesky(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[i][k] * l[j][k]).sum();
            if i == j {
                let d = a[i][i] - s;
                if d <= 0.0 {
                    return None;
                }
                l[i][j] = d.sqrt();
            } else {
                l[i][j] = (a[i][j] - s) / l[j][j];
            }
        }
    }
    Some(l)
}

/// Inverse of a matrix of jets by Gauss–Jordan elimination, pivoting on
/// invertible constant terms.
pub fn invert_jet_matrix<S: Scalar>(m: &JetMatrix<S>) -> Result<JetMatrix<S>> {
    let n = m.len();
    let nvars = m[0][0].nvars();
    let order = m.iter().flatten().map(|j| j.order()).min().unwrap_or(0);
    let mut a: JetMatrix<S> = m.iter().map(|r| r.iter().map(|x| x.truncate(order)).collect()).collect();
    let mut inv: JetMatrix<S> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Jet::one(nvars, order) } else { Jet::zero(nvars, order) }).collect())
        .collect();
    for col in 0..n {
        let p = (col..n)
            .find(|&r| !a[r][col].constant_term().is_zero())
            .ok_or(Error::NotPositiveDefinite)?;
        a.swap(col, p);
        inv.swap(col, p);
        let piv = a[col][col].inverse()?;
        for j in 0..n {
            a[col][j] = &a[col][j] * &piv;
            inv[col][j] = &inv[col][j] * &piv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                a[r][j] = &a[r][j] - &(&f * &a[col][j]);
                inv[r][j] = &inv[r][j] - &(&f * &inv[col][j]);
            }
        }
    }
    Ok(inv)
}

#[derive(Clone, Debug)]
pub struct GeometryData<S> {
    pub chart: MetricChart<S>,
    /// `g^{ij}`
    pub ginv: JetMatrix<S>,
    /// `Γ^k_ij`, indexed `[k][i][j]`.
    pub christoffel: Vec<JetMatrix<S>>,
    /// `Γ^k = g^{ij} Γ^k_ij`
    pub gamma: Vec<Jet<S>>,
    pub scalar_curvature: Jet<S>,
    /// Orthonormal frame `e_a = e_a^i ∂_i`, indexed `[a][i]`.
    pub frame: JetMatrix<S>,
    /// `σ_i`
    pub spin_connection: Vec<CliffordJet<S>>,
    /// `c(∂_i)`
    pub cliff_coord: Vec<CliffordJet<S>>,
    /// `c(∂^i) = g^{ij} c(∂_j)`
    pub cliff_dual: Vec<CliffordJet<S>>,
}

impl<S: Scalar> GeometryData<S> {
    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn g(&self) -> &JetMatrix<S> {
        self.chart.metric()
    }

    pub fn inner(&self, u: &[Jet<S>], v: &[Jet<S>]) -> Jet<S> {
        let n = self.dim();
        let mut acc = Jet::zero(n, i32::MAX);
        for i in 0..n {
            for j in 0..n {
                acc = &acc + &(&(&u[i] * &self.g()[i][j]) * &v[j]);
            }
        }
        acc
    }

    /// `X_i = g_ij X^j`
    pub fn lower(&self, x: &[Jet<S>]) -> Vec<Jet<S>> {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).fold(Jet::zero(n, i32::MAX), |acc, j| &acc + &(&self.g()[i][j] * &x[j])))
            .collect()
    }

    /// `c(Y) = Y^i c(∂_i)` for a vector field given by components.
    pub fn clifford_of(&self, y: &[Jet<S>]) -> CliffordJet<S> {
        let n = self.dim();
        let mut acc = CliffordJet::zero(n, n, i32::MAX);
        for (i, yi) in y.iter().enumerate() {
            acc = &acc + &self.cliff_coord[i].scale_jet(yi);
        }
        acc
    }

    /// `∇^S_Y = Y^i (∂_i + σ_i)` applied to a Clifford-valued jet acting by
    /// commutator, i.e. the induced connection on endomorphisms.
    pub fn spinor_derivative_of_endomorphism(&self, y: &[Jet<S>], phi: &CliffordJet<S>) -> CliffordJet<S> {
        let n = self.dim();
        let mut acc = CliffordJet::zero(n, n, i32::MAX);
        for i in 0..n {
            let term = &phi.derive(i) + &self.spin_connection[i].commutator(phi);
            acc = &acc + &term.scale_jet(&y[i]);
        }
        acc
    }
}

/// Christoffels, curvature, frame and spin connection of a chart.
pub fn derive_geometry<S: Scalar>(chart: &MetricChart<S>) -> Result<GeometryData<S>> {
    let n = chart.dim();
    check_dim(n)?;
    let g = chart.metric();
    let ginv = invert_jet_matrix(g)?;

    // Γ^k_ij = ½ g^{kl} (∂_i g_jl + ∂_j g_il − ∂_l g_ij)
    let dg: Vec<JetMatrix<S>> = (0..n)
        .map(|l| g.iter().map(|r| r.iter().map(|x| x.derive(l)).collect()).collect())
        .collect();
    let half = S::from_ratio(1, 2);
    let mut lower = vec![vec![vec![Jet::zero(n, 0); n]; n]; n]; // [l][i][j]
    for l in 0..n {
        for i in 0..n {
            for j in 0..n {
                lower[l][i][j] = (&(&dg[i][j][l] + &dg[j][i][l]) - &dg[l][i][j]).scale(&half);
            }
        }
    }
    let mut christoffel = vec![vec![vec![Jet::zero(n, 0); n]; n]; n];
    for k in 0..n {
        for i in 0..n {
            for j in i..n {
                let mut acc = Jet::zero(n, i32::MAX);
                for l in 0..n {
                    acc = &acc + &(&ginv[k][l] * &lower[l][i][j]);
                }
                christoffel[k][j][i] = acc.clone();
                christoffel[k][i][j] = acc;
            }
        }
    }
    let gamma: Vec<Jet<S>> = (0..n)
        .map(|k| {
            let mut acc = Jet::zero(n, i32::MAX);
            for i in 0..n {
                for j in 0..n {
                    acc = &acc + &(&ginv[i][j] * &christoffel[k][i][j]);
                }
            }
            acc
        })
        .collect();

    // Ric_bd = ∂_a Γ^a_db − ∂_d Γ^a_ab + Γ^a_ae Γ^e_db − Γ^a_de Γ^e_ab
    let mut scalar_curvature = Jet::zero(n, i32::MAX);
    for b in 0..n {
        for d in 0..n {
            if ginv[b][d].is_zero() {
                continue;
            }
            let mut ric = Jet::zero(n, i32::MAX);
            for a in 0..n {
                ric = &ric + &christoffel[a][d][b].derive(a);
                ric = &ric - &christoffel[a][a][b].derive(d);
                for e in 0..n {
                    ric = &ric + &(&christoffel[a][a][e] * &christoffel[e][d][b]);
                    ric = &ric - &(&christoffel[a][d][e] * &christoffel[e][a][b]);
                }
            }
            scalar_curvature = &scalar_curvature + &(&ginv[b][d] * &ric);
        }
    }

    let frame = gram_schmidt(g)?;

    let gens: Vec<CliffordJet<S>> = (0..n)
        .map(|a| CliffordJet::from_clifford(&Clifford::generator(n, a), n, i32::MAX))
        .collect();
    let cliff_dual: Vec<CliffordJet<S>> = (0..n)
        .map(|i| {
            let mut acc = CliffordJet::zero(n, n, i32::MAX);
            for a in 0..n {
                acc = &acc + &gens[a].scale_jet(&frame[a][i]);
            }
            acc
        })
        .collect();
    let cliff_coord: Vec<CliffordJet<S>> = (0..n)
        .map(|i| {
            let mut acc = CliffordJet::zero(n, n, i32::MAX);
            for j in 0..n {
                acc = &acc + &cliff_dual[j].scale_jet(&g[i][j]);
            }
            acc
        })
        .collect();

    // σ_i = ¼ Σ_{a,b} <∇_{∂_i} e_a, e_b> c(e_a) c(e_b)
    let quarter = S::from_ratio(1, 4);
    let lowered_frame: JetMatrix<S> = frame
        .iter()
        .map(|e| (0..n).map(|k| (0..n).fold(Jet::zero(n, i32::MAX), |acc, l| &acc + &(&g[k][l] * &e[l]))).collect())
        .collect();
    let mut spin_connection = Vec::with_capacity(n);
    for i in 0..n {
        let mut sigma = CliffordJet::zero(n, n, i32::MAX);
        for a in 0..n {
            // (∇_{∂_i} e_a)^k
            let nabla: Vec<Jet<S>> = (0..n)
                .map(|k| {
                    let mut acc = frame[a][k].derive(i);
                    for j in 0..n {
                        acc = &acc + &(&christoffel[k][i][j] * &frame[a][j]);
                    }
                    acc
                })
                .collect();
            for b in 0..n {
                if a == b {
                    continue;
                }
                let mut coef = Jet::zero(n, i32::MAX);
                for k in 0..n {
                    coef = &coef + &(&nabla[k] * &lowered_frame[b][k]);
                }
                let cc = &gens[a] * &gens[b];
                sigma = &sigma + &cc.scale_jet(&coef.scale(&quarter));
            }
        }
        spin_connection.push(sigma);
    }

    Ok(GeometryData {
        chart: chart.clone(),
        ginv,
        christoffel,
        gamma,
        scalar_curvature,
        frame,
        spin_connection,
        cliff_coord,
        cliff_dual,
    })
}

/// Gram–Schmidt on the coordinate vectors, in coordinate order.
fn gram_schmidt<S: Scalar>(g: &JetMatrix<S>) -> Result<JetMatrix<S>> {
    let n = g.len();
    let inner = |u: &[Jet<S>], v: &[Jet<S>]| {
        let mut acc = Jet::zero(n, i32::MAX);
        for i in 0..n {
            for j in 0..n {
                if !u[i].is_zero() && !v[j].is_zero() {
                    acc = &acc + &(&(&u[i] * &g[i][j]) * &v[j]);
                }
            }
        }
        acc
    };
    let order = g.iter().flatten().map(|j| j.order()).min().unwrap_or(0);
    let mut frame: JetMatrix<S> = Vec::with_capacity(n);
    for a in 0..n {
        let mut v: Vec<Jet<S>> =
            (0..n).map(|i| if i == a { Jet::one(n, order) } else { Jet::zero(n, order) }).collect();
        let da: Vec<Jet<S>> = v.clone();
        for e in &frame {
            let p = inner(&da, e);
            for i in 0..n {
                v[i] = &v[i] - &(&p * &e[i]);
            }
        }
        let norm = inner(&v, &v).sqrt_inverse()?;
        frame.push(v.iter().map(|x| x * &norm).collect());
    }
    Ok(frame)
}

/// A vector field with its Killing diagnostics.
#[derive(Clone, Debug)]
pub struct KillingField<S> {
    /// Contravariant components `X^i`.
    pub components: Vec<Jet<S>>,
    /// `X_i = g_ij X^j`
    pub lowered: Vec<Jet<S>>,
    pub valid: bool,
    /// max |∇_i X_j + ∇_j X_i| at the base point.
    pub residual: f64,
    /// `⟨∇_{e_a} X, e_b⟩`, indexed `[a][b]`.
    pub covariant: JetMatrix<S>,
}

impl<S: Scalar> KillingField<S> {
    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|x| x.is_zero())
    }
}

pub fn check_killing<S: Scalar>(geo: &GeometryData<S>, x: &[Jet<S>], tol: &Tolerance) -> Result<KillingField<S>> {
    let n = geo.dim();
    if x.len() != n {
        return Err(Error::DimensionMismatch(n, x.len()));
    }
    let lowered = geo.lower(x);
    // ∇_i X_j = ∂_i X_j − Γ^k_ij X_k
    let nabla: JetMatrix<S> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = lowered[j].derive(i);
                    for k in 0..n {
                        acc = &acc - &(&geo.christoffel[k][i][j] * &lowered[k]);
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let mut residual: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let s = (&nabla[i][j] + &nabla[j][i]).value()?;
            residual = residual.max(s.to_complex().norm());
        }
    }
    let valid = residual <= tol.abs;
    let covariant: JetMatrix<S> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let mut acc = Jet::zero(n, i32::MAX);
                    for i in 0..n {
                        for j in 0..n {
                            acc = &acc + &(&(&geo.frame[a][i] * &geo.frame[b][j]) * &nabla[i][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    Ok(KillingField { components: x.to_vec(), lowered, valid, residual, covariant })
}

/// `μ(X) = s · ¼ Σ_{a,b} ⟨∇_{e_a} X, e_b⟩ c(e_a) c(e_b)` with `s = MOMENT_SIGN`.
pub fn moment_map<S: Scalar>(geo: &GeometryData<S>, x: &KillingField<S>) -> Result<CliffordJet<S>> {
    moment_map_with_sign(geo, x, MOMENT_SIGN)
}

pub fn moment_map_with_sign<S: Scalar>(geo: &GeometryData<S>, x: &KillingField<S>, sign: i64) -> Result<CliffordJet<S>> {
    if !x.valid {
        return Err(Error::InvalidKilling(x.residual));
    }
    let n = geo.dim();
    let mut acc = CliffordJet::zero(n, n, i32::MAX);
    let factor = S::from_ratio(sign, 4);
    for a in 0..n {
        for b in 0..n {
            if a == b || x.covariant[a][b].is_zero() {
                continue;
            }
            let cc = Clifford::generator(n, a).try_mul(&Clifford::generator(n, b))?;
            let cc = CliffordJet::from_clifford(&cc, n, i32::MAX);
            acc = &acc + &cc.scale_jet(&x.covariant[a][b].scale(&factor));
        }
    }
    Ok(acc)
}

/// `[L_X, c(Y)] − c([X, Y])` at the base point, with
/// `L_X = ∇^S_X + μ(X)` and `μ` taken with the given sign.
pub fn calibration_residual<S: Scalar>(
    geo: &GeometryData<S>,
    x: &KillingField<S>,
    sign: i64,
    y: &[Jet<S>],
) -> Result<Clifford<S>> {
    let n = geo.dim();
    let mu = moment_map_with_sign(geo, x, sign)?;
    let cy = geo.clifford_of(y);
    let lhs = &geo.spinor_derivative_of_endomorphism(&x.components, &cy) + &mu.commutator(&cy);
    let bracket: Vec<Jet<S>> = (0..n)
        .map(|k| {
            let mut acc = Jet::zero(n, i32::MAX);
            for i in 0..n {
                acc = &acc + &(&x.components[i] * &y[k].derive(i));
                acc = &acc - &(&y[i] * &x.components[k].derive(i));
            }
            acc
        })
        .collect();
    let rhs = geo.clifford_of(&bracket);
    (&lhs - &rhs).value()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charts;
    use crate::jets::MultiIndex;
    use crate::scalars::{ExactScalar, FloatScalar};

    type E = ExactScalar;

    fn rotation(n: usize, i: usize, j: usize, order: i32) -> Vec<Jet<E>> {
        let mut x = vec![Jet::zero(n, order); n];
        x[i] = -Jet::variable(n, order, j);
        x[j] = Jet::variable(n, order, i);
        x
    }

    #[test]
    fn flat_chart_has_no_curvature() {
        let geo = derive_geometry(&charts::flat::<E>(4, 3)).unwrap();
        assert!(geo.christoffel.iter().flatten().flatten().all(|j| j.is_zero()));
        assert!(geo.scalar_curvature.is_zero());
        assert!(geo.spin_connection.iter().all(|s| s.is_zero()));
    }

    #[test]
    fn inverse_metric_identity() {
        let chart = charts::sphere_stereographic::<E>(4, 4).unwrap();
        let geo = derive_geometry(&chart).unwrap();
        for i in 0..4 {
            for k in 0..4 {
                let mut acc = Jet::zero(4, 4);
                for j in 0..4 {
                    acc = &acc + &(&geo.ginv[i][j] * &chart.metric()[j][k]);
                }
                let expect = if i == k { Jet::one(4, 4) } else { Jet::zero(4, 4) };
                assert_eq!(acc, expect);
            }
        }
    }

    #[test]
    fn sphere_scalar_curvature() {
        for n in [2, 4, 6] {
            let geo = derive_geometry(&charts::sphere_stereographic::<E>(n, 2).unwrap()).unwrap();
            assert_eq!(geo.scalar_curvature.value().unwrap(), E::from_int((n * (n - 1)) as i64));
        }
    }

    #[test]
    fn polar_two_sphere_against_closed_form() {
        let t0 = std::f64::consts::FRAC_PI_4;
        let chart = charts::sphere2_polar_raw(t0, 4);
        let geo = derive_geometry(&chart).unwrap();
        let tol = Tolerance::default();
        // Γ^θ_φφ = −sinθ cosθ
        let got = geo.christoffel[0][1][1].constant_term();
        assert!(got.approx_eq(&FloatScalar::real(-t0.sin() * t0.cos()), &tol));
        let r = geo.scalar_curvature.value().unwrap();
        assert!(r.approx_eq(&FloatScalar::real(2.0), &tol));
        // finite-difference oracle on Γ^θ_φφ(θ) = −sinθ cosθ
        let h = 1e-5;
        let f = |t: f64| -t.sin() * t.cos();
        let fd = (f(t0 + h) - f(t0 - h)) / (2.0 * h);
        let d = geo.christoffel[0][1][1].derive(0).constant_term().re();
        assert!((d - fd).abs() < 1e-8);
    }

    #[test]
    fn frame_is_orthonormal() {
        let chart = charts::sphere_stereographic::<E>(4, 3).unwrap();
        let geo = derive_geometry(&chart).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                let ip = geo.inner(&geo.frame[a], &geo.frame[b]);
                let expect = if a == b { Jet::one(4, 3) } else { Jet::zero(4, 3) };
                assert_eq!(ip, expect);
            }
        }
        for s in &geo.spin_connection {
            assert!(s.terms().all(|(b, _)| b.count_ones() == 2));
            assert!(s.trace().is_zero());
        }
    }

    #[test]
    fn killing_examples() {
        let geo = derive_geometry(&charts::flat::<E>(4, 3)).unwrap();
        let tol = Tolerance::default();
        let constant: Vec<Jet<E>> = (0..4).map(|i| Jet::constant(4, 3, E::from_int(i as i64))).collect();
        let k = check_killing(&geo, &constant, &tol).unwrap();
        assert!(k.valid);
        assert!(k.covariant.iter().flatten().all(|j| j.is_zero()));

        let rot = check_killing(&geo, &rotation(4, 0, 1, 3), &tol).unwrap();
        assert!(rot.valid);
        assert_eq!(rot.covariant[0][1].constant_term(), E::one());
        assert_eq!(rot.covariant[1][0].constant_term(), -E::one());

        let mut dil = vec![Jet::zero(4, 3); 4];
        dil[0] = Jet::variable(4, 3, 0);
        let d = check_killing(&geo, &dil, &tol).unwrap();
        assert!(!d.valid);
        assert_eq!(d.residual, 2.0);
        assert!(matches!(moment_map(&geo, &d), Err(Error::InvalidKilling(_))));
    }

    #[test]
    fn moment_map_of_flat_rotation() {
        let geo = derive_geometry(&charts::flat::<E>(4, 3)).unwrap();
        let rot = check_killing(&geo, &rotation(4, 0, 1, 3), &Tolerance::default()).unwrap();
        let mu = moment_map(&geo, &rot).unwrap().value().unwrap();
        let c12 = Clifford::generator(4, 0).try_mul(&Clifford::generator(4, 1)).unwrap();
        assert_eq!(mu, c12.scale(&E::from_ratio(-1, 2)));
        assert!(mu.trace().is_zero());
    }

    #[test]
    fn moment_sign_is_pinned_by_calibration() {
        let geo = derive_geometry(&charts::sphere_stereographic::<E>(4, 4).unwrap()).unwrap();
        let rot = check_killing(&geo, &rotation(4, 1, 2, 4), &Tolerance::default()).unwrap();
        assert!(rot.valid);
        let y: Vec<Jet<E>> = (0..4)
            .map(|k| {
                Jet::from_terms(
                    4,
                    4,
                    [
                        (MultiIndex::zero(), E::from_int(k as i64 + 1)),
                        (MultiIndex::unit((k + 1) % 4), E::from_ratio(1, 3)),
                        (MultiIndex::unit(k), E::from_int(-2)),
                    ],
                )
            })
            .collect();
        assert!(calibration_residual(&geo, &rot, MOMENT_SIGN, &y).unwrap().is_zero());
        assert!(!calibration_residual(&geo, &rot, -MOMENT_SIGN, &y).unwrap().is_zero());
    }
}
