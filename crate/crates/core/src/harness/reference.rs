//! Closed-form reference expressions, evaluated at the base point for
//! comparison with the engine. None of these gate a run.
//!
//! Index conventions: `X_k` in the printed formulas is read as the
//! contravariant component `X^k`; a free index pair `(i, j)` in a summand
//! is contracted with `g^{ij}`, and in `−¼⟨∂^j, X⟩ g_ij` the index `j` of
//! `⟨∂^j, X⟩ = X^j` is identified with the summed `j`.

use crate::clifford::{spinor_dim, Clifford};
use crate::cliffjet::CliffordJet;
use crate::error::Result;
use crate::geometry::{moment_map, GeometryData, KillingField};
use crate::jets::Jet;
use crate::operators::{clifford_of_dt, TorsionData};
use crate::scalars::Scalar;

fn zero_jet<S: Scalar>(n: usize) -> Jet<S> {
    Jet::zero(n, i32::MAX)
}

/// `Σ_a ⟨e_a, X⟩²`
fn frame_square_sum<S: Scalar>(geo: &GeometryData<S>, x: &[Jet<S>]) -> Jet<S> {
    let n = geo.dim();
    let lowered = geo.lower(x);
    let mut acc = zero_jet(n);
    for a in 0..n {
        let mut p = zero_jet(n);
        for i in 0..n {
            p = &p + &(&geo.frame[a][i] * &lowered[i]);
        }
        acc = &acc + &(&p * &p);
    }
    acc
}

/// The scalar braces of the interior integrand, before `dim S` and `tr μ`.
fn integrand_braces<S: Scalar>(geo: &GeometryData<S>, x: &[Jet<S>]) -> Jet<S> {
    let n = geo.dim();
    let g = geo.g();
    let quarter = S::from_ratio(1, 4);
    let half = S::from_ratio(1, 2);
    let norm2 = geo.inner(x, x);
    let mut acc = geo.scalar_curvature.scale(&S::from_ratio(-1, 12));
    acc = &acc + &norm2.scale(&S::from_ratio(1, 16));
    acc = &acc + &frame_square_sum(geo, x);
    let lowered = geo.lower(x);
    // Γ^α + g^{kl} Γ^α_kl = 2Γ^α
    let two_gamma: Vec<Jet<S>> = geo.gamma.iter().map(|gm| gm.scale(&S::from_int(2))).collect();
    for i in 0..n {
        for j in 0..n {
            let gij = &geo.ginv[i][j];
            if gij.is_zero() {
                continue;
            }
            let mut inner = lowered[j].derive(i).scale(&half);
            let mut contracted = zero_jet(n);
            for alpha in 0..n {
                contracted = &contracted + &(&g[j][alpha] * &two_gamma[alpha]);
            }
            inner = &inner + &(&lowered[i] * &contracted).scale(&quarter);
            inner = &inner + (&(&g[i][j] * &x[j]).scale(&quarter));
            inner = &inner - &(&lowered[i] * &lowered[j]).scale(&quarter);
            let mut gamma_term = zero_jet(n);
            for k in 0..n {
                gamma_term = &gamma_term + &(&lowered[k] * &geo.christoffel[k][i][j]);
            }
            inner = &inner + &gamma_term.scale(&half);
            acc = &acc - &(gij * &inner);
        }
    }
    acc
}

/// `dim S · {…} + tr μ(X)`, the closed-form expression for `tr(r/6 + Ẽ)`.
pub fn interior_integrand<S: Scalar>(geo: &GeometryData<S>, x: &KillingField<S>) -> Result<S> {
    let n = geo.dim();
    let braces = integrand_braces(geo, &x.components).value()?;
    let mu = moment_map(geo, x)?.value()?;
    Ok(braces * S::from_int(spinor_dim(n)) + mu.trace())
}

/// The same expression plus `tr((3/2)c(dT) − (3/4)‖T‖² + ½c(T)c(X))`.
pub fn torsion_integrand<S: Scalar>(geo: &GeometryData<S>, x: &KillingField<S>, t: &TorsionData<S>) -> Result<S> {
    let n = geo.dim();
    let base = interior_integrand(geo, x)?;
    let ct = t.clifford(geo);
    let cx = geo.clifford_of(&x.components);
    let mut extra = clifford_of_dt(geo, t).scale(&S::from_ratio(3, 2));
    extra = &extra + &CliffordJet::from_jet(n, t.norm_sq(geo).scale(&S::from_ratio(-3, 4)));
    extra = &extra + &(&ct * &cx).scale(&S::from_ratio(1, 2));
    Ok(base + extra.value()?.trace())
}

/// The closed-form shift
/// `Ẽ = E + ¼X^jσ_j + μ − g^{ij}[∂_i(½g_jk X^k) + ½g_il X^l ω_j + ¼g_ik g_jl X^k X^l − ½g_kl X^l Γ^k_ij]`
/// with `(ω, E)` the canonical data of `(D + ¼c(X))²`.
pub fn shifted_endomorphism<S: Scalar>(
    geo: &GeometryData<S>,
    x: &KillingField<S>,
    omega: &[CliffordJet<S>],
    e: &CliffordJet<S>,
) -> Result<Clifford<S>> {
    let n = geo.dim();
    let half = S::from_ratio(1, 2);
    let quarter = S::from_ratio(1, 4);
    let lowered = geo.lower(&x.components);
    let mut acc = e + &moment_map(geo, x)?;
    for j in 0..n {
        acc = &acc + &geo.spin_connection[j].scale_jet(&x.components[j]).scale(&quarter);
    }
    for i in 0..n {
        for j in 0..n {
            let gij = &geo.ginv[i][j];
            if gij.is_zero() {
                continue;
            }
            let mut scalar = lowered[j].derive(i).scale(&half);
            scalar = &scalar + &(&lowered[i] * &lowered[j]).scale(&quarter);
            for k in 0..n {
                scalar = &scalar - &(&lowered[k] * &geo.christoffel[k][i][j]).scale(&half);
            }
            let mut inner = CliffordJet::from_jet(n, scalar);
            inner = &inner + &omega[j].scale_jet(&lowered[i]).scale(&half);
            acc = &acc - &inner.scale_jet(gij);
        }
    }
    acc.value()
}

/// The closed form
/// `E = −r/4 + |X|²/16 + ½Σ_j[e_j(¼c(X))c(e_j) − c(e_j)e_j(¼c(X))] + Σ_i⟨e_i, X⟩²`
/// for `(D + ¼c(X))²`.
pub fn square_endomorphism<S: Scalar>(geo: &GeometryData<S>, x: &KillingField<S>) -> Result<Clifford<S>> {
    let n = geo.dim();
    let cx = geo.clifford_of(&x.components).scale(&S::from_ratio(1, 4));
    let scalar = &(&geo.scalar_curvature.scale(&S::from_ratio(-1, 4)) + &geo.inner(&x.components, &x.components).scale(&S::from_ratio(1, 16)))
        + &frame_square_sum(geo, &x.components);
    let mut acc = CliffordJet::from_jet(n, scalar);
    for a in 0..n {
        let mut deriv = CliffordJet::zero(n, n, i32::MAX);
        for i in 0..n {
            deriv = &deriv + &cx.derive(i).scale_jet(&geo.frame[a][i]);
        }
        let ce = CliffordJet::from_clifford(&Clifford::generator(n, a), n, i32::MAX);
        acc = &acc + &(&(&deriv * &ce) - &(&ce * &deriv)).scale(&S::from_ratio(1, 2));
    }
    acc.value()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charts;
    use crate::geometry::{check_killing, derive_geometry};
    use crate::scalars::{ExactScalar, Tolerance};

    #[test]
    fn zero_field_on_a_sphere_reduces_to_curvature() {
        let geo = derive_geometry(&charts::sphere_stereographic::<ExactScalar>(4, 3).unwrap()).unwrap();
        let x = check_killing(&geo, &vec![Jet::zero(4, 3); 4], &Tolerance::default()).unwrap();
        // dim S · (−r/12) = 4 · (−1)
        assert_eq!(interior_integrand(&geo, &x).unwrap(), ExactScalar::from_int(-4));
        let e = square_endomorphism(&geo, &x).unwrap();
        assert_eq!(e.scalar_part(), ExactScalar::from_int(-3));
    }
}
