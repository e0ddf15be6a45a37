//! Closed-form boundary constants for `π⁺H^{-1} ∘ π⁺H^{-n̄/2+1}` in
//! dimension `n = n̄ + 2`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalars::{sphere_volume, ExactScalar, GaussRational};

fn check_nbar(nbar: u32) -> Result<()> {
    if nbar < 2 || nbar % 2 == 1 {
        return Err(Error::Validation(vec![format!("n̄ = {nbar} must be even and at least 2")]));
    }
    Ok(())
}

fn factorial(k: u32) -> i64 {
    (1..=k as i64).product()
}

/// `p`-th derivative of `(t + i)^{-a}` at `t = i`:
/// `(−a)(−a−1)⋯(−a−p+1) (2i)^{−a−p}`.
fn pole_derivative_at_i(a: i64, p: u32) -> GaussRational {
    let falling: i64 = (0..p as i64).map(|m| -a - m).product();
    let two_i = GaussRational::from_parts(0, 1, 2, 1);
    let pow = two_i.powi(-(a as i32) - p as i32).expect("2i is invertible");
    &pow * &GaussRational::from_ratio(falling, 1)
}

/// `d^{m+1}/dt^{m+1} [t / (t + i)^m]` at `t = i` with `m = n̄/2`, using
/// `t = (t + i) − i`.
pub fn derivative_bracket(nbar: u32) -> Result<ExactScalar> {
    check_nbar(nbar)?;
    let m = (nbar / 2) as i64;
    let p = (m + 1) as u32;
    let first = pole_derivative_at_i(m - 1, p);
    let second = &pole_derivative_at_i(m, p) * &GaussRational::from_parts(0, 1, -1, 1);
    Ok(ExactScalar::from_gauss(&first + &second))
}

/// The two equivariant boundary constants `A`, `B` and their printed total.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeneralNConstants {
    pub nbar: u32,
    pub bracket: ExactScalar,
    pub a: ExactScalar,
    pub b: ExactScalar,
    pub sum: ExactScalar,
    /// The closed form `(3n − 6)/(n̄/2+1)! · 2^{n̄/2−2} X_n Ω_{n̄} · bracket`
    /// with `n = n̄ + 2`.
    pub stated_total: ExactScalar,
    /// The same closed form with `n̄` in place of `n`, which equals `A + B`.
    pub stated_total_nbar: ExactScalar,
}

/// `2^e` for a possibly negative `e`.
fn pow2(e: i32) -> GaussRational {
    GaussRational::from_ratio(2, 1).powi(e).expect("2 is invertible")
}

/// `A = (2−n̄) 2^{n̄/2−2}/(n̄/2+1)! · X_n Ω_{n̄} · bracket` and
/// `B = (n̄/2−1)/(n̄/2+1)! · 2^{n̄/2+1} · X_n Ω_{n̄} · bracket`.
pub fn general_n_constants(nbar: u32, x_n: &ExactScalar) -> Result<GeneralNConstants> {
    let bracket = derivative_bracket(nbar)?;
    let h = (nbar / 2) as i32;
    let fact = factorial(nbar / 2 + 1);
    let common = x_n.clone() * sphere_volume(nbar) * bracket.clone();
    let a_coeff = &GaussRational::from_ratio(2 - nbar as i64, fact) * &pow2(h - 2);
    let b_coeff = &GaussRational::from_ratio(h as i64 - 1, fact) * &pow2(h + 1);
    let a = common.scale(&a_coeff);
    let b = common.scale(&b_coeff);
    let n = nbar as i64 + 2;
    let stated = |dim: i64| common.scale(&(&GaussRational::from_ratio(3 * dim - 6, fact) * &pow2(h - 2)));
    Ok(GeneralNConstants {
        nbar,
        bracket,
        sum: a.clone() + b.clone(),
        a,
        b,
        stated_total: stated(n),
        stated_total_nbar: stated(nbar as i64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Scalar;

    #[test]
    fn brackets() {
        assert_eq!(derivative_bracket(2).unwrap(), ExactScalar::rational(1, 4));
        assert_eq!(derivative_bracket(4).unwrap(), ExactScalar::rational(3, 8));
        assert!(derivative_bracket(3).is_err());
    }

    #[test]
    fn four_dimensional_boundary_constants() {
        let c = general_n_constants(4, &ExactScalar::one()).unwrap();
        let omega4 = sphere_volume(4);
        assert_eq!(c.a, omega4.clone() * ExactScalar::rational(-1, 8));
        assert_eq!(c.b, omega4.clone() * ExactScalar::rational(1, 2));
        assert_eq!(c.sum, omega4.clone() * ExactScalar::rational(3, 8));
        assert_eq!(c.stated_total_nbar, c.sum);
        assert_eq!(c.stated_total, omega4 * ExactScalar::rational(3, 4));
    }

    #[test]
    fn degenerate_prefactors_vanish() {
        let c = general_n_constants(2, &ExactScalar::one()).unwrap();
        assert!(c.a.is_zero() && c.b.is_zero());
        let c = general_n_constants(6, &ExactScalar::zero()).unwrap();
        assert!(c.a.is_zero() && c.b.is_zero() && c.sum.is_zero());
    }
}
