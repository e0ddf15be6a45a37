//! Built-in metric charts.

use crate::error::{Error, Result};
use crate::geometry::{JetMatrix, MetricChart};
use crate::jets::{sin_series, Jet, MultiIndex};
use crate::scalars::{FloatScalar, Scalar};

/// Euclidean `δ_ij` (also serves for flat tori: the chart is periodic).
pub fn flat<S: Scalar>(n: usize, order: i32) -> MetricChart<S> {
    let g = diagonal(n, |_| Jet::one(n, order));
    MetricChart::new(format!("flat-r{n}"), vec![0.0; n], g).expect("flat metric is valid")
}

fn diagonal<S: Scalar>(n: usize, f: impl Fn(usize) -> Jet<S>) -> JetMatrix<S> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { f(i) } else { Jet::zero(n, i32::MAX) }).collect())
        .collect()
}

/// The unit round sphere `Sⁿ` in stereographic coordinates scaled so that
/// `g = δ / (1 + |y|²/4)²`, normalized at the base point `y = 0`.
pub fn sphere_stereographic<S: Scalar>(n: usize, order: i32) -> Result<MetricChart<S>> {
    let mut u = Jet::one(n, order);
    for i in 0..n {
        let mut a = MultiIndex::zero();
        a.0[i] = 2;
        u = &u + &Jet::monomial(n, order, a, S::from_ratio(1, 4));
    }
    let inv = u.inverse()?;
    let factor = &inv * &inv;
    MetricChart::new(format!("sphere-s{n}"), vec![0.0; n], diagonal(n, |_| factor.clone()))
}

/// Round `S²` in polar coordinates `(θ, φ)` around `θ = θ₀`:
/// `g = dθ² + sin²θ dφ²`. Not normalized.
pub fn sphere2_polar_raw(theta0: f64, order: i32) -> MetricChart<FloatScalar> {
    let k = order.max(0) as usize;
    let sin: Vec<FloatScalar> = sin_series(theta0, k).into_iter().map(FloatScalar::real).collect();
    let s = Jet::from_univariate(2, order, 0, &sin);
    let g = vec![
        vec![Jet::one(2, order), Jet::zero(2, order)],
        vec![Jet::zero(2, order), &s * &s],
    ];
    MetricChart::new("sphere-s2-polar", vec![theta0, 0.0], g).expect("polar metric is valid")
}

/// Round `S²` in polar coordinates, linearly normalized at `θ₀`.
pub fn sphere2_polar(theta0: f64, order: i32) -> Result<MetricChart<FloatScalar>> {
    sphere2_polar_raw(theta0, order).normalized()
}

/// Collar metric `h(x_n)^{-1} δ' + dx_n²` near a boundary at `x_n = 0`;
/// `h` is given by its Taylor coefficients and must satisfy `h(0) = 1`.
pub fn collar<S: Scalar>(n: usize, h: &[S], order: i32) -> Result<MetricChart<S>> {
    if h.first().map_or(true, |h0| *h0 != S::one()) {
        return Err(Error::NotCollar("h(0) must equal 1".into()));
    }
    let hj = Jet::from_univariate(n, order, n - 1, h);
    let hinv = hj.inverse()?;
    let g = diagonal(n, |i| if i + 1 == n { Jet::one(n, order) } else { hinv.clone() });
    let flat = h.iter().skip(1).all(|c| c.is_zero());
    let name = if flat { format!("collar-flat-{n}") } else { format!("collar-warped-{n}") };
    MetricChart::new(name, vec![0.0; n], g)
}
