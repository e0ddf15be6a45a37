//! Oracles and generators shared by the integration suites. Nothing here
//! calls into the engine except to build inputs.

#![allow(dead_code, clippy::needless_range_loop)]

use kkw_core::charts;
use kkw_core::geometry::{check_killing, derive_geometry};
use kkw_core::jets::multi_indices;
use kkw_core::operators::{build_dirac, DiffOp, TorsionData};
use kkw_core::scalars::ExactScalar;
use kkw_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type E = ExactScalar;
pub type Mat = Vec<Vec<GaussRational>>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rand_rational<R: Rng>(rng: &mut R) -> GaussRational {
    let d = rng.gen_range(1..=4);
    GaussRational::from_ratio(rng.gen_range(-6..=6), d)
}

pub fn rand_gauss<R: Rng>(rng: &mut R) -> GaussRational {
    &rand_rational(rng) + &(&rand_rational(rng) * &GaussRational::i())
}

pub fn rand_clifford<R: Rng>(rng: &mut R, n: usize) -> Clifford<E> {
    let mut c = Clifford::zero(n);
    for _ in 0..rng.gen_range(1..=6) {
        let blade: Blade = rng.gen_range(0..(1u16 << n));
        c = &c + &Clifford::monomial(n, blade, E::from_gauss(rand_gauss(rng)));
    }
    c
}

/// A random polynomial jet of total degree at most 2.
pub fn rand_jet<R: Rng>(rng: &mut R, n: usize, order: i32) -> Jet<E> {
    let idx = multi_indices(n, 2);
    let terms: Vec<(MultiIndex, E)> = (0..rng.gen_range(1..=4))
        .map(|_| (idx[rng.gen_range(0..idx.len())], E::from_gauss(rand_rational(rng))))
        .collect();
    Jet::from_terms(n, order, terms)
}

pub fn rand_clifford_jet<R: Rng>(rng: &mut R, n: usize, order: i32) -> CliffordJet<E> {
    let blades: Vec<(Blade, Jet<E>)> =
        (0..rng.gen_range(1..=3)).map(|_| (rng.gen_range(0..(1u16 << n)), rand_jet(rng, n, order))).collect();
    CliffordJet::from_blades(n, n, order, blades)
}

// ---- gamma-matrix oracle ----------------------------------------------

fn g(re: i64, im: i64) -> GaussRational {
    GaussRational::from_parts(re, 1, im, 1)
}

fn kron(a: &Mat, b: &Mat) -> Mat {
    let (ra, rb) = (a.len(), b.len());
    let mut out = vec![vec![GaussRational::zero(); ra * rb]; ra * rb];
    for i in 0..ra {
        for j in 0..ra {
            for k in 0..rb {
                for l in 0..rb {
                    out[i * rb + k][j * rb + l] = &a[i][j] * &b[k][l];
                }
            }
        }
    }
    out
}

pub fn mat_identity(d: usize) -> Mat {
    (0..d).map(|i| (0..d).map(|j| if i == j { g(1, 0) } else { g(0, 0) }).collect()).collect()
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let d = a.len();
    let mut out = vec![vec![GaussRational::zero(); d]; d];
    for i in 0..d {
        for k in 0..d {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..d {
                out[i][j] = &out[i][j] + &(&a[i][k] * &b[k][j]);
            }
        }
    }
    out
}

pub fn mat_add(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
}

pub fn mat_scale(a: &Mat, c: &GaussRational) -> Mat {
    a.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()
}

pub fn mat_trace(a: &Mat) -> GaussRational {
    (0..a.len()).fold(GaussRational::zero(), |acc, i| &acc + &a[i][i])
}

/// `γ_1, …, γ_n` with `γ_i γ_j + γ_j γ_i = −2δ_ij`, built as `i` times
/// Jordan–Wigner strings of Pauli matrices.
pub fn gammas(n: usize) -> Vec<Mat> {
    let s1: Mat = vec![vec![g(0, 0), g(1, 0)], vec![g(1, 0), g(0, 0)]];
    let s2: Mat = vec![vec![g(0, 0), g(0, -1)], vec![g(0, 1), g(0, 0)]];
    let s3: Mat = vec![vec![g(1, 0), g(0, 0)], vec![g(0, 0), g(-1, 0)]];
    let m = n / 2;
    let mut out = Vec::with_capacity(n);
    for k in 0..m {
        for s in [&s1, &s2] {
            let mut acc: Mat = vec![vec![g(1, 0)]];
            for slot in 0..m {
                let f = if slot < k {
                    s3.clone()
                } else if slot == k {
                    s.clone()
                } else {
                    mat_identity(2)
                };
                acc = kron(&acc, &f);
            }
            out.push(mat_scale(&acc, &GaussRational::i()));
        }
    }
    out
}

/// Matrix of a Clifford element whose coefficients carry no powers of π.
pub fn matrix_of(c: &Clifford<E>, gam: &[Mat]) -> Mat {
    let n = c.dim();
    let d = gam[0].len();
    let mut out = vec![vec![GaussRational::zero(); d]; d];
    for (blade, s) in c.terms() {
        let mut m = mat_identity(d);
        for i in 0..n {
            if blade & (1 << i) != 0 {
                m = mat_mul(&m, &gam[i]);
            }
        }
        let coeff = s.as_gauss().expect("rational coefficient");
        out = mat_add(&out, &mat_scale(&m, &coeff));
    }
    out
}

// ---- sphere moment oracle -------------------------------------------------

/// `Γ(k/2)` exactly: `Γ(1/2) = π^{1/2}`, `Γ(1) = 1`, `Γ(s + 1) = sΓ(s)`.
pub fn gamma_of_half(k: u32) -> E {
    assert!(k >= 1);
    let (mut val, mut twice) = if k % 2 == 1 { (E::monomial(GaussRational::one(), 1), 1) } else { (E::one(), 2) };
    while twice < k {
        val = val * E::rational(twice as i64, 2);
        twice += 2;
    }
    val
}

/// `∫_{S^{n−1}} ξ^β dσ = 2∏Γ((β_i+1)/2) / Γ((|β|+n)/2)` for even `β`, else 0.
pub fn sphere_moment_oracle(beta: &[u32], n: usize) -> E {
    if beta.iter().any(|b| b % 2 == 1) {
        return E::zero();
    }
    let num = beta.iter().fold(E::from_int(2), |acc, &b| acc * gamma_of_half(b + 1));
    let total: u32 = beta.iter().sum::<u32>() + n as u32;
    let den = gamma_of_half(total);
    let (c, e) = den.as_monomial().map(|(c, e)| (c.clone(), e)).expect("single power of π");
    num * E::monomial(c.inv().expect("nonzero"), -e)
}

// ---- operators and fields ----------------------------------------------

pub fn rotation(n: usize, i: usize, j: usize, order: i32) -> Vec<Jet<E>> {
    let mut x = vec![Jet::zero(n, order); n];
    x[i] = -Jet::variable(n, order, j);
    x[j] = Jet::variable(n, order, i);
    x
}

pub fn constant_field(n: usize, v: &[i64]) -> Vec<Jet<E>> {
    v.iter().map(|&c| Jet::constant(n, i32::MAX, E::from_int(c))).collect()
}

/// `D² + A^i∂_i + B` with random `A`, `B`: Laplace type for the chart metric.
pub fn random_laplace_type<R: Rng>(rng: &mut R, geo: &GeometryData<E>, order: i32) -> DiffOp<E> {
    let n = geo.dim();
    let d = build_dirac(geo);
    let mut p = d.compose(&d).unwrap();
    for i in 0..n {
        p.add_term(MultiIndex::unit(i), rand_clifford_jet(rng, n, order));
    }
    p.add_term(MultiIndex::zero(), rand_clifford_jet(rng, n, order));
    p
}

pub fn random_torsion<R: Rng>(rng: &mut R, n: usize, order: i32, x_dependent: bool) -> TorsionData<E> {
    let mut comps = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if rng.gen_bool(0.5) {
                    let c = if x_dependent {
                        rand_jet(rng, n, order)
                    } else {
                        Jet::constant(n, order, E::from_gauss(rand_rational(rng)))
                    };
                    comps.push(([i, j, k], c));
                }
            }
        }
    }
    TorsionData::from_increasing(n, comps).unwrap()
}

pub fn flat_geo(n: usize, order: i32) -> GeometryData<E> {
    derive_geometry(&charts::flat::<E>(n, order)).unwrap()
}

pub fn sphere_geo(n: usize, order: i32) -> GeometryData<E> {
    derive_geometry(&charts::sphere_stereographic::<E>(n, order).unwrap()).unwrap()
}

pub fn killing(geo: &GeometryData<E>, x: &[Jet<E>]) -> KillingField<E> {
    let k = check_killing(geo, x, &Tolerance::default()).unwrap();
    assert!(k.valid, "field is not Killing");
    k
}

/// Prints one acceptance line.
pub fn report(id: u32, name: &str, pass: bool, elapsed: std::time::Duration, detail: &str) {
    let status = if pass { "PASS" } else { "FAIL" };
    println!("criterion {id} [{status}] {name} ({:.2}s){}", elapsed.as_secs_f64(), if detail.is_empty() { String::new() } else { format!(": {detail}") });
}
