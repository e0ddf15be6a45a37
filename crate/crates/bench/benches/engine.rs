use criterion::{criterion_group, criterion_main, Criterion};
use kkw_core::boundary::{compute_phi, BoundaryChart};
use kkw_core::charts;
use kkw_core::geometry::{check_killing, derive_geometry};
use kkw_core::operators::{build_bismut_laplacian, extract_canonical_form};
use kkw_core::symcalc::{wres_density_gilkey, wres_density_symbol};
use kkw_core::{Clifford, ExactScalar, Jet, Scalar, Tolerance};

type E = ExactScalar;

fn rotation(n: usize, order: i32) -> Vec<Jet<E>> {
    let mut x = vec![Jet::zero(n, order); n];
    x[0] = -Jet::variable(n, order, 1);
    x[1] = Jet::variable(n, order, 0);
    x
}

fn clifford(c: &mut Criterion) {
    let n = 6;
    let a = (0..1u16 << n).fold(Clifford::zero(n), |acc, b| &acc + &Clifford::monomial(n, b, E::from_int(b as i64 + 1)));
    c.bench_function("clifford/full-product-n6", |b| b.iter(|| a.try_mul(&a).unwrap()));
}

fn interior(c: &mut Criterion) {
    let chart = charts::sphere_stereographic::<E>(4, 3).unwrap();
    c.bench_function("geometry/sphere-s4", |b| b.iter(|| derive_geometry(&chart).unwrap()));
    let geo = derive_geometry(&chart).unwrap();
    let x = check_killing(&geo, &rotation(4, 3), &Tolerance::default()).unwrap();
    let h = build_bismut_laplacian(&geo, &x).unwrap();
    c.bench_function("operators/canonical-form-s4", |b| b.iter(|| extract_canonical_form(&h, &geo).unwrap()));
    c.bench_function("symcalc/gilkey-s4", |b| b.iter(|| wres_density_gilkey(&h, &geo).unwrap()));
    c.bench_function("symcalc/symbol-s4", |b| b.iter(|| wres_density_symbol(&h, 1, &geo).unwrap()));
}

fn boundary(c: &mut Criterion) {
    let n = 6;
    let h = [E::one(), E::rational(1, 2), E::rational(1, 3)];
    let chart = charts::collar::<E>(n, &h, 4).unwrap();
    let bc = BoundaryChart::new(chart, &rotation(n, 4), None).unwrap();
    c.bench_function("boundary/phi-warped-collar", |b| b.iter(|| compute_phi(&bc, 1, 1).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = clifford, interior, boundary
}
criterion_main!(benches);
