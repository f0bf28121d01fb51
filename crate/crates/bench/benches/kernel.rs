use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use gorsum_core::random::{augmentation, fiber_product_over_k, random_fiber_product, random_gorenstein_pair, rng};
use gorsum_core::sums::Grading;
use gorsum_core::*;

fn gf101() -> PrimeField {
    PrimeField::new(101).unwrap()
}

fn cubic(f: &PrimeField, v: &str) -> Arc<FdAlgebra<PrimeField>> {
    Arc::new(FdAlgebra::parse(f, &[(v, 1)], &[&format!("{v}^3")]).unwrap())
}

fn groebner(c: &mut Criterion) {
    let f = gf101();
    let ring = PolyRing::new(&f, &[("x", 1), ("y", 1), ("z", 1)]).unwrap();
    let gens: Vec<_> =
        ["x^2 - y*z", "y^2 - x*z", "z^2 - x*y", "x^3", "y^3", "z^3"].iter().map(|s| ring.parse(s).unwrap()).collect();
    c.bench_function("groebner three quadrics", |b| b.iter(|| GroebnerBasis::compute(&ring, black_box(&gens))));
}

fn structure_constants(c: &mut Criterion) {
    let f = gf101();
    c.bench_function("presentation to structure constants", |b| {
        b.iter(|| {
            FdAlgebra::parse(&f, &[("x", 1), ("y", 1), ("z", 1)], black_box(&["x^3", "y^3", "z^3", "x*y*z"])).unwrap()
        })
    });
}

fn sums(c: &mut Criterion) {
    let f = gf101();
    let (r, s) = (cubic(&f, "x"), cubic(&f, "y"));
    c.bench_function("fiber product over k", |b| b.iter(|| fiber_product_over_k(black_box(&r), black_box(&s))));
    let (er, es) = (augmentation(&r), augmentation(&s));
    c.bench_function("graded connected sum over k", |b| {
        b.iter(|| gorenstein_connected_sum(black_box(&er), black_box(&es), Grading::Auto).unwrap())
    });
    let (a, b2) = random_gorenstein_pair(&f, &mut rng(7), 4, 8);
    let (ea, eb) = (augmentation(&a), augmentation(&b2));
    c.bench_function("connected sum of random Gorenstein pair", |b| {
        b.iter(|| gorenstein_connected_sum(black_box(&ea), black_box(&eb), Grading::Auto).unwrap())
    });
}

fn resolutions(c: &mut Criterion) {
    let f = gf101();
    let (r, s) = (cubic(&f, "x"), cubic(&f, "y"));
    let (sum, _) = gorenstein_connected_sum(&augmentation(&r), &augmentation(&s), Grading::Auto).unwrap();
    let k = FdModule::residue_field(sum.q());
    c.bench_function("resolve k over a codimension 2 complete intersection, 8 steps", |b| {
        b.iter(|| minimal_free_resolution(black_box(&k), 8, DEFAULT_BUDGET).unwrap())
    });
    let fp = random_fiber_product(&f, &mut rng(11), 8);
    let k = FdModule::residue_field(fp.algebra());
    c.bench_function("Poincare series of k over a random fiber product, order 6", |b| {
        b.iter(|| poincare_series(black_box(&k), 6, DEFAULT_BUDGET).unwrap())
    });
    let q = sum.q().clone();
    let kappa = FdAlgebra::quotient(&q, &q.socle()).unwrap().1;
    c.bench_function("Golod test of a socle quotient, order 6", |b| {
        b.iter(|| golod_test(black_box(&kappa), 6, DEFAULT_BUDGET).unwrap())
    });
}

fn colength(c: &mut Criterion) {
    let f = gf101();
    let q = Arc::new(FdAlgebra::parse(&f, &[("x", 1), ("y", 1)], &["x^3", "x*y", "y^4"]).unwrap());
    c.bench_function("colength bounds of a fiber product of two lines", |b| {
        b.iter(|| gcl_bounds(black_box(&q), &[]).unwrap())
    });
}

criterion_group!(benches, groebner, structure_constants, sums, resolutions, colength);
criterion_main!(benches);
