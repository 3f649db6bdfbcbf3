use std::hint::black_box;
use std::sync::Arc;

use affine_core::algebra::AffineAlgebra;
use affine_core::induced::{cyclicity_certificate, default_raising_bound, singular_vectors};
use affine_core::instances::{imaginary_verma, levi_tensor_fock, parabolic_setting, weight};
use affine_core::module::{FockModule, TriangularSpec, Truncation};
use affine_core::partitions::ImaginarySpec;
use affine_core::rational::{q, qf};
use affine_core::twisting::{verify_intertwining, TwistSetup};
use affine_core::wakimoto::{verify_homomorphism, wakimoto_module};
use criterion::{criterion_group, criterion_main, Criterion};

fn brackets(c: &mut Criterion) {
    let alg = AffineAlgebra::new("A2".parse().unwrap());
    let modes = alg.modes_in_box(2);
    c.bench_function("a2 bracket table |n|<=2", |b| {
        b.iter(|| {
            let mut terms = 0;
            for x in &modes {
                for y in &modes {
                    terms += alg.bracket_modes(black_box(x), black_box(y)).len();
                }
            }
            terms
        })
    });
}

fn certificates(c: &mut Criterion) {
    let mut g = c.benchmark_group("certificates");
    g.sample_size(10);
    let t = Truncation::new(2, 2);
    let bound = default_raising_bound(t);
    g.bench_function("a1 imaginary verma D=R=2", |b| {
        b.iter(|| {
            let m = imaginary_verma("A1".parse().unwrap(), weight(vec![qf(1, 3)], q(1)), t).unwrap();
            (singular_vectors(&m, t, bound).only_generator, cyclicity_certificate(&m, t, bound).all_reached)
        })
    });
    g.bench_function("a2 levi tensor D=R=2", |b| {
        b.iter(|| {
            let lam = weight(vec![qf(1, 3), qf(2, 7)], q(1));
            let m = levi_tensor_fock("A2".parse().unwrap(), &[0], lam, t).unwrap();
            singular_vectors(&m, t, bound).only_generator
        })
    });
    g.finish();
}

fn realization(c: &mut Criterion) {
    let mut g = c.benchmark_group("realization");
    g.sample_size(10);
    let t = Truncation::new(2, 2);
    g.bench_function("a1 wakimoto relations m<=1", |b| {
        b.iter(|| {
            let (p, setting) = parabolic_setting("A1".parse().unwrap(), &[], ImaginarySpec::Full, 3).unwrap();
            let v = Arc::new(FockModule::full(setting, TriangularSpec::Standard, weight(vec![qf(1, 3)], q(1))));
            let w = wakimoto_module(p, v).unwrap();
            verify_homomorphism(&w, 1, t).holds
        })
    });
    let t = Truncation::new(1, 1);
    let lam = weight(vec![qf(1, 3), qf(2, 7)], q(1));
    let s = TwistSetup::new("A2".parse().unwrap(), &[0], lam, &[1, 0], 0, t, 3).unwrap();
    g.bench_function("a2 twisting intertwiner depth 1", |b| {
        b.iter(|| {
            let tw = s.intertwiner(t).unwrap();
            verify_intertwining(&tw, t, 3, 1).equivariant
        })
    });
    g.finish();
}

criterion_group!(benches, brackets, certificates, realization);
criterion_main!(benches);
