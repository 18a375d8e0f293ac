use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use workbench_bench::{composition_input, points, rng, words};
use workbench_core::bar::{verify_cyclic_object, CyclicBar, FinCmMonoid};
use workbench_core::circle::compose_uec;
use workbench_core::cyclic::{check_lambda_lattice, lambda_to_ucc, normalize_word};

fn composition(c: &mut Criterion) {
    let mut g = c.benchmark_group("compose_uec");
    for n in [2, 4, 8] {
        let (outer, inners) = composition_input(1, 2, n, 3);
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| compose_uec(black_box(&outer), black_box(&inners)).unwrap())
        });
    }
    g.finish();
}

fn rewriting(c: &mut Criterion) {
    let ws = words(2, 64, 3, 3, 12);
    c.bench_function("normalize_word/64x12", |b| {
        b.iter(|| {
            ws.iter()
                .map(|w| normalize_word(black_box(w)).unwrap().gens.len())
                .sum::<usize>()
        })
    });
}

fn lambda(c: &mut Criterion) {
    let ps = points(3, 64, 3, 3);
    c.bench_function("lambda_to_ucc/64", |b| {
        b.iter(|| {
            ps.iter()
                .map(|p| lambda_to_ucc(black_box(p)).unwrap().arity())
                .sum::<usize>()
        })
    });
    let mut g = c.benchmark_group("lambda_lattice");
    g.sample_size(10);
    g.bench_function("m2_q2_den2", |b| {
        b.iter(|| check_lambda_lattice(2, 2, 2).left_classes)
    });
    g.finish();
}

fn cyclic_object(c: &mut Criterion) {
    let monoid = FinCmMonoid::band(2).unwrap();
    let bar = CyclicBar::new(&monoid);
    let mut g = c.benchmark_group("verify_cyclic_object");
    g.sample_size(10);
    g.bench_function("band_m2_q4", |b| {
        b.iter(|| verify_cyclic_object(&bar, 4, 1000, &mut rng(4)).0)
    });
    g.finish();
}

criterion_group!(benches, composition, rewriting, lambda, cyclic_object);
criterion_main!(benches);
