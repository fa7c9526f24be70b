use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use cyclomag::abstraction::{canonical_dmg, represent, validate};
use cyclomag::equivalence::condition1;
use cyclomag::io::{random_dmg, GeneratorConfig};

fn sample(n: usize, seed: u64) -> cyclomag::ContextedDmg {
    random_dmg(&GeneratorConfig::new(
        n + 2,
        2.5 / n as f64,
        1.0 / n as f64,
        2,
        seed,
    ))
    .unwrap()
}

fn abstraction(c: &mut Criterion) {
    let mut group = c.benchmark_group("represent");
    for n in [6, 12, 24] {
        let g = sample(n, 3);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| black_box(represent(g).unwrap()))
        });
    }
    group.finish();

    let mut group = c.benchmark_group("validate");
    for n in [6, 12, 24] {
        let h = represent(&sample(n, 5)).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &h, |b, h| {
            b.iter(|| black_box(validate(h)))
        });
    }
    group.finish();

    let mut group = c.benchmark_group("canonical_dmg");
    for n in [6, 12, 24] {
        let h = represent(&sample(n, 9)).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &h, |b, h| {
            b.iter(|| black_box(canonical_dmg(h).unwrap()))
        });
    }
    group.finish();
}

fn equivalence(c: &mut Criterion) {
    let mut group = c.benchmark_group("condition1");
    for n in [6, 12, 24] {
        let h1 = represent(&sample(n, 13)).unwrap();
        let h2 = represent(&canonical_dmg(&h1).unwrap()).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &(h1, h2), |b, (h1, h2)| {
            b.iter(|| black_box(condition1(h1, h2).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, abstraction, equivalence);
criterion_main!(benches);
