use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use cyclomag::abstraction::represent;
use cyclomag::io::{random_dmg, GeneratorConfig};
use cyclomag::separation::{m_separated, sigma_separated, SeparationQuery};
use cyclomag::MarkedGraph;

fn queries(n: usize) -> Vec<SeparationQuery> {
    (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .map(|(a, b)| {
            SeparationQuery::pair(a, b, (0..n).filter(|&v| v != a && v != b && v % 3 == 0))
        })
        .collect()
}

fn sigma(c: &mut Criterion) {
    let mut group = c.benchmark_group("sigma_separated");
    for n in [8, 16, 32, 64] {
        let g = random_dmg(&GeneratorConfig::new(
            n,
            3.0 / n as f64,
            1.0 / n as f64,
            0,
            7,
        ))
        .unwrap()
        .graph;
        let qs = queries(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |bch, g| {
            bch.iter(|| {
                for q in &qs {
                    black_box(sigma_separated(g, q).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn m(c: &mut Criterion) {
    let mut group = c.benchmark_group("m_separated");
    for n in [8, 16, 32] {
        let h = represent(
            &random_dmg(&GeneratorConfig::new(
                n + 2,
                2.5 / n as f64,
                1.0 / n as f64,
                2,
                11,
            ))
            .unwrap(),
        )
        .unwrap();
        let qs = queries(h.node_count());
        group.bench_with_input(BenchmarkId::from_parameter(n), &h, |bch, h| {
            bch.iter(|| {
                for q in &qs {
                    black_box(m_separated(h, q).unwrap());
                }
            })
        });
    }
    group.finish();
}

criterion_group!(benches, sigma, m);
criterion_main!(benches);
