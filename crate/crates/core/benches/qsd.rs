use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qsd_core::circuit::circuit_to_unitary_with;
use qsd_core::decomp::{qsd, qsd_batch, qsd_with, QsdOptions};
use qsd_core::matcore::haar_random_unitary;
use qsd_core::Parallelism;

const MODES: [(&str, Parallelism); 2] = [
    ("sequential", Parallelism::Sequential),
    ("rayon", Parallelism::Rayon),
];

fn opts(p: Parallelism) -> QsdOptions {
    QsdOptions {
        parallelism: p,
        ..QsdOptions::default()
    }
}

fn decompose(c: &mut Criterion) {
    let mut g = c.benchmark_group("qsd");
    g.sample_size(10);
    for n in [5, 6] {
        let u = haar_random_unitary(n, 1).unwrap();
        for (name, p) in MODES {
            let o = opts(p);
            g.bench_with_input(BenchmarkId::new(name, n), &u, |b, u| {
                b.iter(|| qsd_with(u, &o).unwrap())
            });
        }
    }
    g.finish();
}

fn simulate(c: &mut Criterion) {
    let mut g = c.benchmark_group("simulate");
    g.sample_size(10);
    let circuit = qsd(&haar_random_unitary(7, 2).unwrap()).unwrap();
    for (name, p) in MODES {
        g.bench_function(BenchmarkId::new(name, 7), |b| {
            b.iter(|| circuit_to_unitary_with(&circuit, p).unwrap())
        });
    }
    g.finish();
}

fn batch(c: &mut Criterion) {
    let mut g = c.benchmark_group("batch");
    g.sample_size(10);
    let us: Vec<_> = (0..32)
        .map(|s| haar_random_unitary(4, s).unwrap())
        .collect();
    for (name, p) in MODES {
        let o = opts(p);
        g.bench_function(BenchmarkId::new(name, "32x4q"), |b| {
            b.iter(|| qsd_batch(&us, &o))
        });
    }
    g.finish();
}

criterion_group!(benches, decompose, simulate, batch);
criterion_main!(benches);
