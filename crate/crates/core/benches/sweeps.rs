use std::f64::consts::PI;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lpkit::diffop::{order_sweep, refinement_experiment};
use lpkit::lsq::{fit_many, FitMethod};
use lpkit::{Execution, Signal};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const STRATEGIES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn refinement(c: &mut Criterion) {
    let ns: Vec<usize> = (5..=14).map(|k| 1 << k).collect();
    let mut group = c.benchmark_group("refinement_experiment");
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::new(name, "sin p=3 N=32..16384"), |b| {
            b.iter(|| {
                refinement_experiment(f64::sin, 0.0, 2.0 * PI, 3, black_box(&ns), exec).unwrap()
            })
        });
    }
    group.finish();
}

fn sweep(c: &mut Criterion) {
    let signal = Signal::sample(|x| (3.0 * x).sin() * x.exp(), 0.0, 2.0, 1 << 15).unwrap();
    let ps: Vec<usize> = (1..=30).collect();
    let mut group = c.benchmark_group("order_sweep");
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::new(name, "N=32768 p=1..30"), |b| {
            b.iter(|| order_sweep(black_box(&signal), &ps, exec).unwrap())
        });
    }
    group.finish();
}

fn batch_fits(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let signals: Vec<Signal> = (0..64)
        .map(|_| Signal::new((0..512).map(|_| rng.random_range(-1.0..1.0)).collect()).unwrap())
        .collect();
    let mut group = c.benchmark_group("fit_many");
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::new(name, "64 signals N=512 p=8"), |b| {
            b.iter(|| fit_many(black_box(&signals), 8, FitMethod::Covariance, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, refinement, sweep, batch_fits);
criterion_main!(benches);
