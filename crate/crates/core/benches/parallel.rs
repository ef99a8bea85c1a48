use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use polybergman::algebra::{KernelConfig, RealVector, RotatedPoint};
use polybergman::par::Execution;
use polybergman::polyspace::{mean_value_eval_with, random_polyharmonic};
use polybergman::quadrature::{
    build_sphere_rule, inner_product_ball_with, reproduce_with, BallRule,
};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn reproduce(c: &mut Criterion) {
    let cfg = KernelConfig::new(3, 2).unwrap();
    let u = random_polyharmonic(&cfg, 6, 4, 7).unwrap();
    let x = RotatedPoint::in_sector(RealVector(vec![0.3, -0.2, 0.1]), 1, 2).unwrap();
    let rule = BallRule::new(3, 0.0, 0.0, 14).unwrap();
    let mut group = c.benchmark_group("reproduce");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| reproduce_with(exec, &cfg, 0.0, 0.0, black_box(&u), &x, 6, &rule).unwrap())
        });
    }
    group.finish();
}

fn mean_value(c: &mut Criterion) {
    let cfg = KernelConfig::new(3, 3).unwrap();
    let u = random_polyharmonic(&cfg, 6, 4, 11).unwrap();
    let rule = build_sphere_rule(3, 60).unwrap();
    let a = RealVector::zeros(3);
    let x = RotatedPoint::real(vec![0.2, 0.1, 0.0]).unwrap();
    let mut group = c.benchmark_group("mean_value");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| mean_value_eval_with(exec, &cfg, black_box(&u), &a, 0.6, &x, &rule).unwrap())
        });
    }
    group.finish();
}

fn inner_product(c: &mut Criterion) {
    let cfg = KernelConfig::new(3, 2).unwrap();
    let f = random_polyharmonic(&cfg, 8, 6, 1).unwrap();
    let g = random_polyharmonic(&cfg, 8, 6, 2).unwrap();
    let rule = BallRule::new(3, 1.0, 0.5, 18).unwrap();
    let cfg = cfg.with_weights(1.0, 0.5).unwrap();
    let mut group = c.benchmark_group("inner_product_ball");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                inner_product_ball_with(exec, &cfg, 1.0, 0.5, black_box(&f), &g, &rule).unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, reproduce, mean_value, inner_product);
criterion_main!(benches);
