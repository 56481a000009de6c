use std::f64::consts::PI;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use defect_walk::observables::{bloch_midpoint_grid, bloch_scan, linspace, sweep_omega};
use defect_walk::{CoinKind, Execution, Qubit};

const SCHEDULES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn omega_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep_omega_konno");
    group.sample_size(10);
    let grid = linspace(64, 0.1 * PI, 1.9 * PI);
    for steps in [100usize, 400] {
        for (name, exec) in SCHEDULES {
            group.bench_with_input(BenchmarkId::new(name, steps), &steps, |b, &steps| {
                b.iter(|| sweep_omega(CoinKind::Konno, &Qubit::up(), black_box(steps), &grid, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn sphere_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("bloch_scan_teles");
    group.sample_size(10);
    let (alphas, betas) = bloch_midpoint_grid(8, 16);
    for (name, exec) in SCHEDULES {
        group.bench_function(name, |b| {
            b.iter(|| bloch_scan(CoinKind::Teles, PI / 2.0, black_box(200), &alphas, &betas, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, omega_sweep, sphere_scan);
criterion_main!(benches);
