use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use cpn_surfaces::numeric::{action_quadrature, residual_study, GridSpec, NumericTower};
use cpn_surfaces::report::verify_seed;
use cpn_surfaces::sigma::{build_tower, HoloSeed};
use cpn_surfaces::Exec;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn cubic_seed() -> HoloSeed {
    HoloSeed::from_integers(&[&[1], &[0, 1], &[0, 0, 1], &[0, 0, 0, 1]]).unwrap()
}

fn residuals(c: &mut Criterion) {
    let tower = build_tower(&cubic_seed()).unwrap();
    let nt = NumericTower::new(&tower, Exec::Parallel);
    let grid = GridSpec::default();
    let mut g = c.benchmark_group("residual_study_n4_41x41");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| residual_study(black_box(&nt), &grid, &[2e-3, 1e-3, 5e-4], exec).unwrap())
        });
    }
    g.finish();
}

fn quadrature(c: &mut Criterion) {
    let tower = build_tower(&cubic_seed()).unwrap();
    let p = &tower.projectors()[1];
    let mut g = c.benchmark_group("action_quadrature_256");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| action_quadrature(black_box(p), 256, exec).unwrap())
        });
    }
    g.finish();
}

fn exact(c: &mut Criterion) {
    let seed = cubic_seed();
    let mut g = c.benchmark_group("verify_seed_n4");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| verify_seed(black_box(&seed), exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, residuals, quadrature, exact);
criterion_main!(benches);
