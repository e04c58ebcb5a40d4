//! Benchmarks for the hot kernels: P1 assembly, the dense generalized
//! eigensolver, and the radial fiber oracle. Run with and without the
//! `parallel` feature to compare the rayon and sequential code paths:
//!
//! ```text
//! cargo bench -p magspec
//! cargo bench -p magspec --no-default-features
//! ```

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use magspec::assembly::{assemble, restrict_dirichlet, Gauge, MagneticField};
use magspec::disk::{fiber_oracle, FiberKind};
use magspec::eigen::{smallest_eigenpairs, DEFAULT_TOL};
use magspec::geometry::{regular_polygon, triangulate};

fn mode() -> &'static str {
    if cfg!(feature = "parallel") {
        "parallel"
    } else {
        "sequential"
    }
}

fn bench_assembly(c: &mut Criterion) {
    let poly = regular_polygon(5, 1.0).unwrap();
    let mesh = triangulate(&poly, 5);
    let field = MagneticField::new(2.0, Gauge::Landau).unwrap();
    let mut group = c.benchmark_group("assemble-pentagon-refine5");
    group.bench_with_input(BenchmarkId::from_parameter(mode()), &mesh, |bench, m| {
        bench.iter(|| assemble(m, &field).unwrap())
    });
    group.finish();
}

fn bench_eigensolver(c: &mut Criterion) {
    let poly = regular_polygon(5, 1.0).unwrap();
    let mesh = triangulate(&poly, 3);
    let field = MagneticField::new(2.0, Gauge::Landau).unwrap();
    let neumann = assemble(&mesh, &field).unwrap();
    let dirichlet = restrict_dirichlet(&neumann, &mesh).unwrap();
    let mut group = c.benchmark_group(format!(
        "eigensolve-complex-dim{}-k4",
        dirichlet.dim()
    ));
    group.sample_size(10);
    group.bench_with_input(BenchmarkId::from_parameter(mode()), &dirichlet, |bench, p| {
        bench.iter(|| smallest_eigenpairs(p, 4, DEFAULT_TOL).unwrap())
    });
    group.finish();
}

fn bench_fiber_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("fiber-oracle-grid2000");
    group.bench_with_input(BenchmarkId::from_parameter(mode()), &(), |bench, _| {
        bench.iter(|| fiber_oracle(-1, 2.0, FiberKind::NeumannFiber, 2000).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_assembly, bench_eigensolver, bench_fiber_oracle);
criterion_main!(benches);
