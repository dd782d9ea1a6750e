use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use modular_tqft::format::builtin;
use modular_tqft::mcg::{lens_batch, torus_rep};
use modular_tqft::par::Execution;
use modular_tqft::statespaces::{surface_dim_bruteforce_with, SurfaceSpec};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn bruteforce(c: &mut Criterion) {
    let cat = builtin("z_n(5,2)").unwrap().to_category().unwrap();
    let spec = SurfaceSpec::new(3, vec![1, 4]);
    let mut group = c.benchmark_group("bruteforce_g3_b2");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| surface_dim_bruteforce_with(&cat, &spec, exec).unwrap())
        });
    }
    group.finish();
}

fn lens_sweep(c: &mut Criterion) {
    let cat = builtin("ising").unwrap().to_category().unwrap();
    let rep = torus_rep(&cat, &[0]).unwrap();
    let pairs: Vec<(u64, i64)> = (2..40u64)
        .flat_map(|p| (1..p as i64).map(move |q| (p, q)))
        .collect();
    let mut group = c.benchmark_group("lens_batch_ising");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| lens_batch(&rep, &pairs, exec))
        });
    }
    group.finish();
}

fn matrix_product(c: &mut Criterion) {
    let cat = builtin("z_n(5,2)").unwrap().to_category().unwrap();
    let rep = torus_rep(&cat, &[0]).unwrap();
    let st = rep.s().mul(rep.t()).unwrap();
    let mut group = c.benchmark_group("matrix_mul_rank5");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| st.mul_with(rep.s(), exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bruteforce, lens_sweep, matrix_product);
criterion_main!(benches);
