//! Sequential vs rayon execution of the exhaustive routines.

use std::hint::black_box;
use std::path::PathBuf;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fupdate::construct::companion;
use fupdate::fic::{enumerate_fic_interference, FicProblem};
use fupdate::oracle::optimal_codelength;
use fupdate::sim::simulate;
use fupdate::{Exec, FieldSpec, FunctionUpdateProblem, Limits, Matrix};

fn fixture(name: &str) -> FunctionUpdateProblem {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    fupdate::format::parse_problem(&std::fs::read_to_string(path).unwrap()).unwrap()
}

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn interference(c: &mut Criterion) {
    let p = fixture("example5.toml");
    let mut g = c.benchmark_group("interference/example5");
    for (name, exec) in MODES {
        let lim = Limits::default().with_exec(exec);
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(p.interference(&lim).unwrap()))
        });
    }
    g.finish();
}

fn simulation(c: &mut Criterion) {
    let p = fixture("example5.toml");
    let scheme = companion(&p, &Limits::default()).unwrap().scheme;
    let mut g = c.benchmark_group("simulate/example5_2000");
    g.sample_size(20);
    for (name, exec) in MODES {
        let lim = Limits::default().with_exec(exec);
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(simulate(&p, &scheme, 2000, 1, &lim).unwrap()))
        });
    }
    g.finish();
}

fn oracle(c: &mut Criterion) {
    let f = FieldSpec::gf(2).unwrap();
    let p = FunctionUpdateProblem::new(Matrix::identity(&f, 9), 1).unwrap();
    let mut g = c.benchmark_group("oracle/identity9");
    g.sample_size(10);
    for (name, exec) in MODES {
        let lim = Limits::default().with_exec(exec);
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(optimal_codelength(&p, &lim).unwrap()))
        });
    }
    g.finish();
}

fn fic(c: &mut Criterion) {
    let p = fixture("example4.toml");
    let fic = FicProblem::from_function_update(&p, &Limits::default()).unwrap();
    let mut g = c.benchmark_group("fic/example4");
    g.sample_size(20);
    for (name, exec) in MODES {
        let lim = Limits::default().with_exec(exec);
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(enumerate_fic_interference(&fic, &lim).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, interference, simulation, oracle, fic);
criterion_main!(benches);
