//! Parallel against sequential execution for the exhaustive scans.
//! Without the `parallel` feature both variants run on one thread.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use cmvkit::cmv::{function_cmv, tilde_closure, FiniteCmvAlgebra};
use cmvkit::mv::lukasiewicz_chain;
use cmvkit::structure::classify_mv_ideals;
use cmvkit::{Config, Exec};

const EXECS: [(&str, Exec); 2] = [("parallel", Exec::Parallel), ("sequential", Exec::Sequential)];

fn config(exec: Exec) -> Config {
    Config {
        exec,
        ..Config::default()
    }
}

fn scans(c: &mut Criterion) {
    let l4 = lukasiewicz_chain(3).unwrap();
    let big = function_cmv(&l4, &Config::default()).unwrap();
    let l3 = function_cmv(&lukasiewicz_chain(2).unwrap(), &Config::default()).unwrap();

    let mut g = c.benchmark_group("validate_cmv_256");
    g.sample_size(10);
    for (name, exec) in EXECS {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            let a = big.algebra();
            b.iter(|| FiniteCmvAlgebra::validate_with(a.mv().clone(), a.tables().diamond, a.identity(), black_box(exec)))
        });
    }
    g.finish();

    let mut g = c.benchmark_group("tilde_closure_l4");
    g.sample_size(10);
    for (name, exec) in EXECS {
        let cfg = config(exec);
        g.bench_function(name, |b| b.iter(|| tilde_closure(black_box(&l4), &cfg).unwrap()));
    }
    g.finish();

    let mut g = c.benchmark_group("classify_ideals_27");
    for (name, exec) in EXECS {
        let cfg = config(exec);
        g.bench_function(name, |b| b.iter(|| classify_mv_ideals(black_box(l3.algebra()), &cfg).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, scans);
criterion_main!(benches);
