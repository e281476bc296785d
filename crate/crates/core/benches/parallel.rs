use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use lrpkit::algebra::Algebra;
use lrpkit::corpus::Corpus;
use lrpkit::varieties::rank_variety_exec;
use lrpkit::verify::verify_suite_exec;
use lrpkit::{Exec, Field};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn matrices(c: &mut Criterion) {
    let f = Field::new(5).unwrap();
    let mut corpus = Corpus::new(11);
    let mut group = c.benchmark_group("matrix");
    for n in [64, 192] {
        let a = corpus.random_matrix(f, n, n);
        let b = corpus.random_matrix(f, n, n);
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(format!("mul/{name}"), n), &n, |bch, _| {
                bch.iter(|| black_box(a.mul_exec(&b, exec)))
            });
            group.bench_with_input(BenchmarkId::new(format!("rref/{name}"), n), &n, |bch, _| {
                bch.iter(|| black_box(a.rref_exec(exec)))
            });
        }
    }
    group.finish();
}

fn varieties(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank_variety");
    for p in [3u32, 5] {
        let alg = Algebra::truncated(p, &[p, p]).unwrap();
        let m = Corpus::new(5).random_module(&alg, 3 * p as usize * p as usize).unwrap();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, p), &p, |bch, _| {
                bch.iter(|| black_box(rank_variety_exec(&m, exec).unwrap()))
            });
        }
    }
    group.finish();
}

fn suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_suite");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, "p3n1"), |bch| {
            bch.iter(|| black_box(verify_suite_exec(3, 1, 4, 1, exec).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, matrices, varieties, suite);
criterion_main!(benches);
