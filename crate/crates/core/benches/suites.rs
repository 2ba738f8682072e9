use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use expodom::harness::{run_suite, Suite, SuiteParams};
use expodom::par::Exec;

fn suite_batches(c: &mut Criterion) {
    let mut group = c.benchmark_group("suites");
    group.sample_size(10);
    for (suite, n) in [(Suite::Theorem2, 10), (Suite::Chain, 8), (Suite::Theorem1Equiv, 7)] {
        for exec in [Exec::Sequential, Exec::Parallel] {
            let p = SuiteParams::new(n).with_exec(exec);
            group.bench_function(format!("{suite}/n{n}/{exec:?}"), |b| {
                b.iter(|| black_box(run_suite(suite, &p)).checked)
            });
        }
    }
    group.finish();
}

criterion_group!(benches, suite_batches);
criterion_main!(benches);
