use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use weightlab::suites::{suite, Execution, SuiteConfig};

fn executors(c: &mut Criterion) {
    let mut group = c.benchmark_group("suites");
    group.sample_size(10);
    for name in ["degree-oracle", "tangent-lifts", "im-equivalence"] {
        let run = suite(name).expect("known suite");
        for (label, execution) in [
            ("sequential", Execution::Sequential),
            ("parallel", Execution::Parallel),
        ] {
            let config = SuiteConfig { seed: 0, execution };
            group.bench_with_input(BenchmarkId::new(name, label), &config, |b, config| {
                b.iter(|| black_box(run(config)))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, executors);
criterion_main!(benches);
