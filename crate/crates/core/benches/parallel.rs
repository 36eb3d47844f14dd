use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use ordfix::instances::{falsify, library_instance, GeneratorParams};
use ordfix::maia::build_maia_metric_with;
use ordfix::oracle::{run_corpus, TheoremId};
use ordfix::picard::{classify_picard_with, PicardMode};
use ordfix::Exec;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn corpus(c: &mut Criterion) {
    let mut g = c.benchmark_group("corpus");
    g.sample_size(10).measurement_time(Duration::from_secs(10));
    for target in [TheoremId::T2, TheoremId::T4, TheoremId::T9] {
        let base = GeneratorParams { n: 8, target, ..GeneratorParams::default() };
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, target), &base, |b, base| {
                b.iter(|| run_corpus(exec, black_box(base), 200).unwrap())
            });
        }
    }
    g.finish();
}

fn campaign(c: &mut Criterion) {
    let mut g = c.benchmark_group("falsify");
    g.sample_size(10);
    // no hypothesis dropped: the whole campaign runs
    let base = GeneratorParams { target: TheoremId::T4, ..GeneratorParams::default() };
    for (name, exec) in MODES {
        g.bench_function(name, |b| b.iter(|| falsify(exec, black_box(&base), 500).unwrap()));
    }
    g.finish();
}

fn grid(c: &mut Criterion) {
    let grid = library_instance("half-map-grid").unwrap();
    let mut g = c.benchmark_group("half-map-grid");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new("maia", name), |b| {
            b.iter(|| build_maia_metric_with(exec, &grid.space, 0.5, Some(1.5), 1e-9).unwrap())
        });
        g.bench_function(BenchmarkId::new("classify", name), |b| {
            b.iter(|| classify_picard_with(exec, &grid.space, PicardMode::ModuloCLeq).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, corpus, campaign, grid);
criterion_main!(benches);
