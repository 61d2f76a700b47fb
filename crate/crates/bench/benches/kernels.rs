use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use kiteforge::finalg::enumerate_flw;
use kiteforge::kite::checks::check_axioms;
use kiteforge::kite::Sampler;
use kiteforge_bench::{filter_targets, shift3};

fn enumerate(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate");
    g.sample_size(10);
    for n in [4usize, 5] {
        g.bench_function(format!("flw_{n}"), |b| b.iter(|| enumerate_flw(black_box(n)).unwrap().len()));
    }
    g.finish();
}

fn axioms(c: &mut Criterion) {
    let k = shift3();
    let mut g = c.benchmark_group("axioms");
    g.sample_size(10);
    g.bench_function("shift3_500", |b| b.iter(|| check_axioms(&k, Sampler::default(), black_box(1), 500).passed()));
    g.finish();
}

fn closure(c: &mut Criterion) {
    let mut algebras = filter_targets();
    algebras.extend(enumerate_flw(5).unwrap());
    c.bench_function("filter_closure_corpus5", |b| {
        b.iter(|| {
            let mut total = 0;
            for a in &algebras {
                for f in a.all_normal_filters() {
                    for x in a.elements() {
                        total += a.filter_closure(&f, x).unwrap().len();
                    }
                }
            }
            total
        })
    });
}

criterion_group!(benches, enumerate, axioms, closure);
criterion_main!(benches);
