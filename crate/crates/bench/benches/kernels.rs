use cesaro_bench::{random_seq, SIZES};
use cesaro_core::operators::{apply_cesaro, apply_resolvent_partial, cesaro_matrix, convolve};
use cesaro_core::spectral::{norm_lower_bound, SearchOptions};
use cesaro_core::{OperatorSpec, Seq, SpaceSpec};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn cesaro(c: &mut Criterion) {
    let mut group = c.benchmark_group("apply_cesaro");
    for n in SIZES {
        let x = random_seq(n, 1);
        group.bench_with_input(BenchmarkId::from_parameter(n), &x, |b, x| {
            b.iter(|| apply_cesaro(black_box(0.75), x).unwrap())
        });
    }
    group.finish();
}

fn dense_vs_recurrence(c: &mut Criterion) {
    let n = 512;
    let x = random_seq(n, 2);
    let matrix = cesaro_matrix(0.75, n).unwrap();
    let mut group = c.benchmark_group("cesaro_512");
    group.bench_function("recurrence", |b| {
        b.iter(|| apply_cesaro(0.75, black_box(&x)).unwrap())
    });
    group.bench_function("matrix", |b| {
        b.iter(|| matrix.mul_vec(black_box(&x)).unwrap())
    });
    group.finish();
}

fn resolvent_and_convolution(c: &mut Criterion) {
    let n = 4096;
    let x = random_seq(n, 3);
    let mut kernel = vec![0.0; n];
    kernel[..8].copy_from_slice(&[1.0, 0.5, 0.25, 0.125, 0.1, 0.05, 0.02, 0.01]);
    let a = Seq::new(kernel).unwrap();
    c.bench_function("resolvent_4096_order_64", |b| {
        b.iter(|| apply_resolvent_partial(0.5, 64, black_box(&x)).unwrap())
    });
    c.bench_function("convolve_4096_support_8", |b| {
        b.iter(|| convolve(&a, black_box(&x)).unwrap())
    });
}

fn norm_search(c: &mut Criterion) {
    let opts = SearchOptions {
        budget: 500,
        ..SearchOptions::default()
    };
    let mut group = c.benchmark_group("norm_lower_bound_512");
    group.sample_size(10);
    for space in [
        SpaceSpec::Lp { p: 2.0 },
        SpaceSpec::Dp { p: 1.0 },
        SpaceSpec::CesP { p: 1.5 },
    ] {
        group.bench_function(space.to_string(), |b| {
            b.iter(|| {
                norm_lower_bound(&space, &OperatorSpec::CesaroT { t: 0.9 }, 512, &opts).unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    cesaro,
    dense_vs_recurrence,
    resolvent_and_convolution,
    norm_search
);
criterion_main!(benches);
