use cesaro_bench::{random_seq, SIZES};
use cesaro_core::spaces::majorant;
use cesaro_core::{SpaceSpec, WeightSpec};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn norms(c: &mut Criterion) {
    let spaces = [
        SpaceSpec::Lp { p: 1.5 },
        SpaceSpec::CesP { p: 2.0 },
        SpaceSpec::CesInf,
        SpaceSpec::Dp { p: 2.0 },
        SpaceSpec::LpWeighted {
            p: 2.0,
            w: WeightSpec::Power(1.0),
        },
        SpaceSpec::Xpq { p: 2.0, q: 3.0 },
    ];
    for space in spaces {
        let mut group = c.benchmark_group(format!("norm/{space}"));
        for n in SIZES {
            let x = random_seq(n, 4);
            group.bench_with_input(BenchmarkId::from_parameter(n), &x, |b, x| {
                b.iter(|| space.norm(black_box(x)).unwrap())
            });
        }
        group.finish();
    }
}

fn majorants(c: &mut Criterion) {
    let mut group = c.benchmark_group("majorant");
    for n in SIZES {
        let x = random_seq(n, 5);
        group.bench_with_input(BenchmarkId::from_parameter(n), &x, |b, x| {
            b.iter(|| majorant(black_box(x)))
        });
    }
    group.finish();
}

criterion_group!(benches, norms, majorants);
criterion_main!(benches);
