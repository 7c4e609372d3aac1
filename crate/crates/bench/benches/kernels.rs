use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ghwlab_core::cyclotomy::gauss_periods;
use ghwlab_core::ghw::{ghw_bruteforce, DEFAULT_GHW_BUDGET};
use ghwlab_core::{build_code, CyclotomyParams, DefiningSet, Family, FieldCtx, SkewSpec};

fn field_construction(c: &mut Criterion) {
    let mut g = c.benchmark_group("field");
    for (p, m) in [(3u64, 6u32), (5, 4), (7, 3), (101, 2)] {
        g.bench_with_input(
            BenchmarkId::from_parameter(format!("{p}^{m}")),
            &(p, m),
            |b, &(p, m)| b.iter(|| FieldCtx::new(black_box(p), black_box(m)).unwrap()),
        );
    }
    g.finish();
}

fn periods(c: &mut Criterion) {
    let ctx = FieldCtx::new(3, 8).unwrap();
    let mut g = c.benchmark_group("gauss_periods/q=6561");
    for e in [2u64, 16, 41, 160] {
        g.bench_with_input(BenchmarkId::from_parameter(e), &e, |b, &e| {
            b.iter(|| gauss_periods(&ctx, black_box(e)).unwrap())
        });
    }
    g.finish();
}

fn bruteforce(c: &mut Criterion) {
    let mut g = c.benchmark_group("ghw_bruteforce");
    g.sample_size(10);
    let cases = [
        ("q=729 A N=1", 3u64, 6u32, 1u64, Family::A, None, 2u32),
        ("q=243 C", 3, 5, 1, Family::C, Some(SkewSpec::Seeded(1)), 2),
        ("q=625 A N=1", 5, 4, 1, Family::A, None, 2),
    ];
    for (name, p, m, n, family, skew, r) in cases {
        let ctx = Arc::new(FieldCtx::new(p, m).unwrap());
        let params = CyclotomyParams::new(ctx, n).unwrap();
        let code = build_code(&DefiningSet::new(params, family, skew).unwrap());
        g.bench_function(format!("{name} r={r}"), |b| {
            b.iter(|| ghw_bruteforce(&code, black_box(r), DEFAULT_GHW_BUDGET * 100).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, field_construction, periods, bruteforce);
criterion_main!(benches);
