use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use monogenic::{apply_spinor, build_basis, rank, run_suite, spanning_set, BasisKind, Coordinates, Eps, Op};
use monogenic_bench::{b2, z2};

fn dirac(c: &mut Criterion) {
    let mut g = c.benchmark_group("dirac");
    for (name, ctx) in [("z2^3", z2(3, Eps::Minus)), ("b2", b2(Eps::Minus))] {
        let inputs = spanning_set(&ctx, 4);
        let op = Op::dirac(ctx.dim());
        g.bench_function(BenchmarkId::new("spanning set deg 4", name), |b| {
            b.iter(|| inputs.iter().map(|f| apply_spinor(&ctx, &op, f).unwrap()).collect::<Vec<_>>())
        });
    }
    g.finish();
}

fn bases(c: &mut Criterion) {
    let ctx = z2(3, Eps::Minus);
    let mut g = c.benchmark_group("basis");
    g.sample_size(10);
    for kind in [BasisKind::Maxwell, BasisKind::Ck, BasisKind::PartialZ] {
        for n in [2, 4] {
            g.bench_function(BenchmarkId::new(kind.to_string(), n), |b| b.iter(|| build_basis(&ctx, kind, n).unwrap()));
        }
    }
    g.finish();
}

fn linalg(c: &mut Criterion) {
    let ctx = z2(3, Eps::Minus);
    let basis = build_basis(&ctx, BasisKind::Maxwell, 5).unwrap();
    let coords = Coordinates::new(3, 5, ctx.spinor_size());
    let rows: Vec<_> = basis.elements.iter().map(|e| coords.vectorize(&e.poly).unwrap()).collect();
    c.bench_function("bareiss rank, M_5 of z2^3", |b| b.iter(|| rank(&rows).unwrap()));
}

fn suites(c: &mut Criterion) {
    let ctx = z2(2, Eps::Plus);
    let mut g = c.benchmark_group("suite");
    g.sample_size(10);
    for name in ["osp12", "kelvin", "section5-constants"] {
        g.bench_function(name, |b| b.iter(|| run_suite(&ctx, name, 3).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, dirac, bases, linalg, suites);
criterion_main!(benches);
