use std::sync::Arc;

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use finalg::algebra::Algebra;
use finalg::fields::FiniteField;
use finalg::liestruct::{lie_derived_series, theorem_2_2_evaluate, Limits};
use finalg::restricted::{klein, sweep_family, SweepFamily};
use finalg::unitgroup::UnitGroup;
use finalg_bench::random_elements;

fn gf(q: u32) -> FiniteField {
    FiniteField::gf(q).unwrap()
}

fn radical(c: &mut Criterion) {
    let t4 = Algebra::triangular(gf(3), 4);
    c.bench_function("radical/t4f3", |b| b.iter(|| black_box(&t4).radical().unwrap()));
    let m2 = Algebra::matrix(gf(4), 2);
    c.bench_function("radical_brute_oracle/m2f4", |b| b.iter(|| black_box(&m2).radical_brute_oracle(1 << 12).unwrap()));
}

fn units(c: &mut Criterion) {
    let m2f3 = Arc::new(Algebra::matrix(gf(3), 2));
    c.bench_function("units/gl2f3", |b| b.iter(|| UnitGroup::enumerate(m2f3.clone(), 1 << 16).unwrap()));
    let g = UnitGroup::enumerate(Arc::new(Algebra::matrix(gf(4), 2)), 1 << 16).unwrap();
    c.bench_function("derived_series/gl2f4", |b| b.iter(|| black_box(&g).derived_series()));
}

fn lie(c: &mut Criterion) {
    let m3 = Algebra::matrix(gf(5), 3);
    c.bench_function("lie_derived_series/m3f5", |b| b.iter(|| lie_derived_series(&m3, &m3.full_space())));
    let xs = random_elements(&Algebra::matrix(gf(4), 3), 0, 32);
    let m3f4 = Algebra::matrix(gf(4), 3);
    c.bench_function("jordan_chevalley/m3f4x32", |b| {
        b.iter(|| xs.iter().map(|x| m3f4.jordan_chevalley(x).unwrap()).collect::<Vec<_>>())
    });
}

fn restricted(c: &mut Criterion) {
    let l = klein();
    c.bench_function("build_u/klein", |b| b.iter(|| black_box(&l).build_u().unwrap()));
    let big = sweep_family(SweepFamily::F3D2).pop().unwrap();
    c.bench_function("build_u/f3-d2-last", |b| b.iter(|| black_box(&big).build_u().unwrap()));
    let u = big.build_u().unwrap();
    let mut group = c.benchmark_group("slow");
    group.sample_size(10);
    group.bench_function("thm2.2/u(L) over F3", |b| b.iter(|| theorem_2_2_evaluate(u.algebra(), &Limits::default())));
    group.bench_function("sweep/restricted-f2-d3", |b| b.iter(|| sweep_family(SweepFamily::F2D3).len()));
    group.finish();
}

criterion_group!(benches, radical, units, lie, restricted);
criterion_main!(benches);
