//! Hot-path benchmarks: the two table builders, the bivariate series
//! expansions they are checked against, the single-variable series ring,
//! and the identity kernels that dominate `verify all`.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use qmoments_core::identities::{
    bailey_check, cs2_series, gf_mu_rhs, multisum_core, rank_pair, rs1_series, ChainWeight,
};
use qmoments_core::partitions::{table_ms2, table_ns1};
use qmoments_core::qfunctions::pochhammer_inf;

fn tables(c: &mut Criterion) {
    c.bench_function("table_ns1 N=6 nmax=40", |b| {
        b.iter(|| table_ns1(black_box(6), black_box(40)))
    });
    c.bench_function("table_ms2 N=6 nmax=40", |b| {
        b.iter(|| table_ms2(black_box(6), black_box(40)))
    });
}

fn series(c: &mut Criterion) {
    c.bench_function("rs1_series N=3 Q=16", |b| {
        b.iter(|| rs1_series(black_box(3), black_box(16)))
    });
    c.bench_function("cs2_series N=3 Q=16", |b| {
        b.iter(|| cs2_series(black_box(3), black_box(16)))
    });
    let p = pochhammer_inf(64);
    c.bench_function("qseries_mul Q=64", |b| b.iter(|| black_box(&p) * black_box(&p)));
    c.bench_function("qseries_invert Q=64", |b| {
        b.iter(|| black_box(&p).invert().unwrap())
    });
}

fn identity_kernels(c: &mut Criterion) {
    c.bench_function("multisum N=5 k=3 Q=30", |b| {
        b.iter(|| multisum_core(black_box(5), black_box(3), black_box(30), ChainWeight::PochFirst))
    });
    c.bench_function("gf_mu_rhs N=5 nu=2 Q=30", |b| {
        b.iter(|| gf_mu_rhs(black_box(5), black_box(2), black_box(30)))
    });
    let pair = rank_pair();
    c.bench_function("bailey_check rank nmax=8 Q=24", |b| {
        b.iter(|| bailey_check(black_box(&pair), black_box(8), black_box(24)))
    });
}

criterion_group!(kernels, tables, series, identity_kernels);
criterion_main!(kernels);
