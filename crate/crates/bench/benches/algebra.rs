use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use mestre_core::exactalg::polyq::gcd;
use mestre_core::exactalg::rat::int;
use mestre_core::exactalg::{degree_pattern_certificate, factor_integer, FactorBudget, Poly};
use mestre_core::families::{euler_family_1728, twist_family};
use num_bigint::BigInt;

fn polynomials(c: &mut Criterion) {
    let a = Poly::from_i64s(&[3, -1, 4, 1, -5, 9, 2, -6, 5, 3, -5, 8, 9, -7, 9, 3, 2, -3, 8, 4, 1]);
    let b = Poly::from_i64s(&[2, 7, -1, 8, 2, -8, 1, 8, 2, 8, -4, 5, 9, 0, 4, 5, 2, 3, -5, 3, 1]);
    let common = Poly::from_i64s(&[1, 0, -2, 0, 0, 1, 7, 1]);
    let (ac, bc) = (&a * &common, &b * &common);
    c.bench_function("gcd_degree_27", |bn| bn.iter(|| gcd(black_box(&ac), black_box(&bc))));
    c.bench_function("degree_patterns_degree_20", |bn| {
        bn.iter(|| degree_pattern_certificate(black_box(&a), 200))
    });
}

fn integers(c: &mut Criterion) {
    // 1000000007 * 998244353 * 2^5
    let n: BigInt = "31943819519606735072".parse().unwrap();
    c.bench_function("factor_two_10_digit_primes", |bn| {
        bn.iter(|| factor_integer(black_box(&n), &FactorBudget::default()).unwrap())
    });
}

fn families(c: &mut Criterion) {
    let mut g = c.benchmark_group("family_build");
    g.sample_size(10);
    g.bench_function("twist_j5", |bn| bn.iter(|| twist_family(black_box(&int(5))).unwrap()));
    g.bench_function("euler_j1728", |bn| bn.iter(|| euler_family_1728().unwrap()));
    g.finish();
}

criterion_group!(benches, polynomials, integers, families);
criterion_main!(benches);
