use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use ramdiv::factor;
use ramdiv::gorenstein::{det_m_phi_bruteforce, det_m_phi_formula};
use ramdiv::ramification::normalize_local_model;
use ramdiv::snf::oracle_multiplicity;
use ramdiv_bench::{cocycle_and_phi, factor_input, frobenius};

fn factoring(c: &mut Criterion) {
    let mut g = c.benchmark_group("factor");
    for (p, k) in [(2, 6), (3, 6), (7, 8)] {
        let f = factor_input(p, k);
        g.bench_with_input(BenchmarkId::new(format!("p{p}"), f.deg()), &f, |b, f| {
            b.iter(|| factor(black_box(f)).unwrap())
        });
    }
    g.finish();
}

fn oracle(c: &mut Criterion) {
    let mut g = c.benchmark_group("oracle");
    g.sample_size(20);
    for (p, n) in [(2, 1), (3, 1), (2, 2), (2, 3), (3, 2)] {
        let (kd, v) = frobenius(p, n);
        let model = normalize_local_model(&kd, &v).unwrap();
        g.bench_function(format!("{p}^{n}"), |b| b.iter(|| oracle_multiplicity(black_box(&model)).unwrap()));
    }
    g.finish();
}

fn determinants(c: &mut Criterion) {
    let mut g = c.benchmark_group("det_m_phi");
    for (p, n) in [(2, 2), (3, 1), (2, 3), (3, 2)] {
        let (cocycle, phi) = cocycle_and_phi(p, n, 1);
        g.bench_function(format!("bruteforce {p}^{n}"), |b| {
            b.iter(|| det_m_phi_bruteforce(black_box(&cocycle), black_box(&phi)).unwrap())
        });
        g.bench_function(format!("formula {p}^{n}"), |b| {
            b.iter(|| det_m_phi_formula(black_box(&cocycle), black_box(&phi)).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, factoring, oracle, determinants);
criterion_main!(benches);
