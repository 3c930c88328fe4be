use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use eisenkron::exact_algebra::TruncatedSeries;
use eisenkron::zeta::{local_integral_torus_sum, random_regular_params, zeta_gj_torus_sum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn series_inverse(c: &mut Criterion) {
    let mut group = c.benchmark_group("series_invert");
    for order in [8, 16, 32] {
        let coeffs: Vec<i64> = (1..=order as i64 + 1).map(|k| if k % 3 == 0 { -k } else { k }).collect();
        let s = TruncatedSeries::from_ints(&coeffs, 3, order);
        group.bench_with_input(BenchmarkId::from_parameter(order), &s, |b, s| b.iter(|| s.invert().unwrap()));
    }
    group.finish();
}

fn torus_sums(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut group = c.benchmark_group("torus_sums");
    group.sample_size(10);
    for n in [2, 3] {
        let params = random_regular_params(n, 3, &mut rng).unwrap();
        group.bench_function(format!("gj/n{n}/N8"), |b| b.iter(|| zeta_gj_torus_sum(&params, 8).unwrap()));
        group.bench_function(format!("local/m{n}/n{n}/N8"), |b| b.iter(|| local_integral_torus_sum(n, &params, 8).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, series_inverse, torus_sums);
criterion_main!(benches);
