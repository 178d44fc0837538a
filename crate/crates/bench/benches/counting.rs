use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vest_core::{
    count_mk_dp, mk_bruteforce, Budget, FieldTag, Matrix, Scalar, Vector, VestInstance,
};

fn random_instance(seed: u64, p: u64, d: usize, m: usize) -> VestInstance {
    let tag = FieldTag::prime(p).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut scalar = || Scalar::from_i64(tag, rng.gen_range(0..p as i64));
    let transforms = (0..m)
        .map(|_| Matrix::from_entries(tag, d, d, (0..d * d).map(|_| scalar()).collect()).unwrap())
        .collect();
    let s = Matrix::from_entries(tag, 1, d, (0..d).map(|_| scalar()).collect()).unwrap();
    let v = Vector::new(tag, (0..d).map(|_| scalar()).collect()).unwrap();
    VestInstance::vector_zero(tag, transforms, Some(s), v).unwrap()
}

fn dp_versus_brute(c: &mut Criterion) {
    let inst = random_instance(1, 2, 3, 4);
    let mut group = c.benchmark_group("z2_d3_m4");
    for k in [4usize, 6, 8] {
        group.bench_with_input(BenchmarkId::new("dp", k), &k, |b, &k| {
            b.iter(|| count_mk_dp(&inst, k).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("brute", k), &k, |b, &k| {
            b.iter(|| mk_bruteforce(&inst, k, Budget::UNLIMITED).unwrap())
        });
    }
    group.finish();
}

fn dp_long_sequences(c: &mut Criterion) {
    let inst = random_instance(2, 2, 3, 10);
    c.bench_function("dp_z2_d3_m10_k50", |b| {
        b.iter(|| count_mk_dp(&inst, 50).unwrap())
    });
}

criterion_group!(benches, dp_versus_brute, dp_long_sequences);
criterion_main!(benches);
