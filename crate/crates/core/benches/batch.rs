use contractio::batch::{check_batch, check_batch_sequential, par_map, seq_map, CheckOptions};
use contractio::groupmodel::contractivity_oracle;
use contractio::random::{random_group, random_matrix};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn groups(n: usize) -> Vec<contractio::groupmodel::ContractionGroup> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    (0..n).map(|_| random_group(&mut rng, 4)).collect()
}

fn bench_checks(c: &mut Criterion) {
    let opts = CheckOptions {
        samples: 20,
        max_root: 12,
        ..Default::default()
    };
    let mut grp = c.benchmark_group("check_batch");
    grp.sample_size(10);
    for n in [8usize, 32] {
        let gs = groups(n);
        grp.bench_with_input(BenchmarkId::new("parallel", n), &gs, |b, gs| {
            b.iter(|| check_batch(gs, opts))
        });
        grp.bench_with_input(BenchmarkId::new("sequential", n), &gs, |b, gs| {
            b.iter(|| check_batch_sequential(gs, opts))
        });
    }
    grp.finish();
}

fn bench_oracle(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mats: Vec<_> = (0..200).map(|i| (random_matrix(&mut rng, 1 + i % 4, 100), [2u64, 3, 5][i % 3])).collect();
    let mut grp = c.benchmark_group("contractivity_oracle");
    grp.sample_size(10);
    grp.bench_function("parallel", |b| {
        b.iter(|| par_map(&mats, |(a, p)| contractivity_oracle(a, *p, 40).ok()))
    });
    grp.bench_function("sequential", |b| {
        b.iter(|| seq_map(&mats, |(a, p)| contractivity_oracle(a, *p, 40).ok()))
    });
    grp.finish();
}

criterion_group!(benches, bench_checks, bench_oracle);
criterion_main!(benches);
