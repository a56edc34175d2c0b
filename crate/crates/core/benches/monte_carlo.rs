use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use bdris::harness::{self, ExecutionMode, Experiment, ExperimentSpec};
use bdris::{linalg, takagi_factorize, ComplexMatrix, C64};

fn random_matrix(n: usize, seed: u64) -> ComplexMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ComplexMatrix::from_fn(n, n, |_, _| {
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        C64::new(re, im)
    })
}

fn factorizations(c: &mut Criterion) {
    let mut group = c.benchmark_group("factorization");
    group.sample_size(10);
    for n in [16usize, 64, 256] {
        let a = random_matrix(n, n as u64);
        let sym = a.add(&a.transpose()).unwrap();
        group.bench_with_input(BenchmarkId::new("svd", n), &a, |b, a| b.iter(|| linalg::svd(a).unwrap()));
        group.bench_with_input(BenchmarkId::new("takagi", n), &sym, |b, s| {
            b.iter(|| takagi_factorize(s).unwrap())
        });
    }
    group.finish();
}

fn sweep(c: &mut Criterion) {
    let mut spec = ExperimentSpec::new(Experiment::SnrGain, vec![16, 32, 64]);
    spec.group_sizes = vec![2, 4];
    spec.trials = 50;

    let mut group = c.benchmark_group("snr_gain_sweep");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| harness::run_snr_gain_with(&spec, ExecutionMode::Sequential).unwrap())
    });
    group.bench_function("parallel", |b| {
        b.iter(|| harness::run_snr_gain_with(&spec, ExecutionMode::Parallel { threads: None }).unwrap())
    });
    group.finish();
}

criterion_group!(benches, factorizations, sweep);
criterion_main!(benches);
