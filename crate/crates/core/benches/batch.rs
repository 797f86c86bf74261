use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use augalex::algebra::UniPoly;
use augalex::augment::{find_generating_cycles, solve_augmentation_family, Branch};
use augalex::dga::builtin_dga;
use augalex::extract::{builtin_augpoly, roundtrip_suite, transform_sweep};
use augalex::groebner::Budget;
use augalex::novikov::{check_suite, NovikovData};
use augalex::par::Execution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn novikov_batch(rng: &mut ChaCha8Rng, n: usize) -> Vec<NovikovData> {
    let mut m = |r: usize, c: usize| -> Vec<Vec<i64>> {
        (0..r).map(|_| (0..c).map(|_| rng.gen_range(-3..=3)).collect()).collect()
    };
    (0..n).map(|_| NovikovData { psi_f: m(3, 3), psi_c: m(3, 3), eta: m(3, 3), d0: m(3, 3) }).collect()
}

fn delta_batch(rng: &mut ChaCha8Rng, n: usize) -> Vec<UniPoly> {
    (0..n)
        .map(|_| {
            let mut c: Vec<i64> = (0..=8).map(|_| rng.gen_range(-5..=5)).collect();
            c[0] = 1 - c[1..].iter().sum::<i64>();
            if c[0] == 0 {
                c[0] = 1;
                c[1] -= 1;
            }
            UniPoly::from_ints("mu", &c)
        })
        .collect()
}

fn batches(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let novikov = novikov_batch(&mut rng, 32);
    let deltas = delta_batch(&mut rng, 32);
    let aug = builtin_augpoly("rh_trefoil").unwrap();
    let dga = builtin_dga("rh_trefoil").unwrap();
    let fam = solve_augmentation_family(&dga, Branch::M, &Budget::unlimited()).unwrap().remove(0);

    let mut g = c.benchmark_group("batch");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new("novikov_check_suite", name), &exec, |b, &e| {
            b.iter(|| check_suite(black_box(&novikov), 12, e))
        });
        g.bench_with_input(BenchmarkId::new("roundtrip_suite", name), &exec, |b, &e| {
            b.iter(|| roundtrip_suite(black_box(&deltas), e))
        });
        g.bench_with_input(BenchmarkId::new("transform_sweep", name), &exec, |b, &e| {
            b.iter(|| transform_sweep(black_box(&aug), -2..=2, e))
        });
        g.bench_with_input(BenchmarkId::new("generating_cycles", name), &exec, |b, &e| {
            b.iter(|| find_generating_cycles(black_box(&dga), &fam, e).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, batches);
criterion_main!(benches);
