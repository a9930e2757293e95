use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crs_core::homology::h1_dehn_batch;
use crs_core::slopes::enumerate_configurations_with;
use crs_core::{ContactSurgeryDiagram, Exec, LegendrianComponent, SlopeQ};

fn diagrams(count: usize, size: usize) -> Vec<ContactSurgeryDiagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    (0..count)
        .map(|_| {
            let mut d = ContactSurgeryDiagram::new("bench");
            for i in 0..size {
                let c = if rng.gen_bool(0.5) { SlopeQ::ONE } else { SlopeQ::MINUS_ONE };
                d.push(LegendrianComponent::new(format!("K{i}"), rng.gen_range(-5..=-1), 0), c);
            }
            for i in 0..size {
                for j in i + 1..size {
                    d.linking.set(&format!("K{i}"), &format!("K{j}"), rng.gen_range(-3..=3)).unwrap();
                }
            }
            d
        })
        .collect()
}

fn strategies() -> [(&'static str, Exec); 2] {
    [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)]
}

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_configurations");
    g.sample_size(10);
    for (name, exec) in strategies() {
        g.bench_with_input(BenchmarkId::new(name, "3x3 w<=3"), &exec, |b, &exec| {
            b.iter(|| enumerate_configurations_with(black_box(3), black_box(3), 3, exec).len())
        });
    }
    g.finish();
}

fn homology(c: &mut Criterion) {
    let batch = diagrams(256, 12);
    let mut g = c.benchmark_group("h1_dehn_batch");
    g.sample_size(10);
    for (name, exec) in strategies() {
        g.bench_with_input(BenchmarkId::new(name, "256 x 12"), &exec, |b, &exec| {
            b.iter(|| h1_dehn_batch(black_box(&batch), exec).len())
        });
    }
    g.finish();
}

criterion_group!(benches, enumeration, homology);
criterion_main!(benches);
