use criterion::{black_box, criterion_group, criterion_main, Criterion};

use ceptool_core::counting::count_extreme_ce;
use ceptool_core::cycle::{enumerate_cycle_patterns, staircase_example};
use ceptool_core::ergodic::{conditional_mean_residuals, sample, RotationParams};
use ceptool_core::game::example_game;
use ceptool_core::moments::{caratheodory_split, MomentBasis};
use ceptool_core::polytope::{ce_hrep, enumerate_vertices};

fn vertices(c: &mut Criterion) {
    let mut g = c.benchmark_group("vertex enumeration");
    g.sample_size(10);
    for n in [2, 3] {
        let p = ce_hrep(&example_game(n).unwrap());
        g.bench_function(format!("n = {n}"), |b| {
            b.iter(|| enumerate_vertices(black_box(&p)).unwrap())
        });
    }
    g.finish();
}

fn cycles(c: &mut Criterion) {
    let game = example_game(3).unwrap();
    c.bench_function("cycle patterns n = 3", |b| {
        b.iter(|| enumerate_cycle_patterns(black_box(&game)).unwrap())
    });
    c.bench_function("e(100)", |b| {
        b.iter(|| count_extreme_ce(black_box(100)).unwrap())
    });
}

fn rotation(c: &mut Criterion) {
    let p = RotationParams::standard();
    c.bench_function("residuals 16 bins x 10^4 points", |b| {
        b.iter(|| conditional_mean_residuals(black_box(&p), 16, 10_000).unwrap())
    });
    c.bench_function("sample 10^5", |b| {
        b.iter(|| sample(black_box(&p), 100_000, 1))
    });
}

fn moments(c: &mut Criterion) {
    let mu = staircase_example().measure();
    let basis = MomentBasis::by_degree(6).unwrap();
    c.bench_function("split 8 atoms, 6 moments", |b| {
        b.iter(|| caratheodory_split(black_box(&mu), &basis))
    });
}

criterion_group!(benches, vertices, cycles, rotation, moments);
criterion_main!(benches);
