use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use cinfer_core::catalog;
use cinfer_core::inference::{Engine, RuleSet};
use cinfer_core::SubsetMask;

fn closure(c: &mut Criterion) {
    let engine = Engine::xyzu(RuleSet::All);
    let ex1 = catalog::get("EX1").unwrap().induced_structure().unwrap().bits();
    c.bench_function("closure/all rules from EX1", |b| b.iter(|| engine.closure_bits(black_box(ex1 | 1 << 5))));
    let sg = Engine::xyzu(RuleSet::SemiGraphoid);
    c.bench_function("closure/semi-graphoid from EX1", |b| b.iter(|| sg.closure_bits(black_box(ex1 | 1 << 5))));
}

fn closed_scan(c: &mut Criterion) {
    let engine = Engine::xyzu(RuleSet::All);
    let mut g = c.benchmark_group("is_closed scan");
    g.sample_size(20);
    g.bench_function("first 65536 candidates", |b| {
        b.iter(|| (0u128..1 << 16).filter(|&s| engine.is_closed_bits(black_box(s))).count())
    });
    g.finish();
}

fn entropy(c: &mut Criterion) {
    for id in ["EX5", "CON7"] {
        let p = catalog::get(id).unwrap().distribution.unwrap();
        c.bench_function(&format!("entropy_function/{id}"), |b| b.iter(|| black_box(&p).entropy_function().unwrap()));
    }
}

fn is_ci(c: &mut Criterion) {
    let [x, y, z, u] = [0, 1, 2, 3].map(SubsetMask::singleton);
    for id in ["EX5", "CON7"] {
        let p = catalog::get(id).unwrap().distribution.unwrap();
        c.bench_function(&format!("is_ci/{id}"), |b| {
            b.iter(|| black_box(&p).is_ci(x, y, z.union(u)).unwrap())
        });
    }
    let p = catalog::get("CON7").unwrap().distribution.unwrap();
    c.bench_function("induced_ci_structure/CON7", |b| {
        b.iter_batched(|| p.clone(), |p| p.induced_ci_structure().unwrap(), BatchSize::SmallInput)
    });
}

criterion_group!(benches, closure, closed_scan, entropy, is_ci);
criterion_main!(benches);
