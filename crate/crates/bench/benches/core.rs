use criterion::{black_box, criterion_group, criterion_main, Criterion};

use ekd_bench::{all, inputs};
use ekd_core::builders::eight;
use ekd_core::canonical::canonical_form;
use ekd_core::disks::{enumerate_disks, DiskOptions};
use ekd_core::moves::search_undercut;
use ekd_core::obstruction::{check_obstruction, DiagramPair, EqualityPolicy};
use ekd_core::{q, Sign};

fn canonical(c: &mut Criterion) {
    for (name, d) in inputs() {
        c.bench_function(&format!("canonical_form/{name}"), |b| {
            b.iter(|| canonical_form(black_box(&d)))
        });
    }
}

fn disks(c: &mut Criterion) {
    let opts = DiskOptions::default();
    for (name, d) in inputs() {
        c.bench_function(&format!("enumerate_disks/{name}"), |b| {
            b.iter(|| enumerate_disks(black_box(&d), &opts))
        });
    }
}

fn obstruction(c: &mut Criterion) {
    for (name, d) in inputs() {
        let pair = DiagramPair::new(d.clone(), d);
        c.bench_function(&format!("check_obstruction/{name}"), |b| {
            b.iter(|| check_obstruction(black_box(&pair), EqualityPolicy::CylinderSharp))
        });
    }
    let corpus = all();
    c.bench_function("check_obstruction/corpus_pairs", |b| {
        b.iter(|| {
            for x in &corpus {
                for y in &corpus {
                    black_box(check_obstruction(
                        &DiagramPair::new(x.clone(), y.clone()),
                        EqualityPolicy::CylinderSharp,
                    ));
                }
            }
        })
    });
}

fn search(c: &mut Criterion) {
    let a = eight(Sign::Plus, q(1)).unwrap();
    let b = eight(Sign::Plus, q(2)).unwrap();
    c.bench_function("search/eight_r0", |bn| {
        bn.iter(|| search_undercut(black_box(&a), &b, 2, 20_000))
    });
    let (_, t) = inputs().swap_remove(1);
    c.bench_function("search/trefoil_depth1_miss", |bn| {
        bn.iter(|| search_undercut(black_box(&t), &a, 1, 2_000))
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = canonical, disks, obstruction, search
}
criterion_main!(benches);
