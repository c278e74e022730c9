//! Compares the two degreewise schedulers on the three workloads that
//! dominate a verification run: basis construction from a cold start,
//! Bockstein rank sweeps over warmed bases, and a full claim check.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::sync::Arc;

use bianchi::bockstein::e2_dims;
use bianchi::catalog::{self, Catalog};
use bianchi::exec::Exec;
use bianchi::gradedalg::AlgebraPresentation;
use bianchi::verify;

const RING: &str = "AfZtAf.mod2";

fn schedulers() -> [(&'static str, Exec); 2] {
    [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)]
}

fn shared_catalog() -> Catalog {
    catalog::builtin().expect("builtin catalog loads")
}

/// A presentation with empty basis caches, so each iteration pays the
/// full degreewise cost.
fn fresh_ring() -> Arc<AlgebraPresentation> {
    let src = catalog::builtin_sources()
        .iter()
        .find(|(id, _)| *id == RING)
        .map(|(id, text)| (id.to_string(), text.to_string()))
        .expect("ring source is shipped");
    let cat = catalog::load_from(&[src]).expect("single ring loads");
    cat.algebra(RING).expect("entry is an algebra")
}

fn bench_poincare_cold(c: &mut Criterion) {
    let mut group = c.benchmark_group("poincare-cold");
    group.sample_size(20);
    for (name, exec) in schedulers() {
        group.bench_function(name, |b| {
            b.iter_batched(fresh_ring, |a| a.poincare(18, exec), BatchSize::LargeInput)
        });
    }
    group.finish();
}

fn bench_sq1_ranks(c: &mut Criterion) {
    let cat = shared_catalog();
    let d = cat.derivation("AfZtAf.sq1").expect("derivation is shipped");
    d.algebra.poincare(21, Exec::Parallel);
    let mut group = c.benchmark_group("sq1-ranks-warm");
    for (name, exec) in schedulers() {
        group.bench_function(name, |b| b.iter(|| e2_dims(&d, 20, exec)));
    }
    group.finish();
}

fn bench_verify_claim(c: &mut Criterion) {
    let cat = shared_catalog();
    let id = "Gamma5.claim.int2";
    verify::verify_entry(&cat, id, 16, Exec::Parallel).expect("claim verifies");
    let mut group = c.benchmark_group("verify-claim-warm");
    for (name, exec) in schedulers() {
        group.bench_function(name, |b| {
            b.iter(|| verify::verify_entry(&cat, id, 16, exec).expect("claim verifies"))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_poincare_cold, bench_sq1_ranks, bench_verify_claim);
criterion_main!(benches);
