use criterion::{criterion_group, criterion_main, BatchSize, BenchmarkId, Criterion};
use factorq::oracles::build_gamma;
use factorq::search::{build_search_prep, Amplifier};
use factorq::{augment_apex, one_factorization, partition_edges, SearchSpaceSpec};
use factorq_bench::graph;

fn factorization(c: &mut Criterion) {
    let mut group = c.benchmark_group("factorization");
    for n in [8, 24, 64] {
        group.bench_with_input(BenchmarkId::new("complete", n), &n, |b, &n| b.iter(|| one_factorization(n).unwrap()));
    }
    let g = graph(64, 0.5, 3);
    group.bench_function("partition-g64", |b| b.iter(|| partition_edges(&g)));
    group.finish();
}

fn gamma_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("gamma-build");
    for n in [6, 10, 16] {
        let ag = augment_apex(&graph(n, 0.7, 5), 3).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &ag, |b, ag| b.iter(|| build_gamma(ag).unwrap()));
    }
    group.finish();
}

fn aa_round(c: &mut Criterion) {
    // n = 6, k = 4: 20 qubits including the workspace
    let (n, k) = (6, 4);
    let spec = SearchSpaceSpec::new(n, k).unwrap();
    let ag = augment_apex(&graph(n, 0.9, 7), k).unwrap();
    let oracle = build_gamma(&ag).unwrap();
    let amp = Amplifier::new(&build_search_prep(&spec).unwrap(), &oracle).unwrap();
    assert_eq!(amp.state().qubit_count(), 20);

    let mut group = c.benchmark_group("aa-round");
    group.sample_size(10);
    group.bench_function("gamma-20q", |b| b.iter_batched_ref(|| amp.clone(), |a| a.step().unwrap(), BatchSize::LargeInput));
    group.finish();
}

criterion_group!(benches, factorization, gamma_build, aa_round);
criterion_main!(benches);
