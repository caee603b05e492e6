use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use factorq::circuit::{Control, Gate};
use factorq_bench::random_state;

const QUBITS: usize = 20;

fn gates(c: &mut Criterion) {
    let mut group = c.benchmark_group("gate-20q");
    group.sample_size(20);
    let cases = [
        ("h", Gate::h(7)),
        ("cx", Gate::cx(3, 12)),
        ("ccx", Gate::ccx(0, 19, 10)),
        ("ry", Gate::ry(0.7, vec![Control::on(2)], 5)),
        ("mcx-8", Gate::mcx((0..8).map(Control::off).collect(), 15)),
        ("mcz-19", Gate::mcz((0..19).map(Control::on).collect(), 19)),
        ("mark", Gate::mark("m", (0..10).collect(), (0..200u64).map(|v| v * 5))),
    ];
    let mut state = random_state(QUBITS, 1);
    for (name, gate) in cases {
        group.bench_with_input(BenchmarkId::from_parameter(name), &gate, |b, g| {
            b.iter(|| state.apply_gate(g).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, gates);
criterion_main!(benches);
