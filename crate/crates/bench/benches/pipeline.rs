use criterion::{black_box, criterion_group, criterion_main, Criterion};
use fourbody_bench::coupling_ladder;
use fourbody_core::algebra::{derive_effective_hamiltonian, AlgebraConfig};
use fourbody_core::fock::{verify_four_body, verify_symbolic_engine, FourBodyConfig};
use fourbody_core::{
    derived_constants, gamma4, inverse_capacitance_numeric, random_circuits, CircuitParams,
};

fn circuit(c: &mut Criterion) {
    let p = CircuitParams::fig2();
    c.bench_function("derived_constants", |b| {
        b.iter(|| derived_constants(black_box(&p)).unwrap())
    });
    c.bench_function("gamma4", |b| b.iter(|| gamma4(black_box(&p)).unwrap()));
    c.bench_function("inverse_capacitance_exact", |b| {
        b.iter(|| inverse_capacitance_numeric(black_box(&p)).unwrap())
    });
    let circuits = random_circuits(3, 1000);
    c.bench_function("gamma4_1000_random", |b| {
        b.iter(|| circuits.iter().filter_map(|p| gamma4(p).ok()).count())
    });
}

fn algebra(c: &mut Criterion) {
    let mut group = c.benchmark_group("algebra");
    group.sample_size(10);
    group.bench_function("derive_effective_hamiltonian", |b| {
        b.iter(|| derive_effective_hamiltonian(&AlgebraConfig::default()).unwrap())
    });
    group.finish();
}

fn fock(c: &mut Criterion) {
    let mut group = c.benchmark_group("fock");
    group.sample_size(10);
    let single = FourBodyConfig {
        check_convergence: false,
        halvings: 0,
        ..FourBodyConfig::default()
    };
    for (i, p) in coupling_ladder().iter().enumerate() {
        group.bench_function(format!("four_body_fit_{i}"), |b| {
            b.iter(|| verify_four_body(p, &single).unwrap())
        });
    }
    group.bench_function("symbolic_engine_100", |b| {
        b.iter(|| verify_symbolic_engine(1, 100, 6, 3).unwrap())
    });
    group.finish();
}

criterion_group!(benches, circuit, algebra, fock);
criterion_main!(benches);
