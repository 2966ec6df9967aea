use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use upnum_bench::{minimal_up_workload, pascal_workload, up_workload, FULL_ORDER_PRIMES};
use upnum_core::oracle::moore_minimize;
use upnum_core::upcheck::condense;
use upnum_core::{is_up_minimal, minimize, recognize_pascal_quotient};

fn criterion_check(c: &mut Criterion) {
    let mut group = c.benchmark_group("is_up_minimal");
    group.sample_size(20);
    for p in FULL_ORDER_PRIMES {
        let dfa = minimal_up_workload(p, 100, 7);
        group.throughput(Throughput::Elements(dfa.state_count() as u64));
        group.bench_with_input(BenchmarkId::from_parameter(dfa.state_count()), &dfa, |b, d| {
            b.iter(|| is_up_minimal(d))
        });
    }
    group.finish();
}

fn condensation(c: &mut Criterion) {
    let mut group = c.benchmark_group("condense");
    group.sample_size(20);
    for p in FULL_ORDER_PRIMES {
        let dfa = minimal_up_workload(p, 100, 7);
        group.throughput(Throughput::Elements(dfa.state_count() as u64));
        group.bench_with_input(BenchmarkId::from_parameter(dfa.state_count()), &dfa, |b, d| {
            b.iter(|| condense(d))
        });
    }
    group.finish();
}

fn recognition(c: &mut Criterion) {
    let mut group = c.benchmark_group("recognize_pascal_quotient");
    group.sample_size(20);
    for p in FULL_ORDER_PRIMES {
        let dfa = pascal_workload(p, 7);
        group.throughput(Throughput::Elements(dfa.state_count() as u64));
        group.bench_with_input(BenchmarkId::from_parameter(dfa.state_count()), &dfa, |b, d| {
            b.iter(|| recognize_pascal_quotient(d).unwrap())
        });
    }
    group.finish();
}

fn minimization(c: &mut Criterion) {
    let mut group = c.benchmark_group("minimize");
    group.sample_size(10);
    for p in [29u64, 53, 101] {
        let dfa = up_workload(p, 100, 7);
        group.throughput(Throughput::Elements(dfa.state_count() as u64));
        group.bench_with_input(BenchmarkId::new("hopcroft", dfa.state_count()), &dfa, |b, d| {
            b.iter(|| minimize(d))
        });
        if p <= 53 {
            group.bench_with_input(BenchmarkId::new("moore", dfa.state_count()), &dfa, |b, d| {
                b.iter(|| moore_minimize(d))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, criterion_check, condensation, recognition, minimization);
criterion_main!(benches);
