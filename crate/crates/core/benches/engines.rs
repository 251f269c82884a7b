use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use invdeg_core::charts::{orbit_check, OrbitClaim};
use invdeg_core::degseq::{iterate_once, random_line, DegreeSequence, SequenceConfig};
use invdeg_core::par::Exec;
use invdeg_core::symspace::{Space, SubspaceSpec};

const STRATEGIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn bench_iterate(c: &mut Criterion) {
    let mut group = c.benchmark_group("iterate_once");
    let spec = SubspaceSpec::new(Space::Sym, 5);
    let line = random_line(spec, 2_305_843_009_213_693_951, 11).expect("generic line");
    let second = iterate_once(&line, Exec::Sequential).expect("generic line");
    for (name, exec) in STRATEGIES {
        group.bench_with_input(BenchmarkId::new(name, "q5_n2"), &second, |b, l| {
            b.iter(|| iterate_once(l, exec).unwrap())
        });
    }
    group.finish();
}

fn sequence(q: usize, n: usize, exec: Exec) -> DegreeSequence {
    let mut cfg = SequenceConfig::new(q, Space::Sym, n);
    cfg.exec = exec;
    invdeg_core::degseq::degree_sequence(&cfg).unwrap()
}

fn bench_sequence(c: &mut Criterion) {
    let mut group = c.benchmark_group("degree_sequence");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::new(name, "q4_n3"), |b| b.iter(|| sequence(4, 3, exec)));
    }
    group.finish();
}

fn bench_orbits(c: &mut Criterion) {
    let mut group = c.benchmark_group("orbit_check");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::new(name, "sigma11_q5"), |b| {
            b.iter(|| orbit_check(OrbitClaim::Sigma11, 5, 3, 4, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_iterate, bench_sequence, bench_orbits);
criterion_main!(benches);
