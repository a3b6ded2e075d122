//! Criterion benchmarks for the hot paths of the workbench: the order-4
//! census, rewriting to standard form, zero certification, and the full
//! decision procedure.

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use invsemi::decide::{self, System};
use invsemi::enumerate;
use invsemi::standard;
use invsemi::word::Word;
use invsemi::zero;
use invsemi_bench::{decision_pairs, mixed_nonzero_words};

fn bench_census(c: &mut Criterion) {
    c.bench_function("census order 3", |b| {
        b.iter(|| black_box(enumerate::census(black_box(3))))
    });
    c.bench_function("census order 4", |b| {
        b.iter(|| black_box(enumerate::census(black_box(4))))
    });
}

fn bench_normalize(c: &mut Criterion) {
    let words = mixed_nonzero_words();
    c.bench_function("normalize batch in a0", |b| {
        b.iter(|| {
            for w in &words {
                black_box(standard::normalize_a(black_box(w)).expect("nonzero fixture"));
            }
        })
    });
    c.bench_function("normalize batch in b0", |b| {
        b.iter(|| {
            for w in &words {
                // Some a0 fixtures collapse to zero under the extra b0 laws;
                // both outcomes are part of the measured path.
                match zero::b_zero_witness(black_box(w)).expect("scan succeeds") {
                    Some(wit) => {
                        black_box(wit);
                    }
                    None => {
                        black_box(standard::normalize_b(w).expect("nonzero under b0"));
                    }
                }
            }
        })
    });
}

fn bench_zero_evidence(c: &mut Criterion) {
    // The scan alone cannot certify this word; evidence needs rewriting.
    let deep = Word::parse("abcab*c").unwrap();
    c.bench_function("zero evidence beyond the scan (a0)", |b| {
        b.iter(|| {
            let cert = zero::a_zero_evidence(black_box(&deep)).expect("evidence succeeds");
            black_box(cert.expect("word is zero"))
        })
    });
}

fn bench_decide(c: &mut Criterion) {
    let pairs = decision_pairs();
    for system in [System::A0, System::B0] {
        c.bench_function(&format!("decide batch in {}", system.name()), |b| {
            b.iter(|| {
                for (l, r) in &pairs {
                    black_box(
                        decide::decide(system, black_box(l), black_box(r))
                            .expect("decision succeeds"),
                    );
                }
            })
        });
    }
}

criterion_group!(
    benches,
    bench_census,
    bench_normalize,
    bench_zero_evidence,
    bench_decide
);
criterion_main!(benches);
