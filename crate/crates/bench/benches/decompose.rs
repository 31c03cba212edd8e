use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use mindec::decompose::{fine_decompose, sn_decompose, sn_newton_oracle};
use mindec::matfun::schwerdtfeger_eval;
use mindec::realclosed::{complete_mjc, svd};
use mindec_bench::{real_closed, structured, svd_inputs, test_polynomial};

fn additive(c: &mut Criterion) {
    let mut group = c.benchmark_group("sn");
    for order in [3, 4, 6] {
        let inputs = structured(order, 4);
        group.bench_with_input(BenchmarkId::new("covariants", order), &inputs, |b, ms| {
            b.iter(|| {
                for m in ms {
                    black_box(sn_decompose(black_box(m)).unwrap());
                }
            })
        });
        group.bench_with_input(BenchmarkId::new("newton", order), &inputs, |b, ms| {
            b.iter(|| {
                for m in ms {
                    black_box(sn_newton_oracle(black_box(m)).unwrap());
                }
            })
        });
        group.bench_with_input(BenchmarkId::new("fine", order), &inputs, |b, ms| {
            b.iter(|| {
                for m in ms {
                    black_box(fine_decompose(black_box(m)).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn functions(c: &mut Criterion) {
    let f = test_polynomial();
    let inputs = structured(5, 4);
    c.bench_function("schwerdtfeger/order5/deg10", |b| {
        b.iter(|| {
            for m in &inputs {
                black_box(schwerdtfeger_eval(&f, black_box(m)).unwrap());
            }
        })
    });
    c.bench_function("horner/order5/deg10", |b| {
        b.iter(|| {
            for m in &inputs {
                black_box(black_box(m).horner_eval(&f));
            }
        })
    });
}

fn real_closed_field(c: &mut Criterion) {
    let inputs = real_closed(4);
    c.bench_function("cmjc", |b| {
        b.iter(|| {
            for m in &inputs {
                black_box(complete_mjc(black_box(m)).unwrap());
            }
        })
    });
    let inputs = svd_inputs(3, 4);
    c.bench_function("svd/order3", |b| {
        b.iter(|| {
            for m in &inputs {
                black_box(svd(black_box(m)).unwrap());
            }
        })
    });
}

criterion_group!(benches, additive, functions, real_closed_field);
criterion_main!(benches);
