use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use gradus::{
    asymptotic_antiderivative, compare_order, differentiate, eval_log, parse,
    verify_antiderivative_numeric, verify_order_numeric, Frame, SampleGrid,
};

const INPUTS: [&str; 4] = [
    "log(x)",
    "x^(5/2)*log(x)^3*log(log(x))^-1",
    "3*exp(x^2-x/2)*x^-7",
    "exp(log(log(x))/2)*x^(1/1000)",
];

fn bench_parse(c: &mut Criterion) {
    c.bench_function("parse", |b| {
        b.iter(|| {
            for s in INPUTS {
                black_box(parse(black_box(s), Frame::Infinity).unwrap());
            }
        })
    });
}

fn bench_compare(c: &mut Criterion) {
    let ms: Vec<_> = INPUTS.iter().map(|s| parse(s, Frame::Infinity).unwrap().value).collect();
    c.bench_function("compare_order", |b| {
        b.iter(|| {
            for x in &ms {
                for y in &ms {
                    black_box(compare_order(x, y));
                }
            }
        })
    });
}

fn bench_differentiate(c: &mut Criterion) {
    let es: Vec<_> = INPUTS.iter().map(|s| parse(s, Frame::Infinity).unwrap()).collect();
    c.bench_function("differentiate", |b| {
        b.iter(|| {
            for e in &es {
                black_box(differentiate(e));
            }
        })
    });
}

fn bench_eval_log(c: &mut Criterion) {
    let m = parse(INPUTS[2], Frame::Infinity).unwrap().value;
    c.bench_function("eval_log", |b| b.iter(|| eval_log(&m, black_box(1e6)).unwrap()));
}

fn bench_antiderivative(c: &mut Criterion) {
    let y = parse("3*x^-5*u^2*exp(-2/x^3)", Frame::ZeroPlus).unwrap();
    c.bench_function("asymptotic_antiderivative", |b| {
        b.iter(|| asymptotic_antiderivative(black_box(&y)).unwrap())
    });
}

fn bench_numeric(c: &mut Criterion) {
    let a = parse("log(log(x))", Frame::Infinity).unwrap().value;
    let b = parse("log(x)", Frame::Infinity).unwrap().value;
    let grid = SampleGrid::geometric(Frame::Infinity, 10.0, 1e250, 12)
        .unwrap()
        .clamped(&[&a, &b])
        .unwrap();
    c.bench_function("verify_order_numeric", |bench| {
        bench.iter(|| verify_order_numeric(&a, &b, &grid))
    });

    let y = parse("x^-2*exp(-1/x)", Frame::ZeroPlus).unwrap();
    let r = asymptotic_antiderivative(&y).unwrap();
    let xs = [0.2, 0.1, 0.05, 0.01, 1e-3];
    c.bench_function("verify_antiderivative_numeric", |bench| {
        bench.iter(|| verify_antiderivative_numeric(&y, &r, &xs).unwrap())
    });
}

criterion_group!(
    benches,
    bench_parse,
    bench_compare,
    bench_differentiate,
    bench_eval_log,
    bench_antiderivative,
    bench_numeric
);
criterion_main!(benches);
