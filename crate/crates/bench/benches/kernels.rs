use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};

use cdala::glinf::{embed, Embedding, Window};
use cdala::highestweight::quasipoly_detect;
use cdala::sample;
use cdala::structure::{check_presentation, PresRanges, Presentation};
use cdala::weyl::{coinvariant_dim, CoinvGroup};
use cdala::{uce_bracket, CherElem, CherParams, CycScalar, ExtElem, MatElem, Ring, RingVariant, Route, TrigElem};

fn scalars(c: &mut Criterion) {
    let mut rng = sample::rng(1);
    let xs: Vec<CycScalar> = (0..64).map(|_| sample::scalar(&mut rng, 5)).collect();
    c.bench_function("cyclotomic mul+inv d=5", |b| {
        b.iter(|| {
            let mut acc = CycScalar::one(5);
            for x in &xs {
                acc = &(&acc * x) * &x.inv().unwrap();
            }
            black_box(acc)
        })
    });
}

fn smash(c: &mut Criterion) {
    let mut rng = sample::rng(2);
    let x = sample::smash(&mut rng, RingVariant::A, 3, 3, 8);
    let y = sample::smash(&mut rng, RingVariant::A, 3, 3, 8);
    c.bench_function("smash product d=3, 8x8 terms", |b| b.iter(|| black_box(x.mul(&y))));
}

fn uce(c: &mut Criterion) {
    let mut rng = sample::rng(3);
    let x = ExtElem::from_mat(sample::sl_matrix(&mut rng, 3, RingVariant::A, 2, 2, 4));
    let y = ExtElem::from_mat(sample::sl_matrix(&mut rng, 3, RingVariant::A, 2, 2, 4));
    let mut g = c.benchmark_group("uce bracket n=3 d=2");
    g.bench_function("direct", |b| b.iter(|| black_box(uce_bracket(&x, &y, Route::Direct).unwrap())));
    g.bench_function("morita", |b| b.iter(|| black_box(uce_bracket(&x, &y, Route::Morita).unwrap())));
    g.finish();
}

fn cherednik(c: &mut Criterion) {
    let d = 3;
    let p = Arc::new(CherParams::new(d, CycScalar::one(d), vec![CycScalar::from_int(d, 1), CycScalar::zeta_pow(d, 1)]).unwrap());
    let x = CherElem::monomial(&p, 3, 2, 1, CycScalar::one(d)).add(&CherElem::v(&p));
    let y = CherElem::monomial(&p, 1, 4, 2, CycScalar::one(d)).add(&CherElem::u(&p));
    c.bench_function("cherednik product d=3", |b| b.iter(|| black_box(x.mul(&y))));
}

fn presentation(c: &mut Criterion) {
    c.bench_function("DALA relations n=2 d=2 |r|<=1", |b| {
        b.iter(|| black_box(check_presentation(Presentation::Dala, 2, 2, &PresRanges::dala(1)).unwrap()))
    });
}

fn glinf(c: &mut Criterion) {
    let p = Arc::new(CherParams::weyl(2));
    let x = MatElem::unit(2, 0, 1, TrigElem::monomial(&p, 1, 2, 0, CycScalar::one(2)));
    let e = Embedding::Phi { a: CycScalar::from_int(2, 1), m: 2 };
    c.bench_function("phi_a^[2] embedding, window 80", |b| {
        b.iter(|| black_box(embed(&x, &e, Window::new(-40, 40)).unwrap()))
    });
}

fn recurrences(c: &mut Criterion) {
    let d = 1;
    let seq: Vec<CycScalar> = (0..24i64)
        .map(|r| CycScalar::from_int(d, r * r * 3i64.pow(r as u32 % 8) + (-2i64).pow(r as u32 % 8)))
        .collect();
    c.bench_function("quasipoly_detect, 24 terms, order <= 10", |b| {
        b.iter(|| black_box(quasipoly_detect(&seq, 10).unwrap()))
    });
}

fn coinvariants(c: &mut Criterion) {
    let mut g = c.benchmark_group("coinvariants");
    g.sample_size(10);
    g.bench_function("l=3 d=1", |b| {
        b.iter(|| black_box(coinvariant_dim(3, 1, 10, CoinvGroup::SymmetricOnly, 1_000_000).unwrap()))
    });
    g.bench_function("l=2 d=3 wreath", |b| {
        b.iter(|| black_box(coinvariant_dim(2, 3, 12, CoinvGroup::Wreath, 1_000_000).unwrap()))
    });
    g.finish();
}

criterion_group!(kernels, scalars, smash, uce, cherednik, presentation, glinf, recurrences, coinvariants);
criterion_main!(kernels);
