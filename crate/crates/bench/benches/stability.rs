use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use nrgit_core::linalg::{QMatrix, QVector};
use nrgit_core::polyhedra::{self, PointSet};
use nrgit_core::quiver::{self, RankVector, StabilityParam};
use nrgit_core::rational::Rational;
use nrgit_core::rng::SplitMix64;
use nrgit_core::torus::{self, TorusRep};

fn bench_hull_membership(c: &mut Criterion) {
    let mut rng = SplitMix64::new(1);
    let points: Vec<QVector> = (0..8)
        .map(|_| {
            QVector::from_ints(&[
                rng.next_int(-5, 5),
                rng.next_int(-5, 5),
                rng.next_int(-5, 5),
            ])
        })
        .collect();
    let set = PointSet::new(3, points).unwrap();
    let query = QVector::new(vec![
        Rational::new(1, 3),
        Rational::new(-1, 2),
        Rational::new(2, 5),
    ]);
    c.bench_function("hull_membership_dim3_8pts", |b| {
        b.iter(|| polyhedra::in_convex_hull(black_box(&query), black_box(&set)).unwrap())
    });
}

fn bench_kernel(c: &mut Criterion) {
    let mut rng = SplitMix64::new(2);
    let data: Vec<Rational> = (0..144).map(|_| rng.next_rational(9, 7)).collect();
    let m = QMatrix::new(12, 12, data).unwrap();
    c.bench_function("rank_and_kernel_12x12", |b| {
        b.iter(|| {
            let m = black_box(&m);
            (m.rank(), m.kernel_basis().len())
        })
    });
}

fn bench_torus_checks(c: &mut Criterion) {
    let rep = TorusRep::from_int_weights(
        3,
        &[
            &[1, 0, -1],
            &[0, 1, 1],
            &[-1, 2, 0],
            &[2, -1, 1],
            &[0, 0, -2],
        ],
    )
    .unwrap();
    let v = QVector::from_ints(&[1, 1, 1, 1, 1]);
    let rho = QVector::from_ints(&[1, -1, 1]);
    c.bench_function("torus_twisted_semistable", |b| {
        b.iter(|| torus::is_rho_ss(black_box(&rep), black_box(&v), black_box(&rho)).unwrap())
    });
    c.bench_function("torus_brute_oracle_b4", |b| {
        b.iter(|| {
            torus::hm_brute_oracle(black_box(&rep), black_box(&v), black_box(&rho), 4).unwrap()
        })
    });
    c.bench_function("torus_twisted_stable", |b| {
        b.iter(|| torus::is_rho_stable(black_box(&rep), black_box(&v), black_box(&rho)).unwrap())
    });
}

fn bench_quiver_checks(c: &mut Criterion) {
    let shape = quiver::cycle2_quiver();
    let rho = StabilityParam::from_slice(&shape, &[1, -1]).unwrap();
    let phi = quiver::cycle2_rep(
        Rational::from_int(1),
        Rational::new(1, 2),
        Rational::from_int(2),
        Rational::new(-1, 3),
    );
    c.bench_function("cycle2_moduli_membership", |b| {
        b.iter(|| quiver::qss_membership(black_box(&phi), black_box(&rho)).unwrap())
    });
    c.bench_function("cycle2_reductive_automorphisms", |b| {
        b.iter(|| quiver::nontrivial_aut_reductive(black_box(&phi)).unwrap())
    });
    let rank = RankVector::toric(&shape);
    c.bench_function("cycle2_graded_chart", |b| {
        b.iter(|| quiver::quiver_to_graded_rep(black_box(&shape), 2, black_box(&rank)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_hull_membership,
    bench_kernel,
    bench_torus_checks,
    bench_quiver_checks
);
criterion_main!(benches);
