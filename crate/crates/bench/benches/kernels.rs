use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use dmcurve::curves::{count_points, Curve, CurveModel, PlaneTerm};
use dmcurve::ff::make_field;
use dmcurve::intpoly::{is_q_weil, IntPoly};
use dmcurve::search::genus2_dm_search;
use dmcurve::zeta::lpoly_from_counts;

fn field_mul(c: &mut Criterion) {
    for (p, n) in [(2, 8), (3, 13)] {
        let f = make_field(p, n, None).unwrap();
        let q = f.q();
        c.bench_function(&format!("mul F_{p}^{n}"), |b| {
            b.iter(|| {
                let mut acc = f.one();
                for x in 1..1000u64 {
                    acc = f.mul(acc, x % q);
                }
                black_box(acc)
            })
        });
    }
}

fn plane_count(c: &mut Criterion) {
    // x^4 + y^4 + z^4 over F_9, counted over F_{9^2}
    let f9 = make_field(3, 2, None).unwrap();
    let terms = [(4, 0, 0), (0, 4, 0), (0, 0, 4)].map(|(i, j, k)| PlaneTerm { c: 1, i, j, k });
    let curve = Curve { field: f9, model: CurveModel::SmoothPlane { terms: terms.to_vec() }, genus: 3 };
    c.bench_function("plane quartic N_2 over F_81", |b| b.iter(|| count_points(black_box(&curve), 2).unwrap()));
}

fn hyperelliptic_count(c: &mut Criterion) {
    let f13 = make_field(13, 1, None).unwrap();
    let curve = Curve { field: f13, model: CurveModel::hyperelliptic(vec![], vec![0, 12, 0, 0, 0, 1]), genus: 2 };
    c.bench_function("y^2 = x^5 - x, N_3 over F_13^3", |b| b.iter(|| count_points(black_box(&curve), 3).unwrap()));
}

fn weil_test(c: &mut Criterion) {
    let l = IntPoly::from_i64(&[1, 4, 8]).pow(14);
    let f = l.reverse();
    c.bench_function("q-Weil test, degree 28", |b| b.iter(|| is_q_weil(black_box(&f), 8).unwrap()));
    c.bench_function("L from counts, g = 3", |b| b.iter(|| lpoly_from_counts(4, 3, black_box(&[14, 14, 38])).unwrap()));
}

fn search(c: &mut Criterion) {
    let mut g = c.benchmark_group("genus-2 search");
    g.sample_size(10);
    for (p, n) in [(5, 1), (2, 2)] {
        let f = make_field(p, n, None).unwrap();
        g.bench_function(format!("F_{}", f.q()), |b| b.iter(|| genus2_dm_search(black_box(&f)).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, field_mul, plane_count, hyperelliptic_count, weil_test, search);
criterion_main!(benches);
