//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use dmcurve::curves::PlaneTerm;
use dmcurve::ff::FieldDesc;
use dmcurve::intpoly::IntPoly;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

/// All complex roots of `c[0] + c[1] z + .. + c[d] z^d` (Aberth iteration).
pub fn aberth_roots(c: &[f64]) -> Vec<Complex64> {
    let d = c.len() - 1;
    let lead = c[d];
    let a: Vec<f64> = c.iter().map(|x| x / lead).collect();
    let radius = 1.0 + a[..d].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(radius * 0.7, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / d as f64))
        .collect();
    let eval = |x: Complex64| {
        let (mut p, mut dp) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for &coef in a.iter().rev() {
            dp = dp * x + p;
            p = p * x + coef;
        }
        (p, dp)
    };
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..d)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            z[i] -= w;
            moved = moved.max(w.norm());
        }
        if moved < 1e-15 * radius {
            break;
        }
    }
    z
}

type Q = num_rational::BigRational;

fn trim(mut a: Vec<Q>) -> Vec<Q> {
    while a.last().is_some_and(|x| x.is_zero()) {
        a.pop();
    }
    a
}

/// Quotient and remainder of dense rational polynomials, low degree first.
fn divmod(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    if r.len() <= db {
        return (Vec::new(), trim(r));
    }
    let mut quo = vec![Q::zero(); r.len() - db];
    for i in (0..quo.len()).rev() {
        let c = &r[i + db] / &b[db];
        for (j, bj) in b.iter().enumerate() {
            r[i + j] = &r[i + j] - &c * bj;
        }
        quo[i] = c;
    }
    (trim(quo), trim(r))
}

/// f / gcd(f, f'): same roots as f, all simple.
pub fn squarefree_part(f: &IntPoly) -> Vec<f64> {
    let a: Vec<Q> = f.coeffs().iter().map(|c| Q::from_integer(c.clone())).collect();
    let da: Vec<Q> = a.iter().enumerate().skip(1).map(|(i, c)| c * Q::from_integer(i.into())).collect();
    let (mut x, mut y) = (a.clone(), trim(da));
    while !y.is_empty() {
        let r = divmod(&x, &y).1;
        x = y;
        y = r;
    }
    divmod(&a, &x).0.iter().map(|c| c.to_f64().unwrap()).collect()
}

/// Floating-point q-Weil decision: every root has modulus sqrt(q) within `tol`.
pub fn float_is_weil(f: &IntPoly, q: i64, tol: f64) -> bool {
    let s = (q as f64).sqrt();
    aberth_roots(&squarefree_part(f)).iter().all(|r| (r.norm() - s).abs() < tol)
}

/// prod (1 + b T + q T^2).
pub fn lpoly_from_bs(q: i64, bs: &[i64]) -> IntPoly {
    bs.iter()
        .fold(IntPoly::one(), |acc, &b| &acc * &IntPoly::from_i64(&[1, b, q]))
}

/// Integers b with b^2 <= 4q.
pub fn weil_traces(q: i64) -> Vec<i64> {
    let mut r = 0;
    while (r + 1) * (r + 1) <= 4 * q {
        r += 1;
    }
    (-r..=r).collect()
}

/// Every multiset of `g` entries of `items`, as sorted vectors.
pub fn multisets(items: &[i64], g: usize) -> Vec<Vec<i64>> {
    fn go(items: &[i64], g: usize, start: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == g {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            go(items, g, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, g, 0, &mut Vec::new(), &mut out);
    out
}

/// (N_1, N_2) of L = prod (1 + b_j T + q T^2): N_1 = q + 1 + sum b_j,
/// N_2 = q^2 + 1 - sum (b_j^2 - 2q).
pub fn counts_from_bs(q: i64, bs: &[i64]) -> (i64, i64) {
    let n1 = q + 1 + bs.iter().sum::<i64>();
    let n2 = q * q + 1 - bs.iter().map(|b| b * b - 2 * q).sum::<i64>();
    (n1, n2)
}

pub fn prime_powers(max: i64) -> Vec<i64> {
    (2..=max)
        .filter(|&q| {
            let p = (2..=q).find(|d| q % d == 0).unwrap();
            let mut r = q;
            while r % p == 0 {
                r /= p;
            }
            r == 1
        })
        .collect()
}

fn horner(f: &FieldDesc, c: &[u64], x: u64) -> u64 {
    c.iter().rev().fold(0, |acc, &a| f.add(f.mul(acc, x), a))
}

/// Points of y^2 + h y = f of genus g by a double loop over (x, y), plus the
/// solutions v of v^2 + h_{g+1} v = f_{2g+2} above infinity.
pub fn naive_hyperelliptic(field: &FieldDesc, h: &[u64], f: &[u64], g: usize) -> i64 {
    let sols = |b: u64, c: u64| {
        field
            .elements()
            .filter(|&v| field.add(field.mul(v, v), field.mul(b, v)) == c)
            .count() as i64
    };
    let affine: i64 = field
        .elements()
        .map(|x| sols(horner(field, h, x), horner(field, f, x)))
        .sum();
    let at = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
    affine + sols(at(h, g + 1), at(f, 2 * g + 2))
}

fn plane_eval(field: &FieldDesc, terms: &[PlaneTerm], x: u64, y: u64, z: u64) -> u64 {
    terms.iter().fold(0, |acc, t| {
        let m = field.mul(
            field.mul(field.pow(x, t.i as u64), field.pow(y, t.j as u64)),
            field.pow(z, t.k as u64),
        );
        field.add(acc, field.mul(t.c, m))
    })
}

/// Projective zeros of a plane curve by enumerating every point of P^2.
pub fn naive_plane(field: &FieldDesc, terms: &[PlaneTerm]) -> i64 {
    let mut n = 0;
    for x in field.elements() {
        for y in field.elements() {
            n += (plane_eval(field, terms, x, y, 1) == 0) as i64;
        }
        n += (plane_eval(field, terms, x, 1, 0) == 0) as i64;
    }
    n + (plane_eval(field, terms, 1, 0, 0) == 0) as i64
}
