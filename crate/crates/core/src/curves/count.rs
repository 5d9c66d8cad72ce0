use num_bigint::BigUint;
use rayon::prelude::*;

use super::{Curve, CurveModel, PlaneTerm, PointCounts, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::ff::{FieldDesc, FqPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountOptions {
    /// Largest field (number of elements) that may be enumerated.
    pub budget: u64,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            budget: DEFAULT_BUDGET,
        }
    }
}

pub(crate) fn check_budget(field: &FieldDesc, k: u32, budget: u64) -> Result<()> {
    let order = field.order().pow(k);
    if order > BigUint::from(budget) {
        return Err(Error::BudgetExceeded {
            requested: order.to_string(),
            budget,
        });
    }
    Ok(())
}

/// Solutions v in F of v^2 + b v = c, via the quadratic character in odd
/// characteristic and the absolute trace in characteristic 2.
pub(crate) struct QuadraticCounter<'a> {
    field: &'a FieldDesc,
    chi: Option<&'a [i8]>,
    mask: u64,
    four: u64,
}

impl<'a> QuadraticCounter<'a> {
    pub(crate) fn new(field: &'a FieldDesc) -> Result<Self> {
        let even = field.p() == 2;
        Ok(QuadraticCounter {
            field,
            chi: if even { None } else { field.character_table() },
            mask: if even { field.trace_mask()? } else { 0 },
            four: field.from_int(4),
        })
    }

    #[inline]
    pub(crate) fn solutions(&self, b: u64, c: u64) -> i64 {
        let f = self.field;
        if f.p() == 2 {
            if b == 0 {
                return 1;
            }
            let t = f.mul(c, f.inv(f.square(b)).unwrap_or(0));
            return if f.trace2(t, self.mask) == 0 { 2 } else { 0 };
        }
        let disc = f.add(f.square(b), f.mul(self.four, c));
        let chi = match self.chi {
            Some(tab) => tab[disc as usize],
            None => f.quadratic_character(disc).unwrap_or(0),
        };
        1 + chi as i64
    }
}

fn eval(field: &FieldDesc, coeffs: &[u64], x: u64) -> u64 {
    coeffs
        .iter()
        .rev()
        .fold(0, |acc, &c| field.add(field.mul(acc, x), c))
}

fn hyperelliptic_count(field: &FieldDesc, h: &[u64], f: &[u64], genus: u32) -> Result<i64> {
    let quad = QuadraticCounter::new(field)?;
    let q = field.q();
    let affine: i64 = (0..q)
        .into_par_iter()
        .map(|x| quad.solutions(eval(field, h, x), eval(field, f, x)))
        .sum();
    let g = genus as usize;
    let b = h.get(g + 1).copied().unwrap_or(0);
    let c = f.get(2 * g + 2).copied().unwrap_or(0);
    Ok(affine + quad.solutions(b, c))
}

/// Distinct roots in `field` of the polynomial with these coefficients; the
/// zero polynomial vanishes everywhere.
fn distinct_roots(field: &FieldDesc, mut coeffs: Vec<u64>) -> i64 {
    while coeffs.last() == Some(&0) {
        coeffs.pop();
    }
    match coeffs.len() {
        0 => field.q() as i64,
        1 => 0,
        2 => 1,
        _ => FqPoly::new(field, coeffs).count_distinct_roots() as i64,
    }
}

fn powers(field: &FieldDesc, x: u64, n: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut cur = 1;
    for _ in 0..=n {
        out.push(cur);
        cur = field.mul(cur, x);
    }
    out
}

pub(crate) fn plane_degree(terms: &[PlaneTerm]) -> u32 {
    terms.iter().map(|t| t.i + t.j + t.k).max().unwrap_or(0)
}

fn plane_count(field: &FieldDesc, terms: &[PlaneTerm]) -> i64 {
    let d = plane_degree(terms) as usize;
    let q = field.q();
    let affine: i64 = (0..q)
        .into_par_iter()
        .map(|x| {
            let xp = powers(field, x, d);
            let mut col = vec![0u64; d + 1];
            for t in terms {
                col[t.j as usize] = field.add(col[t.j as usize], field.mul(t.c, xp[t.i as usize]));
            }
            distinct_roots(field, col)
        })
        .sum();
    // z = 0: points (x : 1 : 0), then (1 : 0 : 0)
    let mut line = vec![0u64; d + 1];
    let mut corner = 0u64;
    for t in terms.iter().filter(|t| t.k == 0) {
        line[t.i as usize] = field.add(line[t.i as usize], t.c);
        if t.j == 0 {
            corner = field.add(corner, t.c);
        }
    }
    affine + distinct_roots(field, line) + (corner == 0) as i64
}

fn artin_schreier_affine(field: &FieldDesc, lhs: &[(u64, u32)], rhs: &[(u64, u32, u32)]) -> i64 {
    let dy = lhs
        .iter()
        .map(|&(_, j)| j)
        .chain(rhs.iter().map(|&(_, _, j)| j))
        .max()
        .unwrap_or(0) as usize;
    let dx = rhs.iter().map(|&(_, i, _)| i).max().unwrap_or(0) as usize;
    let mut base = vec![0u64; dy + 1];
    for &(c, j) in lhs {
        base[j as usize] = field.add(base[j as usize], c);
    }
    (0..field.q())
        .into_par_iter()
        .map(|x| {
            let xp = powers(field, x, dx);
            let mut col = base.clone();
            for &(c, i, j) in rhs {
                col[j as usize] = field.sub(col[j as usize], field.mul(c, xp[i as usize]));
            }
            distinct_roots(field, col)
        })
        .sum()
}

/// N_k with the default budget.
pub fn count_points(curve: &Curve, k: u32) -> Result<i64> {
    count_points_with(curve, k, &CountOptions::default())
}

/// Number of points over F_{q^k} by exhaustive enumeration.
pub fn count_points_with(curve: &Curve, k: u32, opts: &CountOptions) -> Result<i64> {
    if k == 0 {
        return Err(Error::InvalidInput("extension degree must be >= 1".into()));
    }
    check_budget(&curve.field, k, opts.budget)?;
    let (big, emb) = curve.field.extend(k)?;
    let model = curve.model.map_coeffs(|c| emb.map(c));
    match &model {
        CurveModel::Hyperelliptic { h, f } => {
            if big.p() == 2 && h.is_empty() {
                return Err(Error::InvalidModel(
                    "y^2 = f(x) is inseparable in characteristic 2".into(),
                ));
            }
            hyperelliptic_count(&big, h, f, curve.genus)
        }
        CurveModel::SmoothPlane { terms } => Ok(plane_count(&big, terms)),
        CurveModel::ArtinSchreierLike { lhs, rhs, infinity } => {
            Ok(artin_schreier_affine(&big, lhs, rhs) + infinity.get(k) as i64)
        }
    }
}

/// (N_1, .., N_m) with the default budget.
pub fn count_profile(curve: &Curve, m: u32) -> Result<PointCounts> {
    count_profile_with(curve, m, &CountOptions::default())
}

pub fn count_profile_with(curve: &Curve, m: u32, opts: &CountOptions) -> Result<PointCounts> {
    let counts = (1..=m)
        .map(|k| count_points_with(curve, k, opts))
        .collect::<Result<Vec<_>>>()?;
    if counts.len() >= 2 && counts[0] > counts[1] {
        return Err(Error::ImpossibleCounts(format!(
            "N_1 = {} exceeds N_2 = {}",
            counts[0], counts[1]
        )));
    }
    let q = i64::try_from(curve.field.q())
        .map_err(|_| Error::FieldTooLarge(curve.field.order().to_string()))?;
    Ok(PointCounts { q, counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::InfinityCounts;
    use crate::ff::make_field;

    fn fermat(field: &FieldDesc, d: u32) -> Curve {
        let terms = vec![
            PlaneTerm { c: 1, i: d, j: 0, k: 0 },
            PlaneTerm { c: 1, i: 0, j: d, k: 0 },
            PlaneTerm { c: 1, i: 0, j: 0, k: d },
        ];
        Curve {
            field: field.clone(),
            model: CurveModel::SmoothPlane { terms },
            genus: (d - 1) * (d - 2) / 2,
        }
    }

    #[test]
    fn elliptic_over_f2() {
        let f2 = make_field(2, 1, None).unwrap();
        let c = Curve {
            field: f2,
            model: CurveModel::hyperelliptic(vec![1], vec![0, 1, 0, 1]),
            genus: 1,
        };
        assert_eq!(count_profile(&c, 2).unwrap().counts, vec![5, 5]);
    }

    #[test]
    fn hermitian_cubic_over_f4() {
        let f4 = make_field(2, 2, None).unwrap();
        assert_eq!(count_points(&fermat(&f4, 3), 1).unwrap(), 9);
    }

    #[test]
    fn suzuki_over_f8() {
        let f8 = make_field(2, 3, None).unwrap();
        let c = Curve {
            field: f8,
            model: CurveModel::ArtinSchreierLike {
                lhs: vec![(1, 8), (1, 1)],
                rhs: vec![(1, 10, 0), (1, 3, 0)],
                infinity: InfinityCounts::constant(1),
            },
            genus: 14,
        };
        assert_eq!(count_profile(&c, 2).unwrap().counts, vec![65, 65]);
    }

    #[test]
    fn budget_is_enforced() {
        let f4 = make_field(2, 2, None).unwrap();
        let err = count_points_with(&fermat(&f4, 3), 3, &CountOptions { budget: 63 }).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { budget: 63, .. }));
    }
}
