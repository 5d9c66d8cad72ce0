use rayon::prelude::*;
use serde::Serialize;

use super::count::{check_budget, plane_degree};
use super::{Curve, CurveModel, PlaneTerm, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::ff::{FieldDesc, FqPoly};

/// Plane models are searched for singular points over F_{q^k}, k up to this.
pub const DEFAULT_SMOOTHNESS_DEPTH: u32 = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub kind: &'static str,
    pub genus: u32,
    /// Largest k for which F_{q^k} was searched exhaustively (plane models).
    pub smooth_up_to: Option<u32>,
    pub notes: Vec<String>,
}

pub fn validate_model(curve: &Curve) -> Result<ValidationReport> {
    validate_model_with(curve, DEFAULT_SMOOTHNESS_DEPTH, DEFAULT_BUDGET)
}

/// Check genus bookkeeping and smoothness. Hyperelliptic models are decided
/// exactly by gcd computations; plane models by exhaustive search over
/// F_{q^k} for k <= `depth`, skipping extensions larger than `budget`.
pub fn validate_model_with(curve: &Curve, depth: u32, budget: u64) -> Result<ValidationReport> {
    let field = &curve.field;
    let q = field.try_q()?;
    let coeffs_ok = match &curve.model {
        CurveModel::Hyperelliptic { h, f } => h.iter().chain(f).all(|&c| c < q),
        CurveModel::SmoothPlane { terms } => terms.iter().all(|t| t.c < q),
        CurveModel::ArtinSchreierLike { lhs, rhs, .. } => {
            lhs.iter().all(|t| t.0 < q) && rhs.iter().all(|t| t.0 < q)
        }
    };
    if !coeffs_ok {
        return Err(Error::InvalidModel(format!("coefficient outside {field}")));
    }
    let mut report = ValidationReport {
        kind: curve.model.kind(),
        genus: curve.genus,
        smooth_up_to: None,
        notes: Vec::new(),
    };
    match &curve.model {
        CurveModel::Hyperelliptic { h, f } => {
            let g = validate_hyperelliptic(field, h, f)?;
            if g != curve.genus {
                return Err(Error::InvalidModel(format!(
                    "model has genus {g}, declared {}",
                    curve.genus
                )));
            }
            report.notes.push("smooth (exact gcd criterion)".into());
        }
        CurveModel::SmoothPlane { terms } => {
            let d = plane_degree(terms);
            if terms.iter().any(|t| t.i + t.j + t.k != d) {
                return Err(Error::InvalidModel("plane model is not homogeneous".into()));
            }
            let g = (d.saturating_sub(1)) * (d.saturating_sub(2)) / 2;
            if g != curve.genus {
                return Err(Error::InvalidModel(format!(
                    "plane curve of degree {d} has genus {g}, declared {}",
                    curve.genus
                )));
            }
            let mut reached = 0;
            for k in 1..=depth {
                if check_budget(field, k, budget).is_err() {
                    break;
                }
                let (big, emb) = field.extend(k)?;
                let mapped: Vec<PlaneTerm> = terms
                    .iter()
                    .map(|t| PlaneTerm { c: emb.map(t.c), ..*t })
                    .collect();
                if let Some(point) = plane_singular_point(&big, &mapped) {
                    return Err(Error::SingularPointFound { k, point });
                }
                reached = k;
            }
            report.smooth_up_to = Some(reached);
            report
                .notes
                .push(format!("no singular point over F_{{q^k}}, k <= {reached}"));
        }
        CurveModel::ArtinSchreierLike { .. } => {
            report
                .notes
                .push("points at infinity are declared, not computed".into());
        }
    }
    Ok(report)
}

fn degree(v: &[u64]) -> Option<usize> {
    v.iter().rposition(|&c| c != 0)
}

/// Genus of a nonsingular `y^2 + h y = f`; errors when the model is singular.
fn validate_hyperelliptic(field: &FieldDesc, h: &[u64], f: &[u64]) -> Result<u32> {
    let hp = FqPoly::new(field, h.to_vec());
    let fp = FqPoly::new(field, f.to_vec());
    if field.p() != 2 {
        let d = hp.mul(&hp).add(&fp.scale(field.from_int(4)));
        let deg = d.degree().unwrap_or(0);
        if !d.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        if deg < 3 {
            return Err(Error::InvalidModel(format!("h^2 + 4f has degree {deg} < 3")));
        }
        return Ok((deg.div_ceil(2) - 1) as u32);
    }
    let Some(dh) = degree(h) else {
        return Err(Error::InvalidModel(
            "y^2 = f(x) is inseparable in characteristic 2".into(),
        ));
    };
    let df = degree(f).unwrap_or(0);
    let g = (dh.max(1) - 1).max(df.div_ceil(2).max(1) - 1);
    if g == 0 {
        return Err(Error::InvalidModel("model has genus 0".into()));
    }
    // affine chart, then the chart at infinity u = 1/x, v = y/x^{g+1}
    let rev = |v: &[u64], n: usize| {
        let mut r = v.to_vec();
        r.resize(n + 1, 0);
        r.reverse();
        FqPoly::new(field, r)
    };
    for (chart, hh, ff) in [
        ("affine", hp.clone(), fp.clone()),
        ("infinity", rev(h, g + 1), rev(f, 2 * g + 2)),
    ] {
        let dh = hh.derivative();
        let df = ff.derivative();
        let crit = dh.mul(&dh).mul(&ff).add(&df.mul(&df));
        let gcd = hh.gcd(&crit);
        if gcd.degree() != Some(0) {
            return Err(Error::SingularPointFound {
                k: smallest_root_extension(&gcd),
                point: format!("{chart} chart, x a root of {:?}", gcd.coeffs()),
            });
        }
    }
    Ok(g as u32)
}

/// Least k such that `p` has a root in F_{q^k} (0 for the zero polynomial).
fn smallest_root_extension(p: &FqPoly) -> u32 {
    let Some(d) = p.degree() else { return 0 };
    let field = p.field();
    let x = FqPoly::x(field);
    let mut cur = x.clone();
    for k in 1..=d.max(1) {
        cur = cur.powmod(field.q(), p);
        if p.gcd(&cur.sub(&x)).degree().unwrap_or(0) > 0 {
            return k as u32;
        }
    }
    d as u32
}

fn partial(terms: &[PlaneTerm], field: &FieldDesc, var: usize) -> Vec<PlaneTerm> {
    terms
        .iter()
        .filter_map(|t| {
            let e = [t.i, t.j, t.k][var];
            let c = field.mul(t.c, field.from_int((e as u64 % field.p()) as i64));
            if e == 0 || c == 0 {
                return None;
            }
            let mut d = *t;
            d.c = c;
            match var {
                0 => d.i -= 1,
                1 => d.j -= 1,
                _ => d.k -= 1,
            }
            Some(d)
        })
        .collect()
}

fn eval_at(field: &FieldDesc, terms: &[PlaneTerm], x: u64, y: u64, z: u64) -> u64 {
    terms.iter().fold(0, |acc, t| {
        let m = field.mul(
            field.mul(field.pow(x, t.i as u64), field.pow(y, t.j as u64)),
            field.pow(z, t.k as u64),
        );
        field.add(acc, field.mul(t.c, m))
    })
}

fn format_point(field: &FieldDesc, pt: [u64; 3]) -> String {
    let show = |c: u64| {
        if field.is_prime_field() {
            c.to_string()
        } else {
            format!("{:?}", field.coeffs(c))
        }
    };
    format!("({} : {} : {})", show(pt[0]), show(pt[1]), show(pt[2]))
}

/// A common projective zero of F and its three partials, if any.
fn plane_singular_point(field: &FieldDesc, terms: &[PlaneTerm]) -> Option<String> {
    let polys = [
        terms.to_vec(),
        partial(terms, field, 0),
        partial(terms, field, 1),
        partial(terms, field, 2),
    ];
    let d = plane_degree(terms) as usize;
    let affine = (0..field.q()).into_par_iter().find_map_first(|x| {
        let mut g = FqPoly::zero(field);
        for p in &polys {
            let mut col = vec![0u64; d + 1];
            for t in p {
                col[t.j as usize] = field.add(col[t.j as usize], field.mul(t.c, field.pow(x, t.i as u64)));
            }
            g = g.gcd(&FqPoly::new(field, col));
            if g.degree() == Some(0) {
                return None;
            }
        }
        let y = if g.is_zero() { Some(0) } else { g.roots().first().copied() }?;
        Some([x, y, 1])
    });
    let at_infinity = || {
        field
            .elements()
            .map(|x| [x, 1, 0])
            .chain(std::iter::once([1, 0, 0]))
            .find(|pt| polys.iter().all(|p| eval_at(field, p, pt[0], pt[1], pt[2]) == 0))
    };
    affine.or_else(at_infinity).map(|pt| format_point(field, pt))
}
