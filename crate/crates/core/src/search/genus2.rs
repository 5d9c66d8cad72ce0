use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::bounds::dm_defect;
use crate::classify::{classify_counts, ClassificationVerdict};
use crate::curves::{validate_model_with, Curve, CurveModel, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::ff::{FieldDesc, FqPoly};
use crate::json::int_value;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Largest base field searched.
    pub max_q: u64,
    /// Keep only the first hits in sorted order.
    pub limit: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_q: 16,
            limit: None,
        }
    }
}

/// A genus-2 model with DM-defect 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchHit {
    pub curve: Curve,
    pub n1: i64,
    pub n2: i64,
    pub delta: BigInt,
    pub verdict: ClassificationVerdict,
}

impl SearchHit {
    pub fn to_json(&self) -> Value {
        json!({
            "model": self.curve.model.to_json(&self.curve.field),
            "counts": [self.n1, self.n2],
            "delta": int_value(&self.delta),
            "verdict": self.verdict,
        })
    }

    /// 2 alpha, with L = (1 - 2 alpha T + q T^2)^2.
    pub fn two_alpha(&self) -> i64 {
        self.verdict.two_alpha.unwrap_or_default()
    }
}

pub fn genus2_dm_search(field: &FieldDesc) -> Result<Vec<SearchHit>> {
    genus2_dm_search_with(field, &SearchOptions::default())
}

/// Every model of the normalized genus-2 family over `field` whose counts
/// (N_1, N_2) have DM-defect 0, sorted by serialized model.
///
/// Odd p: y^2 = f(x) with f squarefree, either monic of degree 5 or of
/// degree 6 with leading coefficient 1 or a fixed non-square; the
/// subleading coefficient is translated away when the degree is prime to p.
/// Even p: y^2 + h(x) y = f(x) with h monic of degree <= 3 and f running
/// over a complement of the F_2-subspace {s^2 + h s : deg s <= 3}.
pub fn genus2_dm_search_with(field: &FieldDesc, opts: &SearchOptions) -> Result<Vec<SearchHit>> {
    let q = field.try_q()?;
    if q > opts.max_q {
        return Err(Error::BudgetExceeded {
            requested: q.to_string(),
            budget: opts.max_q,
        });
    }
    let ctx = Ctx::new(field)?;
    let raw: Vec<(Vec<u64>, Vec<u64>, i64, i64)> = if field.p() == 2 {
        even_candidates(&ctx)
    } else {
        odd_candidates(&ctx)
    };
    let mut hits = Vec::with_capacity(raw.len());
    for (h, f, n1, n2) in raw {
        let curve = Curve {
            field: field.clone(),
            model: CurveModel::hyperelliptic(h, f),
            genus: 2,
        };
        if validate_model_with(&curve, 1, DEFAULT_BUDGET).is_err() {
            continue;
        }
        let qi = q as i64;
        hits.push(SearchHit {
            delta: dm_defect(qi, 2, n1, n2),
            verdict: classify_counts(qi, 2, n1, n2)?,
            curve,
            n1,
            n2,
        });
    }
    let mut keyed: Vec<(String, SearchHit)> = hits
        .into_iter()
        .map(|h| (h.curve.model.to_json(field).to_string(), h))
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    let mut hits: Vec<SearchHit> = keyed.into_iter().map(|(_, h)| h).collect();
    if let Some(n) = opts.limit {
        hits.truncate(n);
    }
    Ok(hits)
}

/// Field tables shared by the inner loops.
struct Ctx<'a> {
    field: &'a FieldDesc,
    big: FieldDesc,
    q: u64,
    /// base code -> code in F_{q^2}
    emb: Vec<u64>,
    chi1: Vec<i8>,
    chi2: Vec<i8>,
    mask1: u64,
    mask2: u64,
}

impl<'a> Ctx<'a> {
    fn new(field: &'a FieldDesc) -> Result<Self> {
        let q = field.q();
        let (big, emb) = field.extend(2)?;
        let odd = field.p() != 2;
        let table = |f: &FieldDesc| -> Result<Vec<i8>> {
            f.elements().map(|a| f.quadratic_character(a)).collect()
        };
        Ok(Ctx {
            q,
            emb: field.elements().map(|c| emb.map(c)).collect(),
            chi1: if odd { table(field)? } else { Vec::new() },
            chi2: if odd { table(&big)? } else { Vec::new() },
            mask1: if odd { 0 } else { field.trace_mask()? },
            mask2: if odd { 0 } else { big.trace_mask()? },
            field,
            big,
        })
    }

    fn lift(&self, c: &[u64]) -> Vec<u64> {
        c.iter().map(|&a| self.emb[a as usize]).collect()
    }

    /// The DM value of N_2 forced by N_1 for genus 2, if N_1 allows one.
    fn dm_target(&self, n1: i64) -> Option<i64> {
        let q = self.q as i64;
        let m = n1 - q - 1;
        (m % 2 == 0 && m * m <= 16 * q).then(|| q * q + 1 + 4 * q - m * m / 2)
    }
}

fn horner(f: &FieldDesc, c: &[u64], x: u64) -> u64 {
    c.iter().rev().fold(0, |acc, &a| f.add(f.mul(acc, x), a))
}

fn digits(mut idx: u64, q: u64, n: usize) -> Vec<u64> {
    (0..n)
        .map(|_| {
            let d = idx % q;
            idx /= q;
            d
        })
        .collect()
}

/// sum over x of #{y : y^2 = f(x)} plus the points above infinity.
fn odd_count(f: &FieldDesc, chi: &[i8], coeffs: &[u64], inf: i64) -> i64 {
    f.elements()
        .map(|x| 1 + chi[horner(f, coeffs, x) as usize] as i64)
        .sum::<i64>()
        + inf
}

fn odd_candidates(ctx: &Ctx) -> Vec<(Vec<u64>, Vec<u64>, i64, i64)> {
    let field = ctx.field;
    let (q, p) = (ctx.q, field.p());
    let nonsquare = field
        .elements()
        .find(|&a| ctx.chi1[a as usize] == -1)
        .expect("odd field has a non-square");
    // (degree, leading coefficient, subleading coefficient free?)
    let families = [(5usize, 1u64, p == 5), (6, 1, p == 3), (6, nonsquare, p == 3)];
    let mut out = Vec::new();
    for (deg, lead, sub_free) in families {
        let free = if sub_free { deg } else { deg - 1 };
        let total = q.pow(free as u32);
        let inf1 = if deg == 5 { 1 } else { 1 + ctx.chi1[lead as usize] as i64 };
        let inf2 = if deg == 5 { 1 } else { 2 };
        let found: Vec<_> = (0..total)
            .into_par_iter()
            .filter_map(|idx| {
                let mut f = digits(idx, q, free);
                f.resize(deg, 0);
                f.push(lead);
                let n1 = odd_count(field, &ctx.chi1, &f, inf1);
                let target = ctx.dm_target(n1)?;
                let n2 = odd_count(&ctx.big, &ctx.chi2, &ctx.lift(&f), inf2);
                if n2 != target || !FqPoly::new(field, f.clone()).is_squarefree() {
                    return None;
                }
                Some((Vec::new(), f, n1, n2))
            })
            .collect();
        out.extend(found);
    }
    out
}

/// Points on y^2 + h y = f over a field of characteristic 2, with the
/// genus-2 convention at infinity.
fn even_count(f: &FieldDesc, mask: u64, h: &[u64], c: &[u64]) -> i64 {
    let sols = |b: u64, cc: u64| -> i64 {
        if b == 0 {
            return 1;
        }
        let t = f.mul(cc, f.inv(f.square(b)).unwrap_or(0));
        if f.trace2(t, mask) == 0 {
            2
        } else {
            0
        }
    };
    let affine: i64 = f
        .elements()
        .map(|x| sols(horner(f, h, x), horner(f, c, x)))
        .sum();
    let at = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0);
    affine + sols(at(h, 3), at(c, 6))
}

/// Bit positions (of the 7n-bit packed f) spanning a complement of
/// {s^2 + h s : deg s <= 3} over F_2.
fn transversal_bits(field: &FieldDesc, h: &[u64]) -> Vec<u32> {
    let n = field.n();
    let pack = |poly: &FqPoly| -> u64 {
        poly.coeffs()
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &c)| acc | (c << (i * n)))
    };
    let hp = FqPoly::new(field, h.to_vec());
    let mut rows: Vec<u64> = Vec::new();
    for j in 0..4 {
        for b in 0..n {
            let mut s = vec![0u64; j + 1];
            s[j] = 1 << b;
            let s = FqPoly::new(field, s);
            let img = s.mul(&s).add(&hp.mul(&s));
            rows.push(pack(&img));
        }
    }
    // reduced echelon form; pivot = highest set bit
    let mut basis: Vec<u64> = Vec::new();
    for mut r in rows {
        for &b in &basis {
            let top = 63 - b.leading_zeros();
            if r >> top & 1 == 1 {
                r ^= b;
            }
        }
        if r != 0 {
            let top = 63 - r.leading_zeros();
            for b in basis.iter_mut() {
                if *b >> top & 1 == 1 {
                    *b ^= r;
                }
            }
            basis.push(r);
        }
    }
    let pivots: u64 = basis.iter().fold(0, |acc, b| acc | 1 << (63 - b.leading_zeros()));
    (0..(7 * n) as u32).filter(|&i| pivots >> i & 1 == 0).collect()
}

fn unpack(bits: u64, n: usize) -> Vec<u64> {
    (0..7).map(|i| (bits >> (i * n)) & ((1 << n) - 1)).collect()
}

fn even_candidates(ctx: &Ctx) -> Vec<(Vec<u64>, Vec<u64>, i64, i64)> {
    let field = ctx.field;
    let (q, n) = (ctx.q, field.n());
    let mut hs: Vec<Vec<u64>> = Vec::new();
    for d in 0..=3usize {
        for idx in 0..q.pow(d as u32) {
            let mut h = digits(idx, q, d);
            h.push(1);
            hs.push(h);
        }
    }
    hs.par_iter()
        .flat_map_iter(|h| {
            let free = transversal_bits(field, h);
            let h_big = ctx.lift(h);
            (0..1u64 << free.len()).filter_map(move |sel| {
                let bits = free
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| sel >> i & 1 == 1)
                    .fold(0u64, |acc, (_, &b)| acc | 1 << b);
                let f = unpack(bits, n);
                if h.len() < 4 && f[5] == 0 && f[6] == 0 {
                    return None;
                }
                let n1 = even_count(field, ctx.mask1, h, &f);
                let target = ctx.dm_target(n1)?;
                let n2 = even_count(&ctx.big, ctx.mask2, &h_big, &ctx.lift(&f));
                (n2 == target).then(|| (h.clone(), f, n1, n2))
            })
        })
        .collect()
}
