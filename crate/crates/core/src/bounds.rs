//! Weil, Ihara and DM-defect bounds, evaluated in exact arithmetic.
//!
//! Comparisons against sqrt(q) are done by squaring; the only transcendental
//! quantity (log q in the general genus bound) is enclosed from above by a
//! rational series bound.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intpoly::is_perfect_square;
use crate::json;

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

fn rat(n: BigInt, d: BigInt) -> BigRational {
    BigRational::new(n, d)
}

fn int_rat(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

/// (q+1 - floor(sqrt(4 g^2 q)), q+1 + floor(sqrt(4 g^2 q))).
pub fn weil_interval(q: i64, g: i64) -> (BigInt, BigInt) {
    let r = (big(4) * big(g) * big(g) * big(q)).sqrt();
    (big(q) + 1 - &r, big(q) + 1 + r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IharaBound {
    #[serde(serialize_with = "json::ser_int", deserialize_with = "json::de_int")]
    pub d: BigInt,
    #[serde(serialize_with = "json::ser_opt_int", deserialize_with = "json::de_opt_int")]
    pub exact_root: Option<BigInt>,
    #[serde(serialize_with = "json::ser_int", deserialize_with = "json::de_int")]
    pub floor_bound: BigInt,
}

/// D = (8q+1) g^2 + 4 q g (q-1).
pub fn ihara_discriminant(q: i64, g: i64) -> BigInt {
    let (q, g) = (big(q), big(g));
    (big(8) * &q + 1) * &g * &g + big(4) * &q * &g * (&q - 1)
}

/// N_1 <= q + 1 + (sqrt(D) - g) / 2, floored.
pub fn ihara_bound(q: i64, g: i64) -> IharaBound {
    let d = ihara_discriminant(q, g);
    let s = d.sqrt();
    let floor_bound = big(q) + 1 + (&s - big(g)).div_floor(&big(2));
    IharaBound {
        exact_root: is_perfect_square(&d),
        d,
        floor_bound,
    }
}

/// delta = 2 q g^2 - (N_1 - q - 1)^2 - g (N_2 - q^2 - 1).
pub fn dm_defect(q: i64, g: i64, n1: i64, n2: i64) -> BigInt {
    let (q, g) = (big(q), big(g));
    let m = big(n1) - &q - 1;
    big(2) * &q * &g * &g - &m * &m - &g * (big(n2) - &q * &q - 1)
}

/// 0 <= delta <= 4 q g^2, tightened to 4 q (g^2 - 1) for odd g.
pub fn defect_in_range(q: i64, g: i64, delta: &BigInt) -> bool {
    let (qb, gb) = (big(q), big(g));
    let top = if g % 2 == 1 {
        big(4) * &qb * (&gb * &gb - 1)
    } else {
        big(4) * &qb * &gb * &gb
    };
    !delta.is_negative() && *delta <= top
}

/// q^2 + 1 + 2 g q - (N_1 - q - 1)^2 / g.
pub fn dm_upper_n2(q: i64, g: i64, n1: i64) -> BigRational {
    let m = big(n1) - big(q) - 1;
    int_rat(big(q) * big(q) + 1 + big(2) * big(g) * big(q)) - rat(&m * &m, big(g))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// Lower bound on N_2 given N_1: q^2 + 1 - 2qg - m^2/g for even g and
/// q^2 + 1 - 2q(g - 2/g) - m^2/g for odd g, where m = N_1 - q - 1.
pub fn dm_lower_n2(q: i64, g: i64, n1: i64) -> (BigRational, Parity) {
    let m = big(n1) - big(q) - 1;
    let base = int_rat(big(q) * big(q) + 1) - rat(&m * &m, big(g));
    if g % 2 == 0 {
        (base - int_rat(big(2) * big(q) * big(g)), Parity::Even)
    } else {
        let spread = int_rat(big(g)) - rat(big(2), big(g));
        (base - int_rat(big(2) * big(q)) * spread, Parity::Odd)
    }
}

/// (lower, upper) bounds on a_2 given a_1 for a q-Weil L-polynomial.
pub fn a2_bounds(q: i64, g: i64, a1: i64) -> (BigRational, BigRational) {
    let mid = rat(big(g - 1) * big(a1) * big(a1), big(2 * g));
    let upper = &mid + int_rat(big(g) * big(q));
    let lower = if g % 2 == 0 {
        &mid - int_rat(big(g) * big(q))
    } else {
        &mid + rat((big(2) - big(g) * big(g)) * big(q), big(g))
    };
    (lower, upper)
}

/// (q + 1 + tau/g)^g.
pub fn ahl_bound(q: i64, g: i64, tau: i64) -> BigRational {
    let base = int_rat(big(q) + 1) + rat(big(tau), big(g));
    num_traits::pow(base, g as usize)
}

/// Upper enclosure of ln 2 + .. via ln x = 2 atanh((x-1)/(x+1)).
fn atanh_upper(z: &BigRational, terms: usize) -> BigRational {
    let z2 = z * z;
    let mut pw = z.clone();
    let mut sum = BigRational::zero();
    for i in 0..terms {
        sum += &pw / int_rat(big(2 * i as i64 + 1));
        pw = &pw * &z2;
    }
    // remaining terms are below z^{2N+1} / ((2N+1)(1 - z^2))
    let tail = &pw / (int_rat(big(2 * terms as i64 + 1)) * (BigRational::one() - &z2));
    sum + tail
}

/// A rational r with ln(q) <= r < ln(q) + 1e-20.
pub fn ln_upper(q: i64) -> BigRational {
    let k = 63 - q.leading_zeros() as i64;
    let x = rat(big(q), big(1) << k as usize);
    let third = rat(big(1), big(3));
    let ln2 = atanh_upper(&third, 40) * int_rat(big(2));
    let z = (&x - BigRational::one()) / (&x + BigRational::one());
    let lnx = atanh_upper(&z, 40) * int_rat(big(2));
    ln2 * int_rat(big(k)) + lnx
}

/// Rational enclosure lo <= sqrt(q) <= hi with hi - lo = 1e-15.
pub fn sqrt_enclosure(q: i64) -> (BigRational, BigRational) {
    let scale = num_traits::pow(big(10), 15);
    let s = (big(q) * &scale * &scale).sqrt();
    (rat(s.clone(), scale.clone()), rat(s + 1, scale))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GenusCase {
    /// 0 < c < 2 sqrt(q)
    #[serde(rename = "i")]
    Positive,
    /// c = 2 sqrt(q)
    #[serde(rename = "ii")]
    PlusTwoRootQ,
    /// c = -2 sqrt(q)
    #[serde(rename = "iii")]
    MinusTwoRootQ,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseBound {
    pub case: GenusCase,
    /// Largest genus allowed by the case bound.
    #[serde(serialize_with = "json::ser_int", deserialize_with = "json::de_int")]
    pub max_genus: BigInt,
    /// True when evaluated exactly rather than through a sqrt enclosure.
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusBoundReport {
    #[serde(serialize_with = "json::ser_int", deserialize_with = "json::de_int")]
    pub general: BigInt,
    pub case: Option<CaseBound>,
}

/// floor(23 q^2 ln q), using an upper enclosure of ln q so the result is
/// never too small.
pub fn general_genus_bound(q: i64) -> BigInt {
    (int_rat(big(23) * big(q) * big(q)) * ln_upper(q)).floor().to_integer()
}

/// The explicit case bound for a DM-curve with L = (1 + cT + qT^2)^g.
pub fn dm_genus_case_bound(q: i64, case: GenusCase) -> Result<CaseBound> {
    let root = is_perfect_square(&big(q));
    match case {
        GenusCase::Positive => {
            // g < (sqrt q + 1)^4 (q^2 + 1) / (2 q^2), increasing in sqrt q
            let v = |s: BigRational| {
                let t = s + BigRational::one();
                let t2 = &t * &t;
                &t2 * &t2 * rat(big(q) * big(q) + 1, big(2) * big(q) * big(q))
            };
            let (hi, exact) = match &root {
                Some(s) => (v(int_rat(s.clone())), true),
                None => (v(sqrt_enclosure(q).1), false),
            };
            Ok(CaseBound {
                case,
                max_genus: hi.ceil().to_integer() - 1,
                exact,
            })
        }
        GenusCase::PlusTwoRootQ | GenusCase::MinusTwoRootQ => {
            let s = root.ok_or(Error::CaseRequiresSquareQ(q))?;
            let bound = if case == GenusCase::PlusTwoRootQ {
                rat(big(q) - &s, big(2))
            } else {
                rat((&s + 1) * (&s + 1), big(2) * &s)
            };
            Ok(CaseBound {
                case,
                max_genus: bound.floor().to_integer(),
                exact: true,
            })
        }
    }
}

/// General bound plus whichever case applies to the L-coefficient `c`.
pub fn dm_genus_bounds(q: i64, c: i64) -> Result<GenusBoundReport> {
    let limit = (big(4) * big(q)).sqrt() + 1;
    if big(c).abs() > limit {
        return Err(Error::InvalidInput(format!(
            "|c| = {} exceeds floor(sqrt(4q)) + 1 = {limit}",
            c.abs()
        )));
    }
    let c2 = big(c) * big(c);
    let four_q = big(4) * big(q);
    let case = if c2 == four_q {
        Some(if c > 0 {
            GenusCase::PlusTwoRootQ
        } else {
            GenusCase::MinusTwoRootQ
        })
    } else if c > 0 && c2 < four_q {
        Some(GenusCase::Positive)
    } else {
        None
    };
    Ok(GenusBoundReport {
        general: general_genus_bound(q),
        case: case.map(|k| dm_genus_case_bound(q, k)).transpose()?,
    })
}

/// Everything the bounds module knows about a count pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectReport {
    pub q: i64,
    pub g: i64,
    pub n1: i64,
    pub n2: i64,
    #[serde(serialize_with = "json::ser_int", deserialize_with = "json::de_int")]
    pub delta: BigInt,
    pub delta_in_range: bool,
    #[serde(serialize_with = "json::ser_int", deserialize_with = "json::de_int")]
    pub weil_lo: BigInt,
    #[serde(serialize_with = "json::ser_int", deserialize_with = "json::de_int")]
    pub weil_hi: BigInt,
    #[serde(serialize_with = "json::ser_int", deserialize_with = "json::de_int")]
    pub ihara_d: BigInt,
    #[serde(serialize_with = "json::ser_opt_int", deserialize_with = "json::de_opt_int")]
    pub ihara_sqrt: Option<BigInt>,
    #[serde(serialize_with = "json::ser_int", deserialize_with = "json::de_int")]
    pub ihara_floor: BigInt,
    #[serde(serialize_with = "json::ser_rat", deserialize_with = "json::de_rat")]
    pub dm_upper_n2: BigRational,
    #[serde(serialize_with = "json::ser_opt_rat", deserialize_with = "json::de_opt_rat")]
    pub dm_lower_n2: Option<BigRational>,
    pub dm_lower_parity: Option<Parity>,
    #[serde(serialize_with = "json::ser_rat", deserialize_with = "json::de_rat")]
    pub ahl_rhs: BigRational,
}

/// Evaluate every bound for (q, g, N_1, N_2). The lower N_2 bound needs g >= 2.
pub fn defect_report(q: i64, g: i64, n1: i64, n2: i64) -> Result<DefectReport> {
    if g < 1 || q < 2 {
        return Err(Error::InvalidInput(format!("need q >= 2 and g >= 1, got q={q} g={g}")));
    }
    let (weil_lo, weil_hi) = weil_interval(q, g);
    let ih = ihara_bound(q, g);
    let delta = dm_defect(q, g, n1, n2);
    let lower = (g >= 2).then(|| dm_lower_n2(q, g, n1));
    Ok(DefectReport {
        q,
        g,
        n1,
        n2,
        delta_in_range: defect_in_range(q, g, &delta),
        delta,
        weil_lo,
        weil_hi,
        ihara_d: ih.d,
        ihara_sqrt: ih.exact_root,
        ihara_floor: ih.floor_bound,
        dm_upper_n2: dm_upper_n2(q, g, n1),
        dm_lower_parity: lower.as_ref().map(|l| l.1),
        dm_lower_n2: lower.map(|l| l.0),
        ahl_rhs: ahl_bound(q, g, n1 - q - 1),
    })
}
