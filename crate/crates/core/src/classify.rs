//! DM / DS / Ihara-maximal / Weil predicates and the classification of
//! genus-2 DM Jacobians.
//!
//! Sign convention: a DM-curve of genus g has L(T) = (1 - 2 alpha T + q T^2)^g
//! with 2 alpha = (q + 1 - N_1) / g. The genus-2 classifier takes the
//! L-coefficient c = -2 alpha, i.e. L = (1 + cT + qT^2)^2, whose Jacobian
//! has characteristic polynomial (T^2 + cT + q)^2.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::bounds::{dm_defect, ihara_discriminant};
use crate::error::{Error, Result};
use crate::ff::prime_poly::is_prime;
use crate::intpoly::{divides, is_perfect_square, perfect_square_i64, IntPoly};
use crate::zeta::LPolynomial;

/// Flags for a count pair. Serializes to the verdict schema
/// `{"ds", "dm", "ihara_max", "weil_max", "weil_min", "two_alpha"?, "genus2_cases"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationVerdict {
    pub ds: bool,
    pub dm: bool,
    pub ihara_max: bool,
    pub weil_max: bool,
    pub weil_min: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub two_alpha: Option<i64>,
    pub genus2_cases: Vec<String>,
    #[serde(skip)]
    pub dm_lpoly: Option<IntPoly>,
    #[serde(skip)]
    pub notes: Vec<String>,
}

/// `p^n = q` when q is a prime power.
pub fn prime_power(q: i64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let q = q as u64;
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut n = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        n += 1;
    }
    (r == 1 && is_prime(p)).then_some((p, n))
}

/// Classify the counts (N_1, N_2) of a genus-g curve over F_q.
pub fn classify_counts(q: i64, g: i64, n1: i64, n2: i64) -> Result<ClassificationVerdict> {
    if g < 1 || q < 2 {
        return Err(Error::InvalidInput(format!("need q >= 2 and g >= 1, got q={q} g={g}")));
    }
    if n1 > n2 {
        return Err(Error::ImpossibleCounts(format!("N_1 = {n1} > N_2 = {n2}")));
    }
    let delta = dm_defect(q, g, n1, n2);
    let top = BigInt::from(4 * q) * g * g;
    if delta.is_negative() || delta > top {
        return Err(Error::ImpossibleCounts(format!(
            "DM-defect {delta} outside [0, {top}]"
        )));
    }
    let dm = delta == BigInt::from(0);
    let mut notes = Vec::new();
    let (mut two_alpha, mut dm_lpoly_val) = (None, None);
    if dm {
        let l = dm_lpoly(q, g, n1).map_err(|e| match e {
            Error::NotDivisible { .. } | Error::NotWeil(_) => {
                Error::ImpossibleCounts(format!("DM-defect 0 but {e}"))
            }
            other => other,
        })?;
        two_alpha = Some((q + 1 - n1) / g);
        dm_lpoly_val = Some(l.poly);
    }
    let ds = n1 == n2;
    let (weil_max, weil_min) = match perfect_square_i64(4 * g * g * q) {
        Some(r) => (n1 - q - 1 == r, n1 - q - 1 == -r),
        None => {
            notes.push("4g^2q is not a square: Weil bound not attainable".into());
            (false, false)
        }
    };
    let genus2_cases = match (g, two_alpha, prime_power(q)) {
        (2, Some(ta), Some((p, n))) => genus2_jacobian_classify(p, n, -ta)
            .cases
            .into_iter()
            .map(|c| c.label)
            .collect(),
        _ => Vec::new(),
    };
    Ok(ClassificationVerdict {
        ds,
        dm,
        ihara_max: dm && ds,
        weil_max,
        weil_min,
        two_alpha,
        genus2_cases,
        dm_lpoly: dm_lpoly_val,
        notes,
    })
}

/// (1 - 2 alpha T + q T^2)^g with 2 alpha = (q + 1 - N_1) / g.
pub fn dm_lpoly(q: i64, g: i64, n1: i64) -> Result<LPolynomial> {
    let m = q + 1 - n1;
    if g < 1 || m % g != 0 {
        return Err(Error::NotDivisible { divisor: g, value: m });
    }
    let two_alpha = m / g;
    if two_alpha * two_alpha > 4 * q {
        return Err(Error::NotWeil(format!("|2 alpha| = {} > 2 sqrt({q})", two_alpha.abs())));
    }
    LPolynomial::power_of_quadratic(q, -two_alpha, g as u32)
}

/// `Some(c)` when `l = (1 + cT + qT^2)^g` with g = deg/2.
pub fn dm_shape(l: &IntPoly, q: i64) -> Option<i64> {
    let g = l.degree()? / 2;
    if g == 0 {
        return None;
    }
    let (c, r) = l.coeff(1).div_rem(&BigInt::from(g));
    if r != BigInt::from(0) {
        return None;
    }
    let c = i64::try_from(c).ok()?;
    (IntPoly::from_i64(&[1, c, q]).pow(g as u32) == *l).then_some(c)
}

/// L_X | L_Y, and when Y has DM shape (1 + cT + qT^2)^{g_Y}, X has the same
/// shape with the same c.
pub fn check_covering_consistency(lx: &IntPoly, ly: &IntPoly, q: i64) -> bool {
    if !divides(lx, ly) {
        return false;
    }
    match dm_shape(ly, q) {
        Some(c) => {
            let gx = lx.degree().unwrap_or(0) / 2;
            IntPoly::from_i64(&[1, c, q]).pow(gx as u32) == *lx
        }
        None => true,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum JacobianStructure {
    SimpleSupersingular,
    SplitOrdinary,
    SplitSupersingular,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchedCase {
    pub label: String,
    pub structure: JacobianStructure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Genus2JacobianClass {
    pub p: u64,
    pub n: u32,
    pub a: i64,
    pub verdict: bool,
    pub cases: Vec<MatchedCase>,
}

/// Which conditions put (T^2 + aT + q)^2, q = p^n, among the characteristic
/// polynomials of Jacobians of genus-2 DM-curves. Every case condition is
/// evaluated as stated; all matches are returned.
pub fn genus2_jacobian_classify(p: u64, n: u32, a: i64) -> Genus2JacobianClass {
    use JacobianStructure::*;
    let pi = p as i128;
    let q = pi.pow(n);
    let a = a as i128;
    let abs = a.abs();
    let even = n.is_multiple_of(2);
    let half = if even { pi.pow(n / 2) } else { -1 };
    // a = +-sqrt(m), requiring m to be a perfect square
    let is_pm_root = |m: i128| {
        let r = (m as f64).sqrt() as i128;
        (r.saturating_sub(1)..=r + 1).any(|s| s >= 0 && s * s == m && abs == s)
    };
    let mut cases = Vec::new();
    let mut hit = |label: &str, s: JacobianStructure| {
        cases.push(MatchedCase {
            label: label.into(),
            structure: s,
        })
    };

    if even && p % 4 == 1 && a == 0 {
        hit("1.1", SimpleSupersingular);
    }
    if even && p % 3 == 1 && is_pm_root(q) {
        hit("1.2", SimpleSupersingular);
    }
    if a * a <= 4 * q && a.gcd(&pi) == 1 && ![-3, -4, -7].contains(&(a * a - 4 * q)) {
        hit("2", SplitOrdinary);
    }
    if p == 2 && n > 1 {
        if !even && a == 0 {
            hit("3.1.i", SplitSupersingular);
        }
        if !even && is_pm_root(2 * q) {
            hit("3.1.ii", SplitSupersingular);
        }
        if even && a == 0 {
            hit("3.1.iii", SplitSupersingular);
        }
        if even && abs == half {
            hit("3.1.iv", SplitSupersingular);
        }
        if even && n >= 4 && abs == 2 * half {
            hit("3.1.v", SplitSupersingular);
        }
    }
    if p == 3 {
        if n >= 3 && !even && a == 0 {
            hit("3.2.i", SplitSupersingular);
        }
        if even && (a == 0 || abs == half || (abs == 2 * half && n >= 4)) {
            hit("3.2.ii", SplitSupersingular);
        }
    }
    if p > 3 {
        if even && abs == 2 * half {
            hit("3.3.i", SplitSupersingular);
        }
        if even && p % 3 != 1 && abs == half {
            hit("3.3.ii", SplitSupersingular);
        }
        if !even && a == 0 {
            hit("3.3.iii", SplitSupersingular);
        }
        if even && p % 4 != 1 && a == 0 {
            hit("3.3.iv", SplitSupersingular);
        }
    }
    Genus2JacobianClass {
        p,
        n,
        a: a as i64,
        verdict: !cases.is_empty(),
        cases,
    }
}

/// The three characterizations of Ihara-maximality, evaluated separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IharaEquivalence {
    /// N_1 equals q + 1 + (sqrt(D) - g)/2 with D a square of g's parity.
    pub attains_bound: bool,
    /// DM and DS.
    pub dm_and_ds: bool,
    /// 2 alpha = (g - sqrt(D)) / (2g) is an integer and the counts are those
    /// of (1 - 2 alpha T + q T^2)^g.
    pub zeta_shape: bool,
}

impl IharaEquivalence {
    pub fn agree(&self) -> bool {
        self.attains_bound == self.dm_and_ds && self.dm_and_ds == self.zeta_shape
    }
}

pub fn ihara_equiv_check(q: i64, g: i64, n1: i64, n2: i64) -> IharaEquivalence {
    let d = ihara_discriminant(q, g);
    let root = is_perfect_square(&d).and_then(|s| i64::try_from(s).ok());
    let attains_bound = root.is_some_and(|s| (s - g) % 2 == 0 && n1 == q + 1 + (s - g) / 2);
    let dm_and_ds = n1 == n2 && dm_defect(q, g, n1, n2) == BigInt::from(0);
    let zeta_shape = root.is_some_and(|s| {
        let num = g - s;
        if num % (2 * g) != 0 {
            return false;
        }
        // L = (1 - bT + qT^2)^g has N_1 = q + 1 - g b, N_2 = q^2 + 1 - g (b^2 - 2q)
        let b = num / (2 * g);
        n1 == q + 1 - g * b && n2 == q * q + 1 - g * (b * b - 2 * q)
    });
    IharaEquivalence {
        attains_bound,
        dm_and_ds,
        zeta_shape,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(p: u64, n: u32, a: i64) -> Vec<String> {
        genus2_jacobian_classify(p, n, a)
            .cases
            .into_iter()
            .map(|c| c.label)
            .collect()
    }

    #[test]
    fn verdict_examples() {
        let v = classify_counts(3, 2, 2, 20).unwrap();
        assert!(v.dm && !v.ds && !v.ihara_max && !v.weil_max && !v.weil_min);
        assert_eq!(v.two_alpha, Some(1));
        assert_eq!(v.dm_lpoly, Some(IntPoly::from_i64(&[1, -1, 3]).pow(2)));
        let v = classify_counts(4, 3, 14, 14).unwrap();
        assert!(v.dm && v.ds && v.ihara_max);
        let v = classify_counts(9, 3, 28, 28).unwrap();
        assert!(v.ihara_max && v.weil_max);
    }

    #[test]
    fn impossible_counts() {
        assert!(matches!(classify_counts(3, 2, 5, 4), Err(Error::ImpossibleCounts(_))));
        // delta = 2*3*4 - 0 - 2*(100 - 10) < 0
        assert!(matches!(classify_counts(3, 2, 4, 100), Err(Error::ImpossibleCounts(_))));
    }

    #[test]
    fn dm_lpoly_examples() {
        let l = dm_lpoly(49, 2, 36).unwrap();
        assert_eq!(l.poly, IntPoly::from_i64(&[1, -7, 49]).pow(2));
        let l = dm_lpoly(8, 14, 65).unwrap();
        assert_eq!(l.poly, IntPoly::from_i64(&[1, 4, 8]).pow(14));
        assert_eq!(
            dm_lpoly(3, 2, 3).unwrap_err(),
            Error::NotDivisible { divisor: 2, value: 1 }
        );
    }

    #[test]
    fn coverings() {
        let ly = IntPoly::from_i64(&[1, -1, 3]).pow(2);
        assert!(check_covering_consistency(&IntPoly::from_i64(&[1, -1, 3]), &ly, 3));
        assert!(!check_covering_consistency(&IntPoly::from_i64(&[1, 1, 3]), &ly, 3));
        let e = IntPoly::from_i64(&[1, 2, 2]);
        let ly = &e * &IntPoly::from_i64(&[1, 1, 2]);
        assert!(check_covering_consistency(&e, &ly, 2));
    }

    #[test]
    fn genus2_examples() {
        assert_eq!(labels(7, 2, -7), vec!["1.2"]);
        assert_eq!(labels(7, 2, 7), vec!["1.2"]);
        assert_eq!(labels(5, 1, 2), vec!["2"]);
        assert_eq!(labels(2, 2, 0), vec!["3.1.iii"]);
        for a in -2..=2 {
            assert!(labels(2, 1, a).is_empty(), "a = {a}");
        }
        let c = genus2_jacobian_classify(7, 2, -7);
        assert_eq!(c.cases[0].structure, JacobianStructure::SimpleSupersingular);
        // n odd, p = 2: a = +-sqrt(2q) = +-4 over F_8
        assert_eq!(labels(2, 3, 4), vec!["3.1.ii"]);
    }

    #[test]
    fn ihara_equivalence_examples() {
        let e = ihara_equiv_check(4, 3, 14, 14);
        assert!(e.attains_bound && e.dm_and_ds && e.zeta_shape);
        let e = ihara_equiv_check(3, 2, 2, 20);
        assert!(!e.attains_bound && !e.dm_and_ds && !e.zeta_shape);
        let e = ihara_equiv_check(2, 1, 5, 5);
        assert!(e.attains_bound && e.dm_and_ds && e.zeta_shape && e.agree());
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
