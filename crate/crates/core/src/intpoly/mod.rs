//! Exact polynomials over Z and Q, zeta-function bookkeeping (Newton
//! identities, functional equation) and the exact q-Weil test.

mod newton;
mod sturm;
mod weil;

pub use newton::{
    counts_to_power_sums, functional_equation_check, lpoly_to_counts, lpoly_to_profile,
    power_sums_to_lpoly,
};
pub use sturm::{count_real_roots, count_roots_in, sturm_sequence};
pub use weil::{is_q_weil, is_weil_lpoly, real_weil_transform, RealWeilPoly, WeilCertificate};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Polynomial with integer coefficients, low-to-high, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    c: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        IntPoly { c }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    /// Coefficient of T^i (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.c.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> BigInt {
        self.c.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.c.last().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.c
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, a| acc * x + a)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * BigInt::from(i))
                .collect(),
        )
    }

    /// T^d p(1/T) for d = deg p: the reciprocal polynomial.
    pub fn reverse(&self) -> Self {
        Self::new(self.c.iter().rev().cloned().collect())
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(self.c.iter().cloned().map(BigRational::from_integer).collect())
    }

    /// Exact quotient when `d` divides `self` in Z[T].
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.to_rat().divrem(&d.to_rat());
        if !r.is_zero() {
            return None;
        }
        q.to_int()
    }

    /// Decimal coefficients low-to-high.
    pub fn to_strings(&self) -> Vec<String> {
        self.c.iter().map(ToString::to_string).collect()
    }
}

/// `LX | LY` in Z[T].
pub fn divides(lx: &IntPoly, ly: &IntPoly) -> bool {
    if ly.is_zero() {
        return true;
    }
    ly.exact_div(lx).is_some()
}

/// The integer square root of `m` when `m` is a perfect square.
pub fn is_perfect_square(m: &BigInt) -> Option<BigInt> {
    if m.is_negative() {
        return None;
    }
    let r = m.sqrt();
    (&r * &r == *m).then_some(r)
}

/// `is_perfect_square` on machine integers.
pub fn perfect_square_i64(m: i64) -> Option<i64> {
    is_perfect_square(&BigInt::from(m)).and_then(|r| r.to_i64())
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntPoly {
    /// Human form in T, lowest degree first: `1 + 2T + 2T^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mag = a.abs();
            if first {
                if a.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if a.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "T")?,
                (1, false) => write!(f, "{mag}T")?,
                (_, true) => write!(f, "T^{i}")?,
                (_, false) => write!(f, "{mag}T^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, o: &IntPoly) -> IntPoly {
        let n = self.c.len().max(o.c.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, o: &IntPoly) -> IntPoly {
        let n = self.c.len().max(o.c.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.c.iter().map(|a| -a).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut r = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                r[i + j] += a * b;
            }
        }
        IntPoly::new(r)
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    /// Accepts decimal strings or JSON integers.
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: Vec<serde_json::Value> = Vec::deserialize(d)?;
        raw.iter()
            .map(|v| match v {
                serde_json::Value::String(s) => s.trim().parse::<BigInt>().map_err(|e| e.to_string()),
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| format!("non-integer coefficient {n}")),
                other => Err(format!("bad coefficient {other}")),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(IntPoly::new)
            .map_err(serde::de::Error::custom)
    }
}

/// Polynomial with rational coefficients, low-to-high, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RatPoly {
    c: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        RatPoly { c }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.c.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> BigRational {
        self.c.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.c
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, a| acc * x + a)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(self.c.iter().map(|a| -a).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::default();
        }
        let mut r = vec![BigRational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                r[i + j] += a * b;
            }
        }
        Self::new(r)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    /// # Panics
    /// On division by the zero polynomial.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.lead();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::default(), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let c = &r[i] / &lead;
            for (j, dj) in d.c.iter().enumerate() {
                let t = &c * dj;
                r[i - dd + j] -= t;
            }
            q[i - dd] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        Self::new(self.c.iter().map(|a| a / &l).collect())
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// p / gcd(p, p'), monic.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    /// Integer polynomial when every coefficient is integral.
    pub fn to_int(&self) -> Option<IntPoly> {
        self.c
            .iter()
            .map(|a| a.is_integer().then(|| a.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(IntPoly::new)
    }
}

pub(crate) fn pow_big(q: i64, e: usize) -> BigInt {
    num_traits::pow(BigInt::from(q), e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisibility() {
        let a = IntPoly::from_i64(&[1, 2, 2]);
        let b = IntPoly::from_i64(&[1, 1, 2]);
        assert!(divides(&a, &(&a * &b)));
        assert!(!divides(&a, &b));
        assert!(divides(&a, &a));
        // 2T + 2 divides 4T + 4 over Z but not 2T + 3
        assert!(divides(&IntPoly::from_i64(&[2, 2]), &IntPoly::from_i64(&[4, 4])));
        assert!(!divides(&IntPoly::from_i64(&[2, 4]), &IntPoly::from_i64(&[1, 2, 0])));
    }

    #[test]
    fn perfect_squares() {
        assert_eq!(perfect_square_i64(441), Some(21));
        assert_eq!(perfect_square_i64(15876), Some(126));
        assert_eq!(perfect_square_i64(17), None);
        assert_eq!(perfect_square_i64(0), Some(0));
        assert_eq!(perfect_square_i64(-4), None);
    }

    #[test]
    fn display_and_json() {
        let l = IntPoly::from_i64(&[1, -1, 3]);
        assert_eq!(l.to_string(), "1 - T + 3T^2");
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(s, r#"["1","-1","3"]"#);
        assert_eq!(serde_json::from_str::<IntPoly>(&s).unwrap(), l);
        assert_eq!(serde_json::from_str::<IntPoly>("[1,-1,3]").unwrap(), l);
    }

    #[test]
    fn squarefree_part_drops_repeated_roots() {
        // (x - 1)^2 (x + 2)
        let p = IntPoly::from_i64(&[2, -3, 0, 1]).to_rat();
        let sf = p.squarefree_part();
        assert_eq!(sf.to_int().unwrap(), IntPoly::from_i64(&[-2, 1, 1]));
    }
}
