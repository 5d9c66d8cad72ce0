//! L-polynomials recovered from point counts, and exact alpha statistics.
//!
//! alpha_j denotes the real part of the j-th Frobenius eigenvalue, so that
//! L(T) = prod (1 - 2 alpha_j T + q T^2).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::bounds::dm_defect;
use crate::error::{Error, Result};
use crate::intpoly::{
    counts_to_power_sums, functional_equation_check, is_weil_lpoly, power_sums_to_lpoly, IntPoly,
};
use crate::json;

/// A validated L-polynomial: L(0) = 1, functional equation, q-Weil.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LPolynomial {
    pub poly: IntPoly,
    pub q: i64,
    pub g: u32,
}

impl LPolynomial {
    pub fn new(poly: IntPoly, q: i64) -> Result<Self> {
        if !functional_equation_check(&poly, q) {
            return Err(Error::FunctionalEquationViolated);
        }
        let cert = is_weil_lpoly(&poly, q)?;
        if !cert.is_weil {
            return Err(Error::NotWeil(format!("{poly} over F_{q}")));
        }
        let g = (poly.degree().unwrap_or(0) / 2) as u32;
        Ok(LPolynomial { poly, q, g })
    }

    /// (1 + c T + q T^2)^g.
    pub fn power_of_quadratic(q: i64, c: i64, g: u32) -> Result<Self> {
        Self::new(IntPoly::from_i64(&[1, c, q]).pow(g), q)
    }

    /// a_i.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.poly.coeff(i)
    }
}

/// L from N_1, .., N_g.
pub fn lpoly_from_counts(q: i64, g: u32, counts: &[i64]) -> Result<LPolynomial> {
    if counts.len() < g as usize {
        return Err(Error::InvalidInput(format!(
            "genus {g} needs {g} counts, got {}",
            counts.len()
        )));
    }
    let sums = counts_to_power_sums(q, &counts[..g as usize]);
    let poly = power_sums_to_lpoly(q, g as usize, &sums)?;
    LPolynomial::new(poly, q)
}

/// #Jac(F_q) = L(1).
pub fn jacobian_order(l: &LPolynomial) -> BigInt {
    l.poly.eval(&BigInt::one())
}

/// tau = -(sum of the Frobenius traces) = a_1.
pub fn trace_tau(l: &LPolynomial) -> BigInt {
    l.coeff(1)
}

/// E(alpha), sum alpha_j^2 and V(alpha) as exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaStats {
    #[serde(serialize_with = "json::ser_rat", deserialize_with = "json::de_rat")]
    pub mean: BigRational,
    #[serde(serialize_with = "json::ser_rat", deserialize_with = "json::de_rat")]
    pub sum_sq: BigRational,
    #[serde(serialize_with = "json::ser_rat", deserialize_with = "json::de_rat")]
    pub variance: BigRational,
}

/// mean = (q+1-N_1)/(2g), sum_sq = (q^2+1-N_2+2gq)/4, variance = delta/(4g^2).
pub fn alpha_stats(q: i64, g: i64, n1: i64, n2: i64) -> AlphaStats {
    let b = BigInt::from;
    AlphaStats {
        mean: BigRational::new(b(q + 1 - n1), b(2 * g)),
        sum_sq: BigRational::new(b(q) * b(q) + 1 - b(n2) + b(2 * g * q), b(4)),
        variance: BigRational::new(dm_defect(q, g, n1, n2), b(4 * g * g)),
    }
}

/// Report fragment `{"lpoly", "jac_order", "tau", "alpha_mean", "alpha_variance"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaReport {
    pub lpoly: IntPoly,
    /// decimal string
    pub jac_order: String,
    #[serde(serialize_with = "json::ser_int", deserialize_with = "json::de_int")]
    pub tau: BigInt,
    #[serde(serialize_with = "json::ser_rat", deserialize_with = "json::de_rat")]
    pub alpha_mean: BigRational,
    #[serde(serialize_with = "json::ser_rat", deserialize_with = "json::de_rat")]
    pub alpha_variance: BigRational,
}

/// Zeta data of `l`; alpha statistics come from its own N_1 and N_2.
pub fn zeta_report(l: &LPolynomial) -> Result<ZetaReport> {
    let counts = crate::intpoly::lpoly_to_profile(&l.poly, l.q, 2)?;
    let n = |i: usize| -> Result<i64> {
        i64::try_from(&counts[i]).map_err(|_| Error::InvalidInput("count exceeds i64".into()))
    };
    let stats = alpha_stats(l.q, l.g as i64, n(0)?, n(1)?);
    Ok(ZetaReport {
        lpoly: l.poly.clone(),
        jac_order: jacobian_order(l).to_string(),
        tau: trace_tau(l),
        alpha_mean: stats.mean,
        alpha_variance: stats.variance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn recovery_examples() {
        assert_eq!(lpoly_from_counts(2, 1, &[5]).unwrap().poly, IntPoly::from_i64(&[1, 2, 2]));
        let l = lpoly_from_counts(3, 2, &[2, 20]).unwrap();
        assert_eq!(l.poly, IntPoly::from_i64(&[1, -1, 3]).pow(2));
        let l = lpoly_from_counts(4, 3, &[14, 14, 38]).unwrap();
        assert_eq!(l.poly, IntPoly::from_i64(&[1, 3, 4]).pow(3));
    }

    #[test]
    fn counts_of_no_curve_are_rejected() {
        // q = 2, g = 1, N_1 = 7 gives a_1 = 4 > 2 sqrt 2
        assert!(matches!(lpoly_from_counts(2, 1, &[7]), Err(Error::NotWeil(_))));
    }

    #[test]
    fn jacobian_and_trace() {
        let l = LPolynomial::power_of_quadratic(3, -1, 2).unwrap();
        assert_eq!(jacobian_order(&l), BigInt::from(9));
        assert_eq!(trace_tau(&l), BigInt::from(-2));
        let l = LPolynomial::new(IntPoly::from_i64(&[1, 3]).pow(6), 9).unwrap();
        assert_eq!(jacobian_order(&l), BigInt::from(4096));
        let l = LPolynomial::new(IntPoly::from_i64(&[1, 2, 2]), 2).unwrap();
        assert_eq!(jacobian_order(&l), BigInt::from(5));
        assert_eq!(trace_tau(&l), BigInt::from(2));
        let l = LPolynomial::new(IntPoly::from_i64(&[1, 4, 4]), 4).unwrap();
        assert_eq!(trace_tau(&l), BigInt::from(4));
    }

    #[test]
    fn alpha_examples() {
        let s = alpha_stats(3, 2, 2, 20);
        assert_eq!((s.mean, s.sum_sq, s.variance), (r(1, 2), r(1, 2), r(0, 1)));
        let s = alpha_stats(5, 2, 6, 6);
        assert_eq!((s.mean, s.sum_sq.clone(), s.variance.clone()), (r(0, 1), r(10, 1), r(5, 1)));
        assert_eq!(s.variance, s.sum_sq / r(2, 1) - r(0, 1));
        assert_eq!(alpha_stats(2, 1, 5, 5).variance, r(0, 1));
    }

    #[test]
    fn report_json() {
        let l = LPolynomial::power_of_quadratic(3, -1, 2).unwrap();
        let rep = zeta_report(&l).unwrap();
        let v = serde_json::to_value(&rep).unwrap();
        assert_eq!(v["jac_order"], "9");
        assert_eq!(v["tau"], -2);
        assert_eq!(v["alpha_mean"], "1/2");
        assert_eq!(v["alpha_variance"], "0/1");
        let back: ZetaReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, rep);
    }
}
