//! Exact q-Weil test.
//!
//! A monic f of degree 2g satisfying T^{2g} f(q/T) = q^g f(T) can be written
//! f(T) = T^g h(T + q/T) with h of degree g. Every root of f has absolute
//! value sqrt(q) exactly when every root of h is real and lies in
//! [-2 sqrt(q), 2 sqrt(q)]. Both conditions are decided with Sturm counts:
//! the second one on e(s) = h0(sqrt s) h0(-sqrt s), whose roots are the
//! squares of the roots of h0, so the interval becomes [0, 4q] with
//! rational endpoints.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::{count_real_roots, count_roots_in, pow_big, IntPoly, RatPoly};
use crate::error::{Error, Result};

/// h with f(T) = T^g h(T + q/T); roots are the 2*Re of the roots of f.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealWeilPoly {
    pub h: IntPoly,
    pub q: i64,
}

/// Outcome of [`is_q_weil`] with the Sturm data behind it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeilCertificate {
    pub is_weil: bool,
    pub functional_equation: bool,
    pub real_weil: Option<IntPoly>,
    /// degree of the squarefree part h0 of h
    pub squarefree_degree: usize,
    /// distinct real roots of h0
    pub real_roots: usize,
    /// degree of the squarefree part of e
    pub squared_degree: usize,
    /// distinct roots of that part in (-1, 4q]
    pub squared_in_range: usize,
}

fn shape_check(f: &IntPoly) -> Result<usize> {
    let d = f.degree().unwrap_or(0);
    if d % 2 == 1 {
        return Err(Error::OddDegree(d));
    }
    if !f.is_monic() {
        return Err(Error::NonMonic);
    }
    Ok(d / 2)
}

fn symmetric(f: &IntPoly, q: i64, g: usize) -> bool {
    (1..=g).all(|k| f.coeff(g - k) == pow_big(q, k) * f.coeff(g + k))
}

/// h = c_0 + sum c_k P_k with c_k = f_{g+k} and T^k + (q/T)^k = P_k(T + q/T).
pub fn real_weil_transform(f: &IntPoly, q: i64) -> Result<RealWeilPoly> {
    let g = shape_check(f)?;
    if !symmetric(f, q, g) {
        return Err(Error::FunctionalEquationViolated);
    }
    let x = IntPoly::from_i64(&[0, 1]);
    let qp = IntPoly::from_i64(&[q]);
    let mut h = IntPoly::new(vec![f.coeff(g)]);
    let (mut prev, mut cur) = (IntPoly::from_i64(&[2]), x.clone());
    for k in 1..=g {
        h = &h + &(&IntPoly::new(vec![f.coeff(g + k)]) * &cur);
        let next = &(&x * &cur) - &(&qp * &prev);
        prev = cur;
        cur = next;
    }
    Ok(RealWeilPoly { h, q })
}

/// h0(x) = E(x^2) + x O(x^2)  ->  e(s) = E(s)^2 - s O(s)^2.
fn squared_roots_poly(h0: &RatPoly) -> RatPoly {
    let c = h0.coeffs();
    let even = RatPoly::new(c.iter().step_by(2).cloned().collect());
    let odd = RatPoly::new(c.iter().skip(1).step_by(2).cloned().collect());
    let s = RatPoly::new(vec![BigRational::zero(), BigRational::from_integer(1.into())]);
    even.mul(&even).sub(&s.mul(&odd).mul(&odd))
}

/// Decide whether every complex root of the monic even-degree `f` has
/// absolute value sqrt(q).
pub fn is_q_weil(f: &IntPoly, q: i64) -> Result<WeilCertificate> {
    let g = shape_check(f)?;
    let mut cert = WeilCertificate {
        is_weil: false,
        functional_equation: symmetric(f, q, g),
        real_weil: None,
        squarefree_degree: 0,
        real_roots: 0,
        squared_degree: 0,
        squared_in_range: 0,
    };
    if !cert.functional_equation {
        return Ok(cert);
    }
    let h = real_weil_transform(f, q)?.h;
    let h0 = h.to_rat().squarefree_part();
    cert.real_weil = Some(h);
    cert.squarefree_degree = h0.degree().unwrap_or(0);
    cert.real_roots = count_real_roots(&h0);
    if cert.real_roots != cert.squarefree_degree {
        return Ok(cert);
    }
    let e = squared_roots_poly(&h0).squarefree_part();
    cert.squared_degree = e.degree().unwrap_or(0);
    let lo = BigRational::from_integer(BigInt::from(-1));
    let hi = BigRational::from_integer(BigInt::from(4) * q);
    cert.squared_in_range = count_roots_in(&e, &lo, &hi);
    cert.is_weil = cert.squared_in_range == cert.squared_degree;
    Ok(cert)
}

/// [`is_q_weil`] applied to T^{2g} L(1/T).
pub fn is_weil_lpoly(l: &IntPoly, q: i64) -> Result<WeilCertificate> {
    is_q_weil(&l.reverse(), q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transform_examples() {
        let f = IntPoly::from_i64(&[2, 2, 1]);
        assert_eq!(real_weil_transform(&f, 2).unwrap().h, IntPoly::from_i64(&[2, 1]));
        let f = IntPoly::from_i64(&[49, -7, 1]).pow(2);
        let expected = IntPoly::from_i64(&[-7, 1]).pow(2);
        assert_eq!(real_weil_transform(&f, 49).unwrap().h, expected);
        assert_eq!(
            real_weil_transform(&IntPoly::from_i64(&[3, 2, 1]), 2).unwrap_err(),
            Error::FunctionalEquationViolated
        );
    }

    #[test]
    fn squared_quadratic_examples() {
        // 4|a|sqrt(q) <= a^2 + 4q decides these
        let yes = IntPoly::from_i64(&[7, 5, 1]).pow(2);
        assert!(is_q_weil(&yes, 7).unwrap().is_weil);
        let no = IntPoly::from_i64(&[7, 6, 1]).pow(2);
        assert!(!is_q_weil(&no, 7).unwrap().is_weil);
        assert!(is_q_weil(&IntPoly::from_i64(&[2, 2, 1]), 2).unwrap().is_weil);
    }

    #[test]
    fn boundary_roots_count_as_weil() {
        // (T + 2)^2 over q = 4: h = x + 4, root -4 = -2 sqrt(q)
        let f = IntPoly::from_i64(&[4, 4, 1]);
        assert!(is_q_weil(&f, 4).unwrap().is_weil);
        // (T^2 + 3T + 3)(T^2 - 3T + 3) over q = 3: 2 sqrt(3) > 3
        let f = &IntPoly::from_i64(&[3, 3, 1]) * &IntPoly::from_i64(&[3, -3, 1]);
        assert!(is_q_weil(&f, 3).unwrap().is_weil);
        // T^2 + 4T + 3 has roots -1, -3
        assert!(!is_q_weil(&IntPoly::from_i64(&[3, 4, 1]), 3).unwrap().is_weil);
    }

    #[test]
    fn shape_errors() {
        assert_eq!(
            is_q_weil(&IntPoly::from_i64(&[1, 1, 1, 1]), 2).unwrap_err(),
            Error::OddDegree(3)
        );
        assert_eq!(
            is_q_weil(&IntPoly::from_i64(&[2, 2, 2]), 2).unwrap_err(),
            Error::NonMonic
        );
    }
}
