//! Point counts <-> power sums <-> L-polynomial coefficients.
//!
//! With L(T) = 1 + a_1 T + .. + a_{2g} T^{2g} = prod (1 - w_j T) and
//! S_k = sum w_j^k, taking the logarithmic derivative gives
//! k a_k = -(S_1 a_{k-1} + S_2 a_{k-2} + .. + S_k a_0).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{pow_big, IntPoly};
use crate::error::{Error, Result};

/// S_k = q^k + 1 - N_k.
pub fn counts_to_power_sums(q: i64, counts: &[i64]) -> Vec<BigInt> {
    counts
        .iter()
        .enumerate()
        .map(|(i, &n)| pow_big(q, i + 1) + 1 - n)
        .collect()
}

/// L-polynomial of genus `g` from its first `g` power sums.
pub fn power_sums_to_lpoly(q: i64, g: usize, sums: &[BigInt]) -> Result<IntPoly> {
    if sums.len() < g {
        return Err(Error::InvalidInput(format!(
            "genus {g} needs {g} power sums, got {}",
            sums.len()
        )));
    }
    let mut a = vec![BigInt::zero(); 2 * g + 1];
    a[0] = BigInt::one();
    for k in 1..=g {
        let mut acc = BigInt::zero();
        for i in 1..=k {
            acc += &sums[i - 1] * &a[k - i];
        }
        let (quot, rem) = (-acc).div_rem(&BigInt::from(k));
        if !rem.is_zero() {
            return Err(Error::NonIntegralCoefficient { index: k });
        }
        a[k] = quot;
    }
    for i in 0..g {
        a[2 * g - i] = pow_big(q, g - i) * &a[i];
    }
    Ok(IntPoly::new(a))
}

/// a_{2g-i} = q^{g-i} a_i for all i <= g, with even degree and L(0) = 1.
pub fn functional_equation_check(l: &IntPoly, q: i64) -> bool {
    let Some(d) = l.degree() else {
        return false;
    };
    if d % 2 == 1 || !l.coeff(0).is_one() {
        return false;
    }
    let g = d / 2;
    (0..=g).all(|i| l.coeff(2 * g - i) == pow_big(q, g - i) * l.coeff(i))
}

fn power_sums(l: &IntPoly, m: usize) -> Vec<BigInt> {
    let mut s: Vec<BigInt> = Vec::with_capacity(m);
    for k in 1..=m {
        let mut acc = -BigInt::from(k) * l.coeff(k);
        for i in 1..k {
            acc -= &s[i - 1] * l.coeff(k - i);
        }
        s.push(acc);
    }
    s
}

/// N_k of a curve with L-polynomial `l` over F_q.
pub fn lpoly_to_counts(l: &IntPoly, q: i64, k: usize) -> Result<BigInt> {
    Ok(lpoly_to_profile(l, q, k)?.pop().unwrap_or_default())
}

/// (N_1, .., N_m).
pub fn lpoly_to_profile(l: &IntPoly, q: i64, m: usize) -> Result<Vec<BigInt>> {
    if !functional_equation_check(l, q) {
        return Err(Error::FunctionalEquationViolated);
    }
    Ok(power_sums(l, m)
        .into_iter()
        .enumerate()
        .map(|(i, s)| pow_big(q, i + 1) + 1 - s)
        .collect())
}
