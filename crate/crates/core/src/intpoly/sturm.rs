//! Sturm sequences over Q: exact counts of distinct real roots.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::RatPoly;

/// p, p', then negated remainders until zero.
pub fn sturm_sequence(p: &RatPoly) -> Vec<RatPoly> {
    let mut seq = vec![p.clone()];
    if p.is_zero() {
        return seq;
    }
    let mut prev = p.clone();
    let mut cur = p.derivative();
    while !cur.is_zero() {
        seq.push(cur.clone());
        let next = prev.rem(&cur).neg();
        prev = cur;
        cur = next;
    }
    seq
}

fn changes(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut n = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

fn sign(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn changes_at(seq: &[RatPoly], x: &BigRational) -> usize {
    changes(seq.iter().map(|p| sign(&p.eval(x))))
}

fn changes_at_infinity(seq: &[RatPoly], positive: bool) -> usize {
    changes(seq.iter().map(|p| {
        let s = sign(&p.lead());
        let odd = p.degree().unwrap_or(0) % 2 == 1;
        if !positive && odd {
            -s
        } else {
            s
        }
    }))
}

/// Number of distinct real roots.
pub fn count_real_roots(p: &RatPoly) -> usize {
    if p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let seq = sturm_sequence(&p.squarefree_part());
    changes_at_infinity(&seq, false) - changes_at_infinity(&seq, true)
}

/// Number of distinct real roots in the half-open interval (a, b].
pub fn count_roots_in(p: &RatPoly, a: &BigRational, b: &BigRational) -> usize {
    if p.degree().unwrap_or(0) == 0 || a >= b {
        return 0;
    }
    let seq = sturm_sequence(&p.squarefree_part());
    changes_at(&seq, a) - changes_at(&seq, b)
}

#[cfg(test)]
mod tests {
    use super::super::IntPoly;
    use super::*;
    use num_bigint::BigInt;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn counts_on_known_polynomials() {
        // (x - 1)^2 (x + 2)(x^2 + 1)
        let p = &IntPoly::from_i64(&[2, -3, 0, 1]) * &IntPoly::from_i64(&[1, 0, 1]);
        let p = p.to_rat();
        assert_eq!(count_real_roots(&p), 2);
        assert_eq!(count_roots_in(&p, &r(-2), &r(1)), 1);
        assert_eq!(count_roots_in(&p, &r(-3), &r(1)), 2);
        assert_eq!(count_roots_in(&p, &r(1), &r(5)), 0);
        // x^2 - 2 has roots just outside (-1, 1]
        let q = IntPoly::from_i64(&[-2, 0, 1]).to_rat();
        assert_eq!(count_roots_in(&q, &r(-1), &r(1)), 0);
        assert_eq!(count_roots_in(&q, &r(0), &r(2)), 1);
    }
}
