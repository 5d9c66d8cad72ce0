//! Dense univariate polynomials over F_q, coefficients stored as element
//! codes low-to-high.

use super::FieldDesc;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FqPoly {
    field: FieldDesc,
    c: Vec<u64>,
}

impl FqPoly {
    pub fn new(field: &FieldDesc, mut c: Vec<u64>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        FqPoly {
            field: field.clone(),
            c,
        }
    }

    pub fn zero(field: &FieldDesc) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn constant(field: &FieldDesc, a: u64) -> Self {
        Self::new(field, vec![a])
    }

    /// The monomial x.
    pub fn x(field: &FieldDesc) -> Self {
        Self::new(field, vec![0, 1])
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let f = &self.field;
        self.c.iter().rev().fold(0, |acc, &a| f.add(f.mul(acc, x), a))
    }

    pub fn add(&self, o: &Self) -> Self {
        let f = &self.field;
        let n = self.c.len().max(o.c.len());
        Self::new(f, (0..n).map(|i| f.add(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let f = &self.field;
        let n = self.c.len().max(o.c.len());
        Self::new(f, (0..n).map(|i| f.sub(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn scale(&self, a: u64) -> Self {
        let f = &self.field;
        Self::new(f, self.c.iter().map(|&x| f.mul(x, a)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(&self.field);
        }
        let f = &self.field;
        let mut r = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                r[i + j] = f.add(r[i + j], f.mul(a, b));
            }
        }
        Self::new(f, r)
    }

    /// Quotient and remainder.
    ///
    /// # Panics
    /// On division by the zero polynomial.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let f = &self.field;
        let dd = d.degree().expect("division by zero polynomial");
        let inv = f.inv(d.lead()).expect("nonzero leading coefficient");
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::zero(f), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = f.mul(r[i], inv);
            if c == 0 {
                continue;
            }
            q[i - dd] = c;
            for (j, &dj) in d.c.iter().enumerate() {
                let k = i - dd + j;
                r[k] = f.sub(r[k], f.mul(c, dj));
            }
        }
        r.truncate(dd);
        (Self::new(f, q), Self::new(f, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn monic(&self) -> Self {
        match self.field.inv(self.lead()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    /// Monic gcd (zero if both inputs are zero).
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

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| f.mul(f.from_int((i as u64 % f.p()) as i64), a))
            .collect();
        Self::new(f, c)
    }

    /// gcd(f, f') = 1. Constants count as squarefree; zero does not.
    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// self^e mod m.
    pub fn powmod(&self, mut e: u64, m: &Self) -> Self {
        let f = &self.field;
        let mut r = Self::constant(f, 1).rem(m);
        let mut b = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b).rem(m);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b).rem(m);
            }
        }
        r
    }

    /// x^(q^j) mod m for a field of order q, by j successive q-th powers.
    fn frobenius_x(&self, m: &Self) -> Self {
        Self::x(&self.field).powmod(self.field.q(), m)
    }

    /// gcd(self, x^q - x): the product of the distinct linear factors.
    pub fn rational_root_part(&self) -> Self {
        let f = &self.field;
        if self.degree().unwrap_or(0) == 0 {
            return Self::constant(f, 1);
        }
        let m = self.monic();
        let xq = self.frobenius_x(&m);
        let t = xq.sub(&Self::x(f));
        m.gcd(&t)
    }

    /// Number of distinct roots in the coefficient field.
    ///
    /// # Panics
    /// On the zero polynomial, whose root set is the whole field.
    pub fn count_distinct_roots(&self) -> usize {
        assert!(!self.is_zero(), "zero polynomial has every element as a root");
        self.rational_root_part().degree().unwrap_or(0)
    }

    /// Roots in the coefficient field, in increasing code order.
    pub fn roots(&self) -> Vec<u64> {
        if self.is_zero() {
            return self.field.elements().collect();
        }
        let part = self.rational_root_part();
        if part.degree() == Some(0) {
            return Vec::new();
        }
        self.field.elements().filter(|&x| part.eval(x) == 0).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::super::make_field;
    use super::*;

    #[test]
    fn division_identity() {
        let f = make_field(3, 2, None).unwrap();
        let a = FqPoly::new(&f, vec![1, 4, 0, 7, 2, 5]);
        let b = FqPoly::new(&f, vec![8, 3, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn root_counts_match_enumeration() {
        for (p, n) in [(2u64, 2usize), (3, 2), (5, 1), (2, 3), (7, 1)] {
            let f = make_field(p, n, None).unwrap();
            let q = f.q();
            let mut state = 12345u64;
            for _ in 0..60 {
                let deg = 1 + (state % 6) as usize;
                let mut c: Vec<u64> = (0..deg)
                    .map(|_| {
                        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                        (state >> 33) % q
                    })
                    .collect();
                c.push(1);
                let poly = FqPoly::new(&f, c);
                let naive = f.elements().filter(|&x| poly.eval(x) == 0).count();
                assert_eq!(poly.count_distinct_roots(), naive);
                assert_eq!(poly.roots().len(), naive);
            }
        }
    }

    #[test]
    fn squarefree_detection() {
        let f5 = make_field(5, 1, None).unwrap();
        // x^2 (x^3 + 1)
        let sq = FqPoly::new(&f5, vec![0, 0, 1, 0, 0, 1]);
        assert!(!sq.is_squarefree());
        // x^5 + 4x
        assert!(FqPoly::new(&f5, vec![0, 4, 0, 0, 0, 1]).is_squarefree());
        // in characteristic 2, x^2 + 1 = (x + 1)^2
        let f2 = make_field(2, 1, None).unwrap();
        assert!(!FqPoly::new(&f2, vec![1, 0, 1]).is_squarefree());
    }
}
