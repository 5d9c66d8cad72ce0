//! Finite fields F_{p^n} in a polynomial basis over F_p.
//!
//! An element is stored as a packed *code*: the coefficient vector
//! `(c_0, .., c_{n-1})` of its representative `c_0 + c_1 t + .. + c_{n-1} t^{n-1}`
//! read as the base-p integer `c_0 + c_1 p + .. + c_{n-1} p^{n-1}`. The
//! constant `c` therefore has code `c`, and increasing codes enumerate the
//! coefficient vectors lexicographically (highest-degree coefficient first).
//!
//! [`FieldDesc`] is a cheap-to-clone shared handle. Arithmetic on raw codes
//! lives on the descriptor so the counting loops never allocate; fields with
//! at most [`TABLE_LIMIT`] elements memoize their addition and
//! multiplication tables on first use, and fields up to [`LOG_TABLE_LIMIT`]
//! memoize discrete-log, antilog and Zech-log tables.

mod poly;
pub(crate) mod prime_poly;

pub use poly::FqPoly;

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fields up to this size get memoized operation tables.
pub const TABLE_LIMIT: u64 = 1024;

/// Fields up to this size get log/Zech tables.
pub const LOG_TABLE_LIMIT: u64 = 1 << 21;

/// Quadratic-character tables are built for fields up to this size.
pub const CHARACTER_TABLE_LIMIT: u64 = 1 << 23;

/// Largest order for which packed `u64` codes are supported.
const PACKED_LIMIT: u64 = 1 << 62;

#[derive(Clone)]
pub struct FieldDesc(Arc<Inner>);

struct Inner {
    p: u64,
    n: usize,
    modulus: Vec<u64>,
    order: BigUint,
    q: Option<u64>,
    tables: OnceLock<Option<Tables>>,
    logs: OnceLock<Option<LogTables>>,
    characters: OnceLock<Vec<i8>>,
    trace_mask: OnceLock<u64>,
}

/// `exp[i] = w^i` for a primitive w (doubled so sums of logs need no
/// reduction), `log[a]`, and `zech[i] = log(1 + w^i)`.
struct LogTables {
    order: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

const NO_LOG: u32 = u32::MAX;

struct Tables {
    q: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

/// Build F_{p^n}. Without an explicit modulus the lexicographically least
/// monic irreducible of degree `n` is used, so descriptors are reproducible.
pub fn make_field(p: u64, n: usize, modulus: Option<&[u64]>) -> Result<FieldDesc> {
    FieldDesc::new(p, n, modulus)
}

impl FieldDesc {
    pub fn new(p: u64, n: usize, modulus: Option<&[u64]>) -> Result<Self> {
        if !prime_poly::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 32 {
            return Err(Error::FieldTooLarge(format!("characteristic {p}")));
        }
        if n == 0 {
            return Err(Error::DegreeMismatch { expected: 1, found: 0 });
        }
        let modulus = match modulus {
            Some(m) => {
                let mut m: Vec<u64> = m.to_vec();
                while m.last() == Some(&0) {
                    m.pop();
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidInput(format!(
                        "modulus coefficients must lie in [0, {p})"
                    )));
                }
                if m.len() != n + 1 || m[n] != 1 {
                    return Err(Error::DegreeMismatch {
                        expected: n,
                        found: m.len().saturating_sub(1),
                    });
                }
                if !prime_poly::is_irreducible(&m, p) {
                    return Err(Error::ReducibleModulus { p });
                }
                m
            }
            None => prime_poly::least_irreducible(p, n),
        };
        let order = BigUint::from(p).pow(n as u32);
        let q = u64::try_from(&order).ok().filter(|&q| q < PACKED_LIMIT);
        Ok(FieldDesc(Arc::new(Inner {
            p,
            n,
            modulus,
            order,
            q,
            tables: OnceLock::new(),
            logs: OnceLock::new(),
            characters: OnceLock::new(),
            trace_mask: OnceLock::new(),
        })))
    }

    /// Prime field F_p.
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1, None)
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    /// Degree over the prime field.
    pub fn n(&self) -> usize {
        self.0.n
    }

    /// Monic modulus, coefficients low-to-high.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn order(&self) -> &BigUint {
        &self.0.order
    }

    /// Number of elements as a machine integer.
    ///
    /// # Panics
    /// If the field is too large for packed codes (q >= 2^62); construct
    /// elements through [`FieldElement::new`] to get an error instead.
    pub fn q(&self) -> u64 {
        self.0
            .q
            .unwrap_or_else(|| panic!("field of order {} has no packed codes", self.0.order))
    }

    pub fn try_q(&self) -> Result<u64> {
        self.0
            .q
            .ok_or_else(|| Error::FieldTooLarge(self.0.order.to_string()))
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.n == 1
    }

    pub fn same_field(&self, other: &FieldDesc) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self == other
    }

    // ---- codes ----------------------------------------------------------

    pub fn zero(&self) -> u64 {
        0
    }

    pub fn one(&self) -> u64 {
        1
    }

    /// Code of the class of t (the polynomial-basis generator).
    pub fn generator(&self) -> u64 {
        if self.0.n == 1 {
            (self.0.p - self.0.modulus[0]) % self.0.p
        } else {
            self.0.p
        }
    }

    /// Image of an integer under Z -> F_p -> F_q.
    pub fn from_int(&self, c: i64) -> u64 {
        c.rem_euclid(self.0.p as i64) as u64
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<u64> {
        let q = self.try_q()?;
        if coeffs.len() > self.0.n || coeffs.iter().any(|&c| c >= self.0.p) {
            return Err(Error::InvalidInput(format!(
                "coefficient vector {coeffs:?} does not describe an element of F_{}^{}",
                self.0.p, self.0.n
            )));
        }
        let code = coeffs.iter().rev().fold(0u64, |acc, &c| acc * self.0.p + c);
        debug_assert!(code < q);
        Ok(code)
    }

    /// Coefficient vector of length n.
    pub fn coeffs(&self, mut code: u64) -> Vec<u64> {
        let p = self.0.p;
        (0..self.0.n)
            .map(|_| {
                let c = code % p;
                code /= p;
                c
            })
            .collect()
    }

    /// All elements in increasing code order.
    pub fn elements(&self) -> std::ops::Range<u64> {
        0..self.q()
    }

    // ---- arithmetic on codes -------------------------------------------

    fn tables(&self) -> Option<&Tables> {
        self.0
            .tables
            .get_or_init(|| match self.0.q {
                Some(q) if q <= TABLE_LIMIT => Some(self.build_tables(q as usize)),
                _ => None,
            })
            .as_ref()
    }

    fn build_tables(&self, q: usize) -> Tables {
        let mut add = vec![0u32; q * q];
        let mut mul = vec![0u32; q * q];
        for a in 0..q {
            for b in a..q {
                let s = self.add_slow(a as u64, b as u64) as u32;
                let m = self.mul_slow(a as u64, b as u64) as u32;
                add[a * q + b] = s;
                add[b * q + a] = s;
                mul[a * q + b] = m;
                mul[b * q + a] = m;
            }
        }
        let mut neg = vec![0u32; q];
        let mut inv = vec![0u32; q];
        for a in 0..q {
            for b in 0..q {
                if add[a * q + b] == 0 {
                    neg[a] = b as u32;
                }
                if mul[a * q + b] == 1 {
                    inv[a] = b as u32;
                }
            }
        }
        Tables { q, add, mul, neg, inv }
    }

    fn logs(&self) -> Option<&LogTables> {
        self.0
            .logs
            .get_or_init(|| match self.0.q {
                Some(q) if q > TABLE_LIMIT && q <= LOG_TABLE_LIMIT => Some(self.build_logs(q)),
                _ => None,
            })
            .as_ref()
    }

    fn pow_slow(&self, a: u64, mut e: u64) -> u64 {
        let (mut r, mut b) = (1, a);
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul_slow(r, b);
            }
            b = self.mul_slow(b, b);
            e >>= 1;
        }
        r
    }

    fn build_logs(&self, q: u64) -> LogTables {
        let order = q - 1;
        let factors = small_prime_factors(order);
        let w = (2..q)
            .find(|&a| factors.iter().all(|&f| self.pow_slow(a, order / f) != 1))
            .expect("multiplicative group is cyclic");
        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![NO_LOG; q as usize];
        let mut cur = 1u64;
        for i in 0..order as usize {
            exp[i] = cur as u32;
            exp[i + order as usize] = cur as u32;
            log[cur as usize] = i as u32;
            cur = self.mul_slow(cur, w);
        }
        let zech = (0..order as usize)
            .map(|i| log[self.add_slow(1, exp[i] as u64) as usize])
            .collect();
        LogTables {
            order: order as u32,
            exp,
            log,
            zech,
        }
    }

    #[inline]
    fn log_mul(t: &LogTables, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        t.exp[(t.log[a as usize] + t.log[b as usize]) as usize] as u64
    }

    #[inline]
    fn log_add(t: &LogTables, a: u64, b: u64) -> u64 {
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let (la, lb) = (t.log[a as usize], t.log[b as usize]);
        let d = if lb >= la { lb - la } else { lb + t.order - la };
        match t.zech[d as usize] {
            NO_LOG => 0,
            z => t.exp[(la + z) as usize] as u64,
        }
    }

    fn digits(&self, mut code: u64, out: &mut [u64]) {
        let p = self.0.p;
        for d in out.iter_mut().take(self.0.n) {
            *d = code % p;
            code /= p;
        }
    }

    fn undigits(&self, d: &[u64]) -> u64 {
        d[..self.0.n]
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.0.p + c)
    }

    fn add_slow(&self, a: u64, b: u64) -> u64 {
        let p = self.0.p;
        if p == 2 {
            return a ^ b;
        }
        let (mut da, mut db) = ([0u64; 64], [0u64; 64]);
        self.digits(a, &mut da);
        self.digits(b, &mut db);
        for i in 0..self.0.n {
            da[i] = (da[i] + db[i]) % p;
        }
        self.undigits(&da)
    }

    fn neg_slow(&self, a: u64) -> u64 {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        let mut da = [0u64; 64];
        self.digits(a, &mut da);
        for d in da.iter_mut().take(self.0.n) {
            *d = (p - *d) % p;
        }
        self.undigits(&da)
    }

    fn mul_slow(&self, a: u64, b: u64) -> u64 {
        let n = self.0.n;
        let p = self.0.p;
        let m = &self.0.modulus;
        if p == 2 {
            // carry-less multiply, then reduce by the modulus bit pattern
            let mut r: u128 = 0;
            for i in 0..n {
                if (b >> i) & 1 == 1 {
                    r ^= (a as u128) << i;
                }
            }
            let mbits: u128 = m.iter().enumerate().fold(0, |acc, (i, &c)| acc | ((c as u128) << i));
            for i in (n..2 * n).rev() {
                if (r >> i) & 1 == 1 {
                    r ^= mbits << (i - n);
                }
            }
            return r as u64;
        }
        let (mut da, mut db) = ([0u64; 64], [0u64; 64]);
        self.digits(a, &mut da);
        self.digits(b, &mut db);
        let mut r = [0u64; 128];
        for i in 0..n {
            if da[i] == 0 {
                continue;
            }
            for j in 0..n {
                r[i + j] = (r[i + j] + da[i] * db[j]) % p;
            }
        }
        for i in (n..2 * n - 1).rev() {
            let c = r[i];
            if c == 0 {
                continue;
            }
            for j in 0..n {
                r[i - n + j] = (r[i - n + j] + (p - c) * m[j]) % p;
            }
            r[i] = 0;
        }
        self.undigits(&r)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.0.p == 2 {
            return a ^ b;
        }
        if let Some(t) = self.tables() {
            return t.add[a as usize * t.q + b as usize] as u64;
        }
        match self.logs() {
            Some(t) => Self::log_add(t, a, b),
            None => self.add_slow(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if self.0.p == 2 {
            return a;
        }
        if let Some(t) = self.tables() {
            return t.neg[a as usize] as u64;
        }
        match self.logs() {
            Some(t) if a != 0 => t.exp[(t.log[a as usize] + t.order / 2) as usize] as u64,
            Some(_) => 0,
            None => self.neg_slow(a),
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if let Some(t) = self.tables() {
            return t.mul[a as usize * t.q + b as usize] as u64;
        }
        match self.logs() {
            Some(t) => Self::log_mul(t, a, b),
            None => self.mul_slow(a, b),
        }
    }

    #[inline]
    pub fn square(&self, a: u64) -> u64 {
        self.mul(a, a)
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        if let Some(t) = self.tables() {
            return Some(t.inv[a as usize] as u64);
        }
        Some(match self.logs() {
            Some(t) => t.exp[((t.order - t.log[a as usize]) % t.order) as usize] as u64,
            None => self.pow(a, self.q() - 2),
        })
    }

    pub fn div(&self, a: u64, b: u64) -> Option<u64> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// x -> x^p.
    pub fn frobenius(&self, a: u64) -> u64 {
        self.pow(a, self.0.p)
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let group = self.q() - 1;
        let mut order = group;
        for f in small_prime_factors(group) {
            while order.is_multiple_of(f) && self.pow(a, order / f) == 1 {
                order /= f;
            }
        }
        Some(order)
    }

    // ---- characters and traces -----------------------------------------

    /// Quadratic character via Euler's criterion: 0, +1 or -1.
    pub fn quadratic_character(&self, a: u64) -> Result<i8> {
        if self.0.p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if a == 0 {
            return Ok(0);
        }
        Ok(if self.pow(a, (self.q() - 1) / 2) == 1 { 1 } else { -1 })
    }

    /// Table of quadratic characters indexed by code, built by squaring
    /// every element once. `None` in characteristic 2 or above
    /// [`CHARACTER_TABLE_LIMIT`].
    pub fn character_table(&self) -> Option<&[i8]> {
        if self.0.p == 2 || self.0.q.is_none_or(|q| q > CHARACTER_TABLE_LIMIT) {
            return None;
        }
        Some(self.0.characters.get_or_init(|| {
            let q = self.q() as usize;
            let mut chi = vec![-1i8; q];
            chi[0] = 0;
            for x in 1..q as u64 {
                chi[self.square(x) as usize] = 1;
            }
            chi
        }))
    }

    /// Absolute trace F_{2^n} -> F_2 as a bit mask: Tr(a) = parity(a & mask).
    pub fn trace_mask(&self) -> Result<u64> {
        if self.0.p != 2 {
            return Err(Error::InvalidInput(
                "absolute trace mask is only defined in characteristic 2".into(),
            ));
        }
        self.try_q()?;
        Ok(*self.0.trace_mask.get_or_init(|| {
            let mut mask = 0u64;
            for i in 0..self.0.n {
                let mut z = 1u64 << i;
                let mut tr = 0u64;
                for _ in 0..self.0.n {
                    tr ^= z;
                    z = self.mul(z, z);
                }
                debug_assert!(tr <= 1);
                mask |= tr << i;
            }
            mask
        }))
    }

    /// Absolute trace to F_2 (characteristic 2 only).
    #[inline]
    pub fn trace2(&self, a: u64, mask: u64) -> u32 {
        (a & mask).count_ones() & 1
    }

    // ---- extensions ------------------------------------------------------

    /// F_{q^k} together with the embedding of `self` into it.
    ///
    /// The big field is built directly over F_p with its own deterministic
    /// modulus; the embedding sends t to a root of `self.modulus()` found by
    /// exhaustive search.
    pub fn extend(&self, k: u32) -> Result<(FieldDesc, Embedding)> {
        if k == 0 {
            return Err(Error::InvalidInput("extension degree must be >= 1".into()));
        }
        if k == 1 {
            return Ok((self.clone(), Embedding::identity(self)));
        }
        let big = FieldDesc::new(self.0.p, self.0.n * k as usize, None)?;
        let big_q = big.try_q()?;
        let root = (0..big_q)
            .find(|&x| {
                let v = self
                    .0
                    .modulus
                    .iter()
                    .rev()
                    .fold(0u64, |acc, &c| big.add(big.mul(acc, x), c));
                v == 0
            })
            .expect("an irreducible of degree n splits in F_{p^(nk)}");
        let mut images = Vec::with_capacity(self.0.n);
        let mut pw = 1u64;
        for _ in 0..self.0.n {
            images.push(pw);
            pw = big.mul(pw, root);
        }
        Ok((
            big.clone(),
            Embedding {
                source: self.clone(),
                target: big,
                images,
            },
        ))
    }
}

fn small_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl PartialEq for FieldDesc {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.n == other.0.n && self.0.modulus == other.0.modulus
    }
}

impl Eq for FieldDesc {}

impl fmt::Debug for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.0.p, self.0.n, self.0.modulus)
    }
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.n == 1 {
            write!(f, "F_{}", self.0.p)
        } else {
            write!(f, "F_{}", self.0.order)
        }
    }
}

/// Wire form of a field descriptor: `{"p": int, "n": int, "modulus": [..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
}

impl From<&FieldDesc> for FieldSpec {
    fn from(f: &FieldDesc) -> Self {
        FieldSpec {
            p: f.p(),
            n: f.n(),
            modulus: Some(f.modulus().to_vec()),
        }
    }
}

impl TryFrom<FieldSpec> for FieldDesc {
    type Error = Error;
    fn try_from(s: FieldSpec) -> Result<Self> {
        FieldDesc::new(s.p, s.n, s.modulus.as_deref())
    }
}

impl Serialize for FieldDesc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FieldSpec::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldDesc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let spec = FieldSpec::deserialize(d)?;
        FieldDesc::try_from(spec).map_err(serde::de::Error::custom)
    }
}

/// Ring embedding F_q -> F_{q^k}, linear over F_p.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: FieldDesc,
    target: FieldDesc,
    /// images of 1, t, .., t^(n-1)
    images: Vec<u64>,
}

impl Embedding {
    fn identity(f: &FieldDesc) -> Self {
        let images = if f.n() == 1 {
            vec![1]
        } else {
            (0..f.n()).map(|i| f.p().pow(i as u32)).collect()
        };
        Embedding {
            source: f.clone(),
            target: f.clone(),
            images,
        }
    }

    pub fn source(&self) -> &FieldDesc {
        &self.source
    }

    pub fn target(&self) -> &FieldDesc {
        &self.target
    }

    pub fn map(&self, code: u64) -> u64 {
        let t = &self.target;
        let mut acc = 0u64;
        let mut c = code;
        let p = self.source.p();
        for &img in &self.images {
            let d = c % p;
            c /= p;
            if d != 0 {
                acc = t.add(acc, t.mul(d, img));
            }
        }
        acc
    }

    pub fn map_element(&self, a: &FieldElement) -> Result<FieldElement> {
        if !a.field.same_field(&self.source) {
            return Err(Error::FieldMismatch);
        }
        Ok(FieldElement::from_code(&self.target, self.map(a.code)))
    }
}

/// An element bound to its field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: FieldDesc,
    code: u64,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} in {}", self.field.coeffs(self.code), self.field)
    }
}

/// Operations accepted by [`field_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow(i64),
    Inv,
    Frobenius,
}

impl FieldElement {
    pub fn new(field: &FieldDesc, coeffs: &[u64]) -> Result<Self> {
        let code = field.from_coeffs(coeffs)?;
        Ok(FieldElement {
            field: field.clone(),
            code,
        })
    }

    /// # Panics
    /// If `code` is not below the field order.
    pub fn from_code(field: &FieldDesc, code: u64) -> Self {
        assert!(code < field.q(), "code {code} out of range for {field}");
        FieldElement {
            field: field.clone(),
            code,
        }
    }

    pub fn from_int(field: &FieldDesc, c: i64) -> Self {
        FieldElement {
            field: field.clone(),
            code: field.from_int(c),
        }
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn code(&self) -> u64 {
        self.code
    }

    pub fn coeffs(&self) -> Vec<u64> {
        self.field.coeffs(self.code)
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    fn with(&self, code: u64) -> Self {
        FieldElement {
            field: self.field.clone(),
            code,
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field.same_field(&other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(self.field.add(self.code, other.code)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(self.field.sub(self.code, other.code)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(self.field.mul(self.code, other.code)))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        self.field
            .div(self.code, other.code)
            .map(|c| self.with(c))
            .ok_or(Error::DivisionByZero)
    }

    pub fn inv(&self) -> Result<Self> {
        self.field
            .inv(self.code)
            .map(|c| self.with(c))
            .ok_or(Error::DivisionByZero)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, k: i64) -> Result<Self> {
        if k >= 0 {
            return Ok(self.with(self.field.pow(self.code, k as u64)));
        }
        let inv = self.inv()?;
        Ok(inv.with(self.field.pow(inv.code, k.unsigned_abs())))
    }

    pub fn frobenius(&self) -> Self {
        self.with(self.field.frobenius(self.code))
    }

    pub fn quadratic_character(&self) -> Result<i8> {
        self.field.quadratic_character(self.code)
    }
}

/// Apply `op` to `a` (and `b` for the binary operations).
pub fn field_arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Div => a.div(b),
        ArithOp::Pow(k) => a.pow(k),
        ArithOp::Inv => a.inv(),
        ArithOp::Frobenius => Ok(a.frobenius()),
    }
}

/// Every element of `field`, in increasing code order.
pub fn enumerate(field: &FieldDesc) -> impl Iterator<Item = FieldElement> + '_ {
    field.elements().map(move |c| FieldElement::from_code(field, c))
}

/// Quadratic character of `a` in a field of odd characteristic.
pub fn quadratic_character(a: &FieldElement) -> Result<i8> {
    a.quadratic_character()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn f4() -> FieldDesc {
        make_field(2, 2, None).unwrap()
    }

    #[test]
    fn default_moduli() {
        assert_eq!(make_field(2, 1, None).unwrap().modulus(), &[0, 1]);
        // exhaustive: of t^2, t^2+1, t^2+t, t^2+t+1 only the last is irreducible
        assert_eq!(f4().modulus(), &[1, 1, 1]);
        assert_eq!(make_field(3, 2, None).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(make_field(4, 1, None).unwrap_err(), Error::NotPrime(4));
        assert_eq!(
            make_field(2, 2, Some(&[1, 0, 1])).unwrap_err(),
            Error::ReducibleModulus { p: 2 }
        );
        assert!(matches!(
            make_field(2, 3, Some(&[1, 1, 1])).unwrap_err(),
            Error::DegreeMismatch { expected: 3, found: 2 }
        ));
        assert!(matches!(
            make_field(3, 2, Some(&[1, 0, 2])).unwrap_err(),
            Error::DegreeMismatch { .. }
        ));
    }

    #[test]
    fn f4_arithmetic() {
        let f = f4();
        let t = FieldElement::new(&f, &[0, 1]).unwrap();
        let t1 = FieldElement::new(&f, &[1, 1]).unwrap();
        let one = FieldElement::from_int(&f, 1);
        assert_eq!(field_arith(&t, &t1, ArithOp::Mul).unwrap(), one);
        assert_eq!(field_arith(&t, &t, ArithOp::Frobenius).unwrap(), t1);
        assert_eq!(t.inv().unwrap(), t1);
        assert_eq!(t.pow(3).unwrap(), one);
        assert_eq!(t.pow(-1).unwrap(), t1);
        let zero = FieldElement::from_int(&f, 0);
        assert_eq!(t.div(&zero).unwrap_err(), Error::DivisionByZero);
        assert_eq!(zero.inv().unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn f5_inverse_and_mismatch() {
        let f5 = FieldDesc::prime(5).unwrap();
        let two = FieldElement::from_int(&f5, 2);
        assert_eq!(two.inv().unwrap(), FieldElement::from_int(&f5, 3));
        let f7 = FieldDesc::prime(7).unwrap();
        let other = FieldElement::from_int(&f7, 2);
        assert_eq!(two.add(&other).unwrap_err(), Error::FieldMismatch);
    }

    #[test]
    fn enumeration() {
        let f2 = FieldDesc::prime(2).unwrap();
        let codes: Vec<Vec<u64>> = enumerate(&f2).map(|e| e.coeffs()).collect();
        assert_eq!(codes, vec![vec![0], vec![1]]);
        assert_eq!(enumerate(&f4()).count(), 4);
        let f9 = make_field(3, 2, None).unwrap();
        let set: HashSet<Vec<u64>> = enumerate(&f9).map(|e| e.coeffs()).collect();
        assert_eq!(set.len(), 9);
    }

    #[test]
    fn characters_in_f5() {
        let f5 = FieldDesc::prime(5).unwrap();
        let chi = |c| FieldElement::from_int(&f5, c).quadratic_character().unwrap();
        assert_eq!((chi(4), chi(2), chi(0)), (1, -1, 0));
        assert_eq!(f5.character_table().unwrap(), &[0, 1, -1, -1, 1]);
        assert_eq!(
            FieldElement::from_int(&f4(), 1).quadratic_character(),
            Err(Error::EvenCharacteristic)
        );
    }

    fn small_fields() -> Vec<FieldDesc> {
        let mut out = Vec::new();
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61] {
            let mut n = 1;
            while p.pow(n as u32) <= 64 {
                out.push(make_field(p, n, None).unwrap());
                n += 1;
            }
        }
        out
    }

    #[test]
    fn fermat_and_cyclicity() {
        for f in small_fields() {
            let q = f.q();
            for x in f.elements() {
                assert_eq!(f.pow(x, q), x, "{f:?}");
            }
            let has_generator = (1..q).any(|x| f.multiplicative_order(x) == Some(q - 1));
            assert!(has_generator, "{f:?}");
        }
    }

    #[test]
    fn table_and_slow_paths_agree() {
        let f = make_field(3, 3, None).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.mul(a, b), f.mul_slow(a, b));
                assert_eq!(f.add(a, b), f.add_slow(a, b));
            }
        }
    }

    #[test]
    fn log_and_slow_paths_agree() {
        for (p, n) in [(3u64, 7usize), (7, 4), (2, 11)] {
            let f = make_field(p, n, None).unwrap();
            let q = f.q();
            let step = |i: u64| (i * 7919 + 13) % q;
            for i in 0..4000 {
                let (a, b) = (step(i), step(i * i + 1));
                assert_eq!(f.mul(a, b), f.mul_slow(a, b), "{f}");
                assert_eq!(f.add(a, b), f.add_slow(a, b), "{f}");
                assert_eq!(f.neg(a), f.neg_slow(a), "{f}");
                if a != 0 {
                    assert_eq!(f.mul_slow(a, f.inv(a).unwrap()), 1, "{f}");
                }
            }
        }
    }

    #[test]
    fn character_is_multiplicative() {
        for f in small_fields().into_iter().filter(|f| f.p() != 2 && f.q() <= 49) {
            for a in 1..f.q() {
                for b in 1..f.q() {
                    let lhs = f.quadratic_character(f.mul(a, b)).unwrap();
                    let rhs = f.quadratic_character(a).unwrap() * f.quadratic_character(b).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
            let table = f.character_table().unwrap();
            for a in f.elements() {
                assert_eq!(table[a as usize], f.quadratic_character(a).unwrap());
            }
        }
    }

    #[test]
    fn extension_embeddings() {
        let f2 = FieldDesc::prime(2).unwrap();
        let (same, id) = f2.extend(1).unwrap();
        assert_eq!(same, f2);
        assert_eq!(id.map(1), 1);

        let (f4b, e) = f2.extend(2).unwrap();
        assert_eq!(f4b.q(), 4);
        assert_eq!(e.map(1), 1);
        for x in f2.elements() {
            let y = e.map(x);
            assert_eq!(f4b.square(y), y);
        }

        let (f16, e) = f4().extend(2).unwrap();
        assert_eq!(f16.q(), 16);
        for a in f4().elements() {
            let y = e.map(a);
            assert_eq!(f16.pow(y, 4), y);
        }
    }

    #[test]
    fn embedding_is_a_ring_homomorphism() {
        for (p, n, k) in [(2u64, 1usize, 4u32), (2, 2, 2), (3, 1, 2), (2, 3, 2), (3, 2, 2), (5, 1, 2)] {
            let f = make_field(p, n, None).unwrap();
            if f.q() > 16 {
                continue;
            }
            let (big, e) = f.extend(k).unwrap();
            let images: HashSet<u64> = f.elements().map(|a| e.map(a)).collect();
            assert_eq!(images.len() as u64, f.q(), "injective");
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(e.map(f.mul(a, b)), big.mul(e.map(a), e.map(b)));
                    assert_eq!(e.map(f.add(a, b)), big.add(e.map(a), e.map(b)));
                }
            }
        }
    }

    #[test]
    fn large_field_slow_path() {
        // F_{2^12} and F_{3^8} exceed the table limit
        for f in [make_field(2, 12, None).unwrap(), make_field(3, 8, None).unwrap()] {
            let g = f.generator();
            assert_eq!(f.pow(g, f.q()), g);
            let inv = f.inv(g).unwrap();
            assert_eq!(f.mul(g, inv), 1);
        }
    }

    #[test]
    fn trace_mask_matches_definition() {
        let f = make_field(2, 4, None).unwrap();
        let mask = f.trace_mask().unwrap();
        let mut zeros = 0;
        for a in f.elements() {
            let mut z = a;
            let mut tr = 0;
            for _ in 0..4 {
                tr ^= z;
                z = f.square(z);
            }
            assert_eq!(tr as u32, f.trace2(a, mask));
            zeros += (tr == 0) as u32;
        }
        assert_eq!(zeros, 8);
    }

    #[test]
    fn descriptor_json() {
        let f = make_field(3, 2, None).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"p":3,"n":2,"modulus":[1,0,1]}"#);
        let back: FieldDesc = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<FieldDesc>(r#"{"p":2,"n":2,"modulus":[1,0,1]}"#).is_err());
    }
}
