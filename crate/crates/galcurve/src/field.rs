//! Exact arithmetic in finite fields F_{p^n}.
//!
//! A [`FieldCtx`] fixes the characteristic `p`, the extension degree `n` and
//! a monic irreducible modulus of degree `n` over F_p. Elements are dense
//! coefficient vectors in the power basis of the modulus root `t`, always
//! fully reduced. Contexts are immutable and cheap to clone (shared `Arc`),
//! so they can be passed around freely and used from concurrent tasks.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest characteristic accepted; keeps u64 products exact.
const MAX_P: u64 = 1 << 31;

// ---- Raw polynomial helpers over F_p (coefficients as u64, constant first) ----

fn ptrim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn pmul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    ptrim(&mut out);
    out
}

/// Remainder of a modulo b (b nonzero) over F_p; requires b monic or unit lead.
fn prem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    ptrim(&mut r);
    let db = b.len() - 1;
    let lead_inv = mod_inv(b[db], p);
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = (r[r.len() - 1] * lead_inv) % p;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                let sub = (c * bj) % p;
                r[k + j] = (r[k + j] + p - sub) % p;
            }
        }
        r.pop();
        ptrim(&mut r);
        if r.len() <= db {
            break;
        }
    }
    r
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Irreducibility over F_p by trial division with all monic polynomials of
/// degree 1..=deg/2. Exact at the degrees this crate handles.
fn pirreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        // candidates: monic of degree d, low coefficients counted in base p
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut m = idx;
            for _ in 0..d {
                g.push(m % p);
                m /= p;
            }
            g.push(1);
            if prem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// First irreducible monic polynomial of degree n over F_p in ascending
/// lexicographic order of (c_{n-1}, ..., c_1, c_0).
fn first_irreducible(p: u64, n: usize) -> Result<Vec<u64>> {
    let count = p
        .checked_pow(n as u32)
        .ok_or(Error::FieldTooLarge { p, n })?;
    for idx in 0..count {
        let mut f = Vec::with_capacity(n + 1);
        let mut m = idx;
        for _ in 0..n {
            f.push(m % p);
            m /= p;
        }
        f.push(1);
        if pirreducible(&f, p) {
            return Ok(f);
        }
    }
    Err(Error::MalformedModulus(format!(
        "no irreducible of degree {n} over F_{p}"
    )))
}

// ---- Field context ----

/// Construction data for F_{p^n}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub p: u64,
    pub n: usize,
    /// Monic modulus, constant coefficient first, length n + 1.
    pub modulus: Vec<u64>,
}

#[derive(Debug)]
struct FieldInner {
    p: u64,
    n: usize,
    q: u64,
    modulus: Vec<u64>,
    tables: std::sync::OnceLock<SmallFieldTables>,
}

/// Flat lookup tables over element indices, built lazily for q <= 512.
/// They drive the inner loops of exhaustive scans without touching element
/// representations.
#[derive(Debug)]
pub struct SmallFieldTables {
    q: u64,
    add: Vec<u64>,
    mul: Vec<u64>,
    inv: Vec<u64>,
    neg: Vec<u64>,
}

impl SmallFieldTables {
    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        self.add[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.mul[(a * self.q + b) as usize]
    }

    /// Index of the inverse; index 0 maps to 0, callers guard zero.
    #[inline]
    pub fn inv(&self, a: u64) -> u64 {
        self.inv[a as usize]
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        self.neg[a as usize]
    }
}

const TABLE_LIMIT: u64 = 512;

/// Immutable context for one finite field.
#[derive(Clone)]
pub struct FieldCtx {
    inner: Arc<FieldInner>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldCtx({})", self.spec_string())
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other)
    }
}
impl Eq for FieldCtx {}

impl Hash for FieldCtx {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.p().hash(state);
        self.inner.modulus.hash(state);
    }
}

impl PartialOrd for FieldCtx {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldCtx {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.p(), self.n(), &self.inner.modulus).cmp(&(other.p(), other.n(), &other.inner.modulus))
    }
}

impl FieldCtx {
    /// Build F_{p^n}. When `modulus` is omitted the canonical one is chosen:
    /// the first irreducible monic degree-n polynomial in ascending
    /// lexicographic order of (c_{n-1}, ..., c_0).
    pub fn new(p: u64, n: usize, modulus: Option<Vec<u64>>) -> Result<FieldCtx> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > MAX_P {
            return Err(Error::FieldTooLarge { p, n });
        }
        if n == 0 {
            return Err(Error::MalformedModulus("extension degree must be >= 1".into()));
        }
        let q = p
            .checked_pow(n as u32)
            .ok_or(Error::FieldTooLarge { p, n })?;
        let modulus = match modulus {
            Some(raw) => {
                let mut m: Vec<u64> = raw.iter().map(|c| c % p).collect();
                if m.len() != n + 1 {
                    return Err(Error::MalformedModulus(format!(
                        "expected {} coefficients, got {}",
                        n + 1,
                        m.len()
                    )));
                }
                if m[n] != 1 {
                    return Err(Error::MalformedModulus("modulus must be monic".into()));
                }
                ptrim(&mut m);
                if m.len() != n + 1 {
                    return Err(Error::MalformedModulus("degree dropped after reduction".into()));
                }
                if !pirreducible(&m, p) {
                    return Err(Error::ReducibleModulus(modulus_string(&m)));
                }
                m
            }
            None => first_irreducible(p, n)?,
        };
        Ok(FieldCtx {
            inner: Arc::new(FieldInner {
                p,
                n,
                q,
                modulus,
                tables: std::sync::OnceLock::new(),
            }),
        })
    }

    /// Index-arithmetic tables, available for q <= 512.
    pub fn small_tables(&self) -> Option<&SmallFieldTables> {
        if self.q() > TABLE_LIMIT {
            return None;
        }
        Some(self.inner.tables.get_or_init(|| {
            let q = self.q();
            let elems: Vec<FieldElem> = self.enumerate().collect();
            let mut add = vec![0u64; (q * q) as usize];
            let mut mul = vec![0u64; (q * q) as usize];
            let mut inv = vec![0u64; q as usize];
            let mut neg = vec![0u64; q as usize];
            for (i, a) in elems.iter().enumerate() {
                neg[i] = (-a).index();
                if i > 0 {
                    inv[i] = a.inv().expect("nonzero").index();
                }
                for (j, b) in elems.iter().enumerate() {
                    add[i * q as usize + j] = (a + b).index();
                    mul[i * q as usize + j] = (a * b).index();
                }
            }
            SmallFieldTables {
                q,
                add,
                mul,
                inv,
                neg,
            }
        }))
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn n(&self) -> usize {
        self.inner.n
    }

    /// Field size q = p^n.
    pub fn q(&self) -> u64 {
        self.inner.q
    }

    /// Modulus coefficients, constant first, length n + 1.
    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.p(),
            n: self.n(),
            modulus: self.inner.modulus.clone(),
        }
    }

    /// Specification string `p^n:c0,c1,...,cn` as used by the CLI and files.
    pub fn spec_string(&self) -> String {
        format!(
            "{}^{}:{}",
            self.p(),
            self.n(),
            self.inner
                .modulus
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }

    pub fn same_field(&self, other: &FieldCtx) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.p() == other.p()
                && self.n() == other.n()
                && self.inner.modulus == other.inner.modulus)
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem {
            ctx: self.clone(),
            coeffs: vec![0; self.n()],
        }
    }

    pub fn one(&self) -> FieldElem {
        self.from_int(1)
    }

    /// Image of the integer c in the prime subfield.
    pub fn from_int(&self, c: u64) -> FieldElem {
        let mut coeffs = vec![0; self.n()];
        coeffs[0] = c % self.p();
        FieldElem {
            ctx: self.clone(),
            coeffs,
        }
    }

    /// Image of a signed integer in the prime subfield.
    pub fn from_i64(&self, c: i64) -> FieldElem {
        let p = self.p() as i64;
        self.from_int(c.rem_euclid(p) as u64)
    }

    /// The class of t, the root of the modulus.
    pub fn generator(&self) -> FieldElem {
        if self.n() == 1 {
            // t = -c0 in the prime field
            let c0 = self.inner.modulus[0];
            return self.from_int(self.p() - c0 % self.p());
        }
        let mut coeffs = vec![0; self.n()];
        coeffs[1] = 1;
        FieldElem {
            ctx: self.clone(),
            coeffs,
        }
    }

    /// Element from explicit power-basis coordinates (reduced mod p).
    pub fn elem(&self, coeffs: &[u64]) -> Result<FieldElem> {
        if coeffs.len() > self.n() {
            return Err(Error::Domain(format!(
                "too many coordinates: {} > {}",
                coeffs.len(),
                self.n()
            )));
        }
        let mut c: Vec<u64> = coeffs.iter().map(|x| x % self.p()).collect();
        c.resize(self.n(), 0);
        Ok(FieldElem {
            ctx: self.clone(),
            coeffs: c,
        })
    }

    /// All q elements, lexicographic on coefficient vectors with the
    /// constant coordinate varying fastest.
    pub fn enumerate(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.q()).map(move |i| self.elem_from_index(i))
    }

    /// Inverse of [`FieldElem::index`].
    pub fn elem_from_index(&self, mut i: u64) -> FieldElem {
        let p = self.p();
        let mut coeffs = vec![0; self.n()];
        for c in coeffs.iter_mut() {
            *c = i % p;
            i /= p;
        }
        FieldElem {
            ctx: self.clone(),
            coeffs,
        }
    }

    /// Embedding of this field into `target` (requires n | target.n and the
    /// same p), computed by locating the first root of our modulus there.
    pub fn embed(&self, target: &FieldCtx) -> Result<FieldEmbedding> {
        if self.p() != target.p() {
            return Err(Error::NoEmbedding("different characteristic".into()));
        }
        if !target.n().is_multiple_of(self.n()) {
            return Err(Error::NoEmbedding(format!(
                "{} does not divide {}",
                self.n(),
                target.n()
            )));
        }
        if self.same_field(target) {
            let root = target.generator();
            return Ok(FieldEmbedding::from_root(self.clone(), target.clone(), root));
        }
        let modulus = self.inner.modulus.clone();
        for cand in target.enumerate() {
            // evaluate the modulus at cand via Horner
            let mut acc = target.zero();
            for &c in modulus.iter().rev() {
                acc = &(&acc * &cand) + &target.from_int(c);
            }
            if acc.is_zero() {
                return Ok(FieldEmbedding::from_root(self.clone(), target.clone(), cand));
            }
        }
        Err(Error::NoEmbedding("modulus has no root in target".into()))
    }
}

fn modulus_string(m: &[u64]) -> String {
    m.iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Subfield embedding F_{p^m} -> F_{p^n}, m | n.
#[derive(Debug, Clone)]
pub struct FieldEmbedding {
    src: FieldCtx,
    dst: FieldCtx,
    /// powers[j] = root^j for j in 0..src.n
    powers: Vec<FieldElem>,
}

impl FieldEmbedding {
    fn from_root(src: FieldCtx, dst: FieldCtx, root: FieldElem) -> FieldEmbedding {
        let mut powers = Vec::with_capacity(src.n());
        let mut acc = dst.one();
        for _ in 0..src.n() {
            powers.push(acc.clone());
            acc = &acc * &root;
        }
        FieldEmbedding { src, dst, powers }
    }

    pub fn src(&self) -> &FieldCtx {
        &self.src
    }

    pub fn dst(&self) -> &FieldCtx {
        &self.dst
    }

    pub fn map(&self, a: &FieldElem) -> FieldElem {
        assert!(
            a.ctx.same_field(&self.src),
            "embedding applied to element of a different field"
        );
        let mut acc = self.dst.zero();
        for (j, pw) in self.powers.iter().enumerate() {
            if a.coeffs[j] != 0 {
                acc = &acc + &(pw * &self.dst.from_int(a.coeffs[j]));
            }
        }
        acc
    }
}

// ---- Field elements ----

/// An element of F_{p^n} in canonical reduced form.
#[derive(Clone)]
pub struct FieldElem {
    ctx: FieldCtx,
    coeffs: Vec<u64>,
}

impl FieldElem {
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    /// Power-basis coordinates, constant first, length n.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Position of this element in the enumeration order.
    pub fn index(&self) -> u64 {
        let p = self.ctx.p();
        let mut i = 0u64;
        for &c in self.coeffs.iter().rev() {
            i = i * p + c;
        }
        i
    }

    fn assert_same(&self, other: &FieldElem) {
        assert!(
            self.ctx.same_field(&other.ctx),
            "field context mismatch: {} vs {}",
            self.ctx.spec_string(),
            other.ctx.spec_string()
        );
    }

    pub fn pow(&self, mut e: u128) -> FieldElem {
        let mut base = self.clone();
        let mut acc = self.ctx.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// a^(p^k); Frobenius has order n, so k is reduced mod n first.
    pub fn frobenius(&self, k: usize) -> FieldElem {
        let k = k % self.ctx.n();
        let p = self.ctx.p();
        let mut acc = self.clone();
        for _ in 0..k {
            acc = acc.pow(p as u128);
        }
        acc
    }

    pub fn inv(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // use the index table when some scan has already built it
        if let Some(t) = self.ctx.inner.tables.get() {
            return Ok(self.ctx.elem_from_index(t.inv(self.index())));
        }
        Ok(self.pow((self.ctx.q() - 2) as u128))
    }

    pub fn div(&self, other: &FieldElem) -> Result<FieldElem> {
        self.assert_same(other);
        Ok(self * &other.inv()?)
    }

    /// True when the element lies in the subfield F_{p^m} (m | n).
    pub fn in_subfield(&self, m: usize) -> bool {
        self.frobenius(m) == *self
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same_field(&other.ctx) && self.coeffs == other.coeffs
    }
}
impl Eq for FieldElem {}

impl Hash for FieldElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ctx.p().hash(state);
        self.ctx.modulus().hash(state);
        self.coeffs.hash(state);
    }
}

impl PartialOrd for FieldElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElem {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ctx.p(), self.ctx.n(), self.ctx.modulus())
            .cmp(&(other.ctx.p(), other.ctx.n(), other.ctx.modulus()))
            .then_with(|| self.index().cmp(&other.index()))
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        self.assert_same(rhs);
        let p = self.ctx.p();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        FieldElem {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }
}

impl Sub for &FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        self.assert_same(rhs);
        let p = self.ctx.p();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(&a, &b)| (a + p - b) % p)
            .collect();
        FieldElem {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        let p = self.ctx.p();
        let coeffs = self.coeffs.iter().map(|&a| (p - a) % p).collect();
        FieldElem {
            ctx: self.ctx.clone(),
            coeffs,
        }
    }
}

impl Mul for &FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        self.assert_same(rhs);
        let p = self.ctx.p();
        let n = self.ctx.n();
        if n == 1 {
            return FieldElem {
                ctx: self.ctx.clone(),
                coeffs: vec![self.coeffs[0] * rhs.coeffs[0] % p],
            };
        }
        let prod = pmul(&self.coeffs, &rhs.coeffs, p);
        let mut red = prem(&prod, self.ctx.modulus(), p);
        red.resize(n, 0);
        FieldElem {
            ctx: self.ctx.clone(),
            coeffs: red,
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (j, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let part = match (j, c) {
                (0, c) => c.to_string(),
                (1, 1) => "t".to_string(),
                (1, c) => format!("{c}*t"),
                (j, 1) => format!("t^{j}"),
                (j, c) => format!("{c}*t^{j}"),
            };
            parts.push(part);
        }
        write!(f, "{}", parts.join("+"))
    }
}

impl FieldElem {
    /// True when the printed form is a single product term (no `+`).
    pub fn is_single_term(&self) -> bool {
        self.coeffs.iter().filter(|&&c| c != 0).count() <= 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f9() -> FieldCtx {
        FieldCtx::new(3, 2, None).unwrap()
    }

    #[test]
    fn test_make_field_prime() {
        let f2 = FieldCtx::new(2, 1, None).unwrap();
        assert_eq!(f2.q(), 2);
        assert_eq!(f2.modulus(), &[0, 1]); // t itself: first monic linear
    }

    #[test]
    fn test_make_field_f9_canonical_modulus() {
        // first irreducible monic quadratic over F_3 is t^2 + 1
        let f = f9();
        assert_eq!(f.modulus(), &[1, 0, 1]);
        assert_eq!(f.q(), 9);
    }

    #[test]
    fn test_make_field_explicit_modulus_accepted() {
        let f = FieldCtx::new(3, 2, Some(vec![1, 0, 1])).unwrap();
        assert_eq!(f.q(), 9);
    }

    #[test]
    fn test_make_field_not_prime() {
        assert!(matches!(FieldCtx::new(4, 1, None), Err(Error::NotPrime(4))));
    }

    #[test]
    fn test_make_field_reducible_modulus_rejected() {
        // t^2 + 2 = (t+1)(t+2) over F_3
        assert!(matches!(
            FieldCtx::new(3, 2, Some(vec![2, 0, 1])),
            Err(Error::ReducibleModulus(_))
        ));
    }

    #[test]
    fn test_canonical_moduli_match_tables() {
        assert_eq!(FieldCtx::new(2, 2, None).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(FieldCtx::new(2, 3, None).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(FieldCtx::new(2, 4, None).unwrap().modulus(), &[1, 1, 0, 0, 1]);
        assert_eq!(FieldCtx::new(5, 2, None).unwrap().modulus(), &[2, 0, 1]);
    }

    #[test]
    fn test_arith_t_squared_is_minus_one() {
        let f = f9();
        let t = f.generator();
        assert_eq!(&t * &t, f.from_int(2));
    }

    #[test]
    fn test_mul_identity() {
        let f = f9();
        for a in f.enumerate() {
            assert_eq!(&a * &f.one(), a);
        }
    }

    #[test]
    fn test_inv_zero_errors() {
        let f = f9();
        assert!(matches!(f.zero().inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn test_frobenius_of_t_in_f9() {
        let f = f9();
        let t = f.generator();
        // t^3 = t * t^2 = -t = 2t
        assert_eq!(t.frobenius(1), &f.from_int(2) * &t);
    }

    #[test]
    fn test_frobenius_identity_on_prime_subfield() {
        let f = f9();
        for c in 0..3 {
            let e = f.from_int(c);
            assert_eq!(e.frobenius(1), e);
        }
    }

    #[test]
    fn test_enumerate_f2_and_f4() {
        let f2 = FieldCtx::new(2, 1, None).unwrap();
        let elems: Vec<_> = f2.enumerate().collect();
        assert_eq!(elems, vec![f2.zero(), f2.one()]);

        let f4 = FieldCtx::new(2, 2, None).unwrap();
        let elems: Vec<_> = f4.enumerate().collect();
        let t = f4.generator();
        assert_eq!(elems, vec![f4.zero(), f4.one(), t.clone(), &t + &f4.one()]);
    }

    #[test]
    fn test_field_axioms_exhaustive_up_to_81() {
        for (p, n) in [(2u64, 1usize), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2), (2, 4), (3, 4)] {
            let f = FieldCtx::new(p, n, None).unwrap();
            let q = f.q();
            let elems: Vec<_> = f.enumerate().collect();
            assert_eq!(elems.len() as u64, q);
            // all distinct
            let set: std::collections::BTreeSet<_> = elems.iter().map(|e| e.index()).collect();
            assert_eq!(set.len() as u64, q);
            for a in &elems {
                // a^q = a
                assert_eq!(a.pow(q as u128), *a);
                if !a.is_zero() {
                    assert!((&a.inv().unwrap() * a).is_one());
                }
                for b in &elems {
                    // Frobenius is a ring homomorphism
                    let fr = |x: &FieldElem| x.pow(p as u128);
                    assert_eq!(fr(&(a + b)), &fr(a) + &fr(b));
                    assert_eq!(fr(&(a * b)), &fr(a) * &fr(b));
                }
            }
        }
    }

    #[test]
    fn test_embedding_f3_into_f9() {
        let f3 = FieldCtx::new(3, 1, None).unwrap();
        let f9 = f9();
        let emb = f3.embed(&f9).unwrap();
        for a in f3.enumerate() {
            for b in f3.enumerate() {
                assert_eq!(emb.map(&(&a * &b)), &emb.map(&a) * &emb.map(&b));
                assert_eq!(emb.map(&(&a + &b)), &emb.map(&a) + &emb.map(&b));
            }
        }
    }

    #[test]
    fn test_embedding_f4_into_f16() {
        let f4 = FieldCtx::new(2, 2, None).unwrap();
        let f16 = FieldCtx::new(2, 4, None).unwrap();
        let emb = f4.embed(&f16).unwrap();
        let t = f4.generator();
        let img = emb.map(&t);
        // image satisfies t^2 + t + 1 = 0
        assert!((&(&img * &img) + &(&img + &f16.one())).is_zero());
    }

    #[test]
    fn test_embedding_requires_divisibility() {
        let f4 = FieldCtx::new(2, 2, None).unwrap();
        let f8 = FieldCtx::new(2, 3, None).unwrap();
        assert!(f4.embed(&f8).is_err());
    }

    #[test]
    fn test_display_element() {
        let f = f9();
        let t = f.generator();
        let e = &(&f.from_int(2) * &t) + &f.one();
        assert_eq!(e.to_string(), "2*t+1");
        assert_eq!(f.zero().to_string(), "0");
    }
}
