//! Arithmetic in F_q for q = p^k, backed by full operation tables.
//!
//! Elements are encoded as integers in `[0, q)` whose base-p digits are the
//! coefficients (low degree first) of a polynomial modulo the field's
//! defining modulus. That encoding fixes the enumeration order used by every
//! "first element such that ..." choice in the crate.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::IrreducibleCache;

/// Default upper bound on the field order accepted by [`make_field`].
pub const DEFAULT_FIELD_BOUND: u32 = 128;

/// Hard limit imposed by the one-byte element encoding.
pub const MAX_FIELD_ORDER: u32 = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{k} exceeds the bound {bound}")]
    TooLarge { p: u32, k: u32, bound: u32 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation needs odd characteristic, but q = {0}")]
    EvenCharacteristic(u32),
    #[error("exponent must be even, got {0}")]
    OddExponent(u32),
    #[error("F_{q} has no non-square zeta with zeta^{half} = -1")]
    NoConstrainedNonsquare { q: u32, half: u32 },
    #[error("argument must be positive")]
    ZeroArgument,
}

/// An element of some [`FieldSpec`], stored as its canonical index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(u8);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Canonical index in `[0, q)`.
    pub fn value(self) -> u32 {
        self.0 as u32
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub(crate) fn idx(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub(crate) fn from_raw(v: u8) -> Self {
        FieldElement(v)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// The field F_q together with its operation tables.
///
/// Immutable after construction; share it behind an `Arc` when several
/// owners need it.
pub struct FieldSpec {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    pub(crate) irreducibles: IrreducibleCache,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k
    }
}

impl Eq for FieldSpec {}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^k`, or returns `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut k = 0u32;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    if rest != 1 || p > u32::MAX as u64 {
        return None;
    }
    Some((p as u32, k))
}

/// The largest power of two dividing `k`.
pub fn two_adic(k: u64) -> Result<u64, FieldError> {
    if k == 0 {
        return Err(FieldError::ZeroArgument);
    }
    Ok(1u64 << k.trailing_zeros())
}

/// Builds F_{p^k} with the default order bound.
pub fn make_field(p: u32, k: u32) -> Result<FieldSpec, FieldError> {
    make_field_with_bound(p, k, DEFAULT_FIELD_BOUND)
}

/// Builds the field of order `q`.
pub fn field_of_order(q: u64) -> Result<FieldSpec, FieldError> {
    field_of_order_with_bound(q, DEFAULT_FIELD_BOUND)
}

pub fn field_of_order_with_bound(q: u64, bound: u32) -> Result<FieldSpec, FieldError> {
    let (p, k) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
    make_field_with_bound(p, k, bound)
}

pub fn make_field_with_bound(p: u32, k: u32, bound: u32) -> Result<FieldSpec, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    if k == 0 {
        return Err(FieldError::ZeroDegree);
    }
    let bound = bound.min(MAX_FIELD_ORDER);
    let q = (p as u64)
        .checked_pow(k)
        .filter(|&q| q <= bound as u64)
        .ok_or(FieldError::TooLarge { p, k, bound })? as u32;

    let modulus = least_irreducible(p, k);
    let size = q as usize;
    let digits = |mut x: u32| -> Vec<u32> {
        (0..k)
            .map(|_| {
                let d = x % p;
                x /= p;
                d
            })
            .collect()
    };
    let encode = |ds: &[u32]| -> u32 { ds.iter().rev().fold(0, |acc, &d| acc * p + d) };
    let all_digits: Vec<Vec<u32>> = (0..q).map(digits).collect();

    let mut add = vec![0u8; size * size];
    let mut mul = vec![0u8; size * size];
    for a in 0..size {
        for b in 0..size {
            let da = &all_digits[a];
            let db = &all_digits[b];
            let sum: Vec<u32> = da.iter().zip(db).map(|(x, y)| (x + y) % p).collect();
            add[a * size + b] = encode(&sum) as u8;
            mul[a * size + b] = encode(&mulmod(da, db, &modulus, p)) as u8;
        }
    }
    let mut neg = vec![0u8; size];
    let mut inv = vec![0u8; size];
    for a in 0..size {
        neg[a] = (0..size).find(|&b| add[a * size + b] == 0).unwrap() as u8;
        if a != 0 {
            inv[a] = (1..size).find(|&b| mul[a * size + b] == 1).unwrap() as u8;
        }
    }

    Ok(FieldSpec {
        p,
        k,
        q,
        modulus,
        add,
        mul,
        neg,
        inv,
        irreducibles: IrreducibleCache::default(),
    })
}

fn mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // modulus is monic of degree k
    for top in (k..prod.len()).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        for (j, &m) in modulus.iter().enumerate() {
            let pos = top - k + j;
            prod[pos] = (prod[pos] + (p - c) * m) % p;
        }
    }
    prod.truncate(k);
    prod
}

/// The lexicographically least monic irreducible of degree `k` over F_p,
/// comparing coefficient vectors from the constant term upwards.
fn least_irreducible(p: u32, k: u32) -> Vec<u32> {
    if k == 1 {
        return vec![0, 1];
    }
    let total = (p as u64).pow(k);
    for j in 0..total {
        // c_0 is the most significant digit of j
        let mut lower = vec![0u32; k as usize];
        let mut x = j;
        for i in (0..k as usize).rev() {
            lower[i] = (x % p as u64) as u32;
            x /= p as u64;
        }
        let mut cand = lower;
        cand.push(1);
        if prime_field_irreducible(&cand, p) {
            return cand;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn prime_field_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for e in 1..=deg / 2 {
        let count = (p as u64).pow(e as u32);
        for j in 0..count {
            let mut g = Vec::with_capacity(e + 1);
            let mut x = j;
            for _ in 0..e {
                g.push((x % p as u64) as u32);
                x /= p as u64;
            }
            g.push(1);
            if prime_field_divides(&g, f, p) {
                return false;
            }
        }
    }
    true
}

fn prime_field_divides(g: &[u32], f: &[u32], p: u32) -> bool {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        for (j, &gj) in g.iter().enumerate() {
            r[shift + j] = (r[shift + j] + (p - c) * gj) % p;
        }
        r.pop();
    }
    r.iter().all(|&x| x == 0)
}

impl FieldSpec {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Defining modulus over F_p, ascending coefficients, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn is_odd(&self) -> bool {
        self.p != 2
    }

    pub fn element(&self, index: u32) -> Option<FieldElement> {
        (index < self.q).then_some(FieldElement(index as u8))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p as i64) as u8)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(|i| FieldElement(i as u8))
    }

    pub fn nonzero(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (1..self.q).map(|i| FieldElement(i as u8))
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    pub fn minus_one(&self) -> FieldElement {
        self.neg(FieldElement::ONE)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add[a.idx() * self.q as usize + b.idx()])
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.mul[a.idx() * self.q as usize + b.idx()])
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.idx()])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(FieldElement(self.inv[a.idx()]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Signed power; negative exponents need a nonzero base.
    pub fn powi(&self, a: FieldElement, e: i64) -> Result<FieldElement, FieldError> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(self.inv(a)?, e.unsigned_abs()))
        }
    }

    pub fn arith(&self, a: FieldElement, b: FieldElement, op: ArithOp) -> Result<FieldElement, FieldError> {
        match op {
            ArithOp::Add => Ok(self.add(a, b)),
            ArithOp::Sub => Ok(self.sub(a, b)),
            ArithOp::Mul => Ok(self.mul(a, b)),
            ArithOp::Div => self.div(a, b),
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: FieldElement) -> Result<u32, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let mut x = a;
        let mut k = 1;
        while x != FieldElement::ONE {
            x = self.mul(x, a);
            k += 1;
        }
        Ok(k)
    }

    /// First generator of F_q^* in enumeration order.
    pub fn primitive_element(&self) -> FieldElement {
        self.nonzero()
            .find(|&a| self.order(a).unwrap() == self.q - 1)
            .expect("F_q^* is cyclic")
    }

    pub fn is_square(&self, x: FieldElement) -> bool {
        if !self.is_odd() || x.is_zero() {
            return true;
        }
        self.pow(x, ((self.q - 1) / 2) as u64) == FieldElement::ONE
    }

    /// The first non-square in enumeration order.
    pub fn canonical_nonsquare(&self) -> Result<FieldElement, FieldError> {
        if !self.is_odd() {
            return Err(FieldError::EvenCharacteristic(self.q));
        }
        Ok(self.elements().find(|&x| !self.is_square(x)).unwrap())
    }

    /// The first non-square `zeta` with `zeta^(n/2) = -1`.
    pub fn constrained_nonsquare(&self, n: u32) -> Result<FieldElement, FieldError> {
        if !self.is_odd() {
            return Err(FieldError::EvenCharacteristic(self.q));
        }
        if !n.is_multiple_of(2) {
            return Err(FieldError::OddExponent(n));
        }
        let target = self.minus_one();
        self.elements()
            .find(|&x| !self.is_square(x) && self.pow(x, (n / 2) as u64) == target)
            .ok_or(FieldError::NoConstrainedNonsquare { q: self.q, half: n / 2 })
    }

    /// Whether some `alpha` in F_q^* has `alpha^n = -1`; decided by 2-adic
    /// valuations of `n` and `q - 1`.
    pub fn has_nth_root_of_minus_one(&self, n: u64) -> Result<bool, FieldError> {
        if !self.is_odd() {
            return Err(FieldError::EvenCharacteristic(self.q));
        }
        Ok(two_adic(n)? < two_adic((self.q - 1) as u64)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(f: &FieldSpec, i: u32) -> FieldElement {
        f.element(i).unwrap()
    }

    #[test]
    fn prime_field_basics() {
        let f3 = make_field(3, 1).unwrap();
        assert_eq!(f3.q(), 3);
        assert_eq!(f3.elements().count(), 3);
        assert_eq!(f3.mul(el(&f3, 2), el(&f3, 2)), el(&f3, 1));
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(f5.inv(el(&f5, 3)).unwrap(), el(&f5, 2));
    }

    #[test]
    fn extension_moduli() {
        // t^2 + t + 1 is the only monic irreducible quadratic over F_2
        let f4 = make_field(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        let t = el(&f4, 2);
        assert_eq!(f4.mul(t, t), el(&f4, 3));

        // over F_3: c0 = 0 candidates are divisible by t, then (1, 0) is t^2 + 1
        let f9 = make_field(3, 2).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(make_field(4, 1).unwrap_err(), FieldError::NotPrime(4));
        assert_eq!(make_field(3, 0).unwrap_err(), FieldError::ZeroDegree);
        assert!(matches!(make_field(2, 8), Err(FieldError::TooLarge { .. })));
        assert!(make_field_with_bound(2, 8, 256).is_ok());
        assert_eq!(field_of_order(12).unwrap_err(), FieldError::NotPrimePower(12));
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(f5.inv(FieldElement::ZERO).unwrap_err(), FieldError::DivisionByZero);
        assert_eq!(
            f5.arith(el(&f5, 1), FieldElement::ZERO, ArithOp::Div).unwrap_err(),
            FieldError::DivisionByZero
        );
    }

    #[test]
    fn squares() {
        let f3 = make_field(3, 1).unwrap();
        assert!(!f3.is_square(el(&f3, 2)));
        let f4 = make_field(2, 2).unwrap();
        assert!(f4.elements().all(|x| f4.is_square(x)));
        let f7 = make_field(7, 1).unwrap();
        assert!(f7.is_square(el(&f7, 4)));
    }

    #[test]
    fn nonsquare_choices() {
        let f3 = make_field(3, 1).unwrap();
        let f5 = make_field(5, 1).unwrap();
        let f7 = make_field(7, 1).unwrap();
        assert_eq!(f3.canonical_nonsquare().unwrap(), el(&f3, 2));
        assert_eq!(f5.canonical_nonsquare().unwrap(), el(&f5, 2));
        assert_eq!(
            make_field(2, 1).unwrap().canonical_nonsquare().unwrap_err(),
            FieldError::EvenCharacteristic(2)
        );
        assert_eq!(f7.constrained_nonsquare(2).unwrap(), el(&f7, 6));
        assert_eq!(f3.constrained_nonsquare(2).unwrap(), el(&f3, 2));
        assert_eq!(f5.constrained_nonsquare(4).unwrap(), el(&f5, 2));
        assert_eq!(f5.constrained_nonsquare(3).unwrap_err(), FieldError::OddExponent(3));
        // zeta^1 = -1 forces zeta = 4 in F_5, a square
        assert!(matches!(
            f5.constrained_nonsquare(2),
            Err(FieldError::NoConstrainedNonsquare { .. })
        ));
    }

    #[test]
    fn two_adic_parts() {
        assert_eq!(two_adic(12).unwrap(), 4);
        assert_eq!(two_adic(7).unwrap(), 1);
        assert_eq!(two_adic(8).unwrap(), 8);
        assert_eq!(two_adic(0).unwrap_err(), FieldError::ZeroArgument);
    }

    #[test]
    fn roots_of_minus_one() {
        let f5 = make_field(5, 1).unwrap();
        assert!(f5.has_nth_root_of_minus_one(2).unwrap());
        assert_eq!(f5.pow(el(&f5, 2), 2), f5.minus_one());
        assert!(!make_field(7, 1).unwrap().has_nth_root_of_minus_one(2).unwrap());
        assert!(make_field(3, 2).unwrap().has_nth_root_of_minus_one(4).unwrap());
        assert!(make_field(2, 2).unwrap().has_nth_root_of_minus_one(3).is_err());
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(64), Some((2, 6)));
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(18), None);
    }
}
