//! Dense polynomials over F_q, self-reciprocal families and factoring.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldElement, FieldError, FieldSpec};

/// Degrees whose irreducible lists are memoised per field.
pub const MAX_CACHED_DEGREE: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("constant term must be nonzero")]
    ZeroConstantTerm,
    #[error("constant term must be 1")]
    ConstantTermNotOne,
    #[error("scalar must be nonzero")]
    ZeroScalar,
    #[error("coefficient {0} is not an element of the field")]
    BadCoefficient(u32),
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("degree {0} is out of range")]
    DegreeOutOfRange(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Default)]
pub(crate) struct IrreducibleCache {
    by_degree: [OnceLock<Vec<Poly>>; MAX_CACHED_DEGREE + 1],
}

/// Ascending coefficient vector with no trailing zeros; the zero polynomial
/// has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poly {
    coeffs: Vec<FieldElement>,
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![FieldElement::ONE] }
    }

    pub fn from_coeffs(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Builds a polynomial from coefficient indices, checking each lies in F_q.
    pub fn from_indices(field: &FieldSpec, coeffs: &[u32]) -> Result<Self, PolyError> {
        let v = coeffs
            .iter()
            .map(|&c| field.element(c).ok_or(PolyError::BadCoefficient(c)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Poly::from_coeffs(v))
    }

    /// `t - a`.
    pub fn linear(field: &FieldSpec, a: FieldElement) -> Self {
        Poly::from_coeffs(vec![field.neg(a), FieldElement::ONE])
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn indices(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.value()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial reported as 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn constant(&self) -> FieldElement {
        self.coeff(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == FieldElement::ONE
    }

    pub fn add(&self, other: &Poly, f: &FieldSpec) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Poly, f: &FieldSpec) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn scale(&self, c: FieldElement, f: &FieldSpec) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly, f: &FieldSpec) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn pow(&self, e: u32, f: &FieldSpec) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self, f);
        }
        acc
    }

    /// Quotient and remainder of division by a nonzero `d`.
    pub fn divrem(&self, d: &Poly, f: &FieldSpec) -> Result<(Poly, Poly), PolyError> {
        let dd = d.degree().ok_or(PolyError::ZeroPolynomial)?;
        let lead_inv = f.inv(d.leading())?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut q = vec![FieldElement::ZERO; r.len() - dd];
        for top in (dd..r.len()).rev() {
            let c = f.mul(r[top], lead_inv);
            if c.is_zero() {
                continue;
            }
            q[top - dd] = c;
            for (j, &dj) in d.coeffs.iter().enumerate() {
                let pos = top - dd + j;
                r[pos] = f.sub(r[pos], f.mul(c, dj));
            }
        }
        r.truncate(dd);
        Ok((Poly::from_coeffs(q), Poly::from_coeffs(r)))
    }

    pub fn divides(&self, other: &Poly, f: &FieldSpec) -> Result<bool, PolyError> {
        Ok(other.divrem(self, f)?.1.is_zero())
    }

    pub fn eval(&self, x: FieldElement, f: &FieldSpec) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn monic(&self, f: &FieldSpec) -> Result<Poly, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        Ok(self.scale(f.inv(self.leading())?, f))
    }

    /// Coefficient reversal `t^deg p(1/t)`.
    pub fn reverse(&self) -> Poly {
        let mut c = self.coeffs.clone();
        c.reverse();
        Poly::from_coeffs(c)
    }

    /// The monic polynomial whose roots are the inverses of the roots of a
    /// monic `p` with nonzero constant term.
    pub fn tilde(&self, f: &FieldSpec) -> Result<Poly, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if self.constant().is_zero() {
            return Err(PolyError::ZeroConstantTerm);
        }
        if !self.is_monic() {
            return Err(PolyError::NotMonic);
        }
        self.reverse().monic(f)
    }

    /// `t^d p(zeta/t)` rescaled to be monic.
    pub fn breve(&self, zeta: FieldElement, f: &FieldSpec) -> Result<Poly, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if self.constant().is_zero() {
            return Err(PolyError::ZeroConstantTerm);
        }
        if zeta.is_zero() {
            return Err(PolyError::ZeroScalar);
        }
        self.zeta_reflect(zeta, f).monic(f)
    }

    /// `t^d p(zeta/t)` without normalisation.
    fn zeta_reflect(&self, zeta: FieldElement, f: &FieldSpec) -> Poly {
        let d = self.deg();
        let mut out = vec![FieldElement::ZERO; d + 1];
        let mut zp = FieldElement::ONE;
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[d - i] = f.mul(c, zp);
            zp = f.mul(zp, zeta);
        }
        Poly::from_coeffs(out)
    }

    fn check_unit_constant(&self) -> Result<(), PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if self.constant() != FieldElement::ONE {
            return Err(PolyError::ConstantTermNotOne);
        }
        Ok(())
    }

    /// Whether `t^d p(1/t)` is a scalar multiple of `p`.
    pub fn is_self_reciprocal(&self, f: &FieldSpec) -> Result<bool, PolyError> {
        self.check_unit_constant()?;
        let d = self.deg();
        let c = self.leading();
        Ok((0..=d).all(|i| self.coeff(d - i) == f.mul(c, self.coeff(i))))
    }

    /// Whether `t^d p(zeta/t)` is a scalar multiple of `p`.
    pub fn is_zeta_self_reciprocal(&self, zeta: FieldElement, f: &FieldSpec) -> Result<bool, PolyError> {
        if !f.is_odd() {
            return Err(FieldError::EvenCharacteristic(f.q()).into());
        }
        self.check_unit_constant()?;
        if zeta.is_zero() {
            return Err(PolyError::ZeroScalar);
        }
        let g = self.zeta_reflect(zeta, f);
        let c = g.constant();
        let d = self.deg();
        Ok((0..=d).all(|j| g.coeff(j) == f.mul(c, self.coeff(j))))
    }

    /// `p(eta t)`, i.e. `a_k -> a_k eta^k`.
    pub fn eta_act(&self, eta: FieldElement, f: &FieldSpec) -> Result<Poly, PolyError> {
        if eta.is_zero() {
            return Err(PolyError::ZeroScalar);
        }
        let mut e = FieldElement::ONE;
        let mut out = Vec::with_capacity(self.coeffs.len());
        for &c in &self.coeffs {
            out.push(f.mul(c, e));
            e = f.mul(e, eta);
        }
        Ok(Poly::from_coeffs(out))
    }

    /// Translates `p(eta t)` that remain self-reciprocal.
    pub fn orbit_t(&self, f: &FieldSpec) -> Result<BTreeSet<Poly>, PolyError> {
        self.check_unit_constant()?;
        let mut out = BTreeSet::new();
        for eta in f.nonzero() {
            let g = self.eta_act(eta, f)?;
            if g.is_self_reciprocal(f)? {
                out.insert(g);
            }
        }
        Ok(out)
    }

    /// Translates `p(eta t)` that are zeta-self-reciprocal.
    pub fn orbit_s(&self, zeta: FieldElement, f: &FieldSpec) -> Result<BTreeSet<Poly>, PolyError> {
        self.check_unit_constant()?;
        let mut out = BTreeSet::new();
        for eta in f.nonzero() {
            let g = self.eta_act(eta, f)?;
            if g.is_zeta_self_reciprocal(zeta, f)? {
                out.insert(g);
            }
        }
        Ok(out)
    }

    pub fn factorize(&self, f: &FieldSpec) -> Result<Factorization, PolyError> {
        factorize(self, f)
    }

    pub fn is_irreducible(&self, f: &FieldSpec) -> Result<bool, PolyError> {
        let fac = factorize(self, f)?;
        Ok(fac.factors.len() == 1 && fac.factors[0].1 == 1)
    }
}

/// Monic irreducible factors with multiplicities, sorted by degree and then
/// coefficients, together with the leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElement,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn expand(&self, f: &FieldSpec) -> Poly {
        let mut acc = Poly::one().scale(self.unit, f);
        for (p, e) in &self.factors {
            acc = acc.mul(&p.pow(*e, f), f);
        }
        acc
    }
}

fn factorize(poly: &Poly, f: &FieldSpec) -> Result<Factorization, PolyError> {
    let unit = poly.leading();
    let mut g = poly.monic(f)?;
    let mut factors = Vec::new();
    let mut e = 1usize;
    while 2 * e <= g.deg() {
        for p in irreducibles(f, e)? {
            let mut count = 0;
            loop {
                let (quo, rem) = g.divrem(p, f)?;
                if !rem.is_zero() {
                    break;
                }
                g = quo;
                count += 1;
            }
            if count > 0 {
                factors.push((p.clone(), count));
            }
        }
        e += 1;
    }
    if g.deg() > 0 {
        factors.push((g, 1));
    }
    factors.sort_by(|a, b| (a.0.deg(), &a.0).cmp(&(b.0.deg(), &b.0)));
    Ok(Factorization { unit, factors })
}

/// Every monic polynomial of degree `d`, in coefficient order.
pub fn monic_polys(f: &FieldSpec, d: usize) -> impl Iterator<Item = Poly> + '_ {
    let q = f.q() as u64;
    let total = q.pow(d as u32);
    (0..total).map(move |mut j| {
        let mut c = Vec::with_capacity(d + 1);
        for _ in 0..d {
            c.push(FieldElement::from_raw((j % q) as u8));
            j /= q;
        }
        c.push(FieldElement::ONE);
        Poly::from_coeffs(c)
    })
}

/// Monic irreducibles of degree `d`, memoised on the field.
pub fn irreducibles(f: &FieldSpec, d: usize) -> Result<&Vec<Poly>, PolyError> {
    if d == 0 || d > MAX_CACHED_DEGREE {
        return Err(PolyError::DegreeOutOfRange(d));
    }
    Ok(f.irreducibles.by_degree[d].get_or_init(|| {
        let smaller: Vec<&Vec<Poly>> = (1..=d / 2).map(|e| irreducibles(f, e).unwrap()).collect();
        monic_polys(f, d)
            .filter(|cand| {
                smaller
                    .iter()
                    .flat_map(|v| v.iter())
                    .all(|p| !cand.divrem(p, f).unwrap().1.is_zero())
            })
            .collect()
    }))
}

/// Self-reciprocal polynomials of degree `d` with constant term 1, sorted.
pub fn enumerate_t(f: &FieldSpec, d: usize) -> Vec<Poly> {
    let mut out = BTreeSet::new();
    let signs: Vec<FieldElement> = if f.is_odd() {
        vec![FieldElement::ONE, f.minus_one()]
    } else {
        vec![FieldElement::ONE]
    };
    for c in signs {
        let free: Vec<usize> = (1..=d / 2).filter(|&i| 2 * i < d || c == FieldElement::ONE).collect();
        for vals in assignments(f, free.len()) {
            let mut coeffs = vec![FieldElement::ZERO; d + 1];
            coeffs[0] = FieldElement::ONE;
            coeffs[d] = c;
            for (&i, &v) in free.iter().zip(&vals) {
                coeffs[i] = v;
                coeffs[d - i] = f.mul(c, v);
            }
            out.insert(Poly::from_coeffs(coeffs));
        }
    }
    out.into_iter().collect()
}

/// Zeta-self-reciprocal polynomials of degree `d` with constant term 1,
/// sorted. Odd degrees only occur when `zeta` is a square.
pub fn enumerate_s(f: &FieldSpec, d: usize, zeta: FieldElement) -> Result<Vec<Poly>, PolyError> {
    if zeta.is_zero() {
        return Err(PolyError::ZeroScalar);
    }
    if d == 0 {
        return Ok(Vec::new());
    }
    let zd = f.pow(zeta, d as u64);
    let zinv = f.inv(zeta)?;
    let mid = f.pow(zeta, (d / 2) as u64);
    let mut out = BTreeSet::new();
    // t^d p(zeta/t) = c p forces c^2 = zeta^d
    for c in f.nonzero().filter(|&c| f.mul(c, c) == zd) {
        let free: Vec<usize> = (1..=d / 2).filter(|&i| 2 * i < d || c == mid).collect();
        for vals in assignments(f, free.len()) {
            let mut coeffs = vec![FieldElement::ZERO; d + 1];
            coeffs[0] = FieldElement::ONE;
            coeffs[d] = f.mul(c, f.pow(zinv, d as u64));
            for (&j, &v) in free.iter().zip(&vals) {
                coeffs[j] = v;
                if 2 * j < d {
                    coeffs[d - j] = f.mul(f.mul(c, v), f.pow(zinv, (d - j) as u64));
                }
            }
            out.insert(Poly::from_coeffs(coeffs));
        }
    }
    Ok(out.into_iter().collect())
}

fn assignments(f: &FieldSpec, len: usize) -> impl Iterator<Item = Vec<FieldElement>> + '_ {
    let q = f.q() as u64;
    (0..q.pow(len as u32)).map(move |mut j| {
        (0..len)
            .map(|_| {
                let v = FieldElement::from_raw((j % q) as u8);
                j /= q;
                v
            })
            .collect()
    })
}

/// Closed-form size of the self-reciprocal family of degree `d`.
pub fn count_nqd(q: u64, d: u32) -> u128 {
    let q = q as u128;
    if d == 0 {
        return 1;
    }
    let odd = q % 2 == 1;
    match (d % 2 == 1, odd) {
        (true, true) => 2 * q.pow((d - 1) / 2),
        (true, false) => q.pow((d - 1) / 2),
        (false, true) => (q + 1) * q.pow(d / 2 - 1),
        (false, false) => q.pow(d / 2),
    }
}

/// 1 for even `d`, 0 for odd `d`.
pub fn sigma(d: u32) -> u128 {
    u128::from(d.is_multiple_of(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use proptest::prelude::*;

    fn p(f: &FieldSpec, c: &[u32]) -> Poly {
        Poly::from_indices(f, c).unwrap()
    }

    /// Brute-force reference: all degree-d polys with unit constant term.
    fn brute_family(f: &FieldSpec, d: usize, pred: impl Fn(&Poly) -> bool) -> Vec<Poly> {
        let q = f.q() as u64;
        let mut out = Vec::new();
        for j in 0..q.pow(d as u32) {
            let mut x = j;
            let mut c = vec![FieldElement::ONE];
            for _ in 0..d {
                c.push(f.element((x % q) as u32).unwrap());
                x /= q;
            }
            if c[d].is_zero() {
                continue;
            }
            let poly = Poly::from_coeffs(c);
            if pred(&poly) {
                out.push(poly);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn tilde_and_breve() {
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(p(&f5, &[3, 1]).tilde(&f5).unwrap(), p(&f5, &[2, 1]));
        assert_eq!(p(&f5, &[2, 3, 1]).tilde(&f5).unwrap(), p(&f5, &[3, 4, 1]));
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(p(&f2, &[1, 1, 1]).tilde(&f2).unwrap(), p(&f2, &[1, 1, 1]));
        assert_eq!(p(&f5, &[0, 1]).tilde(&f5).unwrap_err(), PolyError::ZeroConstantTerm);
        assert_eq!(p(&f5, &[1, 2]).tilde(&f5).unwrap_err(), PolyError::NotMonic);
        // t^2 (1 + 2 (2/t) + 3 (2/t)^2) = 12 + 4t + t^2 = 2 + 4t + t^2
        let two = f5.element(2).unwrap();
        assert_eq!(p(&f5, &[1, 2, 3]).breve(two, &f5).unwrap(), p(&f5, &[2, 4, 1]));
        let f3 = make_field(3, 1).unwrap();
        let z = f3.element(2).unwrap();
        assert_eq!(p(&f3, &[2, 1]).breve(z, &f3).unwrap(), p(&f3, &[1, 1]));
        assert_eq!(p(&f3, &[1, 0, 1]).breve(z, &f3).unwrap(), p(&f3, &[1, 0, 1]));
        assert_eq!(
            p(&f5, &[1, 1]).breve(FieldElement::ZERO, &f5).unwrap_err(),
            PolyError::ZeroScalar
        );
    }

    #[test]
    fn reciprocity_predicates() {
        let f3 = make_field(3, 1).unwrap();
        assert!(p(&f3, &[1, 1, 1]).is_self_reciprocal(&f3).unwrap());
        assert!(p(&f3, &[1, 0, 2]).is_self_reciprocal(&f3).unwrap());
        assert!(!p(&f3, &[1, 1, 2]).is_self_reciprocal(&f3).unwrap());
        assert_eq!(
            p(&f3, &[2, 1]).is_self_reciprocal(&f3).unwrap_err(),
            PolyError::ConstantTermNotOne
        );
        let two = f3.element(2).unwrap();
        // t^2 + 1 -> t^2 ((2/t)^2 + 1) = 4 + t^2 = 1 + t^2
        assert!(p(&f3, &[1, 0, 1]).is_zeta_self_reciprocal(two, &f3).unwrap());
    }

    #[test]
    fn family_sizes_match_brute_force() {
        for (pp, k) in [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2), (7, 1)] {
            let f = make_field(pp, k).unwrap();
            for d in 1..=4usize {
                if (f.q() as u64).pow(d as u32) > 50_000 {
                    continue;
                }
                let t = enumerate_t(&f, d);
                let brute = brute_family(&f, d, |x| x.is_self_reciprocal(&f).unwrap());
                assert_eq!(t, brute, "T q={} d={d}", f.q());
                assert_eq!(t.len() as u128, count_nqd(f.q() as u64, d as u32));
                if f.is_odd() {
                    for zeta in f.nonzero() {
                        let s = enumerate_s(&f, d, zeta).unwrap();
                        let brute =
                            brute_family(&f, d, |x| x.is_zeta_self_reciprocal(zeta, &f).unwrap());
                        assert_eq!(s, brute, "S q={} d={d} zeta={zeta}", f.q());
                        if !f.is_square(zeta) {
                            assert_eq!(
                                s.len() as u128,
                                count_nqd(f.q() as u64, d as u32) * sigma(d as u32)
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn nqd_table() {
        assert_eq!(count_nqd(3, 3), 6);
        assert_eq!(count_nqd(3, 4), 12);
        assert_eq!(count_nqd(4, 3), 4);
        assert_eq!(count_nqd(4, 4), 16);
        assert_eq!(count_nqd(5, 1), 2);
    }

    #[test]
    fn irreducible_counts() {
        let f2 = make_field(2, 1).unwrap();
        let counts: Vec<usize> = (1..=6).map(|d| irreducibles(&f2, d).unwrap().len()).collect();
        assert_eq!(counts, vec![2, 1, 2, 3, 6, 9]);
        let f4 = make_field(2, 2).unwrap();
        assert_eq!(irreducibles(&f4, 2).unwrap().len(), 6);
        assert!(irreducibles(&f4, 0).is_err());
    }

    #[test]
    fn factoring() {
        let f3 = make_field(3, 1).unwrap();
        // (t+1)^2 (t^2+1)
        let g = p(&f3, &[1, 1]).pow(2, &f3).mul(&p(&f3, &[1, 0, 1]), &f3).scale(f3.element(2).unwrap(), &f3);
        let fac = g.factorize(&f3).unwrap();
        assert_eq!(fac.unit, f3.element(2).unwrap());
        assert_eq!(fac.factors, vec![(p(&f3, &[1, 1]), 2), (p(&f3, &[1, 0, 1]), 1)]);
        assert_eq!(fac.expand(&f3), g);
        assert!(p(&f3, &[1, 0, 1]).is_irreducible(&f3).unwrap());
        assert!(!p(&f3, &[2, 0, 1]).is_irreducible(&f3).unwrap());
        assert_eq!(Poly::zero().factorize(&f3).unwrap_err(), PolyError::ZeroPolynomial);
    }

    #[test]
    fn orbits() {
        let f5 = make_field(5, 1).unwrap();
        let g = p(&f5, &[1, 1]);
        let orb = g.orbit_t(&f5).unwrap();
        // 1 + a t is self-reciprocal only for a = +-1
        assert_eq!(orb.into_iter().collect::<Vec<_>>(), vec![p(&f5, &[1, 1]), p(&f5, &[1, 4])]);
        let two = f5.element(2).unwrap();
        let s = p(&f5, &[1, 0, 3]).orbit_s(two, &f5).unwrap();
        assert!(s.iter().all(|x| x.is_zeta_self_reciprocal(two, &f5).unwrap()));
    }

    proptest! {
        #[test]
        fn tilde_and_breve_are_involutions(c in proptest::collection::vec(0u32..7, 1..6), a0 in 1u32..7, z in 1u32..7) {
            let f7 = make_field(7, 1).unwrap();
            let mut c = c;
            c[0] = a0;
            c.push(1);
            let g = p(&f7, &c);
            let t = g.tilde(&f7).unwrap();
            prop_assert_eq!(t.tilde(&f7).unwrap(), g.clone());
            prop_assert_eq!(t.is_irreducible(&f7).unwrap(), g.is_irreducible(&f7).unwrap());
            let zeta = f7.element(z).unwrap();
            let b = g.breve(zeta, &f7).unwrap();
            prop_assert_eq!(b.breve(zeta, &f7).unwrap(), g);
        }

        #[test]
        fn factorization_expands_back(c in proptest::collection::vec(0u32..9, 2..7)) {
            let f9 = make_field(3, 2).unwrap();
            let g = p(&f9, &c);
            prop_assume!(!g.is_zero());
            let fac = g.factorize(&f9).unwrap();
            prop_assert_eq!(fac.expand(&f9), g);
            for (factor, _) in &fac.factors {
                prop_assert!(factor.is_monic());
            }
        }

        #[test]
        fn eta_preserves_self_reciprocity_up_to_orbit(a in 0u32..11, b in 0u32..11, eta in 1u32..11) {
            let f11 = make_field(11, 1).unwrap();
            let g = p(&f11, &[1, a, b, a, 1]);
            let e = f11.element(eta).unwrap();
            let h = g.eta_act(e, &f11).unwrap();
            let einv = f11.inv(e).unwrap();
            prop_assert_eq!(h.eta_act(einv, &f11).unwrap(), g);
        }
    }
}
