//! Brute-force ground truth: enumerate a small matrix group (or a central
//! quotient), split it into conjugacy classes and search for reversing
//! elements directly.
//!
//! Elements are stored as base-q codes of their row-major entries, sorted, so
//! membership and class lookup are binary searches. Elements of a quotient by
//! a group `Y` of scalars are stored by the least code in their coset.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::counting::{count, CountError, CountKind, CountOptions, Enumerate, Family, GroupId};
use crate::field::{field_of_order, FieldElement, FieldError, FieldSpec};
use crate::labels::{ClassLabel, LabelError, Partition};
use crate::poly::{Poly, PolyError};

/// Largest matrix dimension handled by the oracle.
pub const MAX_DIM: usize = 6;
/// Default bound on the number of matrices enumerated.
pub const DEFAULT_CAP: u64 = 1_000_000;
/// Environment variable overriding the cap.
pub const CAP_ENV: &str = "REALCLASS_CAP";

const CELLS: usize = MAX_DIM * MAX_DIM;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("group of order {order} exceeds the cap {cap}")]
    CapExceeded { order: u128, cap: u64 },
    #[error("dimension {0} is outside 1..={MAX_DIM}")]
    Dimension(usize),
    #[error("entries of a {n}x{n} matrix over F_{q} do not fit a 64-bit code")]
    CodeOverflow { n: usize, q: u32 },
    #[error("expected {expected} entries, got {got}")]
    EntryCount { expected: usize, got: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("{0} is not a matrix group family")]
    NotMatrixFamily(Family),
    #[error("{0} is not a central subgroup of scalars of the group")]
    NotCentral(String),
    #[error("zeta-reality is only searched in GL and SL with q odd")]
    ZetaUnavailable,
    #[error("enumerated {got} elements, expected {expected}")]
    OrderMismatch { got: u128, expected: u128 },
    #[error(transparent)]
    Count(#[from] CountError),
    #[error(transparent)]
    Label(#[from] LabelError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Oracle limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub cap: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { cap: DEFAULT_CAP }
    }
}

impl OracleConfig {
    /// The default cap, replaced by `REALCLASS_CAP` when that parses.
    pub fn from_env() -> Self {
        let cap = std::env::var(CAP_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_CAP);
        OracleConfig { cap }
    }
}

/// A square matrix over F_q with `n <= MAX_DIM`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    e: [FieldElement; CELLS],
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<Vec<u32>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).value()).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

/// Wire form: dimension and row-major entry indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub entries: Vec<u32>,
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixJson { n: self.n, entries: self.entries().iter().map(|x| x.value()).collect() }.serialize(s)
    }
}

impl Matrix {
    fn blank(n: usize) -> Self {
        Matrix { n, e: [FieldElement::ZERO; CELLS] }
    }

    pub fn identity(n: usize) -> Result<Self, OracleError> {
        Self::scalar(n, FieldElement::ONE)
    }

    pub fn scalar(n: usize, c: FieldElement) -> Result<Self, OracleError> {
        if n == 0 || n > MAX_DIM {
            return Err(OracleError::Dimension(n));
        }
        let mut m = Self::blank(n);
        for i in 0..n {
            m.set(i, i, c);
        }
        Ok(m)
    }

    pub fn from_entries(field: &FieldSpec, n: usize, entries: &[FieldElement]) -> Result<Self, OracleError> {
        if n == 0 || n > MAX_DIM {
            return Err(OracleError::Dimension(n));
        }
        if entries.len() != n * n {
            return Err(OracleError::EntryCount { expected: n * n, got: entries.len() });
        }
        let mut m = Self::blank(n);
        for (k, &x) in entries.iter().enumerate() {
            if x.value() >= field.q() {
                return Err(PolyError::BadCoefficient(x.value()).into());
            }
            m.e[k] = x;
        }
        Ok(m)
    }

    /// Builds a matrix from row-major element indices.
    pub fn from_indices(field: &FieldSpec, n: usize, entries: &[u32]) -> Result<Self, OracleError> {
        let v = entries
            .iter()
            .map(|&x| field.element(x).ok_or(PolyError::BadCoefficient(x)))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_entries(field, n, &v)
    }

    /// Companion matrix of a monic polynomial of degree `1..=MAX_DIM`.
    pub fn companion(field: &FieldSpec, p: &Poly) -> Result<Self, OracleError> {
        if !p.is_monic() {
            return Err(PolyError::NotMonic.into());
        }
        let n = p.deg();
        if n == 0 || n > MAX_DIM {
            return Err(OracleError::Dimension(n));
        }
        let mut m = Self::blank(n);
        for i in 1..n {
            m.set(i, i - 1, FieldElement::ONE);
        }
        for i in 0..n {
            m.set(i, n - 1, field.neg(p.coeff(i)));
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.e[i * self.n + j]
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize, x: FieldElement) {
        self.e[i * self.n + j] = x;
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.e[..self.n * self.n]
    }

    pub fn mul(&self, other: &Matrix, f: &FieldSpec) -> Matrix {
        let n = self.n;
        let mut out = Self::blank(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: FieldElement, f: &FieldSpec) -> Matrix {
        let mut out = *self;
        for x in out.e[..self.n * self.n].iter_mut() {
            *x = f.mul(*x, c);
        }
        out
    }

    pub fn add(&self, other: &Matrix, f: &FieldSpec) -> Matrix {
        let mut out = *self;
        for (x, &y) in out.e[..self.n * self.n].iter_mut().zip(other.entries()) {
            *x = f.add(*x, y);
        }
        out
    }

    pub fn pow(&self, mut e: u64, f: &FieldSpec) -> Matrix {
        let mut base = *self;
        let mut acc = Self::identity(self.n).unwrap();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            base = base.mul(&base, f);
            e >>= 1;
        }
        acc
    }

    /// `p(self)` by Horner's rule.
    pub fn eval_poly(&self, p: &Poly, f: &FieldSpec) -> Matrix {
        let mut acc = Self::blank(self.n);
        for &c in p.coeffs().iter().rev() {
            acc = acc.mul(self, f).add(&Self::scalar(self.n, c).unwrap(), f);
        }
        acc
    }

    /// Row echelon form; returns the rank and the determinant.
    fn eliminate(&self, f: &FieldSpec) -> (usize, FieldElement) {
        let n = self.n;
        let mut m = *self;
        let mut det = FieldElement::ONE;
        let mut rank = 0;
        for col in 0..n {
            let Some(piv) = (rank..n).find(|&r| !m.get(r, col).is_zero()) else {
                det = FieldElement::ZERO;
                continue;
            };
            if piv != rank {
                for j in 0..n {
                    let t = m.get(piv, j);
                    m.set(piv, j, m.get(rank, j));
                    m.set(rank, j, t);
                }
                det = f.neg(det);
            }
            let p = m.get(rank, col);
            det = f.mul(det, p);
            let pinv = f.inv(p).unwrap();
            for r in rank + 1..n {
                let c = f.mul(m.get(r, col), pinv);
                if c.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = f.sub(m.get(r, j), f.mul(c, m.get(rank, j)));
                    m.set(r, j, v);
                }
            }
            rank += 1;
        }
        (rank, det)
    }

    pub fn det(&self, f: &FieldSpec) -> FieldElement {
        self.eliminate(f).1
    }

    pub fn rank(&self, f: &FieldSpec) -> usize {
        self.eliminate(f).0
    }

    pub fn inverse(&self, f: &FieldSpec) -> Result<Matrix, OracleError> {
        let n = self.n;
        let mut a = *self;
        let mut b = Self::identity(n)?;
        for col in 0..n {
            let piv = (col..n).find(|&r| !a.get(r, col).is_zero()).ok_or(OracleError::Singular)?;
            if piv != col {
                for j in 0..n {
                    let (x, y) = (a.get(piv, j), a.get(col, j));
                    a.set(piv, j, y);
                    a.set(col, j, x);
                    let (x, y) = (b.get(piv, j), b.get(col, j));
                    b.set(piv, j, y);
                    b.set(col, j, x);
                }
            }
            let pinv = f.inv(a.get(col, col))?;
            for j in 0..n {
                a.set(col, j, f.mul(a.get(col, j), pinv));
                b.set(col, j, f.mul(b.get(col, j), pinv));
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let c = a.get(r, col);
                if c.is_zero() {
                    continue;
                }
                for j in 0..n {
                    a.set(r, j, f.sub(a.get(r, j), f.mul(c, a.get(col, j))));
                    b.set(r, j, f.sub(b.get(r, j), f.mul(c, b.get(col, j))));
                }
            }
        }
        Ok(b)
    }

    /// `det(t I - self)`, by fraction-free elimination over F_q[t].
    pub fn char_poly(&self, f: &FieldSpec) -> Poly {
        let n = self.n;
        let mut m: Vec<Vec<Poly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            Poly::linear(f, self.get(i, j))
                        } else {
                            Poly::from_coeffs(vec![f.neg(self.get(i, j))])
                        }
                    })
                    .collect()
            })
            .collect();
        // Leading principal minors of tI - g are monic, so no pivoting.
        let mut prev = Poly::one();
        for k in 0..n.saturating_sub(1) {
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[i][j].mul(&m[k][k], f).sub(&m[i][k].mul(&m[k][j], f), f);
                    m[i][j] = num.divrem(&prev, f).unwrap().0;
                }
            }
            prev = m[k][k].clone();
        }
        m[n - 1][n - 1].clone()
    }

    fn code(&self, q: u64) -> u64 {
        self.entries().iter().rev().fold(0u64, |acc, x| acc * q + x.value() as u64)
    }

    fn from_code(n: usize, q: u64, mut code: u64) -> Matrix {
        let mut m = Self::blank(n);
        for k in 0..n * n {
            m.e[k] = FieldElement::from_raw((code % q) as u8);
            code /= q;
        }
        m
    }

    /// `x X x^{-1}` for the transvection `x = 1 + a E_{ij}`.
    fn conj_transvection(&mut self, i: usize, j: usize, a: FieldElement, f: &FieldSpec) {
        let n = self.n;
        for c in 0..n {
            let v = f.add(self.get(i, c), f.mul(a, self.get(j, c)));
            self.set(i, c, v);
        }
        for r in 0..n {
            let v = f.sub(self.get(r, j), f.mul(a, self.get(r, i)));
            self.set(r, j, v);
        }
    }

    /// `c X c^{-1}` for `c e_i = e_{i+1}` (`i < n - 1`), `c e_{n-1} = sign e_0`.
    fn conj_cycle(&mut self, sign: FieldElement, f: &FieldSpec) {
        let n = self.n;
        let s = |i: usize| if i == n - 1 { sign } else { FieldElement::ONE };
        let mut out = Self::blank(n);
        for i in 0..n {
            for j in 0..n {
                let v = f.mul(f.mul(s(i), self.get(i, j)), s(j));
                out.set((i + 1) % n, (j + 1) % n, v);
            }
        }
        *self = out;
    }

    /// `d X d^{-1}` for `d = diag(w, 1, ..., 1)`.
    fn conj_diag(&mut self, w: FieldElement, winv: FieldElement, f: &FieldSpec) {
        for c in 0..self.n {
            let v = f.mul(w, self.get(0, c));
            self.set(0, c, v);
        }
        for r in 0..self.n {
            let v = f.mul(self.get(r, 0), winv);
            self.set(r, 0, v);
        }
    }
}

/// Macdonald label of the GL-class of an invertible matrix.
///
/// Each irreducible factor `p` of the characteristic polynomial contributes
/// the partition read off from `dim ker p(g)^j`; a Jordan block of size `i`
/// puts the reversal of `p` into `u_i`.
pub fn matrix_to_label(field: &FieldSpec, g: &Matrix) -> Result<ClassLabel, OracleError> {
    let n = g.n();
    if g.det(field).is_zero() {
        return Err(OracleError::Singular);
    }
    let chi = g.char_poly(field);
    let mut u = vec![Poly::one(); n];
    for (p, e) in chi.factorize(field)?.factors {
        let d = p.deg();
        let pg = g.eval_poly(&p, field);
        // r[j] = number of blocks of size >= 1 counted with min(size, j)
        let mut r = vec![0usize; e as usize + 2];
        let mut acc = Matrix::identity(n)?;
        for rj in r.iter_mut().take(e as usize + 1).skip(1) {
            acc = acc.mul(&pg, field);
            *rj = (n - acc.rank(field)) / d;
        }
        r[e as usize + 1] = r[e as usize];
        let rev = p.reverse();
        for i in 1..=e as usize {
            let m = 2 * r[i] - r[i - 1] - r[i + 1];
            if m > 0 {
                u[i - 1] = u[i - 1].mul(&rev.pow(m as u32, field), field);
            }
        }
    }
    Ok(ClassLabel::new(u)?)
}

/// `prod_{i<n} (q^n - q^i)`.
pub fn gl_order(n: u32, q: u64) -> u128 {
    let q = q as u128;
    let qn = q.pow(n);
    (0..n).map(|i| qn - q.pow(i)).product()
}

pub fn sl_order(n: u32, q: u64) -> u128 {
    gl_order(n, q) / (q as u128 - 1)
}

fn check_shape(n: usize, q: u32) -> Result<(), OracleError> {
    if n == 0 || n > MAX_DIM {
        return Err(OracleError::Dimension(n));
    }
    if (q as u128).checked_pow((n * n) as u32).is_none_or(|c| c > u64::MAX as u128) {
        return Err(OracleError::CodeOverflow { n, q });
    }
    Ok(())
}

/// Every matrix of GL_n or SL_n over `field`, in increasing code order.
pub fn enumerate_group(family: Family, n: usize, field: &FieldSpec, cap: u64) -> Result<Vec<Matrix>, OracleError> {
    let codes = enumerate_codes(family, n, field, cap, &[FieldElement::ONE])?;
    let q = field.q() as u64;
    Ok(codes.into_iter().map(|c| Matrix::from_code(n, q, c)).collect())
}

/// Codes of the canonical coset representatives of `base / Y`.
fn enumerate_codes(
    family: Family,
    n: usize,
    field: &FieldSpec,
    cap: u64,
    center: &[FieldElement],
) -> Result<Vec<u64>, OracleError> {
    check_shape(n, field.q())?;
    let q = field.q() as u64;
    let order = match family {
        Family::GL => gl_order(n as u32, q),
        Family::SL => sl_order(n as u32, q),
        f => return Err(OracleError::NotMatrixFamily(f)),
    };
    if order > cap as u128 {
        return Err(OracleError::CapExceeded { order, cap });
    }
    let vectors: Vec<[FieldElement; MAX_DIM]> = (0..q.pow(n as u32))
        .map(|mut c| {
            let mut v = [FieldElement::ZERO; MAX_DIM];
            for x in v.iter_mut().take(n) {
                *x = FieldElement::from_raw((c % q) as u8);
                c /= q;
            }
            v
        })
        .collect();
    let mut out = Vec::with_capacity((order / center.len() as u128) as usize);
    let mut rows = Matrix::blank(n);
    let mut walk = RowWalk { field, n, q, vectors: &vectors, sl: family == Family::SL, center, out: &mut out };
    walk.rows(&mut rows, 0, vec![false; vectors.len()]);
    out.sort_unstable();
    let expected = order / center.len() as u128;
    if out.len() as u128 != expected {
        return Err(OracleError::OrderMismatch { got: out.len() as u128, expected });
    }
    Ok(out)
}

struct RowWalk<'a> {
    field: &'a FieldSpec,
    n: usize,
    q: u64,
    vectors: &'a [[FieldElement; MAX_DIM]],
    sl: bool,
    center: &'a [FieldElement],
    out: &'a mut Vec<u64>,
}

impl RowWalk<'_> {
    fn vec_code(&self, v: &[FieldElement]) -> usize {
        v.iter().take(self.n).rev().fold(0usize, |acc, x| acc * self.q as usize + x.value() as usize)
    }

    /// Chooses row `k` outside the span of rows `0..k`, marked in `span`.
    fn rows(&mut self, m: &mut Matrix, k: usize, span: Vec<bool>) {
        let (n, f) = (self.n, self.field);
        if k == n - 1 {
            return self.last_row(m);
        }
        let spanned: Vec<usize> = if k == 0 {
            vec![0]
        } else {
            span.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
        };
        let vectors = self.vectors;
        for (vi, v) in vectors.iter().enumerate() {
            if vi == 0 || (k > 0 && span[vi]) {
                continue;
            }
            let mut next = vec![false; self.vectors.len()];
            for &s in &spanned {
                for a in f.elements() {
                    let w: Vec<FieldElement> = (0..n).map(|j| f.add(vectors[s][j], f.mul(a, v[j]))).collect();
                    next[self.vec_code(&w)] = true;
                }
            }
            for (j, &x) in v.iter().enumerate().take(n) {
                m.set(k, j, x);
            }
            self.rows(m, k + 1, next);
        }
    }

    /// The determinant is linear in the last row: `det = sum_j c_j x_j`.
    fn last_row(&mut self, m: &mut Matrix) {
        let (n, f) = (self.n, self.field);
        let mut cof = [FieldElement::ZERO; MAX_DIM];
        for (j, c) in cof.iter_mut().enumerate().take(n) {
            for l in 0..n {
                m.set(n - 1, l, if l == j { FieldElement::ONE } else { FieldElement::ZERO });
            }
            *c = m.det(f);
        }
        let vectors = self.vectors;
        for v in vectors {
            let det = (0..n).fold(FieldElement::ZERO, |acc, j| f.add(acc, f.mul(cof[j], v[j])));
            if det.is_zero() || (self.sl && det != FieldElement::ONE) {
                continue;
            }
            for (j, &x) in v.iter().enumerate().take(n) {
                m.set(n - 1, j, x);
            }
            let code = m.code(self.q);
            if self.center.len() == 1 || canonical(m, self.center, f, self.q) == code {
                self.out.push(code);
            }
        }
    }
}

fn canonical(m: &Matrix, center: &[FieldElement], f: &FieldSpec, q: u64) -> u64 {
    if center.len() == 1 {
        return m.code(q);
    }
    center.iter().map(|&y| m.scale(y, f).code(q)).min().unwrap()
}

/// A finite matrix group GL_n(q) or SL_n(q), or its quotient by a group of
/// scalar matrices.
pub struct Group {
    field: FieldSpec,
    base: Family,
    n: usize,
    center: Vec<FieldElement>,
    elements: Vec<u64>,
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Group")
            .field("base", &self.base)
            .field("n", &self.n)
            .field("q", &self.field.q())
            .field("center", &self.center)
            .field("order", &self.elements.len())
            .finish()
    }
}

impl Group {
    /// GL_n(q) or SL_n(q).
    pub fn matrix_group(family: Family, n: usize, q: u64, cap: u64) -> Result<Group, OracleError> {
        Self::with_center(family, n, field_of_order(q)?, vec![FieldElement::ONE], cap)
    }

    fn with_center(
        base: Family,
        n: usize,
        field: FieldSpec,
        center: Vec<FieldElement>,
        cap: u64,
    ) -> Result<Group, OracleError> {
        let elements = enumerate_codes(base, n, &field, cap, &center)?;
        Ok(Group { field, base, n, center, elements })
    }

    /// Quotient by the scalar matrices `y I`, `y` in `scalars`; the set must
    /// be a subgroup of the scalars lying in the group.
    pub fn quotient(self, scalars: &[FieldElement], cap: u64) -> Result<Group, OracleError> {
        let f = &self.field;
        let mut all: Vec<FieldElement> = self.center.clone();
        all.extend_from_slice(scalars);
        all.sort();
        all.dedup();
        for &a in &all {
            if a.is_zero() || (self.base == Family::SL && f.pow(a, self.n as u64) != FieldElement::ONE) {
                return Err(OracleError::NotCentral(format!("{a}")));
            }
            for &b in &all {
                if all.binary_search(&f.mul(a, b)).is_err() {
                    return Err(OracleError::NotCentral(format!("{all:?}")));
                }
            }
        }
        let Group { field, base, n, .. } = self;
        Self::with_center(base, n, field, all, cap)
    }

    /// The group named by `id`: PGL = GL/Z, PSL = SL/Z(SL), SLQ = SL/Y.
    pub fn build(id: &GroupId, cap: u64) -> Result<Group, OracleError> {
        id.validate()?;
        let n = id.n as usize;
        let field = field_of_order(id.q)?;
        let roots = |k: u64| -> Vec<FieldElement> {
            field.nonzero().filter(|&y| field.pow(y, k) == FieldElement::ONE).collect()
        };
        let (base, center) = match id.family {
            Family::GL => (Family::GL, vec![FieldElement::ONE]),
            Family::SL => (Family::SL, vec![FieldElement::ONE]),
            Family::PGL => (Family::GL, field.nonzero().collect()),
            Family::PSL => (Family::SL, roots(id.n as u64)),
            Family::SLQ => (Family::SL, roots(id.y_order.unwrap_or(1))),
        };
        let mut center = center;
        center.sort();
        Self::with_center(base, n, field, center, cap)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// GL or SL: the matrix group this is a quotient of.
    pub fn base(&self) -> Family {
        self.base
    }

    /// The scalars `y` with `y I` in the quotiented subgroup.
    pub fn center(&self) -> &[FieldElement] {
        &self.center
    }

    pub fn is_quotient(&self) -> bool {
        self.center.len() > 1
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    fn q(&self) -> u64 {
        self.field.q() as u64
    }

    fn canon(&self, m: &Matrix) -> u64 {
        canonical(m, &self.center, &self.field, self.q())
    }

    fn index_of(&self, m: &Matrix) -> Option<usize> {
        self.elements.binary_search(&self.canon(m)).ok()
    }

    /// Whether `m` (or its coset) lies in the group.
    pub fn contains(&self, m: &Matrix) -> bool {
        m.n() == self.n && self.index_of(m).is_some()
    }

    /// Canonical representatives, in increasing code order.
    pub fn elements(&self) -> impl Iterator<Item = Matrix> + '_ {
        let (n, q) = (self.n, self.q());
        self.elements.iter().map(move |&c| Matrix::from_code(n, q, c))
    }

    /// The `i`-th canonical representative in code order.
    pub fn element(&self, i: usize) -> Option<Matrix> {
        self.elements.get(i).map(|&c| Matrix::from_code(self.n, self.q(), c))
    }

    /// Whether `a` and `b` represent the same element.
    pub fn same(&self, a: &Matrix, b: &Matrix) -> bool {
        self.canon(a) == self.canon(b)
    }

    fn identity_code(&self) -> u64 {
        self.canon(&Matrix::identity(self.n).unwrap())
    }

    fn primitive(&self) -> FieldElement {
        self.field.primitive_element()
    }

    /// Conjugation generators as cheap operations: the transvections
    /// `1 + a E_{01}` for `a` in an F_p-basis of F_q, a signed n-cycle of
    /// determinant 1, and `diag(w, 1, ...)` for GL.
    fn conjugators(&self) -> Vec<Conj> {
        let f = &self.field;
        let w = self.primitive();
        let basis: Vec<FieldElement> = (0..f.k()).map(|j| f.pow(w, j as u64)).collect();
        let mut out = Vec::new();
        if self.n > 1 {
            out.extend(basis.iter().map(|&a| Conj::Transvection(0, 1, a)));
            out.push(Conj::Cycle(f.pow(f.minus_one(), self.n as u64 - 1)));
        }
        if self.base == Family::GL && f.q() > 2 {
            out.push(Conj::Diag(w, f.inv(w).unwrap()));
        }
        out
    }

    fn apply(&self, c: &Conj, m: &mut Matrix) {
        match *c {
            Conj::Transvection(i, j, a) => m.conj_transvection(i, j, a, &self.field),
            Conj::Diag(w, winv) => m.conj_diag(w, winv, &self.field),
            Conj::Cycle(sign) => m.conj_cycle(sign, &self.field),
        }
    }

    /// Orbit partition under conjugation.
    pub fn classes(&self) -> Classes {
        let gens = self.conjugators();
        let (n, q) = (self.n, self.q());
        let mut class_of = vec![u32::MAX; self.elements.len()];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        let mut queue = Vec::new();
        for start in 0..self.elements.len() {
            if class_of[start] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            class_of[start] = id;
            queue.push(start);
            let mut size = 0u64;
            while let Some(i) = queue.pop() {
                size += 1;
                let x = Matrix::from_code(n, q, self.elements[i]);
                for g in &gens {
                    let mut y = x;
                    self.apply(g, &mut y);
                    let j = self.index_of(&y).expect("group is closed under conjugation");
                    if class_of[j] == u32::MAX {
                        class_of[j] = id;
                        queue.push(j);
                    }
                }
            }
            reps.push(Matrix::from_code(n, q, self.elements[start]));
            sizes.push(size);
        }
        let fusion = self.fusion(&class_of, &reps);
        let id = self.identity_code();
        let involutions: Vec<Matrix> = self
            .elements
            .par_iter()
            .map(|&c| Matrix::from_code(n, q, c))
            .filter(|x| self.canon(&x.mul(x, &self.field)) == id)
            .collect();
        Classes { class_of, reps, sizes, fusion, involutions }
    }

    /// For SL-based groups, the orbit of each class under conjugation by
    /// `diag(w, 1, ...)`: the classes making up one GL-class.
    fn fusion(&self, class_of: &[u32], reps: &[Matrix]) -> Vec<u32> {
        let mut parent: Vec<u32> = (0..reps.len() as u32).collect();
        if self.base != Family::SL || self.field.q() == 2 {
            return parent;
        }
        fn find(p: &mut [u32], mut x: u32) -> u32 {
            while p[x as usize] != x {
                p[x as usize] = p[p[x as usize] as usize];
                x = p[x as usize];
            }
            x
        }
        let w = self.primitive();
        let winv = self.field.inv(w).unwrap();
        for (c, rep) in reps.iter().enumerate() {
            let mut y = *rep;
            y.conj_diag(w, winv, &self.field);
            let d = class_of[self.index_of(&y).unwrap()];
            let (a, b) = (find(&mut parent, c as u32), find(&mut parent, d));
            if a != b {
                parent[a.max(b) as usize] = a.min(b);
            }
        }
        (0..reps.len() as u32).map(|c| find(&mut parent, c)).collect()
    }
}

#[derive(Clone, Copy, Debug)]
enum Conj {
    Transvection(usize, usize, FieldElement),
    Diag(FieldElement, FieldElement),
    Cycle(FieldElement),
}

/// The conjugacy classes of a [`Group`].
pub struct Classes {
    class_of: Vec<u32>,
    reps: Vec<Matrix>,
    sizes: Vec<u64>,
    fusion: Vec<u32>,
    involutions: Vec<Matrix>,
}

impl Classes {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn representative(&self, c: usize) -> &Matrix {
        &self.reps[c]
    }

    pub fn size(&self, c: usize) -> u64 {
        self.sizes[c]
    }

    /// Index of the class containing `m`.
    pub fn class_of(&self, group: &Group, m: &Matrix) -> Option<usize> {
        group.index_of(m).map(|i| self.class_of[i] as usize)
    }

    /// Least class index in the same GL-class (SL-based groups); the class
    /// itself otherwise.
    pub fn gl_class(&self, c: usize) -> usize {
        self.fusion[c] as usize
    }

    /// Elements `h` with `h^2` in the quotiented scalars, identity included.
    pub fn involutions(&self) -> &[Matrix] {
        &self.involutions
    }
}

/// Result of the reversing-element searches for one class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealityFlags {
    pub is_real: bool,
    pub is_strongly_real: bool,
    pub is_zeta_real: Option<bool>,
}

/// Searches for reversing elements of class `c`.
///
/// `g` is strongly real when `h g` is an involution for some involution `h`.
/// `zeta`-reality asks for `h g h^{-1} = zeta g^{-1}` with `h` in GL, so for
/// SL it compares GL-classes.
pub fn reality_flags(
    group: &Group,
    classes: &Classes,
    c: usize,
    zeta: Option<FieldElement>,
) -> Result<RealityFlags, OracleError> {
    let f = &group.field;
    let g = classes.reps[c];
    let ginv = g.inverse(f)?;
    let is_real = classes.class_of(group, &ginv) == Some(c);
    let id = group.identity_code();
    let is_strongly_real = is_real
        && classes.involutions.par_iter().any(|h| {
            let t = h.mul(&g, f);
            group.canon(&t.mul(&t, f)) == id
        });
    let is_zeta_real = match zeta {
        None => None,
        Some(z) => {
            if group.is_quotient() || !f.is_odd() {
                return Err(OracleError::ZetaUnavailable);
            }
            let target = ginv.scale(z, f);
            Some(match classes.class_of(group, &target) {
                None => false,
                Some(d) if group.base == Family::GL => d == c,
                Some(d) => classes.gl_class(d) == classes.gl_class(c),
            })
        }
    };
    Ok(RealityFlags { is_real, is_strongly_real, is_zeta_real })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassRecord {
    pub representative: Matrix,
    pub size: u64,
    pub label: ClassLabel,
    pub is_real: bool,
    pub is_strongly_real: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub is_zeta_real: Option<bool>,
}

/// Classes with labels and reality flags. The label of a quotient class is
/// that of its canonical lift; its type does not depend on the lift.
pub fn conjugacy_classes(
    group: &Group,
    classes: &Classes,
    zeta: Option<FieldElement>,
) -> Result<Vec<ClassRecord>, OracleError> {
    (0..classes.len())
        .into_par_iter()
        .map(|c| {
            let flags = reality_flags(group, classes, c, zeta)?;
            Ok(ClassRecord {
                representative: classes.reps[c],
                size: classes.sizes[c],
                label: matrix_to_label(&group.field, &classes.reps[c])?,
                is_real: flags.is_real,
                is_strongly_real: flags.is_strongly_real,
                is_zeta_real: flags.is_zeta_real,
            })
        })
        .collect()
}

/// Oracle and engine counts for one type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NuDelta {
    pub nu: Partition,
    pub oracle: u128,
    pub formula: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub group: GroupId,
    pub kind: CountKind,
    pub oracle: u128,
    pub formula: u128,
    #[serde(rename = "match")]
    pub matches: bool,
    /// Types where the two sides differ.
    pub per_nu_deltas: Vec<NuDelta>,
}

/// A built group together with its classified classes.
pub struct OracleRun {
    pub id: GroupId,
    pub group: Group,
    pub classes: Classes,
    pub records: Vec<ClassRecord>,
}

impl OracleRun {
    pub fn new(id: &GroupId, cfg: &OracleConfig) -> Result<OracleRun, OracleError> {
        let group = Group::build(id, cfg.cap)?;
        let classes = group.classes();
        let zeta = if !group.is_quotient() && group.field.is_odd() {
            Some(group.field.canonical_nonsquare()?)
        } else {
            None
        };
        let records = conjugacy_classes(&group, &classes, zeta)?;
        Ok(OracleRun { id: id.clone(), group, classes, records })
    }

    fn has(&self, r: &ClassRecord, kind: CountKind) -> bool {
        match kind {
            CountKind::Real => r.is_real,
            CountKind::StronglyReal => r.is_strongly_real,
            CountKind::ZetaReal => r.is_zeta_real == Some(true),
        }
    }

    /// Oracle count of `kind` classes by type.
    pub fn per_nu(&self, kind: CountKind) -> BTreeMap<Partition, u128> {
        let mut out = BTreeMap::new();
        for r in &self.records {
            *out.entry(r.label.partition()).or_insert(0) += self.has(r, kind) as u128;
        }
        out
    }

    /// Compares against the counting engine.
    pub fn verify(&self, kind: CountKind) -> Result<VerifyRecord, OracleError> {
        if kind == CountKind::ZetaReal && (self.group.is_quotient() || !self.group.field.is_odd()) {
            return Err(OracleError::ZetaUnavailable);
        }
        let opts = CountOptions { enumerate: Enumerate::IfAffordable, ..CountOptions::default() };
        let report = count(&self.id, kind, &opts)?;
        let oracle = self.per_nu(kind);
        let mut deltas = Vec::new();
        for c in &report.per_nu {
            let o = oracle.get(&c.nu).copied().unwrap_or(0);
            if o != c.count {
                deltas.push(NuDelta { nu: c.nu.clone(), oracle: o, formula: c.count });
            }
        }
        let total: u128 = oracle.values().sum();
        Ok(VerifyRecord {
            group: self.id.clone(),
            kind,
            oracle: total,
            formula: report.total,
            matches: total == report.total && deltas.is_empty(),
            per_nu_deltas: deltas,
        })
    }

    /// Whether every GL-class's split classes agree on reality and on strong
    /// reality.
    pub fn splits_uniform(&self) -> bool {
        let mut seen: BTreeMap<usize, (bool, bool)> = BTreeMap::new();
        self.records.iter().enumerate().all(|(c, r)| {
            let key = self.classes.gl_class(c);
            let flags = (r.is_real, r.is_strongly_real);
            *seen.entry(key).or_insert(flags) == flags
        })
    }
}

/// Builds the group, classifies it and compares `kind` counts with the engine.
pub fn verify(id: &GroupId, kind: CountKind, cfg: &OracleConfig) -> Result<VerifyRecord, OracleError> {
    OracleRun::new(id, cfg)?.verify(kind)
}

/// Kinds the oracle can decide for `id`: zeta-reality needs GL or SL (or the
/// trivial quotient) over a field of odd order.
pub fn checkable_kinds(id: &GroupId) -> Vec<CountKind> {
    let zeta = id.q % 2 == 1
        && match id.family {
            Family::GL | Family::SL => true,
            Family::SLQ => id.y_order == Some(1),
            Family::PGL | Family::PSL => false,
        };
    let mut kinds = vec![CountKind::Real, CountKind::StronglyReal];
    if zeta {
        kinds.push(CountKind::ZetaReal);
    }
    kinds
}

/// The desk-scale verification matrix. The last two groups have about twelve
/// million elements and need a raised cap.
pub fn desk_groups() -> Vec<GroupId> {
    use Family::*;
    let plain = [
        (GL, 2, 2),
        (GL, 2, 3),
        (GL, 2, 4),
        (GL, 2, 5),
        (GL, 2, 7),
        (SL, 2, 3),
        (SL, 2, 5),
        (SL, 2, 7),
        (SL, 2, 9),
        (PGL, 2, 3),
        (PGL, 2, 5),
        (PGL, 2, 7),
        (PSL, 2, 3),
        (PSL, 2, 5),
        (PSL, 2, 7),
        (PSL, 2, 9),
        (GL, 3, 2),
        (GL, 3, 3),
        (SL, 3, 3),
        (PSL, 3, 3),
        (GL, 4, 2),
        (SL, 3, 4),
        (PSL, 3, 4),
    ];
    let mut out: Vec<GroupId> = plain.into_iter().map(|(f, n, q)| GroupId::new(f, n, q).unwrap()).collect();
    out.push(GroupId::slq(4, 3, 1).unwrap());
    out.push(GroupId::slq(4, 3, 2).unwrap());
    out
}

/// Number of distinct GL-classes met by the classes of the run.
pub fn gl_class_count(run: &OracleRun) -> usize {
    let mut keys: Vec<usize> = (0..run.classes.len()).map(|c| run.classes.gl_class(c)).collect();
    keys.sort_unstable();
    keys.dedup();
    keys.len()
}
