//! Macdonald labels for conjugacy classes of GL_n(q).
//!
//! A class is encoded by a sequence `(u_1, u_2, ...)` of polynomials with
//! constant term 1 such that `det(1 - t g) = prod_i u_i(t)^i`. The roots of
//! `u_i` are therefore the inverses of the eigenvalues attached to Jordan
//! blocks of size `i`. With this convention the determinant, the
//! `eta`-translation and the reality predicates all read off directly from
//! the coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{two_adic, FieldElement, FieldError, FieldSpec};
use crate::poly::{enumerate_s, enumerate_t, Poly, PolyError};

/// Largest `n` accepted by [`partitions_of`].
pub const MAX_PARTITION_SIZE: u32 = 12;

/// Default cap on the number of labels a single enumeration may produce.
pub const DEFAULT_LABEL_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabelError {
    #[error("n = {0} is outside 1..={MAX_PARTITION_SIZE}")]
    SizeOutOfRange(u32),
    #[error("enumeration needs {needed} labels, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("every u_i must have constant term 1")]
    ConstantTermNotOne,
    #[error("label has no nontrivial polynomial")]
    Empty,
    #[error("declared type {declared:?} does not match polynomial degrees {actual:?}")]
    TypeMismatch { declared: Vec<u32>, actual: Vec<u32> },
    #[error("label is neither real nor zeta-real")]
    NotRealOrZetaReal,
    #[error("precondition failed: {0}")]
    Precondition(&'static str),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A partition `1^{n_1} 2^{n_2} ...` stored by its exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    exponents: Vec<u32>,
}

impl Partition {
    /// `exponents[i - 1] = n_i`; trailing zeros are dropped.
    pub fn from_exponents(mut exponents: Vec<u32>) -> Self {
        while exponents.last() == Some(&0) {
            exponents.pop();
        }
        Partition { exponents }
    }

    pub fn from_parts(parts: &[u32]) -> Self {
        let mut e = vec![0u32; parts.iter().copied().max().unwrap_or(0) as usize];
        for &p in parts.iter().filter(|&&p| p > 0) {
            e[p as usize - 1] += 1;
        }
        Partition::from_exponents(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// `n_i`, with `i` counted from 1.
    pub fn exponent(&self, i: usize) -> u32 {
        i.checked_sub(1).and_then(|j| self.exponents.get(j)).copied().unwrap_or(0)
    }

    /// Parts in non-increasing order.
    pub fn parts(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (j, &m) in self.exponents.iter().enumerate().rev() {
            out.extend(std::iter::repeat_n(j as u32 + 1, m as usize));
        }
        out
    }

    pub fn size(&self) -> u32 {
        self.exponents.iter().enumerate().map(|(j, &m)| (j as u32 + 1) * m).sum()
    }

    /// `(i, n_i)` for every `n_i > 0`.
    pub fn present(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exponents
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(j, &m)| (j + 1, m))
    }

    /// `gcd(q - 1, parts)`.
    pub fn h_nu(&self, q: u64) -> u64 {
        self.present().fold(q - 1, |g, (i, _)| g.gcd(&(i as u64)))
    }

    /// 2-part of the gcd of the nonzero exponents.
    pub fn d(&self) -> u64 {
        let g = self.present().fold(0u64, |g, (_, m)| g.gcd(&(m as u64)));
        two_adic(g.max(1)).unwrap()
    }

    /// Whether some odd `i` has `n_i > 0`.
    pub fn has_odd_part(&self) -> bool {
        self.present().any(|(i, _)| i % 2 == 1)
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.parts().cmp(&other.parts())
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, m) in self.present() {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{i}^{m}")?;
        }
        Ok(())
    }
}

/// All partitions of `n`, ordered by their non-increasing part lists.
pub fn partitions_of(n: u32) -> Result<Vec<Partition>, LabelError> {
    if n == 0 || n > MAX_PARTITION_SIZE {
        return Err(LabelError::SizeOutOfRange(n));
    }
    fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in 1..=max.min(rest) {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut lists = Vec::new();
    rec(n, n, &mut Vec::new(), &mut lists);
    let mut parts: Vec<Partition> = lists.iter().map(|l| Partition::from_parts(l)).collect();
    parts.sort();
    Ok(parts)
}

pub fn h_nu(nu: &Partition, q: u64) -> u64 {
    nu.h_nu(q)
}

/// A Macdonald label; `polys[i - 1] = u_i`, trailing `u_i = 1` trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "LabelJson", try_from = "LabelJson")]
pub struct ClassLabel {
    polys: Vec<Poly>,
}

/// Wire form `{"nu": [n_1, ...], "polys": [[c_0, ...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelJson {
    pub nu: Vec<u32>,
    pub polys: Vec<Vec<u32>>,
}

impl From<ClassLabel> for LabelJson {
    fn from(l: ClassLabel) -> Self {
        LabelJson {
            nu: l.partition().exponents().to_vec(),
            polys: l.polys.iter().map(|p| p.indices()).collect(),
        }
    }
}

impl TryFrom<LabelJson> for ClassLabel {
    type Error = LabelError;

    fn try_from(j: LabelJson) -> Result<Self, LabelError> {
        let polys = j
            .polys
            .iter()
            .map(|c| {
                let v = c
                    .iter()
                    .map(|&x| {
                        u8::try_from(x)
                            .map(FieldElement::from_raw)
                            .map_err(|_| PolyError::BadCoefficient(x))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Poly::from_coeffs(v))
            })
            .collect::<Result<Vec<_>, LabelError>>()?;
        let label = ClassLabel::new(polys)?;
        let declared = Partition::from_exponents(j.nu);
        if declared != label.partition() {
            return Err(LabelError::TypeMismatch {
                declared: declared.exponents().to_vec(),
                actual: label.partition().exponents().to_vec(),
            });
        }
        Ok(label)
    }
}

impl ClassLabel {
    pub fn new(mut polys: Vec<Poly>) -> Result<Self, LabelError> {
        if polys.iter().any(|p| p.constant() != FieldElement::ONE) {
            return Err(LabelError::ConstantTermNotOne);
        }
        while polys.last().is_some_and(|p| p.deg() == 0) {
            polys.pop();
        }
        if polys.is_empty() {
            return Err(LabelError::Empty);
        }
        Ok(ClassLabel { polys })
    }

    /// Checks every coefficient lies in `field`.
    pub fn validate(&self, field: &FieldSpec) -> Result<(), LabelError> {
        for p in &self.polys {
            for c in p.coeffs() {
                if c.value() >= field.q() {
                    return Err(PolyError::BadCoefficient(c.value()).into());
                }
            }
        }
        Ok(())
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    /// `u_i`, with `i` counted from 1.
    pub fn u(&self, i: usize) -> Poly {
        i.checked_sub(1)
            .and_then(|j| self.polys.get(j))
            .cloned()
            .unwrap_or_else(Poly::one)
    }

    pub fn partition(&self) -> Partition {
        Partition::from_exponents(self.polys.iter().map(|p| p.deg() as u32).collect())
    }

    pub fn n(&self) -> u32 {
        self.partition().size()
    }

    /// Nontrivial `(i, u_i)` pairs.
    pub fn present(&self) -> impl Iterator<Item = (usize, &Poly)> {
        self.polys.iter().enumerate().filter(|(_, p)| p.deg() > 0).map(|(j, p)| (j + 1, p))
    }

    pub fn to_json(&self) -> LabelJson {
        self.clone().into()
    }
}

impl Ord for ClassLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.partition()
            .cmp(&other.partition())
            .then_with(|| self.polys.cmp(&other.polys))
    }
}

impl PartialOrd for ClassLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (j, p) in self.polys.iter().enumerate() {
            if j > 0 {
                write!(f, ", ")?;
            }
            write!(f, "u{}={}", j + 1, p)?;
        }
        write!(f, ")")
    }
}

/// Which polynomials may occupy each position of an enumerated label.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelFilter {
    All,
    Real,
    /// Classes with `h g h^{-1} = zeta g^{-1}`.
    ZetaReal(FieldElement),
}

fn candidates(field: &FieldSpec, d: usize, filter: LabelFilter) -> Result<Vec<Poly>, LabelError> {
    Ok(match filter {
        LabelFilter::All => {
            let q = field.q() as u64;
            let mut out = Vec::new();
            for j in 0..q.pow(d as u32) {
                let mut x = j;
                let mut c = vec![FieldElement::ONE];
                for _ in 0..d {
                    c.push(field.element((x % q) as u32).unwrap());
                    x /= q;
                }
                if !c[d].is_zero() {
                    out.push(Poly::from_coeffs(c));
                }
            }
            out.sort();
            out
        }
        LabelFilter::Real => enumerate_t(field, d),
        LabelFilter::ZetaReal(zeta) => {
            if !field.is_odd() {
                return Err(FieldError::EvenCharacteristic(field.q()).into());
            }
            enumerate_s(field, d, field.inv(zeta)?)?
        }
    })
}

fn candidate_count(q: u64, d: u32, filter: LabelFilter) -> u128 {
    let q128 = q as u128;
    match filter {
        LabelFilter::All => (q128 - 1) * q128.saturating_pow(d - 1),
        LabelFilter::Real => crate::poly::count_nqd(q, d),
        LabelFilter::ZetaReal(_) => crate::poly::count_nqd(q, d) * crate::poly::sigma(d),
    }
}

/// Upper bound on how many labels [`enumerate_labels`] would return.
pub fn label_count_estimate(q: u64, n: u32, filter: LabelFilter) -> Result<u128, LabelError> {
    let mut total = 0u128;
    for nu in partitions_of(n)? {
        let mut prod = 1u128;
        for (_, m) in nu.present() {
            prod = prod.saturating_mul(candidate_count(q, m, filter));
        }
        total = total.saturating_add(prod);
    }
    Ok(total)
}

pub fn enumerate_labels(field: &FieldSpec, n: u32, filter: LabelFilter) -> Result<Vec<ClassLabel>, LabelError> {
    enumerate_labels_with_budget(field, n, filter, DEFAULT_LABEL_BUDGET)
}

/// Labels of every class of GL_n(q) admitted by `filter`, in canonical order.
pub fn enumerate_labels_with_budget(
    field: &FieldSpec,
    n: u32,
    filter: LabelFilter,
    budget: u64,
) -> Result<Vec<ClassLabel>, LabelError> {
    let needed = label_count_estimate(field.q() as u64, n, filter)?;
    if needed > budget as u128 {
        return Err(LabelError::BudgetExceeded { needed, budget });
    }
    let mut out = Vec::with_capacity(needed as usize);
    for nu in partitions_of(n)? {
        out.extend(labels_of_type_unchecked(field, &nu, filter)?);
    }
    Ok(out)
}

/// Labels of a fixed type `nu`, in canonical order.
pub fn labels_of_type(field: &FieldSpec, nu: &Partition, filter: LabelFilter, budget: u64) -> Result<Vec<ClassLabel>, LabelError> {
    let mut needed = 1u128;
    for (_, m) in nu.present() {
        needed = needed.saturating_mul(candidate_count(field.q() as u64, m, filter));
    }
    if needed > budget as u128 {
        return Err(LabelError::BudgetExceeded { needed, budget });
    }
    labels_of_type_unchecked(field, nu, filter)
}

fn labels_of_type_unchecked(field: &FieldSpec, nu: &Partition, filter: LabelFilter) -> Result<Vec<ClassLabel>, LabelError> {
    let slots: Vec<Vec<Poly>> = nu
        .exponents()
        .iter()
        .map(|&m| {
            if m == 0 {
                Ok(vec![Poly::one()])
            } else {
                candidates(field, m as usize, filter)
            }
        })
        .collect::<Result<_, LabelError>>()?;
    let mut out = Vec::new();
    if slots.iter().any(|s| s.is_empty()) {
        return Ok(out);
    }
    let mut idx = vec![0usize; slots.len()];
    loop {
        out.push(ClassLabel {
            polys: idx.iter().zip(&slots).map(|(&k, s)| s[k].clone()).collect(),
        });
        let mut pos = slots.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < slots[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// `(-1)^n prod_i a_i^i` where `a_i` is the leading coefficient of `u_i`.
pub fn label_det(field: &FieldSpec, label: &ClassLabel) -> FieldElement {
    let mut det = field.pow(field.minus_one(), label.n() as u64);
    for (i, u) in label.present() {
        det = field.mul(det, field.pow(u.leading(), i as u64));
    }
    det
}

pub fn is_real_label(field: &FieldSpec, label: &ClassLabel) -> bool {
    label.present().all(|(_, u)| u.is_self_reciprocal(field).unwrap())
}

/// Whether the class satisfies `h g h^{-1} = zeta g^{-1}` for some `h`; in
/// label terms every `u_i` is `zeta^{-1}`-self-reciprocal.
pub fn is_zeta_real_label(field: &FieldSpec, label: &ClassLabel, zeta: FieldElement) -> Result<bool, LabelError> {
    let zinv = field.inv(zeta)?;
    for (_, u) in label.present() {
        if !u.is_zeta_self_reciprocal(zinv, field)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The label of the class of `eta g`.
pub fn eta_translate(field: &FieldSpec, label: &ClassLabel, eta: FieldElement) -> Result<ClassLabel, LabelError> {
    let polys = label
        .polys
        .iter()
        .map(|u| u.eta_act(eta, field))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ClassLabel { polys })
}

/// Least label in the full orbit `{eta g : eta in F_q^*}`.
pub fn orbit_min(field: &FieldSpec, label: &ClassLabel) -> ClassLabel {
    field
        .nonzero()
        .map(|eta| eta_translate(field, label, eta).unwrap())
        .min()
        .unwrap()
}

/// Splits `labels` into eta-orbits; each orbit is sorted, orbits are sorted by
/// their least member.
pub fn equivalence_classes(field: &FieldSpec, labels: &[ClassLabel]) -> Vec<Vec<ClassLabel>> {
    let mut groups: BTreeMap<ClassLabel, Vec<ClassLabel>> = BTreeMap::new();
    for l in labels {
        groups.entry(orbit_min(field, l)).or_default().push(l.clone());
    }
    let mut orbits: Vec<Vec<ClassLabel>> = groups
        .into_values()
        .map(|mut v| {
            v.sort();
            v.dedup();
            v
        })
        .collect();
    orbits.sort();
    orbits
}

fn check_real_det_one(field: &FieldSpec, label: &ClassLabel) -> Result<(), LabelError> {
    if !is_real_label(field, label) {
        return Err(LabelError::Precondition("label must be real"));
    }
    if label_det(field, label) != FieldElement::ONE {
        return Err(LabelError::Precondition("label must have determinant 1"));
    }
    Ok(())
}

/// Whether the SL_n(q) classes inside a real determinant-1 GL-class are real.
pub fn sl_real(field: &FieldSpec, label: &ClassLabel) -> Result<bool, LabelError> {
    check_real_det_one(field, label)?;
    let n = label.n();
    if n % 4 != 2 || field.q() % 4 != 3 {
        return Ok(true);
    }
    Ok(label.partition().has_odd_part())
}

/// Whether the SL_n(q) classes inside a real determinant-1 GL-class are
/// strongly real.
pub fn sl_strongly_real(field: &FieldSpec, label: &ClassLabel) -> Result<bool, LabelError> {
    check_real_det_one(field, label)?;
    let n = label.n();
    if n % 4 != 2 || !field.is_odd() {
        return Ok(true);
    }
    let one = field.one();
    let m1 = field.minus_one();
    Ok(label
        .present()
        .any(|(i, u)| i % 2 == 1 && (u.eval(one, field).is_zero() || u.eval(m1, field).is_zero())))
}

/// Strong reality in PSL_n(q) of the class with this label, where the label
/// is real or `zeta`-real. Only `n = 2 mod 4`, `q = 3 mod 4` is decided by
/// factor degrees; every other case returns `true`.
pub fn psl_strongly_real(field: &FieldSpec, label: &ClassLabel, zeta: FieldElement) -> Result<bool, LabelError> {
    let n = label.n();
    if !field.is_odd() || n % 4 != 2 || field.q() % 4 != 3 {
        return Ok(true);
    }
    let real = is_real_label(field, label);
    let zinv = field.inv(zeta)?;
    if !real && !is_zeta_real_label(field, label, zeta)? {
        return Err(LabelError::NotRealOrZetaReal);
    }
    for (i, u) in label.present() {
        if i % 2 == 0 {
            continue;
        }
        let fac = u.factorize(field)?;
        for (p, _) in &fac.factors {
            let d = p.deg();
            if d % 2 == 1 {
                return Ok(true);
            }
            let fixed = if real { p.tilde(field)? == *p } else { p.breve(zinv, field)? == *p };
            if fixed && d % 4 != 0 {
                return Ok(true);
            }
        }
    }
    Ok(false)
}
