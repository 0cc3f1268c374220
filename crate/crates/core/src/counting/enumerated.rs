//! Counts obtained by walking Macdonald labels and applying the label-level
//! criteria, used both as a cross-check and for the strong-reality regimes
//! that have no closed form.

use std::collections::BTreeMap;

use crate::field::{FieldElement, FieldSpec};
use crate::labels::{
    label_count_estimate, label_det, labels_of_type, orbit_min, partitions_of, psl_strongly_real,
    sl_real, sl_strongly_real, ClassLabel, LabelError, LabelFilter, Partition,
};

pub type PerNu = Vec<(Partition, u128)>;

/// Rough cost of the label walks needed for family counts at `(n, q)`.
pub fn estimate(q: u64, n: u32) -> Result<u128, LabelError> {
    let real = label_count_estimate(q, n, LabelFilter::Real)?;
    let zeta = if q % 2 == 1 {
        label_count_estimate(q, n, LabelFilter::ZetaReal(FieldElement::ONE))?
    } else {
        0
    };
    Ok(real + zeta)
}

fn per_type<F>(n: u32, mut f: F) -> Result<PerNu, LabelError>
where
    F: FnMut(&Partition) -> Result<u128, LabelError>,
{
    partitions_of(n)?
        .into_iter()
        .map(|nu| {
            let c = f(&nu)?;
            Ok((nu, c))
        })
        .collect()
}

pub fn real_gl(field: &FieldSpec, n: u32, budget: u64) -> Result<PerNu, LabelError> {
    per_type(n, |nu| Ok(labels_of_type(field, nu, LabelFilter::Real, budget)?.len() as u128))
}

pub fn zeta_gl(field: &FieldSpec, n: u32, zeta: FieldElement, budget: u64) -> Result<PerNu, LabelError> {
    per_type(n, |nu| Ok(labels_of_type(field, nu, LabelFilter::ZetaReal(zeta), budget)?.len() as u128))
}

fn weighted<P>(field: &FieldSpec, n: u32, filter: LabelFilter, budget: u64, keep: P) -> Result<PerNu, LabelError>
where
    P: Fn(&ClassLabel) -> Result<bool, LabelError>,
{
    let q = field.q() as u64;
    per_type(n, |nu| {
        let mut c = 0u128;
        for l in labels_of_type(field, nu, filter, budget)? {
            if label_det(field, &l) == FieldElement::ONE && keep(&l)? {
                c += 1;
            }
        }
        Ok(c * nu.h_nu(q) as u128)
    })
}

/// SL-classes that are real.
pub fn real_sl(field: &FieldSpec, n: u32, budget: u64) -> Result<PerNu, LabelError> {
    weighted(field, n, LabelFilter::Real, budget, |l| sl_real(field, l))
}

/// SL-classes that are strongly real.
pub fn strongly_real_sl(field: &FieldSpec, n: u32, budget: u64) -> Result<PerNu, LabelError> {
    weighted(field, n, LabelFilter::Real, budget, |l| {
        Ok(sl_real(field, l)? && sl_strongly_real(field, l)?)
    })
}

/// SL-classes whose GL-class is `zeta`-real.
pub fn zeta_sl(field: &FieldSpec, n: u32, zeta: FieldElement, budget: u64) -> Result<PerNu, LabelError> {
    weighted(field, n, LabelFilter::ZetaReal(zeta), budget, |_| Ok(true))
}

/// For each eta-orbit meeting the real or zeta-real labels of type `nu`,
/// its least real-or-zeta-real member.
fn projective_orbits(
    field: &FieldSpec,
    nu: &Partition,
    zeta: Option<FieldElement>,
    budget: u64,
) -> Result<BTreeMap<ClassLabel, ClassLabel>, LabelError> {
    let mut labels = labels_of_type(field, nu, LabelFilter::Real, budget)?;
    if let Some(z) = zeta {
        labels.extend(labels_of_type(field, nu, LabelFilter::ZetaReal(z), budget)?);
    }
    let mut orbits: BTreeMap<ClassLabel, ClassLabel> = BTreeMap::new();
    for l in labels {
        let key = orbit_min(field, &l);
        orbits
            .entry(key)
            .and_modify(|rep| {
                if l < *rep {
                    *rep = l.clone();
                }
            })
            .or_insert(l);
    }
    Ok(orbits)
}

pub fn real_pgl(field: &FieldSpec, n: u32, budget: u64) -> Result<PerNu, LabelError> {
    let zeta = field.canonical_nonsquare().ok();
    per_type(n, |nu| Ok(projective_orbits(field, nu, zeta, budget)?.len() as u128))
}

/// Some translate `eta g` has determinant 1.
fn meets_sl(field: &FieldSpec, l: &ClassLabel) -> bool {
    let det = label_det(field, l);
    let n = l.n() as u64;
    field.nonzero().any(|eta| field.mul(field.pow(eta, n), det) == FieldElement::ONE)
}

fn psl_zeta(field: &FieldSpec, n: u32) -> Option<FieldElement> {
    if !field.is_odd() {
        return None;
    }
    if n % 4 == 2 && field.q() % 4 == 3 {
        field.constrained_nonsquare(n).ok()
    } else {
        field.canonical_nonsquare().ok()
    }
}

fn psl_exceptional(field: &FieldSpec, n: u32) -> bool {
    field.is_odd() && n % 4 == 2 && field.q() % 4 == 3
}

fn psl_walk<P>(field: &FieldSpec, n: u32, budget: u64, keep: P) -> Result<PerNu, LabelError>
where
    P: Fn(&ClassLabel) -> Result<bool, LabelError>,
{
    let q = field.q() as u64;
    let zeta = psl_zeta(field, n);
    let exceptional = psl_exceptional(field, n);
    per_type(n, |nu| {
        if exceptional && !nu.has_odd_part() {
            return Ok(0);
        }
        let mut c = 0u128;
        for rep in projective_orbits(field, nu, zeta, budget)?.values() {
            if meets_sl(field, rep) && keep(rep)? {
                c += 1;
            }
        }
        Ok(c * nu.h_nu(q) as u128)
    })
}

pub fn real_psl(field: &FieldSpec, n: u32, budget: u64) -> Result<PerNu, LabelError> {
    psl_walk(field, n, budget, |_| Ok(true))
}

pub fn strongly_real_psl(field: &FieldSpec, n: u32, budget: u64) -> Result<PerNu, LabelError> {
    let zeta = psl_zeta(field, n);
    psl_walk(field, n, budget, |rep| match zeta {
        Some(z) => psl_strongly_real(field, rep, z),
        None => Ok(true),
    })
}
