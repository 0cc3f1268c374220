//! Counts of real, strongly real and zeta-real classes.
//!
//! Every count is computed from closed forms where they exist, and by
//! walking Macdonald labels when the field is small enough. When both run,
//! they must agree per type; the report records which methods were used.

pub mod closed;
pub mod enumerated;
pub mod genfun;
pub mod small_rank;

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{field_of_order_with_bound, prime_power, two_adic, FieldError, FieldSpec, MAX_FIELD_ORDER};
use crate::labels::{partitions_of, LabelError, Partition, MAX_PARTITION_SIZE};

pub use closed::{f_nu, g_nu, gl_nu, pgl_nu, psl_case, psl_nu, sl_nu, zeta_gl_nu, PslCase};
pub use genfun::genfun_real_gl;
pub use small_rank::{small_rank_table, SmallRankRow};

/// Label walks larger than this are skipped when only a cross-check is wanted.
pub const DEFAULT_CROSS_CHECK_BUDGET: u64 = 200_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountError {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("{kind} counts are not available for {family}")]
    UnsupportedKind { family: Family, kind: CountKind },
    #[error("count needs label enumeration over F_{q}, which exceeds the budget")]
    EnumerationUnavailable { q: u64 },
    #[error("type {nu} gives a fractional count {value}")]
    Fractional { nu: String, value: String },
    #[error("closed form {closed} and enumeration {enumerated} disagree at type {nu}")]
    Disagreement { nu: String, closed: u128, enumerated: u128 },
    #[error("terms = {0} exceeds {MAX_PARTITION_SIZE}")]
    TooManyTerms(u32),
    #[error(transparent)]
    Label(#[from] LabelError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    GL,
    SL,
    PGL,
    PSL,
    SLQ,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::GL, Family::SL, Family::PGL, Family::PSL, Family::SLQ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::GL => "GL",
            Family::SL => "SL",
            Family::PGL => "PGL",
            Family::PSL => "PSL",
            Family::SLQ => "SLQ",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown family {s:?}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountKind {
    Real,
    StronglyReal,
    ZetaReal,
}

impl CountKind {
    pub const ALL: [CountKind; 3] = [CountKind::Real, CountKind::StronglyReal, CountKind::ZetaReal];

    pub fn as_str(self) -> &'static str {
        match self {
            CountKind::Real => "real",
            CountKind::StronglyReal => "strongly_real",
            CountKind::ZetaReal => "zeta_real",
        }
    }
}

impl fmt::Display for CountKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CountKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        CountKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown kind {s:?}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    LabelEnumeration,
    Both,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::LabelEnumeration => "label_enumeration",
            Method::Both => "both",
        }
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        [Method::ClosedForm, Method::LabelEnumeration, Method::Both]
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown method {s:?}"))
    }
}

/// The case split that produced a count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    #[serde(rename = "q_even")]
    QEven,
    #[serde(rename = "gl_q_odd")]
    GlOdd,
    #[serde(rename = "sl_generic")]
    SlGeneric,
    #[serde(rename = "n2mod4_q1mod4")]
    N2Mod4Q1Mod4,
    #[serde(rename = "n2mod4_q3mod4")]
    N2Mod4Q3Mod4,
    #[serde(rename = "pgl_q_odd")]
    PglOdd,
    #[serde(rename = "psl_n2_lt_q2")]
    PslBelow,
    #[serde(rename = "psl_n2_gt_q2")]
    PslAbove,
    #[serde(rename = "psl_n2_eq_q2_4_divides_n")]
    PslEqualFourDividesN,
    #[serde(rename = "slq_intermediate")]
    SlqIntermediate,
}

impl Regime {
    pub const ALL: [Regime; 10] = [
        Regime::QEven,
        Regime::GlOdd,
        Regime::SlGeneric,
        Regime::N2Mod4Q1Mod4,
        Regime::N2Mod4Q3Mod4,
        Regime::PglOdd,
        Regime::PslBelow,
        Regime::PslAbove,
        Regime::PslEqualFourDividesN,
        Regime::SlqIntermediate,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Regime::QEven => "q_even",
            Regime::GlOdd => "gl_q_odd",
            Regime::SlGeneric => "sl_generic",
            Regime::N2Mod4Q1Mod4 => "n2mod4_q1mod4",
            Regime::N2Mod4Q3Mod4 => "n2mod4_q3mod4",
            Regime::PglOdd => "pgl_q_odd",
            Regime::PslBelow => "psl_n2_lt_q2",
            Regime::PslAbove => "psl_n2_gt_q2",
            Regime::PslEqualFourDividesN => "psl_n2_eq_q2_4_divides_n",
            Regime::SlqIntermediate => "slq_intermediate",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Regime {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Regime::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| format!("unknown regime {s:?}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupId {
    pub family: Family,
    pub n: u32,
    pub q: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y_order: Option<u64>,
}

impl GroupId {
    pub fn new(family: Family, n: u32, q: u64) -> Result<Self, CountError> {
        Self::with_y(family, n, q, None)
    }

    pub fn slq(n: u32, q: u64, y_order: u64) -> Result<Self, CountError> {
        Self::with_y(Family::SLQ, n, q, Some(y_order))
    }

    pub fn with_y(family: Family, n: u32, q: u64, y_order: Option<u64>) -> Result<Self, CountError> {
        let g = GroupId { family, n, q, y_order };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<(), CountError> {
        if self.n == 0 || self.n > MAX_PARTITION_SIZE {
            return Err(CountError::InvalidGroup(format!(
                "n = {} is outside 1..={MAX_PARTITION_SIZE}",
                self.n
            )));
        }
        if prime_power(self.q).is_none() {
            return Err(CountError::InvalidGroup(format!("q = {} is not a prime power", self.q)));
        }
        match (self.family, self.y_order) {
            (Family::SLQ, Some(y)) => {
                let g = (self.n as u64).gcd(&(self.q - 1));
                if y == 0 || !g.is_multiple_of(y) {
                    return Err(CountError::InvalidGroup(format!(
                        "|Y| = {y} must divide gcd(n, q - 1) = {g}"
                    )));
                }
            }
            (Family::SLQ, None) => {
                return Err(CountError::InvalidGroup("SLQ needs |Y|".into()));
            }
            (_, Some(_)) => {
                return Err(CountError::InvalidGroup("|Y| only applies to SLQ".into()));
            }
            _ => {}
        }
        Ok(())
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.family, self.y_order) {
            (Family::SLQ, Some(y)) => write!(f, "SL_{}({})/Y, |Y| = {}", self.n, self.q, y),
            _ => write!(f, "{}_{}({})", self.family, self.n, self.q),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NuCount {
    pub nu: Partition,
    pub count: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub group: GroupId,
    pub kind: CountKind,
    pub total: u128,
    pub method: Method,
    pub per_nu: Vec<NuCount>,
    pub regime: Regime,
}

impl CountReport {
    pub fn count_for(&self, nu: &Partition) -> u128 {
        self.per_nu.iter().find(|c| &c.nu == nu).map_or(0, |c| c.count)
    }
}

/// When to walk labels alongside the closed forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Enumerate {
    Never,
    IfAffordable,
    Always,
}

#[derive(Clone, Copy, Debug)]
pub struct CountOptions {
    pub enumerate: Enumerate,
    /// Maximum number of labels walked per type.
    pub label_budget: u64,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            enumerate: Enumerate::IfAffordable,
            label_budget: DEFAULT_CROSS_CHECK_BUDGET,
        }
    }
}

type PerNu = Vec<(Partition, u128)>;

/// Regime governing `kind` counts for `group`.
pub fn regime(group: &GroupId, kind: CountKind) -> Regime {
    let (n, q) = (group.n, group.q);
    if q % 2 == 0 {
        return Regime::QEven;
    }
    let n2 = n % 4 == 2;
    let sl = || {
        if n2 && q % 4 == 3 {
            Regime::N2Mod4Q3Mod4
        } else if n2 && kind == CountKind::StronglyReal {
            Regime::N2Mod4Q1Mod4
        } else {
            Regime::SlGeneric
        }
    };
    let psl = || {
        let a = two_adic(n as u64).unwrap();
        let b = two_adic(q - 1).unwrap();
        if a < b {
            Regime::PslBelow
        } else if a > b {
            Regime::PslAbove
        } else if n % 4 == 0 {
            Regime::PslEqualFourDividesN
        } else {
            Regime::N2Mod4Q3Mod4
        }
    };
    match group.family {
        Family::GL => Regime::GlOdd,
        Family::PGL => Regime::PglOdd,
        Family::SL => sl(),
        Family::PSL => psl(),
        Family::SLQ => match slq_route(group) {
            SlqRoute::Sl => sl(),
            SlqRoute::Psl => psl(),
            SlqRoute::Intermediate => Regime::SlqIntermediate,
        },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SlqRoute {
    Sl,
    Psl,
    Intermediate,
}

fn slq_route(group: &GroupId) -> SlqRoute {
    let y = group.y_order.unwrap_or(1);
    if group.q.is_multiple_of(2) || y % 2 == 1 {
        return SlqRoute::Sl;
    }
    let g = (group.n as u64).gcd(&(group.q - 1));
    if two_adic(y).unwrap() == two_adic(g).unwrap() {
        SlqRoute::Psl
    } else {
        SlqRoute::Intermediate
    }
}

fn weighted_closed(n: u32, q: u64, f: impl Fn(&Partition) -> Ratio<u128>) -> Result<PerNu, CountError> {
    partitions_of(n)?
        .into_iter()
        .map(|nu| {
            let v = f(&nu) * Ratio::from_integer(nu.h_nu(q) as u128);
            if !v.is_integer() {
                return Err(CountError::Fractional { nu: nu.to_string(), value: v.to_string() });
            }
            Ok((nu, v.to_integer()))
        })
        .collect()
}

fn plain_closed(n: u32, f: impl Fn(&Partition) -> u128) -> Result<PerNu, CountError> {
    Ok(partitions_of(n)?.into_iter().map(|nu| {
        let c = f(&nu);
        (nu, c)
    }).collect())
}

fn closed_form(group: &GroupId, kind: CountKind, route: Family) -> Result<Option<PerNu>, CountError> {
    let (n, q) = (group.n, group.q);
    let exceptional = q % 2 == 1 && n % 4 == 2 && q % 4 == 3;
    let odd_n2 = q % 2 == 1 && n % 4 == 2;
    Ok(match (route, kind) {
        (Family::GL, CountKind::Real | CountKind::StronglyReal) => Some(plain_closed(n, |nu| gl_nu(nu, q))?),
        (Family::GL, CountKind::ZetaReal) => Some(plain_closed(n, |nu| zeta_gl_nu(nu, q))?),
        (Family::SL, CountKind::Real) => Some(weighted_closed(n, q, |nu| {
            if exceptional && !nu.has_odd_part() {
                Ratio::from_integer(0)
            } else {
                Ratio::from_integer(sl_nu(nu, q))
            }
        })?),
        (Family::SL, CountKind::StronglyReal) if !odd_n2 => {
            Some(weighted_closed(n, q, |nu| Ratio::from_integer(sl_nu(nu, q)))?)
        }
        (Family::SL, _) => None,
        (Family::PGL, CountKind::Real | CountKind::StronglyReal) => Some(plain_closed(n, |nu| pgl_nu(nu, q))?),
        (Family::PSL, CountKind::Real) => Some(weighted_closed(n, q, |nu| psl_nu(nu, n, q))?),
        (Family::PSL, CountKind::StronglyReal) if !exceptional => {
            Some(weighted_closed(n, q, |nu| psl_nu(nu, n, q))?)
        }
        (Family::PSL, CountKind::StronglyReal) => None,
        // the intermediate quotient: both kinds are sum h_nu sl_nu
        (Family::SLQ, CountKind::Real | CountKind::StronglyReal) => {
            Some(weighted_closed(n, q, |nu| Ratio::from_integer(sl_nu(nu, q)))?)
        }
        (family, kind) => return Err(CountError::UnsupportedKind { family, kind }),
    })
}

fn enumerated_form(field: &FieldSpec, group: &GroupId, kind: CountKind, route: Family, budget: u64) -> Result<PerNu, CountError> {
    let n = group.n;
    let zeta = || field.canonical_nonsquare();
    Ok(match (route, kind) {
        (Family::GL, CountKind::Real | CountKind::StronglyReal) => enumerated::real_gl(field, n, budget)?,
        (Family::GL, CountKind::ZetaReal) => enumerated::zeta_gl(field, n, zeta()?, budget)?,
        (Family::SL, CountKind::Real) => enumerated::real_sl(field, n, budget)?,
        (Family::SL, CountKind::StronglyReal) => enumerated::strongly_real_sl(field, n, budget)?,
        (Family::SL, CountKind::ZetaReal) => enumerated::zeta_sl(field, n, zeta()?, budget)?,
        (Family::PGL, CountKind::Real | CountKind::StronglyReal) => enumerated::real_pgl(field, n, budget)?,
        (Family::PSL, CountKind::Real) => enumerated::real_psl(field, n, budget)?,
        (Family::PSL, CountKind::StronglyReal) => enumerated::strongly_real_psl(field, n, budget)?,
        (Family::SLQ, CountKind::Real | CountKind::StronglyReal) => enumerated::real_sl(field, n, budget)?,
        (family, kind) => return Err(CountError::UnsupportedKind { family, kind }),
    })
}

/// Counts the `kind` classes of `group`.
pub fn count(group: &GroupId, kind: CountKind, opts: &CountOptions) -> Result<CountReport, CountError> {
    group.validate()?;
    let route = match group.family {
        Family::SLQ => match slq_route(group) {
            SlqRoute::Sl => Family::SL,
            SlqRoute::Psl => Family::PSL,
            SlqRoute::Intermediate => Family::SLQ,
        },
        f => f,
    };
    if kind == CountKind::ZetaReal && group.q.is_multiple_of(2) {
        return Err(FieldError::EvenCharacteristic(group.q as u32).into());
    }
    let closed = closed_form(group, kind, route)?;

    let affordable = group.q <= MAX_FIELD_ORDER as u64
        && enumerated::estimate(group.q, group.n)? <= opts.label_budget as u128;
    let want_enum = match opts.enumerate {
        Enumerate::Never => closed.is_none(),
        Enumerate::IfAffordable => closed.is_none() || affordable,
        Enumerate::Always => true,
    };
    let enumerated = if want_enum {
        if closed.is_none() && !affordable && opts.enumerate != Enumerate::Always {
            return Err(CountError::EnumerationUnavailable { q: group.q });
        }
        let field = field_of_order_with_bound(group.q, MAX_FIELD_ORDER)?;
        Some(enumerated_form(&field, group, kind, route, opts.label_budget)?)
    } else {
        None
    };

    let (per, method) = match (closed, enumerated) {
        (Some(c), Some(e)) => {
            for ((nu, a), (_, b)) in c.iter().zip(&e) {
                if a != b {
                    return Err(CountError::Disagreement { nu: nu.to_string(), closed: *a, enumerated: *b });
                }
            }
            (c, Method::Both)
        }
        (Some(c), None) => (c, Method::ClosedForm),
        (None, Some(e)) => (e, Method::LabelEnumeration),
        (None, None) => unreachable!("one of the two methods always runs"),
    };
    let per_nu: Vec<NuCount> = per.into_iter().map(|(nu, count)| NuCount { nu, count }).collect();
    Ok(CountReport {
        group: group.clone(),
        kind,
        total: per_nu.iter().map(|c| c.count).sum(),
        method,
        per_nu,
        regime: regime(group, kind),
    })
}

fn simple(family: Family, n: u32, q: u64, kind: CountKind) -> Result<CountReport, CountError> {
    count(&GroupId::new(family, n, q)?, kind, &CountOptions::default())
}

pub fn real_gl(n: u32, q: u64) -> Result<CountReport, CountError> {
    simple(Family::GL, n, q, CountKind::Real)
}

pub fn zeta_real_gl(n: u32, q: u64) -> Result<CountReport, CountError> {
    simple(Family::GL, n, q, CountKind::ZetaReal)
}

pub fn real_sl(n: u32, q: u64) -> Result<CountReport, CountError> {
    simple(Family::SL, n, q, CountKind::Real)
}

pub fn strongly_real_sl(n: u32, q: u64) -> Result<CountReport, CountError> {
    simple(Family::SL, n, q, CountKind::StronglyReal)
}

pub fn real_pgl(n: u32, q: u64) -> Result<CountReport, CountError> {
    simple(Family::PGL, n, q, CountKind::Real)
}

pub fn real_psl(n: u32, q: u64) -> Result<CountReport, CountError> {
    simple(Family::PSL, n, q, CountKind::Real)
}

pub fn strongly_real_psl(n: u32, q: u64) -> Result<CountReport, CountError> {
    simple(Family::PSL, n, q, CountKind::StronglyReal)
}

pub fn real_slq(n: u32, q: u64, y_order: u64) -> Result<CountReport, CountError> {
    count(&GroupId::slq(n, q, y_order)?, CountKind::Real, &CountOptions::default())
}

/// `gcd(q - 1, k)`.
pub fn delta(q: u64, k: u64) -> u64 {
    (q - 1).gcd(&k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn total(f: Family, n: u32, q: u64, k: CountKind) -> u128 {
        simple(f, n, q, k).unwrap().total
    }

    #[test]
    fn worked_values() {
        use CountKind::*;
        use Family::*;
        assert_eq!(total(GL, 2, 3, Real), 6);
        assert_eq!(total(GL, 2, 2, Real), 3);
        assert_eq!(total(GL, 4, 3, Real), 30);
        assert_eq!(total(GL, 2, 3, ZetaReal), 4);
        assert_eq!(total(GL, 3, 5, ZetaReal), 0);
        assert_eq!(total(GL, 2, 5, ZetaReal), 6);
        assert_eq!(total(SL, 2, 5, Real), 9);
        assert_eq!(total(SL, 2, 7, Real), 7);
        assert_eq!(total(SL, 6, 3, Real), 78);
        assert_eq!(total(SL, 2, 3, StronglyReal), 2);
        assert_eq!(total(SL, 2, 9, StronglyReal), 2);
        assert_eq!(total(SL, 6, 3, StronglyReal), 51);
        assert_eq!(total(SL, 4, 3, StronglyReal), 29);
        assert_eq!(total(PGL, 2, 5, Real), 7);
        assert_eq!(total(PGL, 3, 3, Real), 6);
        assert_eq!(total(PGL, 2, 4, Real), 5);
        assert_eq!(total(PSL, 2, 5, Real), 5);
        assert_eq!(total(PSL, 2, 7, Real), 4);
        assert_eq!(total(PSL, 6, 3, Real), 46);
        assert_eq!(total(PSL, 6, 3, StronglyReal), 43);
        assert_eq!(total(PSL, 2, 7, StronglyReal), 4);
        assert_eq!(total(PSL, 6, 7, Real) - total(PSL, 6, 7, StronglyReal), 21);
    }

    #[test]
    fn sl6_strongly_real_by_type() {
        // Palindromic sextics over F_3 correspond to cubics in t + 1/t; 15 of
        // the 27 cubics vanish at 2 or at 1.
        let r = strongly_real_sl(6, 3).unwrap();
        assert_eq!(r.count_for(&Partition::from_exponents(vec![6])), 15);
        assert_eq!(r.count_for(&Partition::from_exponents(vec![0, 3])), 0);
        assert_eq!(r.total, 51);
    }

    #[test]
    fn quotient_dispatch() {
        let r = |y| real_slq(4, 5, y).unwrap().total;
        assert_eq!(r(1), real_sl(4, 5).unwrap().total);
        assert_eq!(r(1), 57);
        assert_eq!(r(2), 57);
        assert_eq!(r(4), real_psl(4, 5).unwrap().total);
        assert!(GroupId::slq(4, 5, 3).is_err());
        assert_eq!(regime(&GroupId::slq(4, 5, 2).unwrap(), CountKind::Real), Regime::SlqIntermediate);
    }

    #[test]
    fn methods_agree_when_both_run() {
        for q in [2u64, 3, 4, 5, 7, 9] {
            for n in 1..=6 {
                for f in [Family::GL, Family::SL, Family::PGL, Family::PSL] {
                    for k in [CountKind::Real, CountKind::StronglyReal] {
                        let opts = CountOptions { enumerate: Enumerate::Always, label_budget: 10_000_000 };
                        let rep = count(&GroupId::new(f, n, q).unwrap(), k, &opts);
                        let rep = rep.unwrap_or_else(|e| panic!("{f} n={n} q={q} {k}: {e}"));
                        assert!(matches!(rep.method, Method::Both | Method::LabelEnumeration));
                    }
                }
            }
        }
    }

    #[test]
    fn errors() {
        assert!(GroupId::new(Family::GL, 2, 6).is_err());
        assert!(GroupId::new(Family::GL, 0, 3).is_err());
        assert!(matches!(
            simple(Family::PGL, 2, 5, CountKind::ZetaReal),
            Err(CountError::UnsupportedKind { .. })
        ));
        assert!(simple(Family::GL, 2, 4, CountKind::ZetaReal).is_err());
    }

    #[test]
    fn report_json_shape() {
        let r = real_sl(2, 7).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["group"], serde_json::json!({"family": "SL", "n": 2, "q": 7}));
        assert_eq!(v["kind"], "real");
        assert_eq!(v["total"], 7);
        assert_eq!(v["method"], "both");
        assert_eq!(v["regime"], "n2mod4_q3mod4");
        assert_eq!(v["per_nu"][0], serde_json::json!({"nu": [2], "count": 7}));
        let back: CountReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }
}
