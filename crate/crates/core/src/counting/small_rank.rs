//! Published small-rank polynomials (n <= 6) evaluated at a given q, side by
//! side with the engine's counts.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::{count, delta, CountError, CountKind, CountOptions, Enumerate, Family, GroupId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmallRankRow {
    pub n: u32,
    pub family: Family,
    pub kind: CountKind,
    pub formula: String,
    pub published: String,
    pub engine: u128,
    #[serde(rename = "match")]
    pub matches: bool,
}

type R = Ratio<i128>;

struct Vars {
    q: R,
    d3: R,
    d4: R,
    d5: R,
}

struct Entry {
    n: u32,
    family: Family,
    kind: CountKind,
    formula: &'static str,
    eval: fn(&Vars) -> R,
}

fn r(x: i128) -> R {
    R::from_integer(x)
}

fn half() -> R {
    R::new(1, 2)
}

fn entries(q: u64) -> Vec<Entry> {
    use CountKind::{Real, StronglyReal};
    use Family::{GL, PGL, PSL, SL};
    let e = |n, family, kind, formula, eval| Entry { n, family, kind, formula, eval };
    if q.is_multiple_of(2) {
        return vec![
            e(2, GL, Real, "q+1", |v| v.q + 1),
            e(2, SL, Real, "q+1", |v| v.q + 1),
            e(3, GL, Real, "q+2", |v| v.q + 2),
            e(3, SL, Real, "q+1+d3", |v| v.q + 1 + v.d3),
            e(4, GL, Real, "q^2+2q+2", |v| v.q * v.q + r(2) * v.q + 2),
            e(4, SL, Real, "q^2+2q+2", |v| v.q * v.q + r(2) * v.q + 2),
            e(5, GL, Real, "q^2+3q+3", |v| v.q * v.q + r(3) * v.q + 3),
            e(5, SL, Real, "q^2+3q+2+d5", |v| v.q * v.q + r(3) * v.q + 2 + v.d5),
            e(6, GL, Real, "q^3+2q^2+4q+4", |v| v.q * v.q * v.q + r(2) * v.q * v.q + r(4) * v.q + 4),
            e(6, SL, Real, "q^3+2q^2+(3+d3)q+3+d3", |v| {
                v.q * v.q * v.q + r(2) * v.q * v.q + (r(3) + v.d3) * v.q + 3 + v.d3
            }),
        ];
    }
    let one_mod_4 = q % 4 == 1;
    let mut out = vec![
        e(2, GL, Real, "q+3", |v| v.q + 3),
        e(2, PGL, Real, "q+2", |v| v.q + 2),
        e(2, SL, StronglyReal, "2", |_| r(2)),
    ];
    if one_mod_4 {
        out.push(e(2, SL, Real, "q+4", |v| v.q + 4));
        out.push(e(2, PSL, Real, "q/2+5/2", |v| half() * v.q + R::new(5, 2)));
        out.push(e(2, PSL, StronglyReal, "q/2+5/2", |v| half() * v.q + R::new(5, 2)));
    } else {
        out.push(e(2, SL, Real, "q", |v| v.q));
        out.push(e(2, PSL, Real, "q/2+1/2", |v| half() * v.q + half()));
        out.push(e(2, PSL, StronglyReal, "q/2+1/2", |v| half() * v.q + half()));
    }
    out.extend([
        e(3, GL, Real, "2q+6", |v| r(2) * v.q + 6),
        e(3, SL, Real, "q+2+d3", |v| v.q + 2 + v.d3),
        e(3, PGL, Real, "q+3", |v| v.q + 3),
        e(3, PSL, Real, "q+2+d3", |v| v.q + 2 + v.d3),
        e(4, GL, Real, "q^2+4q+9", |v| v.q * v.q + r(4) * v.q + 9),
        e(4, SL, Real, "q^2+4q+4+2d4", |v| v.q * v.q + r(4) * v.q + 4 + r(2) * v.d4),
        e(4, PGL, Real, "q^2+3q+5", |v| v.q * v.q + r(3) * v.q + 5),
    ]);
    if one_mod_4 {
        out.push(e(4, PSL, Real, "q^2/2+5q/2+3+d4", |v| {
            half() * v.q * v.q + R::new(5, 2) * v.q + 3 + v.d4
        }));
    } else {
        out.push(e(4, PSL, Real, "q^2+3q+3+d4", |v| v.q * v.q + r(3) * v.q + 3 + v.d4));
    }
    out.extend([
        e(5, GL, Real, "2q^2+8q+14", |v| r(2) * v.q * v.q + r(8) * v.q + 14),
        e(5, SL, Real, "q^2+4q+6+d5", |v| v.q * v.q + r(4) * v.q + 6 + v.d5),
        e(5, PGL, Real, "q^2+4q+7", |v| v.q * v.q + r(4) * v.q + 7),
        e(5, PSL, Real, "q^2+4q+6+d5", |v| v.q * v.q + r(4) * v.q + 6 + v.d5),
        e(6, GL, Real, "q^3+4q^2+13q+22", |v| v.q * v.q * v.q + r(4) * v.q * v.q + r(13) * v.q + 22),
        e(6, PGL, Real, "q^3+3q^2+9q+12", |v| v.q * v.q * v.q + r(3) * v.q * v.q + r(9) * v.q + 12),
        e(6, SL, StronglyReal, "4q^2+8q+12+2d3", |v| r(4) * v.q * v.q + r(8) * v.q + 12 + r(2) * v.d3),
    ]);
    if one_mod_4 {
        out.extend([
            e(6, SL, Real, "q^3+3q^2+(9+d3)q+14+4d3", |v| {
                v.q * v.q * v.q + r(3) * v.q * v.q + (r(9) + v.d3) * v.q + 14 + r(4) * v.d3
            }),
            e(6, PSL, Real, "q^3+2q^2+(7+d3)q+7+2d3", |v| {
                v.q * v.q * v.q + r(2) * v.q * v.q + (r(7) + v.d3) * v.q + 7 + r(2) * v.d3
            }),
            e(6, PSL, StronglyReal, "q^3+2q^2+(7+d3)q+7+2d3", |v| {
                v.q * v.q * v.q + r(2) * v.q * v.q + (r(7) + v.d3) * v.q + 7 + r(2) * v.d3
            }),
        ]);
    } else {
        out.extend([
            e(6, SL, Real, "q^3+3q^2+(5+d3)q+6", |v| {
                v.q * v.q * v.q + r(3) * v.q * v.q + (r(5) + v.d3) * v.q + 6
            }),
            e(6, PSL, Real, "q^3/2+2q^2+(3+d3/2)q+7/2+d3/2", psl6_q3),
            e(6, PSL, StronglyReal, "q^3/2+2q^2+(3+d3/2)q+7/2+d3/2-(q^2-q)/2", |v| {
                psl6_q3(v) - half() * (v.q * v.q - v.q)
            }),
        ]);
    }
    out
}

fn psl6_q3(v: &Vars) -> R {
    half() * v.q * v.q * v.q + r(2) * v.q * v.q + (r(3) + half() * v.d3) * v.q + R::new(7, 2) + half() * v.d3
}

/// Every published entry at `q`, with the engine's value beside it.
pub fn small_rank_table(q: u64) -> Result<Vec<SmallRankRow>, CountError> {
    let vars = Vars {
        q: r(q as i128),
        d3: r(delta(q, 3) as i128),
        d4: r(delta(q, 4) as i128),
        d5: r(delta(q, 5) as i128),
    };
    let opts = CountOptions { enumerate: Enumerate::IfAffordable, ..CountOptions::default() };
    let mut rows = Vec::new();
    for e in entries(q) {
        let published = (e.eval)(&vars);
        let engine = count(&GroupId::new(e.family, e.n, q)?, e.kind, &opts)?.total;
        let matches = published.is_integer() && published.to_integer() >= 0 && published.to_integer() as u128 == engine;
        rows.push(SmallRankRow {
            n: e.n,
            family: e.family,
            kind: e.kind,
            formula: e.formula.to_string(),
            published: published.to_string(),
            engine,
            matches,
        });
    }
    Ok(rows)
}
