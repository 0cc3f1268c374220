//! Acceptance suite: one PASS/FAIL line per criterion, with wall-clock limits.
//!
//! Runs as a plain binary so criteria execute one after another and their
//! timings are not distorted by the test harness running them concurrently.
//! Failing criteria are reported but only change the exit status when
//! `ACCEPTANCE_STRICT` is set.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use realclass::counting::{
    count, genfun_real_gl, small_rank_table, zeta_gl_nu, CountKind, CountOptions, Enumerate, Family, GroupId,
};
use realclass::field::{field_of_order, FieldSpec};
use realclass::labels::{enumerate_labels, label_det, partitions_of, LabelFilter};
use realclass::oracle::{checkable_kinds, desk_groups, matrix_to_label, OracleConfig, OracleRun};
use realclass::poly::{enumerate_s, enumerate_t, monic_polys, sigma};

type Outcome = Result<(), Vec<String>>;

/// Groups large enough to need a raised cap.
const ORACLE_CAP: u64 = 30_000_000;

struct Runs {
    built: BTreeMap<String, Arc<OracleRun>>,
}

impl Runs {
    fn get(&mut self, id: &GroupId) -> Arc<OracleRun> {
        let key = id.to_string();
        if let Some(r) = self.built.get(&key) {
            return r.clone();
        }
        let run = OracleRun::new(id, &OracleConfig { cap: ORACLE_CAP })
            .unwrap_or_else(|e| panic!("oracle failed on {id}: {e}"));
        let run = Arc::new(run);
        self.built.insert(key, run.clone());
        run
    }
}

fn field(q: u64) -> FieldSpec {
    field_of_order(q).unwrap()
}

fn gid(f: Family, n: u32, q: u64) -> GroupId {
    GroupId::new(f, n, q).unwrap()
}

/// The published size of the self-reciprocal family.
fn lemma_nqd(q: u64, d: u32) -> u128 {
    let q = q as u128;
    match (d % 2, q % 2) {
        (1, 1) => 2 * q.pow((d - 1) / 2),
        (1, _) => q.pow((d - 1) / 2),
        (_, 1) => (q + 1) * q.pow(d / 2 - 1),
        _ => q.pow(d / 2),
    }
}

fn collect(errs: Vec<String>) -> Outcome {
    if errs.is_empty() {
        Ok(())
    } else {
        Err(errs)
    }
}

fn polynomial_counts() -> Outcome {
    let mut errs = Vec::new();
    for q in [2u64, 3, 4, 5, 7, 9] {
        let f = field(q);
        for d in 1..=6u32 {
            let t = enumerate_t(&f, d as usize).len() as u128;
            if t != lemma_nqd(q, d) {
                errs.push(format!("q={q} d={d}: |T| = {t}, expected {}", lemma_nqd(q, d)));
            }
            if f.is_odd() {
                let zeta = f.canonical_nonsquare().unwrap();
                let s = enumerate_s(&f, d as usize, zeta).unwrap().len() as u128;
                let expected = lemma_nqd(q, d) * sigma(d);
                if s != expected {
                    errs.push(format!("q={q} d={d}: |S| = {s}, expected {expected}"));
                }
            }
        }
    }
    collect(errs)
}

fn table_rows(qs: &[u64], ns: &[u32]) -> Outcome {
    let mut errs = Vec::new();
    for &q in qs {
        let rows = small_rank_table(q).map_err(|e| vec![e.to_string()])?;
        let mut seen = 0;
        for r in rows.iter().filter(|r| ns.contains(&r.n)) {
            seen += 1;
            if !r.matches {
                errs.push(format!(
                    "q={q} {}_{} {}: table {} = {}, engine {}",
                    r.family, r.n, r.kind, r.formula, r.published, r.engine
                ));
            }
        }
        if seen == 0 {
            errs.push(format!("q={q}: no rows for n in {ns:?}"));
        }
    }
    collect(errs)
}

fn genfun() -> Outcome {
    let mut errs = Vec::new();
    for q in [2u64, 3, 5] {
        let coeffs = genfun_real_gl(q, 8).map_err(|e| vec![e.to_string()])?;
        if coeffs[0] != 1 {
            errs.push(format!("q={q}: constant term {}", coeffs[0]));
        }
        for n in 1..=8u32 {
            let opts = CountOptions { enumerate: Enumerate::Never, ..CountOptions::default() };
            let engine = count(&gid(Family::GL, n, q), CountKind::Real, &opts).unwrap().total;
            if coeffs[n as usize] != engine {
                errs.push(format!("q={q} t^{n}: series {}, real_gl {engine}", coeffs[n as usize]));
            }
        }
    }
    collect(errs)
}

const GROUP_LIMIT: Duration = Duration::from_secs(300);

fn oracle_equivalence(runs: &mut Runs) -> Outcome {
    let mut errs = Vec::new();
    for id in desk_groups() {
        let t = Instant::now();
        let run = runs.get(&id);
        for k in checkable_kinds(&id) {
            match run.verify(k) {
                Ok(v) if v.matches => {}
                Ok(v) => errs.push(format!(
                    "{id} {k}: oracle {} vs engine {}, per-type deltas {:?}",
                    v.oracle, v.formula, v.per_nu_deltas
                )),
                Err(e) => errs.push(format!("{id} {k}: {e}")),
            }
        }
        let elapsed = t.elapsed();
        println!("    {id}: {} classes, {:.2} s", run.records.len(), elapsed.as_secs_f64());
        if elapsed > GROUP_LIMIT {
            errs.push(format!("{id}: {:.1} s exceeds the per-group limit", elapsed.as_secs_f64()));
        }
    }
    collect(errs)
}

fn count_of(run: &OracleRun, k: CountKind) -> u128 {
    run.per_nu(k).values().sum()
}

fn dichotomy(runs: &mut Runs) -> Outcome {
    let mut errs = Vec::new();
    for id in desk_groups() {
        if matches!(id.family, Family::GL | Family::PGL) {
            let run = runs.get(&id);
            let (r, s) = (count_of(&run, CountKind::Real), count_of(&run, CountKind::StronglyReal));
            if r != s {
                errs.push(format!("{id}: real {r} != strongly real {s}"));
            }
        }
    }
    for q in [2u64, 4] {
        let run = runs.get(&gid(Family::SL, 2, q));
        let (r, s) = (count_of(&run, CountKind::Real), count_of(&run, CountKind::StronglyReal));
        if r != s {
            errs.push(format!("SL_2({q}): real {r} != strongly real {s}"));
        }
    }
    for q in [5u64, 9, 7, 3] {
        let run = runs.get(&gid(Family::SL, 2, q));
        let (r, s) = (count_of(&run, CountKind::Real), count_of(&run, CountKind::StronglyReal));
        if r <= s {
            errs.push(format!("SL_2({q}): real {r} is not above strongly real {s}"));
        }
    }
    for q in [3u64, 5, 7, 9] {
        let run = runs.get(&gid(Family::PSL, 2, q));
        let (r, s) = (count_of(&run, CountKind::Real), count_of(&run, CountKind::StronglyReal));
        if r != s {
            errs.push(format!("PSL_2({q}): real {r} != strongly real {s}"));
        }
    }
    collect(errs)
}

fn properties(runs: &mut Runs) -> Outcome {
    let mut errs = Vec::new();
    let mut ids = desk_groups();
    ids.extend([gid(Family::GL, 4, 3), gid(Family::SL, 2, 2), gid(Family::SL, 2, 4)]);
    for id in &ids {
        let run = runs.get(id);
        let f = run.group.field();
        let total: u64 = run.records.iter().map(|r| r.size).sum();
        if total != run.group.order() {
            errs.push(format!("{id}: class sizes sum to {total}, order {}", run.group.order()));
        }
        for (c, r) in run.records.iter().enumerate() {
            if !run.group.order().is_multiple_of(r.size) {
                errs.push(format!("{id}: class size {} does not divide the order", r.size));
            }
            if r.is_strongly_real && !r.is_real {
                errs.push(format!("{id}: strongly real class {c} is not real"));
            }
            if !run.group.is_quotient() && label_det(f, &r.label) != r.representative.det(f) {
                errs.push(format!("{id}: label determinant differs from det on class {c}"));
            }
            let x = run.group.element((c * 7919 + 13) % run.group.order() as usize).unwrap();
            let conj = x.mul(&r.representative, f).mul(&x.inverse(f).unwrap(), f);
            if matrix_to_label(f, &conj).unwrap() != r.label {
                errs.push(format!("{id}: label of class {c} changes under conjugation"));
            }
            if !f.is_odd() && r.is_real && !r.is_strongly_real {
                errs.push(format!("{id}: real class {c} not strongly real with q even"));
            }
        }
        if !run.splits_uniform() {
            errs.push(format!("{id}: split classes of one GL-class disagree on reality"));
        }
        if !run.group.is_quotient() {
            let labels = enumerate_labels(f, id.n, LabelFilter::All).unwrap();
            let expected: u64 = match run.group.base() {
                Family::GL => labels.len() as u64,
                _ => labels
                    .iter()
                    .filter(|l| label_det(f, l) == f.one())
                    .map(|l| l.partition().h_nu(id.q))
                    .sum(),
            };
            if expected != run.records.len() as u64 {
                errs.push(format!("{id}: {} classes, labels predict {expected}", run.records.len()));
            }
        }
    }
    for (n, q) in [(2u32, 3u64), (2, 5), (4, 3)] {
        let run = runs.get(&gid(Family::GL, n, q));
        let oracle = count_of(&run, CountKind::ZetaReal);
        let expected: u128 = partitions_of(n).unwrap().iter().map(|nu| zeta_gl_nu(nu, q)).sum();
        if oracle != expected {
            errs.push(format!("GL_{n}({q}): {oracle} zeta-real classes, expected {expected}"));
        }
    }
    for q in [2u64, 3, 4, 5, 7, 9] {
        let f = field(q);
        for d in 1..=4 {
            for p in monic_polys(&f, d).filter(|p| !p.constant().is_zero()) {
                if p.tilde(&f).unwrap().tilde(&f).unwrap() != p {
                    errs.push(format!("q={q}: tilde not involutive on {p:?}"));
                }
                if let Ok(z) = f.canonical_nonsquare() {
                    if p.breve(z, &f).unwrap().breve(z, &f).unwrap() != p {
                        errs.push(format!("q={q}: breve not involutive on {p:?}"));
                    }
                }
            }
        }
        let bound = if f.is_odd() { 2 } else { 1 };
        for d in 1..=6 {
            for p in enumerate_t(&f, d) {
                let k = p.orbit_t(&f).unwrap().len();
                if k == 0 || k > bound {
                    errs.push(format!("q={q}: T-orbit of size {k}"));
                }
            }
            if let Ok(z) = f.canonical_nonsquare() {
                for p in enumerate_s(&f, d, z).unwrap() {
                    let k = p.orbit_s(z, &f).unwrap().len();
                    if k == 0 || k > bound {
                        errs.push(format!("q={q}: S-orbit of size {k}"));
                    }
                }
            }
        }
    }
    collect(errs)
}

fn report(id: u32, name: &str, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let t = Instant::now();
    let outcome = f();
    let elapsed = t.elapsed();
    let mut problems = outcome.err().unwrap_or_default();
    if elapsed > limit {
        problems.push(format!("took {:.2} s, limit {} s", elapsed.as_secs_f64(), limit.as_secs()));
    }
    let verdict = if problems.is_empty() { "PASS" } else { "FAIL" };
    println!(
        "criterion {id} [{name}]: {verdict} ({:.2} s, limit {} s)",
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    for p in &problems {
        println!("    {p}");
    }
    problems.is_empty()
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let mut runs = Runs { built: BTreeMap::new() };
    let results = [
        report(1, "polynomial counts", secs(1), polynomial_counts),
        report(2, "small-rank table, q even", secs(5), || table_rows(&[2, 4], &[2, 3, 4, 5, 6])),
        report(3, "small-rank table, q odd, n = 3, 4, 5", secs(10), || table_rows(&[3, 5, 7, 9], &[3, 4, 5])),
        report(4, "small-rank table, n = 2", secs(1), || table_rows(&[3, 5, 7, 9], &[2])),
        report(5, "small-rank table, n = 6", secs(60), || table_rows(&[3, 5, 7], &[6])),
        report(6, "generating function", secs(1), genfun),
        report(7, "oracle equivalence", secs(1800), || oracle_equivalence(&mut runs)),
        report(8, "real versus strongly real dichotomy", secs(600), || dichotomy(&mut runs)),
        report(9, "structural properties", secs(600), || properties(&mut runs)),
    ];
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, ok)| !**ok).map(|(i, _)| i + 1).collect();
    if failed.is_empty() {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        if std::env::var_os("ACCEPTANCE_STRICT").is_some() {
            ExitCode::FAILURE
        } else {
            ExitCode::SUCCESS
        }
    }
}
