//! One function per subcommand. Each writes its report and returns the exit
//! status.

use std::io::Write;

use realclass::counting::{
    count as count_classes, delta, genfun_real_gl, real_gl, small_rank_table, CountError, CountKind, CountOptions,
    CountReport, Enumerate, Family, GroupId,
};
use realclass::field::{field_of_order, FieldError, FieldSpec};
use realclass::labels::{
    enumerate_labels_with_budget, is_real_label, is_zeta_real_label, label_det, psl_strongly_real, sl_real,
    sl_strongly_real, ClassLabel, LabelError, LabelFilter,
};
use realclass::oracle::{checkable_kinds, desk_groups, OracleConfig, OracleError, OracleRun, VerifyRecord};
use serde::Serialize;

use crate::render;
use crate::{Failure, Filter, Format, Status};

type Outcome = Result<Status, Failure>;

fn usage(message: impl std::fmt::Display) -> Failure {
    Failure { status: Status::Usage, message: message.to_string() }
}

fn field_failure(e: FieldError) -> Failure {
    usage(e)
}

fn label_failure(e: LabelError) -> Failure {
    match e {
        LabelError::BudgetExceeded { .. } => Failure { status: Status::Budget, message: e.to_string() },
        e => usage(e),
    }
}

fn count_failure(e: CountError) -> Failure {
    match e {
        CountError::EnumerationUnavailable { .. } => Failure { status: Status::Budget, message: e.to_string() },
        CountError::Disagreement { .. } => Failure { status: Status::Mismatch, message: e.to_string() },
        CountError::Label(e) => label_failure(e),
        e => usage(e),
    }
}

fn oracle_failure(e: OracleError) -> Failure {
    match e {
        OracleError::CapExceeded { .. } => Failure { status: Status::Budget, message: e.to_string() },
        OracleError::Count(e) => count_failure(e),
        OracleError::Label(e) => label_failure(e),
        e => usage(e),
    }
}

fn group_id(family: Family, n: u32, q: u64, y: Option<u64>) -> Result<GroupId, Failure> {
    if y.is_some() && family != Family::SLQ {
        return Err(usage("--y applies to SLQ only"));
    }
    GroupId::with_y(family, n, q, y).map_err(count_failure)
}

fn y_cell(id: &GroupId) -> String {
    id.y_order.map(|y| y.to_string()).unwrap_or_default()
}

#[derive(Serialize)]
struct Deltas {
    #[serde(rename = "3")]
    d3: u64,
    #[serde(rename = "4")]
    d4: u64,
    #[serde(rename = "5")]
    d5: u64,
}

#[derive(Serialize)]
struct CountJson<'a> {
    #[serde(flatten)]
    report: &'a CountReport,
    delta: Deltas,
}

#[derive(Serialize)]
struct CountRow {
    family: Family,
    n: u32,
    q: u64,
    y: String,
    kind: CountKind,
    method: String,
    regime: String,
    nu: String,
    count: String,
}

#[allow(clippy::too_many_arguments)]
pub fn count(
    family: Family,
    n: u32,
    q: u64,
    y: Option<u64>,
    kind: CountKind,
    budget: u64,
    format: Format,
    out: &mut dyn Write,
) -> Outcome {
    let id = group_id(family, n, q, y)?;
    let opts = CountOptions { enumerate: Enumerate::IfAffordable, label_budget: budget };
    let report = count_classes(&id, kind, &opts).map_err(count_failure)?;
    let deltas = Deltas { d3: delta(q, 3), d4: delta(q, 4), d5: delta(q, 5) };
    match format {
        Format::Json => render::json(out, &CountJson { report: &report, delta: deltas })?,
        Format::Csv => {
            let rows: Vec<CountRow> = report
                .per_nu
                .iter()
                .map(|c| CountRow {
                    family: id.family,
                    n: id.n,
                    q: id.q,
                    y: y_cell(&id),
                    kind,
                    method: report.method.as_str().to_string(),
                    regime: report.regime.to_string(),
                    nu: c.nu.to_string(),
                    count: c.count.to_string(),
                })
                .collect();
            render::csv_with_header(
                out,
                &["family", "n", "q", "y", "kind", "method", "regime", "nu", "count"],
                &rows,
            )?
        }
        Format::Text => {
            let mut lines = vec![
                format!("{id} {kind}: {}", report.total),
                format!("method {}, regime {}", report.method.as_str(), report.regime),
                format!("delta_3 = {}, delta_4 = {}, delta_5 = {}", deltas.d3, deltas.d4, deltas.d5),
            ];
            lines.extend(report.per_nu.iter().map(|c| format!("  {:<16} {}", c.nu.to_string(), c.count)));
            render::text(out, &lines)?
        }
    }
    Ok(Status::Ok)
}

#[derive(Serialize)]
struct VerifyRow {
    family: Family,
    n: u32,
    q: u64,
    y: String,
    kind: CountKind,
    oracle: String,
    formula: String,
    #[serde(rename = "match")]
    matches: bool,
    deltas: String,
}

fn verify_rows(records: &[VerifyRecord]) -> Vec<VerifyRow> {
    records
        .iter()
        .map(|r| VerifyRow {
            family: r.group.family,
            n: r.group.n,
            q: r.group.q,
            y: y_cell(&r.group),
            kind: r.kind,
            oracle: r.oracle.to_string(),
            formula: r.formula.to_string(),
            matches: r.matches,
            deltas: r
                .per_nu_deltas
                .iter()
                .map(|d| format!("{}:{}/{}", d.nu, d.oracle, d.formula))
                .collect::<Vec<_>>()
                .join(";"),
        })
        .collect()
}

fn write_verify(records: &[VerifyRecord], format: Format, out: &mut dyn Write) -> Outcome {
    match format {
        Format::Json => render::json(out, records)?,
        Format::Csv => render::csv_with_header(
            out,
            &["family", "n", "q", "y", "kind", "oracle", "formula", "match", "deltas"],
            &verify_rows(records),
        )?,
        Format::Text => {
            let lines: Vec<String> = records
                .iter()
                .map(|r| {
                    let verdict = if r.matches { "match" } else { "MISMATCH" };
                    format!("{} {}: {verdict}, oracle {} = formula {}", r.group, r.kind, r.oracle, r.formula)
                })
                .collect();
            render::text(out, &lines)?
        }
    }
    Ok(if records.iter().all(|r| r.matches) { Status::Ok } else { Status::Mismatch })
}

fn verify_run(run: &OracleRun, kinds: &[CountKind]) -> Result<Vec<VerifyRecord>, Failure> {
    kinds.iter().map(|&k| run.verify(k).map_err(oracle_failure)).collect()
}

#[allow(clippy::too_many_arguments)]
pub fn verify(
    family: Family,
    n: u32,
    q: u64,
    y: Option<u64>,
    kind: Option<CountKind>,
    cap: u64,
    format: Format,
    out: &mut dyn Write,
) -> Outcome {
    let id = group_id(family, n, q, y)?;
    let kinds = match kind {
        Some(k) => vec![k],
        None => checkable_kinds(&id),
    };
    let run = OracleRun::new(&id, &OracleConfig { cap }).map_err(oracle_failure)?;
    write_verify(&verify_run(&run, &kinds)?, format, out)
}

/// Every desk group and checkable kind. Groups over the cap are skipped and
/// named on stderr; the exit status is then `Budget` unless some comparison
/// mismatched.
pub fn verify_desk(cap: u64, format: Format, out: &mut dyn Write) -> Outcome {
    let mut records = Vec::new();
    let mut skipped = Vec::new();
    for id in desk_groups() {
        match OracleRun::new(&id, &OracleConfig { cap }) {
            Ok(run) => records.extend(verify_run(&run, &checkable_kinds(&id))?),
            Err(OracleError::CapExceeded { order, cap }) => skipped.push(format!("{id} (order {order}, cap {cap})")),
            Err(e) => return Err(oracle_failure(e)),
        }
    }
    let status = write_verify(&records, format, out)?;
    for s in &skipped {
        eprintln!("realclass: skipped {s}");
    }
    Ok(if status == Status::Ok && !skipped.is_empty() { Status::Budget } else { status })
}

pub fn table13(q: u64, format: Format, out: &mut dyn Write) -> Outcome {
    field_of_order(q).map_err(field_failure)?;
    let rows = small_rank_table(q).map_err(count_failure)?;
    match format {
        Format::Json => render::json(out, &rows)?,
        Format::Csv => render::csv_with_header(
            out,
            &["n", "family", "kind", "formula", "published", "engine", "match"],
            &rows
                .iter()
                .map(|r| (r.n, r.family, r.kind, &r.formula, &r.published, r.engine.to_string(), r.matches))
                .collect::<Vec<_>>(),
        )?,
        Format::Text => {
            let mut lines = vec![format!("{:<3} {:<4} {:<14} {:<40} {:>8} {:>8}  match", "n", "grp", "kind", "formula", "table", "engine")];
            lines.extend(rows.iter().map(|r| {
                format!(
                    "{:<3} {:<4} {:<14} {:<40} {:>8} {:>8}  {}",
                    r.n,
                    r.family.to_string(),
                    r.kind.to_string(),
                    r.formula,
                    r.published,
                    r.engine,
                    if r.matches { "yes" } else { "NO" }
                )
            }));
            render::text(out, &lines)?
        }
    }
    Ok(if rows.iter().all(|r| r.matches) { Status::Ok } else { Status::Mismatch })
}

#[derive(Serialize)]
struct GenfunJson {
    q: u64,
    terms: u32,
    coefficients: Vec<u128>,
    matches: Vec<bool>,
}

pub fn genfun(q: u64, terms: u32, format: Format, out: &mut dyn Write) -> Outcome {
    field_of_order(q).map_err(field_failure)?;
    let coefficients = genfun_real_gl(q, terms).map_err(count_failure)?;
    let mut matches = vec![coefficients[0] == 1];
    for n in 1..=terms {
        matches.push(real_gl(n, q).map_err(count_failure)?.total == coefficients[n as usize]);
    }
    match format {
        Format::Json => render::json(out, &GenfunJson { q, terms, coefficients: coefficients.clone(), matches: matches.clone() })?,
        Format::Csv => render::csv_with_header(
            out,
            &["n", "coefficient", "match"],
            &coefficients
                .iter()
                .zip(&matches)
                .enumerate()
                .map(|(n, (c, m))| (n, c.to_string(), *m))
                .collect::<Vec<_>>(),
        )?,
        Format::Text => {
            let lines: Vec<String> = coefficients
                .iter()
                .zip(&matches)
                .enumerate()
                .map(|(n, (c, m))| format!("t^{n}: {c}{}", if *m { "" } else { "  MISMATCH" }))
                .collect();
            render::text(out, &lines)?
        }
    }
    Ok(if matches.iter().all(|&m| m) { Status::Ok } else { Status::Mismatch })
}

#[derive(Serialize)]
struct LabelRecord {
    nu: String,
    label: ClassLabel,
    det: u32,
    real: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    zeta_real: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sl_real: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sl_strongly_real: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    psl_strongly_real: Option<bool>,
}

fn label_record(f: &FieldSpec, label: ClassLabel) -> Result<LabelRecord, Failure> {
    let det = label_det(f, &label);
    let real = is_real_label(f, &label);
    let zeta = f.canonical_nonsquare().ok();
    let zeta_real = zeta.map(|z| is_zeta_real_label(f, &label, z)).transpose().map_err(label_failure)?;
    let det_one = det == f.one();
    let (sl_real_flag, sl_strong) = if real && det_one {
        (
            Some(sl_real(f, &label).map_err(label_failure)?),
            Some(sl_strongly_real(f, &label).map_err(label_failure)?),
        )
    } else {
        (None, None)
    };
    let psl_strong = match zeta {
        Some(z) if det_one && (real || zeta_real == Some(true)) => {
            Some(psl_strongly_real(f, &label, z).map_err(label_failure)?)
        }
        _ => None,
    };
    Ok(LabelRecord {
        nu: label.partition().to_string(),
        label,
        det: det.value(),
        real,
        zeta_real,
        sl_real: sl_real_flag,
        sl_strongly_real: sl_strong,
        psl_strongly_real: psl_strong,
    })
}

fn flag(b: Option<bool>) -> String {
    b.map(|b| b.to_string()).unwrap_or_default()
}

pub fn enumerate(n: u32, q: u64, filter: Filter, budget: u64, format: Format, out: &mut dyn Write) -> Outcome {
    let f = field_of_order(q).map_err(field_failure)?;
    let filter = match filter {
        Filter::All => LabelFilter::All,
        Filter::Real => LabelFilter::Real,
        Filter::ZetaReal => LabelFilter::ZetaReal(f.canonical_nonsquare().map_err(field_failure)?),
    };
    let labels = enumerate_labels_with_budget(&f, n, filter, budget).map_err(label_failure)?;
    let records = labels.into_iter().map(|l| label_record(&f, l)).collect::<Result<Vec<_>, _>>()?;
    match format {
        Format::Json => render::json(out, &records)?,
        Format::Csv => render::csv_with_header(
            out,
            &["nu", "label", "det", "real", "zeta_real", "sl_real", "sl_strongly_real", "psl_strongly_real"],
            &records
                .iter()
                .map(|r| {
                    (
                        &r.nu,
                        serde_json::to_string(&r.label).unwrap(),
                        r.det,
                        r.real,
                        flag(r.zeta_real),
                        flag(r.sl_real),
                        flag(r.sl_strongly_real),
                        flag(r.psl_strongly_real),
                    )
                })
                .collect::<Vec<_>>(),
        )?,
        Format::Text => {
            let mut lines: Vec<String> =
                records.iter().map(|r| format!("{} det {} real {}", r.label, r.det, r.real)).collect();
            lines.push(format!("{} labels", records.len()));
            render::text(out, &lines)?
        }
    }
    Ok(Status::Ok)
}
