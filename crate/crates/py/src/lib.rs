//! Python module `realclass`: counts, oracle verification, the small-rank
//! table, the generating function and label enumeration.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use realclass::counting::{self, CountError, CountKind, CountOptions, Family, GroupId};
use realclass::field::field_of_order;
use realclass::labels::{enumerate_labels_with_budget, label_det, LabelError, LabelFilter, DEFAULT_LABEL_BUDGET};
use realclass::oracle::{self, OracleConfig, OracleError};

create_exception!(realclass, BudgetExceeded, PyException, "A group-size cap or label budget was exceeded.");

fn count_err(e: CountError) -> PyErr {
    match e {
        CountError::EnumerationUnavailable { .. } | CountError::Label(LabelError::BudgetExceeded { .. }) => {
            BudgetExceeded::new_err(e.to_string())
        }
        e => PyValueError::new_err(e.to_string()),
    }
}

fn label_err(e: LabelError) -> PyErr {
    count_err(CountError::Label(e))
}

fn oracle_err(e: OracleError) -> PyErr {
    match e {
        OracleError::CapExceeded { .. } => BudgetExceeded::new_err(e.to_string()),
        OracleError::Count(e) => count_err(e),
        OracleError::Label(e) => label_err(e),
        e => PyValueError::new_err(e.to_string()),
    }
}

fn group(family: &str, n: u32, q: u64, y: Option<u64>) -> PyResult<GroupId> {
    let family: Family = family.parse().map_err(PyValueError::new_err)?;
    GroupId::with_y(family, n, q, y).map_err(count_err)
}

fn kind(s: &str) -> PyResult<CountKind> {
    s.parse().map_err(PyValueError::new_err)
}

/// Number of classes of `kind` in the group, with the per-type breakdown.
#[pyfunction]
#[pyo3(signature = (family, n, q, kind_name, y=None))]
fn count<'py>(py: Python<'py>, family: &str, n: u32, q: u64, kind_name: &str, y: Option<u64>) -> PyResult<Bound<'py, PyDict>> {
    let id = group(family, n, q, y)?;
    let report = counting::count(&id, kind(kind_name)?, &CountOptions::default()).map_err(count_err)?;
    let d = PyDict::new(py);
    d.set_item("group", id.to_string())?;
    d.set_item("kind", report.kind.as_str())?;
    d.set_item("total", report.total)?;
    d.set_item("method", report.method.as_str())?;
    d.set_item("regime", report.regime.as_str())?;
    let per_nu = PyDict::new(py);
    for c in &report.per_nu {
        per_nu.set_item(c.nu.to_string(), c.count)?;
    }
    d.set_item("per_nu", per_nu)?;
    Ok(d)
}

/// Brute-force class count against the engine.
#[pyfunction]
#[pyo3(signature = (family, n, q, kind_name, y=None, cap=None))]
fn verify<'py>(
    py: Python<'py>,
    family: &str,
    n: u32,
    q: u64,
    kind_name: &str,
    y: Option<u64>,
    cap: Option<u64>,
) -> PyResult<Bound<'py, PyDict>> {
    let id = group(family, n, q, y)?;
    let cfg = cap.map_or_else(OracleConfig::from_env, |cap| OracleConfig { cap });
    let r = py.detach(|| oracle::verify(&id, kind(kind_name)?, &cfg).map_err(oracle_err))?;
    let d = PyDict::new(py);
    d.set_item("group", id.to_string())?;
    d.set_item("kind", r.kind.as_str())?;
    d.set_item("oracle", r.oracle)?;
    d.set_item("formula", r.formula)?;
    d.set_item("match", r.matches)?;
    Ok(d)
}

/// Coefficients of `t^0 ..= t^terms` of the real-class generating function.
#[pyfunction]
fn genfun_real_gl(q: u64, terms: u32) -> PyResult<Vec<u128>> {
    field_of_order(q).map_err(|e| PyValueError::new_err(e.to_string()))?;
    counting::genfun_real_gl(q, terms).map_err(count_err)
}

/// Published small-rank rows at `q` with the engine's value and a match flag.
#[pyfunction]
fn table13<'py>(py: Python<'py>, q: u64) -> PyResult<Bound<'py, PyList>> {
    let rows = counting::small_rank_table(q).map_err(count_err)?;
    let out = PyList::empty(py);
    for r in rows {
        let d = PyDict::new(py);
        d.set_item("n", r.n)?;
        d.set_item("family", r.family.as_str())?;
        d.set_item("kind", r.kind.as_str())?;
        d.set_item("formula", r.formula)?;
        d.set_item("published", r.published)?;
        d.set_item("engine", r.engine)?;
        d.set_item("match", r.matches)?;
        out.append(d)?;
    }
    Ok(out)
}

/// Type exponents, polynomial coefficient indices, determinant index.
type LabelTuple = (Vec<u32>, Vec<Vec<u32>>, u32);

/// Class labels of GL_n(q) as `(type exponents, polynomials, det)` triples;
/// polynomials are ascending coefficient lists of element indices.
#[pyfunction]
#[pyo3(signature = (n, q, filter="all", budget=DEFAULT_LABEL_BUDGET))]
fn enumerate_labels(n: u32, q: u64, filter: &str, budget: u64) -> PyResult<Vec<LabelTuple>> {
    let f = field_of_order(q).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let filter = match filter {
        "all" => LabelFilter::All,
        "real" => LabelFilter::Real,
        "zeta_real" => {
            LabelFilter::ZetaReal(f.canonical_nonsquare().map_err(|e| PyValueError::new_err(e.to_string()))?)
        }
        other => return Err(PyValueError::new_err(format!("unknown filter {other:?}"))),
    };
    let labels = enumerate_labels_with_budget(&f, n, filter, budget).map_err(label_err)?;
    Ok(labels
        .into_iter()
        .map(|l| {
            let det = label_det(&f, &l).value();
            let j = l.to_json();
            (j.nu, j.polys, det)
        })
        .collect())
}

/// `gcd(q - 1, k)`.
#[pyfunction]
fn delta(q: u64, k: u64) -> PyResult<u64> {
    if q < 2 {
        return Err(PyValueError::new_err(format!("q = {q} is not a field order")));
    }
    Ok(counting::delta(q, k))
}

#[pymodule]
#[pyo3(name = "realclass")]
fn realclass_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    m.add_function(wrap_pyfunction!(count, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(genfun_real_gl, m)?)?;
    m.add_function(wrap_pyfunction!(table13, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_labels, m)?)?;
    m.add_function(wrap_pyfunction!(delta, m)?)?;
    Ok(())
}
