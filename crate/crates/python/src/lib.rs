//! Python bindings: case verification, scans, identity checks and a few algebra helpers.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use qcong::cases::{self, Params, Registry, Report, ScanFamily, ScanGrid, Summary, Verdict, VerifyOptions};
use qcong::transforms::{IdentityId, IdentityInstance};
use qcong::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::UnknownCase(_) | Error::UnknownIdentity(_) | Error::MissingParameter(_) => PyKeyError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// The verdict of one case at one parameter point.
#[pyclass(name = "Report", frozen, from_py_object, module = "pyqcong")]
#[derive(Clone)]
pub struct PyReport(Report);

#[pymethods]
impl PyReport {
    #[getter]
    fn case(&self) -> &str {
        &self.0.case
    }

    #[getter]
    fn params(&self) -> Params {
        self.0.params.clone()
    }

    #[getter]
    fn kind(&self) -> String {
        self.0.kind.to_string()
    }

    /// `holds`, `fails`, `undefined` or `inadmissible`.
    #[getter]
    fn verdict(&self) -> String {
        self.0.verdict.to_string()
    }

    #[getter]
    fn holds(&self) -> bool {
        self.0.verdict == Verdict::Holds
    }

    #[getter]
    fn conjecture(&self) -> bool {
        self.0.detail.conjecture
    }

    #[getter]
    fn reason(&self) -> Option<String> {
        self.0.detail.reason.clone()
    }

    #[getter]
    fn failing_factor(&self) -> Option<(u64, u32)> {
        self.0.detail.failing_factor
    }

    #[getter]
    fn millis(&self) -> u64 {
        self.0.millis
    }

    /// The report in the JSON schema of the command-line tool.
    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("reports serialize")
    }

    fn __repr__(&self) -> String {
        let params: Vec<String> = self.0.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("<Report {} {} {}>", self.0.case, params.join(" "), self.0.verdict)
    }
}

fn wrap(reports: Vec<Report>) -> Vec<PyReport> {
    reports.into_iter().map(PyReport).collect()
}

/// A range value: an expression such as `"3..31:odd"`, a list of ints or one int.
fn values(v: &Bound<'_, PyAny>) -> PyResult<Vec<i64>> {
    if let Ok(s) = v.extract::<String>() {
        return cases::parse_range(&s).map_err(py_err);
    }
    if let Ok(x) = v.extract::<i64>() {
        return Ok(vec![x]);
    }
    v.extract::<Vec<i64>>()
}

fn ranges(d: &Bound<'_, PyDict>) -> PyResult<BTreeMap<String, Vec<i64>>> {
    let mut out = BTreeMap::new();
    for (k, v) in d.iter() {
        out.insert(k.extract::<String>()?, values(&v)?);
    }
    Ok(out)
}

/// Built-in cases, optionally extended from JSON case files.
#[pyclass(name = "Registry", module = "pyqcong")]
pub struct PyRegistry {
    inner: Registry,
}

#[pymethods]
impl PyRegistry {
    #[new]
    fn new() -> Self {
        Self { inner: Registry::builtin() }
    }

    /// Registers the cases of a JSON case file and returns their ids.
    fn load(&mut self, path: std::path::PathBuf) -> PyResult<Vec<String>> {
        let mut ids = Vec::new();
        for c in cases::load_custom_cases(&path).map_err(py_err)? {
            ids.push(c.id.clone());
            self.inner.register(c.into_case_def());
        }
        Ok(ids)
    }

    fn ids(&self) -> Vec<String> {
        self.inner.ids().map(String::from).collect()
    }

    /// `{id, kind, conjecture, params, conditions, statement}` of one case.
    fn describe<'py>(&self, py: Python<'py>, case: &str) -> PyResult<Bound<'py, PyDict>> {
        let c = self.inner.get(case).map_err(py_err)?;
        let d = PyDict::new(py);
        d.set_item("id", &c.id)?;
        d.set_item("kind", c.kind.to_string())?;
        d.set_item("conjecture", c.conjecture)?;
        d.set_item("params", PyList::new(py, &c.params)?)?;
        d.set_item("conditions", &c.conditions)?;
        d.set_item("statement", &c.statement)?;
        Ok(d)
    }

    /// Verifies one point given as keyword arguments.
    #[pyo3(signature = (case, *, oracle = true, precision = 60, **params))]
    fn verify(
        &self,
        py: Python<'_>,
        case: &str,
        oracle: bool,
        precision: u32,
        params: Option<&Bound<'_, PyDict>>,
    ) -> PyResult<PyReport> {
        let p: Params = match params {
            Some(d) => d.extract()?,
            None => Params::new(),
        };
        let opts = VerifyOptions { oracle, precision, expand: false };
        py.detach(|| self.inner.verify_case(case, &p, &opts)).map(PyReport).map_err(py_err)
    }

    /// Verifies the cartesian product of the given ranges, e.g. `n="3..31:odd"`.
    #[pyo3(signature = (case, *, oracle = true, precision = 60, **ranges_))]
    fn verify_family(
        &self,
        py: Python<'_>,
        case: &str,
        oracle: bool,
        precision: u32,
        ranges_: Option<&Bound<'_, PyDict>>,
    ) -> PyResult<Vec<PyReport>> {
        let r = match ranges_ {
            Some(d) => ranges(d)?,
            None => BTreeMap::new(),
        };
        let opts = VerifyOptions { oracle, precision, expand: false };
        py.detach(|| self.inner.verify_family(case, &r, &opts)).map(wrap).map_err(py_err)
    }
}

/// Parses `a..b`, `a..b:odd`, `a..b:even` and comma lists.
#[pyfunction]
fn parse_range(text: &str) -> PyResult<Vec<i64>> {
    cases::parse_range(text).map_err(py_err)
}

#[pyfunction]
fn case_ids() -> Vec<String> {
    Registry::builtin().ids().map(String::from).collect()
}

#[pyfunction]
fn identity_ids() -> Vec<&'static str> {
    IdentityId::ALL.iter().map(|i| i.as_str()).collect()
}

/// Verifies one built-in case at one point.
#[pyfunction]
#[pyo3(signature = (case, **params))]
fn verify(py: Python<'_>, case: &str, params: Option<&Bound<'_, PyDict>>) -> PyResult<PyReport> {
    PyRegistry::new().verify(py, case, true, 60, params)
}

/// Verifies a built-in case over ranges.
#[pyfunction]
#[pyo3(signature = (case, **ranges_))]
fn verify_family(py: Python<'_>, case: &str, ranges_: Option<&Bound<'_, PyDict>>) -> PyResult<Vec<PyReport>> {
    PyRegistry::new().verify_family(py, case, true, 60, ranges_)
}

/// Probes a family modulo `Φ_n^power` for every admissible `n ≤ n_max`.
#[pyfunction]
#[pyo3(signature = (family, d, r, n_max, power = 2))]
fn scan(
    py: Python<'_>,
    family: &str,
    d: &Bound<'_, PyAny>,
    r: &Bound<'_, PyAny>,
    n_max: i64,
    power: u32,
) -> PyResult<Vec<PyReport>> {
    let fam: ScanFamily = family.parse().map_err(py_err)?;
    let grid = ScanGrid::admissible_up_to(fam, values(d)?, values(r)?, n_max, power);
    py.detach(|| cases::scan(&grid)).map(|s| wrap(s.reports())).map_err(py_err)
}

/// Checks one identity instance; parameters are keywords, e.g.
/// `check_identity("andrews-m", a=1, b=[1, 1], c=[1, 26], n=4, base=6)`.
/// Series identities take `order` (default 100); `base` defaults to 1.
#[pyfunction]
#[pyo3(signature = (id, **params))]
fn check_identity(py: Python<'_>, id: &str, params: Option<&Bound<'_, PyDict>>) -> PyResult<PyReport> {
    let ident: IdentityId = id.parse().map_err(py_err)?;
    let mut doc = serde_json::Map::new();
    doc.insert("identity".into(), ident.as_str().into());
    if let Some(d) = params {
        for (k, v) in d.iter() {
            let key: String = k.extract()?;
            let value = match v.extract::<i64>() {
                Ok(x) => serde_json::Value::from(x),
                Err(_) => serde_json::Value::from(v.extract::<Vec<i64>>()?),
            };
            doc.insert(key, value);
        }
    }
    if ident.is_series() {
        doc.entry("order").or_insert(qcong::transforms::DEFAULT_ORDER.into());
    }
    if !matches!(ident, IdentityId::Rdid | IdentityId::SunEuler) {
        doc.entry("base").or_insert(1.into());
    }
    let inst: IdentityInstance =
        serde_json::from_value(doc.into()).map_err(|e| PyValueError::new_err(format!("{id}: {e}")))?;
    Ok(PyReport(py.detach(|| inst.report())))
}

/// `{checked, holds, fails, undefined, inadmissible, conjecture_failures}`.
#[pyfunction]
fn summarize(reports: Vec<PyReport>) -> BTreeMap<&'static str, usize> {
    let list: Vec<Report> = reports.into_iter().map(|r| r.0).collect();
    let s = Summary::of(&list);
    BTreeMap::from([
        ("checked", s.checked),
        ("holds", s.holds),
        ("fails", s.fails),
        ("undefined", s.undefined),
        ("inadmissible", s.inadmissible),
        ("conjecture_failures", s.conjecture_failures),
    ])
}

/// Coefficients of `Φ_n`, constant term first.
#[pyfunction]
fn cyclotomic(n: u64) -> PyResult<Vec<i64>> {
    let p = qcong::qpoly::cyclotomic_arc(n).map_err(py_err)?;
    coefficients(&p).ok_or_else(|| PyValueError::new_err("coefficient does not fit in 64 bits"))
}

fn coefficients(p: &qcong::qpoly::LaurentPoly) -> Option<Vec<i64>> {
    let top = p.degree()?;
    (0..=top)
        .map(|e| {
            let c = p.coeff(e);
            c.is_integer().then(|| i64::try_from(c.numer()).ok()).flatten()
        })
        .collect()
}

/// p-adic valuation of a rational given as `"a/b"`; `None` for zero.
#[pyfunction]
fn padic_valuation(x: &str, p: i64) -> PyResult<Option<i64>> {
    let r = qcong::arith::parse_rational(x).map_err(py_err)?;
    Ok(qcong::arith::padic_valuation(&r, p).map_err(py_err)?.finite())
}

#[pymodule]
fn pyqcong(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyReport>()?;
    m.add_class::<PyRegistry>()?;
    m.add_function(wrap_pyfunction!(parse_range, m)?)?;
    m.add_function(wrap_pyfunction!(case_ids, m)?)?;
    m.add_function(wrap_pyfunction!(identity_ids, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(verify_family, m)?)?;
    m.add_function(wrap_pyfunction!(scan, m)?)?;
    m.add_function(wrap_pyfunction!(check_identity, m)?)?;
    m.add_function(wrap_pyfunction!(summarize, m)?)?;
    m.add_function(wrap_pyfunction!(cyclotomic, m)?)?;
    m.add_function(wrap_pyfunction!(padic_valuation, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
