//! Python bindings for the multimeixner library.
//!
//! Everything exact crosses the boundary as strings in `p/q` form so no
//! precision is lost; the floating spectrum is the one deliberate
//! exception. The surface mirrors the CLI: parameter validation,
//! polynomial construction and evaluation, the generating-function route,
//! the identity-check batteries, operator matrix dumps, and spectra.

use std::str::FromStr;
use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use multimeixner::fock::spectrum::spectrum_diag;
use multimeixner::fock::{FockBasis, OpName};
use multimeixner::genfun;
use multimeixner::index::MultiIndex;
use multimeixner::params::ParamsFile;
use multimeixner::report::{all_pass, first_failure};
use multimeixner::suite::{self, SuiteConfig};
use multimeixner::{MeixnerTable, Params as CoreParams, Rational, RelationReport};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_rational(s: &str) -> PyResult<Rational> {
    Rational::from_str(s).map_err(value_error)
}

fn to_index(n: Vec<u32>, r: usize) -> PyResult<MultiIndex> {
    if n.len() != r {
        return Err(value_error(format!(
            "index has {} entries but r = {r}",
            n.len()
        )));
    }
    Ok(MultiIndex::new(n))
}

/// Validated parameter set: `beta > 0` and pairwise-distinct `c_i` in (0,1),
/// all given as rational strings such as `"3/2"`.
#[pyclass(name = "Params", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyParams {
    inner: CoreParams,
}

#[pymethods]
impl PyParams {
    #[new]
    fn new(beta: &str, c: Vec<String>) -> PyResult<Self> {
        let beta = parse_rational(beta)?;
        let cs = c
            .iter()
            .map(|s| parse_rational(s))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PyParams {
            inner: CoreParams::new(beta, cs).map_err(value_error)?,
        })
    }

    /// Parse the JSON parameter-file schema
    /// `{"r": 2, "beta": "3/2", "c": ["1/3", "1/2"]}`.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let file: ParamsFile = serde_json::from_str(text).map_err(value_error)?;
        Ok(PyParams {
            inner: file.validate().map_err(value_error)?,
        })
    }

    #[getter]
    fn r(&self) -> usize {
        self.inner.r()
    }

    #[getter]
    fn beta(&self) -> String {
        self.inner.beta().to_string()
    }

    #[getter]
    fn c(&self) -> Vec<String> {
        self.inner.c_all().iter().map(|c| c.to_string()).collect()
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&ParamsFile::from(&self.inner)).expect("parameters serialize")
    }

    fn __repr__(&self) -> String {
        format!("Params({})", self.inner.tag())
    }
}

/// Outcome of one identity check.
#[pyclass(name = "Report", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyReport {
    #[pyo3(get)]
    relation: String,
    #[pyo3(get)]
    instance: String,
    #[pyo3(get)]
    passed: bool,
    #[pyo3(get)]
    lhs: String,
    #[pyo3(get)]
    rhs: String,
}

impl From<&RelationReport> for PyReport {
    fn from(r: &RelationReport) -> Self {
        PyReport {
            relation: r.relation.clone(),
            instance: r.instance.clone(),
            passed: r.pass,
            lhs: r.lhs.clone(),
            rhs: r.rhs.clone(),
        }
    }
}

#[pymethods]
impl PyReport {
    fn __repr__(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        format!("{} {} [{}]", verdict, self.relation, self.instance)
    }
}

/// Memoized table of monic polynomials built by the recurrence route.
#[pyclass(name = "Table", unsendable)]
struct PyTable {
    inner: MeixnerTable,
}

#[pymethods]
impl PyTable {
    #[new]
    fn new(params: &PyParams) -> Self {
        PyTable {
            inner: MeixnerTable::new(params.inner.clone()),
        }
    }

    /// Coefficients of the polynomial at multi-index `n`, constant term
    /// first, as rational strings.
    fn poly(&self, n: Vec<u32>) -> PyResult<Vec<String>> {
        let n = to_index(n, self.inner.params().r())?;
        Ok(self.inner.poly(&n).coeff_strings())
    }

    /// Exact value at the rational point `x`.
    fn eval(&self, n: Vec<u32>, x: &str) -> PyResult<String> {
        let n = to_index(n, self.inner.params().r())?;
        let x = parse_rational(x)?;
        Ok(self.inner.eval(&n, &x).to_string())
    }
}

/// Generating-function coefficients up to `order`: a list of
/// `(multi_index, coefficients)` pairs, already scaled to the monic
/// normalization, for cross-checking against [`Table.poly`].
#[pyfunction]
#[pyo3(signature = (params, order = 6))]
fn genfun_coeffs(params: &PyParams, order: u32) -> Vec<(Vec<u32>, Vec<String>)> {
    genfun::genfun_table(&params.inner, order)
        .iter()
        .map(|(n, poly)| (n.entries().to_vec(), poly.coeff_strings()))
        .collect()
}

/// Run one named relation section (or `"all"`) for the given parameters.
#[pyfunction]
#[pyo3(signature = (params, relation = "all", max_degree = 5, fock_degree = 8, order = 6))]
fn check(
    params: &PyParams,
    relation: &str,
    max_degree: u32,
    fock_degree: u32,
    order: u32,
) -> PyResult<Vec<PyReport>> {
    let cfg = SuiteConfig {
        max_total: max_degree,
        n_max: fock_degree,
        n_max_r3: fock_degree.min(6),
        order,
        corrupt: false,
    };
    let reports = suite::run_relation_for(&params.inner, relation, &cfg).map_err(value_error)?;
    Ok(reports.iter().map(PyReport::from).collect())
}

/// Run the full built-in battery over the default parameter sets.
/// Returns `(passed, first_failure_summary_or_None)`.
#[pyfunction]
fn check_all_default() -> PyResult<(bool, Option<String>)> {
    let reports = suite::run_all(&SuiteConfig::default()).map_err(value_error)?;
    Ok((
        all_pass(&reports),
        first_failure(&reports).map(|r| r.summary_line()),
    ))
}

/// Nonzero entries of one operator's exact truncated matrix, as
/// `(row, col, value)` triples in column-major order over the graded-lex
/// monomial basis.
#[pyfunction]
#[pyo3(signature = (params, op, degree = 8))]
fn fock_matrix(params: &PyParams, op: &str, degree: u32) -> PyResult<Vec<(usize, usize, String)>> {
    let op = OpName::from_str(op).map_err(value_error)?;
    let basis = Arc::new(FockBasis::new(params.inner.r(), degree));
    let matrix = op.matrix(&basis, &params.inner).map_err(value_error)?;
    let dump = matrix.dump();
    Ok(dump["entries"]
        .as_array()
        .expect("dump shape is fixed")
        .iter()
        .map(|e| {
            (
                e[0].as_u64().expect("row index") as usize,
                e[1].as_u64().expect("column index") as usize,
                e[2].as_str().expect("rational string").to_string(),
            )
        })
        .collect())
}

/// Floating-point eigenvalues of one truncated operator as `(re, im)`
/// pairs sorted by real part. Diagnostic only: truncation perturbs the
/// spectrum of non-normal matrices.
#[pyfunction]
#[pyo3(signature = (params, op = "h1", degree = 8))]
fn spectrum(params: &PyParams, op: &str, degree: u32) -> PyResult<Vec<(f64, f64)>> {
    let op = OpName::from_str(op).map_err(value_error)?;
    spectrum_diag(&params.inner, &op, degree).map_err(value_error)
}

/// Exact moment ratio `m_j / m_0` of the discrete weight with parameters
/// `(beta, c)`, computed by rational reduction.
#[pyfunction]
fn moment_ratio(beta: &str, c: &str, j: usize) -> PyResult<String> {
    let beta = parse_rational(beta)?;
    let c = parse_rational(c)?;
    let kernel = multimeixner::moments::MomentKernel::new(&beta, j);
    Ok(kernel.moment_ratio(&c, j).to_string())
}

#[pymodule]
fn pymeixner(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyParams>()?;
    m.add_class::<PyTable>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(genfun_coeffs, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(check_all_default, m)?)?;
    m.add_function(wrap_pyfunction!(fock_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(moment_ratio, m)?)?;
    Ok(())
}
