//! Python bindings. Structured results come back as plain dicts and lists
//! with the same schema as the `sqc` command-line JSON output.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde::de::DeserializeOwned;
use serde::Serialize;

use sqc::hadamard::{complete, verify_bundle as verify_bundle_rs, HadamardBundle, HadamardOptions, TransversalSpec};
use sqc::monomat::MonomialMatrix;
use sqc::repbuild::{build_irrep, character_len, check_relations, pushforward};
use sqc::solver::{check_hr_bound, LambdaPattern, LambdaRecord, SearchMode, SolveConfig};
use sqc::structure::{render_grid, render_irrep_tables, tensor_presentation, IRREP_TABLE_SUMS};
use sqc::{AlgebraPresentation, Error, Sign};

create_exception!(pysqc, SqcError, PyValueError, "Invalid input to an sqc routine.");
create_exception!(pysqc, ResourceCapError, SqcError, "A configured size cap was exceeded.");
create_exception!(pysqc, VerificationError, SqcError, "A constructed object failed its exact checks.");

/// Exception class name for a core error.
fn error_class(e: &Error) -> &'static str {
    match e {
        Error::ResourceCap { .. } => "ResourceCapError",
        Error::Verification(_) => "VerificationError",
        _ => "SqcError",
    }
}

fn to_py_err(e: Error) -> PyErr {
    let msg = e.to_string();
    match error_class(&e) {
        "ResourceCapError" => ResourceCapError::new_err(msg),
        "VerificationError" => VerificationError::new_err(msg),
        _ => SqcError::new_err(msg),
    }
}

trait OrPyErr<T> {
    fn py_err(self) -> PyResult<T>;
}

impl<T> OrPyErr<T> for sqc::Result<T> {
    fn py_err(self) -> PyResult<T> {
        self.map_err(to_py_err)
    }
}

/// Serializes through Python's `json` so results are ordinary dicts.
fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| to_py_err(e.into()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn from_py<T: DeserializeOwned>(obj: &Bound<'_, PyAny>) -> PyResult<T> {
    let text: String = obj.py().import("json")?.call_method1("dumps", (obj,))?.extract()?;
    serde_json::from_str(&text).map_err(|e| to_py_err(e.into()))
}

/// Pairs `(j, k)` are 1-based, as in the JSON format.
#[pyclass(module = "pysqc", name = "Presentation", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq)]
pub struct PyPresentation {
    inner: AlgebraPresentation,
}

fn signs(kappa: &[i64]) -> sqc::Result<Vec<Sign>> {
    kappa
        .iter()
        .map(|&k| Sign::try_from(k).map_err(|_| Error::InvalidSquare(k)))
        .collect()
}

#[pymethods]
impl PyPresentation {
    #[new]
    #[pyo3(signature = (kappa, anticommuting = Vec::new()))]
    fn new(kappa: Vec<i64>, anticommuting: Vec<(usize, usize)>) -> PyResult<Self> {
        let kappa = signs(&kappa).py_err()?;
        let mut pairs = Vec::with_capacity(anticommuting.len());
        for (j, k) in anticommuting {
            if j == 0 || k == 0 {
                return Err(SqcError::new_err("generator indices are 1-based"));
            }
            pairs.push((j - 1, k - 1));
        }
        let inner = AlgebraPresentation::new(kappa, pairs).py_err()?;
        Ok(PyPresentation { inner })
    }

    /// `R_{p,q}`: `p` generators squaring to `+1`, `q` to `-1`, all anticommuting.
    #[staticmethod]
    fn clifford(p: usize, q: usize) -> PyResult<Self> {
        Ok(PyPresentation { inner: AlgebraPresentation::clifford(p, q).py_err()? })
    }

    /// `R_{p,0} ⊗ R_{0,q}`.
    #[staticmethod]
    fn tensor(p: usize, q: usize) -> PyResult<Self> {
        Ok(PyPresentation { inner: tensor_presentation(p, q).py_err()? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner = serde_json::from_str(text).map_err(|e| to_py_err(e.into()))?;
        Ok(PyPresentation { inner })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(|e| to_py_err(e.into()))
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn kappa(&self) -> Vec<i64> {
        self.inner.kappa().iter().map(|&s| i64::from(s)).collect()
    }

    #[getter]
    fn anticommuting(&self) -> Vec<(usize, usize)> {
        self.inner.anticommuting_pairs().map(|(j, k)| (j + 1, k + 1)).collect()
    }

    fn __repr__(&self) -> String {
        format!("Presentation({})", self.inner)
    }
}

/// Wedderburn type: `{case, r, s, num_irreps, irrep_order, label}`.
#[pyfunction]
fn classify<'py>(py: Python<'py>, p: &PyPresentation) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &sqc::classify(&sqc::decompose(&p.inner)))
}

#[pyfunction]
fn decompose<'py>(py: Python<'py>, p: &PyPresentation) -> PyResult<Bound<'py, PyAny>> {
    let d = sqc::decompose(&p.inner);
    d.validate().py_err()?;
    to_py(py, &d)
}

/// An irreducible monomial representation `{order, images, character}`.
#[pyfunction]
#[pyo3(signature = (p, character = None, original = true))]
fn represent<'py>(
    py: Python<'py>,
    p: &PyPresentation,
    character: Option<Vec<bool>>,
    original: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let d = sqc::decompose(&p.inner);
    let character = character.unwrap_or_else(|| vec![false; character_len(&d)]);
    let mut rep = build_irrep(&d, &character).py_err()?;
    if original {
        rep = pushforward(&rep).py_err()?;
    }
    check_relations(&rep.presentation(), &rep.images).py_err()?;
    to_py(py, &rep.to_record())
}

/// Accepts `{"n": .., "entries": [[j, k, ±1], ..]}` or a square matrix of
/// `±1` whose diagonal is ignored.
fn pattern_from_py(obj: &Bound<'_, PyAny>) -> PyResult<LambdaPattern> {
    if obj.is_instance_of::<PyDict>() {
        return from_py(obj);
    }
    let rows: Vec<Vec<i64>> = obj.extract()?;
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(SqcError::new_err("pattern matrix must be square"));
    }
    let mut entries = Vec::new();
    for (j, row) in rows.iter().enumerate() {
        for (k, &v) in row.iter().enumerate() {
            if j != k {
                entries.push((j + 1, k + 1, v));
            }
        }
    }
    LambdaPattern::try_from(LambdaRecord { n, entries }).py_err()
}

fn solve_config(max_n: usize, parallel: bool, samples: Option<usize>, seed: u64) -> SolveConfig {
    SolveConfig {
        mode: match samples {
            Some(samples) => SearchMode::Sampled { samples, seed },
            None => SearchMode::Exhaustive,
        },
        max_exhaustive_n: max_n,
        parallel,
    }
}

/// Minimal-order monomial matrices `D_j` with `D_j D_kᵀ = λ_{j,k} D_k D_jᵀ`.
#[pyfunction]
#[pyo3(signature = (pattern, max_n = 16, parallel = false, samples = None, seed = 0))]
fn solve<'py>(
    py: Python<'py>,
    pattern: &Bound<'py, PyAny>,
    max_n: usize,
    parallel: bool,
    samples: Option<usize>,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let lambda = pattern_from_py(pattern)?;
    let config = solve_config(max_n, parallel, samples, seed);
    let result = py.detach(|| sqc::solver::solve(&lambda, &config)).py_err()?;
    to_py(py, &result)
}

#[pyfunction]
fn rho(n: u64) -> PyResult<u64> {
    sqc::solver::rho(n).py_err()
}

/// Builds and verifies a Hadamard matrix of order `2^m · b`. The `h` entry
/// of the result is a list of `+`/`-` row strings.
#[pyfunction]
#[pyo3(signature = (m, diag = None, offdiag = None, max_order = sqc::hadamard::DEFAULT_MAX_ORDER, max_n = 16, parallel = false))]
fn hadamard<'py>(
    py: Python<'py>,
    m: usize,
    diag: Option<String>,
    offdiag: Option<String>,
    max_order: usize,
    max_n: usize,
    parallel: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let spec = match (diag, offdiag) {
        (None, None) => TransversalSpec::default_for(m),
        (d, o) => TransversalSpec::parse(
            &d.unwrap_or_else(|| "I".repeat(m)),
            &o.unwrap_or_else(|| "X".repeat(m)),
        ),
    }
    .py_err()?;
    if spec.m() != m {
        return Err(SqcError::new_err(format!("expected {m} choices per side")));
    }
    let options = HadamardOptions {
        solve: solve_config(max_n, parallel, None, 0),
        max_order,
    };
    let bundle = py.detach(|| complete(&spec, &options)).py_err()?;
    to_py(py, &bundle)
}

/// Recomputes every check of a bundle produced by [`hadamard`].
#[pyfunction]
fn verify_bundle<'py>(py: Python<'py>, bundle: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    let bundle: HadamardBundle = from_py(bundle)?;
    let report = py.detach(|| verify_bundle_rs(&bundle)).py_err()?;
    to_py(py, &report)
}

/// Mutual anti-amicability and the Hurwitz–Radon bound for a list of
/// `{order, perm, signs}` records.
#[pyfunction]
fn check_family<'py>(py: Python<'py>, family: &Bound<'py, PyList>) -> PyResult<Bound<'py, PyAny>> {
    let family: Vec<MonomialMatrix> = from_py(family.as_any())?;
    to_py(py, &check_hr_bound(&family).py_err()?)
}

/// The label grid for `0 <= p, q <= max` followed by the irreducible
/// dimension tables, as tab-separated text.
#[pyfunction]
#[pyo3(signature = (max = 8))]
fn tables(max: usize) -> PyResult<String> {
    if max > sqc::cli::MAX_TABLE_BOUND {
        return Err(to_py_err(Error::ResourceCap {
            what: "table bound",
            value: max,
            cap: sqc::cli::MAX_TABLE_BOUND,
        }));
    }
    Ok(render_grid(max).py_err()? + &render_irrep_tables(&IRREP_TABLE_SUMS).py_err()?)
}

#[pymodule]
fn pysqc(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("SqcError", m.py().get_type::<SqcError>())?;
    m.add("ResourceCapError", m.py().get_type::<ResourceCapError>())?;
    m.add("VerificationError", m.py().get_type::<VerificationError>())?;
    m.add_class::<PyPresentation>()?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(represent, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(rho, m)?)?;
    m.add_function(wrap_pyfunction!(hadamard, m)?)?;
    m.add_function(wrap_pyfunction!(verify_bundle, m)?)?;
    m.add_function(wrap_pyfunction!(check_family, m)?)?;
    m.add_function(wrap_pyfunction!(tables, m)?)?;
    Ok(())
}
