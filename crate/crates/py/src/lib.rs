//! Python bindings for `complement_core`.
//!
//! Rationals cross the boundary as `"num/den"` strings and reports as
//! dictionaries decoded from their canonical JSON.

use complement_core::artifact::{to_canonical_json, Artifact};
use complement_core::iterative::{
    stream_complement as stream, AffineDecider, LazyComplement as CoreLazy, MembershipDecider,
    NontrivialProductDecider, TableDecider, DEFAULT_STREAM_BOUND,
};
use complement_core::{self as core, rational, Backend, ComplementError, OrderingPolicy, Plan};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(complement, ComplementException, PyValueError);
create_exception!(complement, EmptyComplementError, ComplementException);
create_exception!(complement, DomainTooSmallError, ComplementException);
create_exception!(complement, OutOfRangeError, ComplementException);
create_exception!(complement, BoundExhaustedError, ComplementException);

fn to_py(err: ComplementError) -> PyErr {
    let msg = err.to_string();
    match err {
        ComplementError::EmptyComplement => EmptyComplementError::new_err(msg),
        ComplementError::DomainTooSmall { .. } => DomainTooSmallError::new_err(msg),
        ComplementError::OutOfRange { .. } => OutOfRangeError::new_err(msg),
        ComplementError::BoundExhausted { values, .. } => BoundExhaustedError::new_err((msg, values)),
        _ => ComplementException::new_err(msg),
    }
}

fn policy(seed: Option<u64>) -> OrderingPolicy {
    match seed {
        Some(seed) => OrderingPolicy::SeededRandom { seed },
        None => OrderingPolicy::Ascending,
    }
}

fn json_to_dict<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyDict>> {
    Ok(py.import("json")?.call_method1("loads", (text,))?.cast_into()?)
}

#[pyclass(frozen, module = "complement")]
struct FiniteFunction {
    inner: core::FiniteFunction,
}

#[pymethods]
impl FiniteFunction {
    #[new]
    fn new(a: u32, n: u32, values: Vec<u64>) -> PyResult<Self> {
        core::FiniteFunction::new(a, n, values)
            .map(|inner| Self { inner })
            .map_err(to_py)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text)
            .map(|inner| Self { inner })
            .map_err(|e| ComplementException::new_err(e.to_string()))
    }

    fn to_json(&self) -> String {
        to_canonical_json(&self.inner)
    }

    #[getter]
    fn a(&self) -> u32 {
        self.inner.input_bits()
    }

    #[getter]
    fn n(&self) -> u32 {
        self.inner.output_bits()
    }

    #[getter]
    fn values(&self) -> Vec<u64> {
        self.inner.values().to_vec()
    }

    fn __call__(&self, x: u64) -> PyResult<u64> {
        self.inner.eval(x).ok_or_else(|| {
            to_py(ComplementError::OutOfRange {
                key: x,
                bits: self.inner.input_bits(),
            })
        })
    }

    fn __repr__(&self) -> String {
        format!("FiniteFunction(a={}, n={}, values={:?})", self.a(), self.n(), self.inner.values())
    }
}

#[pyclass(frozen, module = "complement")]
struct MappingTable {
    inner: core::MappingTable,
}

#[pymethods]
impl MappingTable {
    #[staticmethod]
    fn from_values(b: u32, values: Vec<u64>) -> PyResult<Self> {
        core::MappingTable::from_values(b, &values)
            .map(|inner| Self { inner })
            .map_err(to_py)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text)
            .map(|inner| Self { inner })
            .map_err(|e| ComplementException::new_err(e.to_string()))
    }

    fn to_json(&self) -> String {
        to_canonical_json(&self.inner)
    }

    #[getter]
    fn b(&self) -> u32 {
        self.inner.key_bits()
    }

    #[getter]
    fn values(&self) -> Vec<u64> {
        self.inner.values()
    }

    /// `(key, value, kind)` triples.
    fn entries(&self) -> Vec<(u64, u64, String)> {
        self.inner
            .entries()
            .iter()
            .map(|e| {
                let kind = serde_json::to_value(e.kind).unwrap();
                (e.key, e.value, kind.as_str().unwrap().to_owned())
            })
            .collect()
    }

    fn __getitem__(&self, key: u64) -> PyResult<u64> {
        self.inner.get(key).ok_or_else(|| {
            to_py(ComplementError::OutOfRange {
                key,
                bits: self.inner.key_bits(),
            })
        })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("MappingTable(b={}, values={:?})", self.b(), self.values())
    }
}

/// On-demand complement with a memo of the keys computed so far.
#[pyclass(module = "complement")]
struct LazyComplement {
    inner: CoreLazy,
}

#[pymethods]
impl LazyComplement {
    #[new]
    #[pyo3(signature = (f, b=None))]
    fn new(f: &FiniteFunction, b: Option<u32>) -> PyResult<Self> {
        let inner = match b {
            Some(b) => CoreLazy::with_key_bits(&f.inner, b),
            None => CoreLazy::new(&f.inner),
        };
        inner.map(|inner| Self { inner }).map_err(to_py)
    }

    #[getter]
    fn b(&self) -> u32 {
        self.inner.key_bits()
    }

    fn __call__(&mut self, x: u64) -> PyResult<u64> {
        self.inner.get(x).map_err(to_py)
    }

    fn memo(&self) -> Vec<(u64, u64)> {
        self.inner.memo().entries().iter().map(|(&k, &v)| (k, v)).collect()
    }
}

#[pyfunction]
fn compute_image(f: &FiniteFunction) -> Vec<u64> {
    core::compute_image(&f.inner).members().to_vec()
}

#[pyfunction]
fn complement_set(n: u32, image: Vec<u64>) -> PyResult<Vec<u64>> {
    let t = core::ValueSet::from_unsorted(n, image).map_err(to_py)?;
    core::complement_set(n, &t)
        .map(|s| s.members().to_vec())
        .map_err(to_py)
}

#[pyfunction]
fn choose_domain_bits(size: u64, n: u32) -> PyResult<u32> {
    core::choose_domain_bits(size, n).map_err(to_py)
}

#[pyfunction]
fn check_existence_inequality(a: u32, b: u32, n: u32) -> bool {
    core::check_existence_inequality(a, b, n)
}

/// Mapping table over the complement set `s` of the `n`-bit universe.
/// Ascending order unless `seed` is given.
#[pyfunction]
#[pyo3(signature = (s, n, b, seed=None))]
fn build_mapping(s: Vec<u64>, n: u32, b: u32, seed: Option<u64>) -> PyResult<MappingTable> {
    let s = core::ValueSet::from_unsorted(n, s).map_err(to_py)?;
    core::build_mapping(&s, b, policy(seed))
        .map(|inner| MappingTable { inner })
        .map_err(to_py)
}

/// Newton coefficients, lowest degree first, as `"num/den"` strings.
#[pyfunction]
fn synthesize_newton(m: &MappingTable) -> PyResult<Vec<String>> {
    let p = core::synthesize_newton(&m.inner).map_err(to_py)?;
    Ok(p.coefficients().iter().map(rational::format).collect())
}

/// `g(x)` for each key using one backend (`newton`, `arith`, `fourier`,
/// `iterative`), as `"num/den"` strings.
#[pyfunction]
#[pyo3(signature = (f, keys, backend="iterative", b=None, seed=None))]
fn evaluate(
    f: &FiniteFunction,
    keys: Vec<u64>,
    backend: &str,
    b: Option<u32>,
    seed: Option<u64>,
) -> PyResult<Vec<String>> {
    let backend: Backend = backend.parse().map_err(to_py)?;
    let plan = Plan::new(&f.inner, b, policy(seed)).map_err(to_py)?;
    let mut rep = core::synthesize(&plan, backend).map_err(to_py)?;
    keys.into_iter()
        .map(|x| rep.eval(x).map(|r| rational::format(&r)).map_err(to_py))
        .collect()
}

#[pyfunction]
fn get_g_of_x(f: &FiniteFunction, x: u64) -> PyResult<u64> {
    CoreLazy::new(&f.inner)
        .and_then(|mut g| g.get(x))
        .map_err(to_py)
}

/// The `count` smallest integers outside a decidable language: `"even"`,
/// `"nontrivial-product"`, `"affine:c,d"`, or the image of a function.
#[pyfunction]
#[pyo3(signature = (decider, count, bound=DEFAULT_STREAM_BOUND))]
fn stream_complement(decider: &Bound<'_, PyAny>, count: usize, bound: u64) -> PyResult<Vec<u64>> {
    let boxed: Box<dyn MembershipDecider> = if let Ok(f) = decider.cast::<FiniteFunction>() {
        Box::new(TableDecider::new(&f.get().inner))
    } else {
        let name: String = decider.extract()?;
        match name.as_str() {
            "even" => Box::new(AffineDecider::even()),
            "nontrivial-product" => Box::new(NontrivialProductDecider),
            other => {
                let parsed = other
                    .strip_prefix("affine:")
                    .and_then(|p| p.split_once(','))
                    .and_then(|(c, d)| Some((c.trim().parse().ok()?, d.trim().parse().ok()?)));
                let Some((slope, offset)) = parsed else {
                    return Err(ComplementException::new_err(format!("unknown decider {other:?}")));
                };
                Box::new(AffineDecider { slope, offset })
            }
        }
    };
    stream(boxed.as_ref(), count, bound).map_err(to_py)
}

#[pyfunction]
fn verify_complement<'py>(
    py: Python<'py>,
    f: &FiniteFunction,
    g_values: Vec<u64>,
    b: u32,
) -> PyResult<Bound<'py, PyDict>> {
    let report = core::verify_complement(&f.inner, &g_values, b);
    json_to_dict(py, &to_canonical_json(&report))
}

/// Builds every backend and verifies axioms and agreement.
#[pyfunction]
#[pyo3(signature = (f, seed=None, b=None))]
fn cross_check<'py>(
    py: Python<'py>,
    f: &FiniteFunction,
    seed: Option<u64>,
    b: Option<u32>,
) -> PyResult<Bound<'py, PyDict>> {
    let report = core::cross_check_backends(&f.inner, policy(seed), b).map_err(to_py)?;
    json_to_dict(py, &to_canonical_json(&report))
}

/// Canonical re-serialization of any artifact.
#[pyfunction]
fn canonical_json(text: &str) -> PyResult<String> {
    Artifact::from_json(text).map(|a| a.to_json()).map_err(to_py)
}

#[pymodule]
fn complement(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_class::<FiniteFunction>()?;
    m.add_class::<MappingTable>()?;
    m.add_class::<LazyComplement>()?;
    m.add("ComplementError", py.get_type::<ComplementException>())?;
    m.add("EmptyComplementError", py.get_type::<EmptyComplementError>())?;
    m.add("DomainTooSmallError", py.get_type::<DomainTooSmallError>())?;
    m.add("OutOfRangeError", py.get_type::<OutOfRangeError>())?;
    m.add("BoundExhaustedError", py.get_type::<BoundExhaustedError>())?;
    m.add_function(wrap_pyfunction!(compute_image, m)?)?;
    m.add_function(wrap_pyfunction!(complement_set, m)?)?;
    m.add_function(wrap_pyfunction!(choose_domain_bits, m)?)?;
    m.add_function(wrap_pyfunction!(check_existence_inequality, m)?)?;
    m.add_function(wrap_pyfunction!(build_mapping, m)?)?;
    m.add_function(wrap_pyfunction!(synthesize_newton, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(get_g_of_x, m)?)?;
    m.add_function(wrap_pyfunction!(stream_complement, m)?)?;
    m.add_function(wrap_pyfunction!(verify_complement, m)?)?;
    m.add_function(wrap_pyfunction!(cross_check, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_json, m)?)?;
    Ok(())
}
