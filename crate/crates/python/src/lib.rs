//! Python bindings. Symbols are 1-based on the Python side.

use std::collections::BTreeSet;

use mquasi::{Error, MultaryOperation, SearchConfig, Symbol};
use pyo3::exceptions::{PyMemoryError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::CapacityExceeded(_) => PyMemoryError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn one_based(s: &BTreeSet<Symbol>) -> Vec<usize> {
    s.iter().map(|x| x.index() + 1).collect()
}

fn config(jobs: Option<usize>) -> SearchConfig {
    SearchConfig::with_jobs(jobs.unwrap_or(0))
}

/// An m-ary operation on {1, …, n}, stored as a flat table with a_1 most
/// significant.
#[pyclass(name = "Operation", module = "pymquasi", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyOperation {
    inner: MultaryOperation,
}

impl From<MultaryOperation> for PyOperation {
    fn from(inner: MultaryOperation) -> Self {
        PyOperation { inner }
    }
}

#[pymethods]
impl PyOperation {
    #[new]
    fn new(arity: usize, order: usize, entries: Vec<usize>) -> PyResult<Self> {
        MultaryOperation::from_one_based(arity, order, &entries).map(Into::into).map_err(to_py)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        mquasi::parse_operation_file(text).map(Into::into).map_err(to_py)
    }

    #[staticmethod]
    fn from_label(arity: usize, order: usize, k: u128) -> PyResult<Self> {
        let k = k.checked_sub(1).ok_or_else(|| PyValueError::new_err("labels start at 1"))?;
        MultaryOperation::from_index(arity, order, mquasi::OperationIndex(k)).map(Into::into).map_err(to_py)
    }

    #[getter]
    fn arity(&self) -> usize {
        self.inner.arity()
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    fn entries(&self) -> Vec<usize> {
        self.inner.one_based_entries()
    }

    fn __call__(&self, args: Vec<usize>) -> PyResult<usize> {
        if args.iter().any(|&a| a == 0) {
            return Err(PyValueError::new_err("symbols start at 1"));
        }
        let args: Vec<Symbol> = mquasi::symbols(&args);
        self.inner.evaluate(&args).map(|s| s.index() + 1).map_err(to_py)
    }

    fn label(&self) -> PyResult<String> {
        self.inner.canonical_index().map(|i| i.label()).map_err(to_py)
    }

    fn image(&self) -> Vec<usize> {
        one_based(&self.inner.image())
    }

    fn is_quasigroup(&self) -> bool {
        self.inner.is_quasigroup()
    }

    fn transpose(&self) -> PyResult<Self> {
        self.inner.transpose().map(Into::into).map_err(to_py)
    }

    /// `(I_0, …, I_{m-1}, I)`.
    fn identities(&self) -> (Vec<Vec<usize>>, Vec<usize>) {
        let r = mquasi::identity_set(&self.inner);
        (r.per_position.iter().map(one_based).collect(), one_based(&r.intersection))
    }

    fn inverses(&self, a: usize) -> PyResult<Vec<usize>> {
        let a = a.checked_sub(1).ok_or_else(|| PyValueError::new_err("symbols start at 1"))?;
        mquasi::inverses(&self.inner, Symbol::new(a)).map(|s| one_based(&s)).map_err(to_py)
    }

    fn has_unique_inverses(&self) -> bool {
        mquasi::has_unique_inverses(&self.inner)
    }

    fn satisfies(&self, identity: &str) -> PyResult<bool> {
        let (l, r) = mquasi::parse_identity(identity, self.inner.arity()).map_err(to_py)?;
        mquasi::satisfies_identity(&self.inner, &l, &r).map(|c| c.holds()).map_err(to_py)
    }

    fn to_text(&self) -> String {
        mquasi::write_operation_file(&self.inner)
    }

    fn __repr__(&self) -> String {
        let label = self.inner.canonical_index().map(|i| i.label()).unwrap_or_default();
        format!("Operation(arity={}, order={}, {label})", self.inner.arity(), self.inner.order())
    }
}

fn unwrap_all(ops: Vec<PyOperation>) -> Vec<MultaryOperation> {
    ops.into_iter().map(|o| o.inner).collect()
}

#[pyfunction]
fn load_fixture(name: &str) -> PyResult<PyOperation> {
    mquasi::load_fixture(name).map(Into::into).map_err(to_py)
}

#[pyfunction]
fn fixture_names() -> Vec<String> {
    mquasi::fixture_names().into_iter().map(String::from).collect()
}

#[pyfunction]
fn superpose(f: &PyOperation, gs: Vec<PyOperation>) -> PyResult<PyOperation> {
    mquasi::superpose(&f.inner, &unwrap_all(gs)).map(Into::into).map_err(to_py)
}

#[pyfunction]
fn hadamard(star: &PyOperation, a: &PyOperation, b: &PyOperation) -> PyResult<PyOperation> {
    mquasi::hadamard_product(&star.inner, &a.inner, &b.inner)
        .map(|h| h.product.into())
        .map_err(to_py)
}

/// The lifted groupoid on all `component_arity`-ary operations, as a table
/// over their labels.
#[pyfunction]
fn lift(f: &PyOperation, component_arity: usize) -> PyResult<PyOperation> {
    mquasi::lift_operation(&f.inner, component_arity)
        .map(|l| l.operation().clone().into())
        .map_err(to_py)
}

#[pyfunction]
fn conjugate(op: &PyOperation, perm: &str) -> PyResult<PyOperation> {
    let p = mquasi::parse_permutation(perm, op.inner.arity() + 1).map_err(to_py)?;
    mquasi::conjugate(&op.inner, &mquasi::ConjugationPerm::new(p)).map(Into::into).map_err(to_py)
}

/// An isomorphism as one-line images, or None.
#[pyfunction]
fn find_isomorphism(a: &PyOperation, b: &PyOperation) -> PyResult<Option<Vec<usize>>> {
    let found = mquasi::find_isomorphism(&a.inner, &b.inner).map_err(to_py)?;
    Ok(found.map(|p| p.images().iter().map(|i| i + 1).collect()))
}

#[pyfunction]
fn is_orthogonal(ops: Vec<PyOperation>) -> PyResult<bool> {
    let s = mquasi::OperationSet::new(unwrap_all(ops)).map_err(to_py)?;
    Ok(mquasi::is_orthogonal_set(&s))
}

#[pyfunction]
#[pyo3(signature = (ops, jobs=None))]
fn ort(ops: Vec<PyOperation>, jobs: Option<usize>) -> PyResult<Vec<PyOperation>> {
    let s = mquasi::OperationSet::new(unwrap_all(ops)).map_err(to_py)?;
    let found = mquasi::enumerate_ort(&s, &config(jobs)).map_err(to_py)?;
    Ok(found.into_iter().map(Into::into).collect())
}

#[pyfunction]
#[pyo3(signature = (arity, order, jobs=None))]
fn count_quasigroups(arity: usize, order: usize, jobs: Option<usize>) -> PyResult<u128> {
    mquasi::count_quasigroups(arity, order, &config(jobs)).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (star, left_only=false, jobs=None))]
fn mult_set(star: &PyOperation, left_only: bool, jobs: Option<usize>) -> PyResult<Vec<PyOperation>> {
    let side = if left_only { mquasi::Distributivity::Left } else { mquasi::Distributivity::Both };
    let found = mquasi::mult_set_with(&star.inner, side, &config(jobs)).map_err(to_py)?;
    Ok(found.into_iter().map(Into::into).collect())
}

#[pymodule]
fn pymquasi(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyOperation>()?;
    m.add_function(wrap_pyfunction!(load_fixture, m)?)?;
    m.add_function(wrap_pyfunction!(fixture_names, m)?)?;
    m.add_function(wrap_pyfunction!(superpose, m)?)?;
    m.add_function(wrap_pyfunction!(hadamard, m)?)?;
    m.add_function(wrap_pyfunction!(lift, m)?)?;
    m.add_function(wrap_pyfunction!(conjugate, m)?)?;
    m.add_function(wrap_pyfunction!(find_isomorphism, m)?)?;
    m.add_function(wrap_pyfunction!(is_orthogonal, m)?)?;
    m.add_function(wrap_pyfunction!(ort, m)?)?;
    m.add_function(wrap_pyfunction!(count_quasigroups, m)?)?;
    m.add_function(wrap_pyfunction!(mult_set, m)?)?;
    Ok(())
}
