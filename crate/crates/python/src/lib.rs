//! Python bindings: algebras, operators, and the verify / induce /
//! classify / solve / reproduce operations.
//!
//! Scalars cross the boundary as strings (`"1/2"`, `"-i"`, `"k-1"`) or
//! Python ints.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use rbalg::catalog;
use rbalg::classify::{catalog_matches, iso_invariants, IsoSearch};
use rbalg::constructions::{
    dendriform_from_rb, dendriform_pre_lie, double_product, gs_pre_lie, induced_pre_lie, novikov_from_derivation,
};
use rbalg::format::{parse_algebra, parse_operator, write_algebra, write_operator};
use rbalg::operators::rb_failure;
use rbalg::reproduce::{reproduce as run_reproduce, ReproduceOptions, TableId};
use rbalg::{generate_system, parse_scalar, solve_zero_dim, Budget, Scalar, ZeroDimResult};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn runtime_err(e: impl std::fmt::Display) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

fn scalar(obj: &Bound<'_, PyAny>) -> PyResult<Scalar> {
    if let Ok(n) = obj.extract::<i64>() {
        return Ok(Scalar::from_int(n));
    }
    let s: String = obj.extract()?;
    parse_scalar(&s).map_err(value_err)
}

/// Finite-dimensional algebra given by structure constants.
#[pyclass(name = "Algebra", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyAlgebra {
    inner: rbalg::Algebra,
}

#[pymethods]
impl PyAlgebra {
    /// Parse the plain-text algebra format.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(PyAlgebra {
            inner: parse_algebra(text).map_err(value_err)?,
        })
    }

    /// Algebra of a catalog entry, e.g. `"A1"` or `"type-II(3)"`.
    #[staticmethod]
    fn catalog(label: &str) -> PyResult<Self> {
        let e = catalog::load_unverified(label).map_err(value_err)?;
        Ok(PyAlgebra { inner: e.algebra })
    }

    /// Build from `(i, j, k, value)` tuples with 1-based indices.
    #[staticmethod]
    fn from_constants(dim: usize, constants: Vec<(usize, usize, usize, Bound<'_, PyAny>)>) -> PyResult<Self> {
        let mut entries = Vec::with_capacity(constants.len());
        for (i, j, k, c) in constants {
            if [i, j, k].iter().any(|&x| x == 0 || x > dim) {
                return Err(PyValueError::new_err(format!("index out of range 1..={}", dim)));
            }
            entries.push((i - 1, j - 1, k - 1, scalar(&c)?));
        }
        Ok(PyAlgebra {
            inner: rbalg::Algebra::from_entries(dim, entries).map_err(value_err)?,
        })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn label(&self) -> Option<String> {
        self.inner.label().map(String::from)
    }

    /// Structure constant `C_ij^k` (1-based) as a string.
    fn constant(&self, i: usize, j: usize, k: usize) -> PyResult<String> {
        let n = self.inner.dim();
        if [i, j, k].iter().any(|&x| x == 0 || x > n) {
            return Err(PyValueError::new_err(format!("index out of range 1..={}", n)));
        }
        Ok(self.inner.constant(i - 1, j - 1, k - 1).to_string())
    }

    fn to_text(&self) -> String {
        write_algebra(&self.inner)
    }

    fn opposite(&self) -> Self {
        PyAlgebra {
            inner: self.inner.opposite(),
        }
    }

    fn is_associative(&self) -> bool {
        self.inner.is_associative()
    }

    fn is_pre_lie(&self) -> bool {
        self.inner.is_pre_lie()
    }

    fn is_commutative(&self) -> bool {
        self.inner.is_commutative()
    }

    fn is_novikov(&self) -> bool {
        self.inner.is_novikov()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Algebra(dim={}, {})", self.inner.dim(), self.inner)
    }
}

/// Linear operator; row `i` holds the coordinates of `R(e_i)`.
#[pyclass(name = "Operator", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyOperator {
    inner: rbalg::Operator,
}

#[pymethods]
impl PyOperator {
    #[new]
    fn new(rows: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(scalar).collect::<PyResult<Vec<_>>>())
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PyOperator {
            inner: rbalg::Operator::from_rows(rows).map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(PyOperator {
            inner: parse_operator(text).map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn identity(dim: usize) -> Self {
        PyOperator {
            inner: rbalg::Operator::identity(dim),
        }
    }

    #[staticmethod]
    fn zero(dim: usize) -> Self {
        PyOperator {
            inner: rbalg::Operator::zero(dim),
        }
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.inner
            .rows()
            .into_iter()
            .map(|r| r.iter().map(|c| c.to_string()).collect())
            .collect()
    }

    fn to_text(&self) -> String {
        write_operator(&self.inner)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Operator({})", self.inner)
    }
}

fn check_dims(a: &PyAlgebra, r: &PyOperator) -> PyResult<()> {
    if a.inner.dim() != r.inner.dim() {
        return Err(PyValueError::new_err(format!(
            "algebra has dimension {}, operator {}",
            a.inner.dim(),
            r.inner.dim()
        )));
    }
    Ok(())
}

/// `(holds, residual)`: whether `r` is Rota-Baxter of the given weight, and
/// otherwise the first nonzero residual as text.
#[pyfunction]
#[pyo3(signature = (algebra, operator, weight = None))]
fn verify(
    algebra: &PyAlgebra,
    operator: &PyOperator,
    weight: Option<Bound<'_, PyAny>>,
) -> PyResult<(bool, Option<String>)> {
    check_dims(algebra, operator)?;
    let w = weight.map(|w| scalar(&w)).transpose()?.unwrap_or_else(Scalar::one);
    match rb_failure(&algebra.inner, &operator.inner, &w).map_err(value_err)? {
        None => Ok((true, None)),
        Some((i, j, res)) => Ok((false, Some(format!("(e{},e{}): {}", i + 1, j + 1, res)))),
    }
}

/// Algebra built by one of the constructions: `prelie`, `double`,
/// `dendriform`, `gs` or `novikov`.
#[pyfunction]
#[pyo3(signature = (algebra, operator, construction = "prelie", weight = None))]
fn induce(
    algebra: &PyAlgebra,
    operator: &PyOperator,
    construction: &str,
    weight: Option<Bound<'_, PyAny>>,
) -> PyResult<PyAlgebra> {
    check_dims(algebra, operator)?;
    let w = weight.map(|w| scalar(&w)).transpose()?.unwrap_or_else(Scalar::one);
    let (a, r) = (&algebra.inner, &operator.inner);
    let b = match construction {
        "prelie" => induced_pre_lie(a, r, &w),
        "double" => double_product(a, r),
        "dendriform" => dendriform_from_rb(a, r, &w).and_then(|d| dendriform_pre_lie(&d)),
        "gs" => gs_pre_lie(a, r),
        "novikov" => novikov_from_derivation(a, r),
        other => return Err(PyValueError::new_err(format!("unknown construction \"{}\"", other))),
    }
    .map_err(runtime_err)?;
    Ok(PyAlgebra { inner: b })
}

/// Catalog labels isomorphic to the algebra (empty when none match).
#[pyfunction]
fn classify(algebra: &PyAlgebra) -> PyResult<Vec<String>> {
    let matches = catalog_matches(&algebra.inner, &IsoSearch::default(), false).map_err(runtime_err)?;
    Ok(matches.into_iter().map(|m| m.label).collect())
}

/// Isomorphism invariants as a printable record.
#[pyfunction]
fn invariants(algebra: &PyAlgebra) -> PyResult<String> {
    Ok(iso_invariants(&algebra.inner).map_err(runtime_err)?.to_string())
}

/// All weight-1 Rota-Baxter operators when there are finitely many.
#[pyfunction]
fn solve(algebra: &PyAlgebra) -> PyResult<Vec<PyOperator>> {
    let a = &algebra.inner;
    let system = generate_system(a, &Scalar::one());
    match solve_zero_dim(&system, &Budget::from_env()).map_err(runtime_err)? {
        ZeroDimResult::Points(points) => points
            .iter()
            .map(|p| {
                rbalg::Operator::symbolic(a.dim(), "r")
                    .substitute(p)
                    .map(|inner| PyOperator { inner })
                    .map_err(runtime_err)
            })
            .collect(),
        other => Err(PyRuntimeError::new_err(other.to_string())),
    }
}

/// `(passed, report)` for a table name such as `"prop3.1"`.
#[pyfunction]
#[pyo3(signature = (table, csv = false))]
fn reproduce(py: Python<'_>, table: &str, csv: bool) -> PyResult<(bool, String)> {
    let id: TableId = table.parse().map_err(PyValueError::new_err)?;
    let report = py
        .detach(|| run_reproduce(id, &ReproduceOptions::default()))
        .map_err(runtime_err)?;
    let text = if csv { report.to_csv() } else { report.to_string() };
    Ok((report.passed(), text))
}

#[pyfunction]
fn catalog_labels() -> Vec<String> {
    catalog::labels()
}

#[pymodule]
fn rbalg_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgebra>()?;
    m.add_class::<PyOperator>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(induce, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(invariants, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(reproduce, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_labels, m)?)?;
    Ok(())
}
