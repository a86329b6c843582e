//! Python module `ewit`: witness construction, the recursive map, the
//! `rho_t` family and the certificates.

// pyo3 0.22 macro expansion trips this lint on every `PyResult` method.
#![allow(clippy::useless_conversion)]

use ewit_core::certify::{self, blockpos_probe};
use ewit_core::coordinate::to_coordinate_string;
use ewit_core::spectrum::min_eigenvalue;
use ewit_core::{Dyadic, Error, Operator, QubitCount, Rational, RhoFamily};
use num_complex::Complex64;
use pyo3::exceptions::{PyIOError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Io(io) => PyIOError::new_err(io.to_string()),
        Error::CertificateFailed { .. } => PyRuntimeError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn qubits(n: u32) -> PyResult<QubitCount> {
    QubitCount::new(n).map_err(to_py)
}

fn fraction(py: Python<'_>, num: i128, den: i128) -> PyResult<PyObject> {
    let cls = py.import_bound("fractions")?.getattr("Fraction")?;
    Ok(cls.call1((num, den))?.unbind())
}

fn dyadic_fraction(py: Python<'_>, d: Dyadic) -> PyResult<PyObject> {
    rational_fraction(py, d.to_ratio())
}

fn rational_fraction(py: Python<'_>, r: Rational) -> PyResult<PyObject> {
    fraction(py, *r.numer(), *r.denom())
}

fn square<T>(rows: Vec<Vec<T>>) -> PyResult<Operator<T>>
where
    T: ewit_core::Scalar,
{
    Operator::from_rows(rows).map_err(to_py)
}

fn rows<T>(m: &Operator<T>) -> Vec<Vec<T>>
where
    T: ewit_core::Scalar,
{
    (0..m.dim()).map(|r| m.row(r).to_vec()).collect()
}

/// Choi-type witness `W_N` with exact dyadic entries.
#[pyclass(frozen, module = "ewit")]
struct Witness {
    inner: ewit_core::Witness,
}

#[pymethods]
impl Witness {
    #[new]
    fn new(n: u32) -> PyResult<Self> {
        let inner = ewit_core::build_witness(qubits(n)?).map_err(to_py)?;
        Ok(Witness { inner })
    }

    /// Parses a DyadicCoordinate document.
    #[staticmethod]
    fn from_coordinate(text: &str) -> PyResult<Self> {
        let inner = ewit_core::Witness::read_coordinate(text.as_bytes()).map_err(to_py)?;
        Ok(Witness { inner })
    }

    #[getter]
    fn qubits(&self) -> u32 {
        self.inner.qubits().get()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn nnz(&self) -> usize {
        self.inner.nnz()
    }

    fn to_list(&self) -> Vec<Vec<f64>> {
        rows(&self.inner.to_f64())
    }

    /// Nonzero entries as `(row, col, Fraction)`, row-major.
    fn entries(&self, py: Python<'_>) -> PyResult<Vec<(usize, usize, PyObject)>> {
        self.inner
            .coordinates()
            .map(|(r, c, v)| Ok((r, c, dyadic_fraction(py, v)?)))
            .collect()
    }

    fn to_coordinate(&self) -> String {
        to_coordinate_string(self.inner.matrix())
    }

    fn min_eigenvalue(&self) -> PyResult<f64> {
        min_eigenvalue(&self.inner.to_f64()).map_err(to_py)
    }

    /// Exact eigenvalue on the maximally entangled vector.
    fn phi_plus_eigenvalue(&self, py: Python<'_>) -> PyResult<Option<PyObject>> {
        self.inner
            .max_entangled_eigenvalue()
            .map(|d| dyadic_fraction(py, d))
            .transpose()
    }

    /// `Tr(W rho)` for a real matrix.
    fn expectation(&self, rho: Vec<Vec<f64>>) -> PyResult<f64> {
        certify::expectation(&self.inner, &square(rho)?).map_err(to_py)
    }

    /// The map encoded by the witness, applied to a complex matrix.
    fn apply(&self, x: Vec<Vec<Complex64>>) -> PyResult<Vec<Vec<Complex64>>> {
        let y = self.inner.choi_apply(&square(x)?).map_err(to_py)?;
        Ok(rows(&y))
    }

    fn __repr__(&self) -> String {
        format!("Witness(n={}, dim={}, nnz={})", self.qubits(), self.dim(), self.nnz())
    }
}

/// Matrix-free `Psi_N(X)` on a `2^N x 2^N` complex matrix.
#[pyfunction]
fn psi_apply(n: u32, x: Vec<Vec<Complex64>>) -> PyResult<Vec<Vec<Complex64>>> {
    let y = ewit_core::psi_apply(qubits(n)?, &square(x)?).map_err(to_py)?;
    Ok(rows(&y))
}

#[pyfunction]
fn build_witness(n: u32) -> PyResult<Witness> {
    Witness::new(n)
}

/// Dense `rho_t` for `N >= 2`.
#[pyfunction]
fn rho_t(n: u32, t: f64) -> PyResult<Vec<Vec<f64>>> {
    let family = RhoFamily::new(qubits(n)?).map_err(to_py)?;
    Ok(rows(&family.rho_f64(t)))
}

/// Exact `Tr(W_N rho_t)` as a Fraction; `t` must be a dyadic float.
#[pyfunction]
fn expectation(py: Python<'_>, n: u32, t: f64) -> PyResult<PyObject> {
    let t =
        Dyadic::from_f64(t).ok_or_else(|| PyValueError::new_err(format!("{t} is not representable as a dyadic")))?;
    let family = RhoFamily::new(qubits(n)?).map_err(to_py)?;
    let value = certify::expectation(family.witness(), &family.rho_dyadic(t)).map_err(to_py)?;
    dyadic_fraction(py, value)
}

/// Lower (open) end of the detection interval, `2^N / (2^N + 4)`.
#[pyfunction]
fn detection_threshold(py: Python<'_>, n: u32) -> PyResult<PyObject> {
    let interval = certify::detection_threshold(qubits(n)?).map_err(to_py)?;
    rational_fraction(py, interval.lower_open)
}

/// Structural physical approximation summary.
#[pyfunction]
fn spa(py: Python<'_>, n: u32) -> PyResult<Bound<'_, PyDict>> {
    let r = certify::spa(qubits(n)?).map_err(to_py)?;
    let d = PyDict::new_bound(py);
    d.set_item("p_star", rational_fraction(py, r.p_star)?)?;
    d.set_item("trace", rational_fraction(py, r.trace)?)?;
    d.set_item("min_eig", r.min_eig)?;
    d.set_item("ppt_min_eig", r.ppt_min_eig)?;
    d.set_item("xi_min", dyadic_fraction(py, r.xi_min)?)?;
    d.set_item("corollary_holds", r.corollary_holds)?;
    Ok(d)
}

/// Full certificate report as JSON plus the list of failed fields.
#[pyfunction]
fn certify_report(n: u32) -> PyResult<(String, Vec<String>)> {
    let outcome = certify::assess(qubits(n)?).map_err(to_py)?;
    let failures = outcome.failures.iter().map(|e| e.to_string()).collect();
    Ok((outcome.report.to_json(), failures))
}

#[pyfunction]
#[pyo3(signature = (n, restarts=200, iters=100, seed=0))]
fn probe(py: Python<'_>, n: u32, restarts: usize, iters: usize, seed: u64) -> PyResult<Bound<'_, PyDict>> {
    let w = ewit_core::build_witness(qubits(n)?).map_err(to_py)?;
    let r = py
        .allow_threads(|| blockpos_probe(&w, restarts, iters, seed))
        .map_err(to_py)?;
    let d = PyDict::new_bound(py);
    d.set_item("min_value", r.min_value)?;
    d.set_item("restart", r.restart)?;
    d.set_item("max_increase", r.max_increase)?;
    d.set_item("psi", r.psi)?;
    d.set_item("phi", r.phi)?;
    Ok(d)
}

type SweepTuple = (f64, f64, f64, f64, f64);

/// Rows `(t, min_eig_rho, min_eig_rho_gamma, witness_value, witness_formula)`.
#[pyfunction]
#[pyo3(signature = (n, t_min=-1.5, t_max=1.5, steps=61))]
fn sweep(py: Python<'_>, n: u32, t_min: f64, t_max: f64, steps: usize) -> PyResult<Vec<SweepTuple>> {
    let family = RhoFamily::new(qubits(n)?).map_err(to_py)?;
    let rows = py.allow_threads(|| family.sweep(t_min, t_max, steps)).map_err(to_py)?;
    Ok(rows
        .into_iter()
        .map(|r| {
            (
                r.t,
                r.min_eig_rho,
                r.min_eig_rho_gamma,
                r.witness_value,
                r.witness_formula,
            )
        })
        .collect())
}

#[pymodule]
fn ewit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Witness>()?;
    m.add_function(wrap_pyfunction!(psi_apply, m)?)?;
    m.add_function(wrap_pyfunction!(build_witness, m)?)?;
    m.add_function(wrap_pyfunction!(rho_t, m)?)?;
    m.add_function(wrap_pyfunction!(expectation, m)?)?;
    m.add_function(wrap_pyfunction!(detection_threshold, m)?)?;
    m.add_function(wrap_pyfunction!(spa, m)?)?;
    m.add_function(wrap_pyfunction!(certify_report, m)?)?;
    m.add_function(wrap_pyfunction!(probe, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add("MAX_QUBITS", ewit_core::MAX_QUBITS)?;
    Ok(())
}
