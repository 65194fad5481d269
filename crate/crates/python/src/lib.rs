//! Python bindings for `weylqubit`.

use num_complex::Complex64;
use pyo3::exceptions::{PyOverflowError, PyValueError};
use pyo3::prelude::*;

use weylqubit::gns::{gns_rep_general, ReferenceState};
use weylqubit::optics::{self, Gate, OpticalCircuit};
use weylqubit::oracle::represent;
use weylqubit::{qubit, qudit, AlgebraElement, Error, Rational, RationalAngle, Report, Scalar, Window};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::ArithmeticCapacity(_) | Error::TermCap { .. } => PyOverflowError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

trait IntoPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for weylqubit::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

fn window(l_max: i64) -> PyResult<Window> {
    Window::new(l_max).py()
}

/// An element of the Weyl algebra: a finite sum of words `c·W(θ,ℓ)`.
/// Angles are given as `p/q` in units of π.
#[pyclass(name = "Element", module = "pyweylqubit", frozen, from_py_object)]
#[derive(Clone)]
struct PyElement(AlgebraElement);

#[pymethods]
impl PyElement {
    #[staticmethod]
    fn zero() -> Self {
        Self(AlgebraElement::zero())
    }

    #[staticmethod]
    fn identity() -> Self {
        Self(AlgebraElement::identity())
    }

    /// `W(pπ/q, ℓ)`.
    #[staticmethod]
    #[pyo3(signature = (p, q, ell))]
    fn word(p: i64, q: i64, ell: i64) -> PyResult<Self> {
        if q == 0 {
            return Err(PyValueError::new_err("angle denominator is zero"));
        }
        Ok(Self(AlgebraElement::word(RationalAngle::new(p, q), ell)))
    }

    /// `U(pπ/q) = W(pπ/q, 0)`.
    #[staticmethod]
    fn u(p: i64, q: i64) -> PyResult<Self> {
        Self::word(p, q, 0)
    }

    /// `V^ℓ`.
    #[staticmethod]
    fn v(ell: i64) -> Self {
        Self(AlgebraElement::v_pow(ell))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self(AlgebraElement::from_json(text).py()?))
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    fn is_float(&self) -> bool {
        self.0.is_float()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn adjoint(&self) -> PyResult<Self> {
        Ok(Self(self.0.adjoint().py()?))
    }

    fn commutator(&self, other: &Self) -> PyResult<Self> {
        Ok(Self(self.0.commutator(&other.0).py()?))
    }

    /// Exact equality; raises for floating-point elements.
    fn equals(&self, other: &Self) -> PyResult<bool> {
        self.0.equals(&other.0).py()
    }

    #[pyo3(signature = (other, tol = 1e-12))]
    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.0.approx_eq(&other.0, tol)
    }

    fn to_float(&self) -> Self {
        Self(self.0.to_float())
    }

    /// Multiply by the exact scalar `(n/d)·e^{iπ p/q}`.
    #[pyo3(signature = (n, d = 1, p = 0, q = 1))]
    fn scale_exact(&self, n: i64, d: i64, p: i64, q: i64) -> PyResult<Self> {
        if d == 0 || q == 0 {
            return Err(PyValueError::new_err("zero denominator"));
        }
        let c = Scalar::rational(n, d).mul(&Scalar::phase_pi(Rational::new(p, q)).py()?).py()?;
        Ok(Self(self.0.try_scale(&c).py()?))
    }

    /// Multiply by a Python complex number; the result is in float mode.
    fn scale(&self, c: Complex64) -> PyResult<Self> {
        Ok(Self(self.0.try_scale(&Scalar::float(c)).py()?))
    }

    fn pow(&self, n: u32) -> PyResult<Self> {
        Ok(Self(self.0.pow(n).py()?))
    }

    /// Matrix on the window `|ℓ| ≤ l_max`, rows and columns ordered from `−l_max`.
    fn matrix(&self, l_max: i64) -> PyResult<Vec<Vec<Complex64>>> {
        let m = represent(&self.0, window(l_max)?).py()?;
        let m = m.matrix();
        Ok((0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect()).collect())
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        Ok(Self(self.0.try_add(&other.0).py()?))
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        Ok(Self(self.0.try_sub(&other.0).py()?))
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        Ok(Self(self.0.try_mul(&other.0).py()?))
    }

    fn __neg__(&self) -> Self {
        Self(self.0.neg())
    }

    fn __eq__(&self, other: &Self) -> bool {
        if self.0.is_float() || other.0.is_float() {
            self.0.approx_eq(&other.0, 1e-12)
        } else {
            self.0 == other.0
        }
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Element({})", self.0)
    }
}

/// A verification report.
#[pyclass(name = "Report", module = "pyweylqubit", frozen)]
struct PyReport(Report);

#[pymethods]
impl PyReport {
    #[getter]
    fn title(&self) -> String {
        self.0.title.clone()
    }

    #[getter]
    fn all_pass(&self) -> bool {
        self.0.all_pass()
    }

    /// `(name, passed, residual)` for every entry.
    #[getter]
    fn entries(&self) -> Vec<(String, bool, f64)> {
        self.0.entries.iter().map(|e| (e.name.clone(), e.passed(), e.residual)).collect()
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __len__(&self) -> usize {
        self.0.entries.len()
    }
}

fn report(r: weylqubit::Result<Report>) -> PyResult<PyReport> {
    Ok(PyReport(r.py()?.sorted()))
}

/// `(a_plus, a_minus, a1, a2, a3)`.
#[pyfunction]
fn generators() -> (PyElement, PyElement, PyElement, PyElement, PyElement) {
    let g = qubit::build_generators();
    (
        PyElement(g.a_plus.clone()),
        PyElement(g.a_minus.clone()),
        PyElement(g.a1.clone()),
        PyElement(g.a2.clone()),
        PyElement(g.a3.clone()),
    )
}

#[pyfunction]
fn u1(p: i64, q: i64) -> PyResult<PyElement> {
    Ok(PyElement(qubit::u1(RationalAngle::new(p, q)).py()?))
}

#[pyfunction]
fn v1() -> PyElement {
    PyElement(qubit::v1())
}

#[pyfunction]
fn in_commutant(x: &PyElement) -> PyResult<bool> {
    qubit::in_commutant(&x.0).py()
}

#[pyfunction]
fn nest_iso(x: &PyElement) -> PyResult<PyElement> {
    Ok(PyElement(qubit::nest_iso(&x.0).py()?))
}

#[pyfunction]
fn nest_iso_inverse(x: &PyElement) -> PyResult<PyElement> {
    Ok(PyElement(qubit::nest_iso_inverse(&x.0).py()?))
}

/// The 2×2 block matrix of commutant elements with `x = Σ E_jk b_jk`.
#[pyfunction]
fn split(x: &PyElement) -> PyResult<Vec<Vec<PyElement>>> {
    let d = qubit::split(&x.0).py()?;
    Ok(d.blocks.iter().map(|row| row.iter().cloned().map(PyElement).collect()).collect())
}

#[pyfunction]
fn recombine(blocks: Vec<Vec<PyElement>>) -> PyResult<PyElement> {
    if blocks.len() != 2 || blocks.iter().any(|r| r.len() != 2) {
        return Err(PyValueError::new_err("expected a 2×2 block matrix"));
    }
    let b = [
        [blocks[0][0].0.clone(), blocks[0][1].0.clone()],
        [blocks[1][0].0.clone(), blocks[1][1].0.clone()],
    ];
    Ok(PyElement(qubit::recombine(&b).py()?))
}

/// `2ⁿ×2ⁿ` matrix of algebra elements after extracting `n` qubits.
#[pyfunction]
fn extract_qubits(x: &PyElement, n: usize) -> PyResult<Vec<Vec<PyElement>>> {
    let t = qubit::extract_qubits(&x.0, n).py()?;
    Ok(t.entries.into_iter().map(|row| row.into_iter().map(PyElement).collect()).collect())
}

/// Recombination of an extraction matrix.
#[pyfunction]
fn recombine_qubits(entries: Vec<Vec<PyElement>>) -> PyResult<PyElement> {
    let n = entries.len();
    if !n.is_power_of_two() || n < 2 || entries.iter().any(|r| r.len() != n) {
        return Err(PyValueError::new_err("expected a square matrix of size 2ⁿ with n ≥ 1"));
    }
    let tree = qubit::ExtractionTree {
        depth: n.trailing_zeros() as usize,
        entries: entries.into_iter().map(|r| r.into_iter().map(|e| e.0).collect()).collect(),
    };
    Ok(PyElement(tree.recombine().py()?))
}

#[pyfunction]
#[pyo3(signature = (l_max = 32))]
fn verify_pauli(l_max: i64) -> PyResult<PyReport> {
    report(qubit::verify_pauli(Some(window(l_max)?)))
}

#[pyfunction]
#[pyo3(signature = (l_max = 32))]
fn verify_commutant(l_max: i64) -> PyResult<PyReport> {
    report(qubit::commutant_suite(window(l_max)?))
}

#[pyfunction]
#[pyo3(signature = (l_max = 16))]
fn verify_factor(l_max: i64) -> PyResult<PyReport> {
    report(qubit::factor_check(window(l_max)?))
}

#[pyfunction]
#[pyo3(signature = (l_max = 32))]
fn verify_tensor(l_max: i64) -> PyResult<PyReport> {
    report(qubit::tensor_suite(window(l_max)?))
}

#[pyfunction]
#[pyo3(signature = (d, l_max = 32))]
fn verify_qudit(d: i64, l_max: i64) -> PyResult<PyReport> {
    report(qudit::verify_qudit(d, window(l_max)?))
}

#[pyfunction]
#[pyo3(signature = (l_max = 32, tolerance = 1e-10))]
fn verify_optics(l_max: i64, tolerance: f64) -> PyResult<PyReport> {
    report(optics::verify_optics(l_max, tolerance))
}

/// GNS images of `(𝕀, a1, a2, a3)` for the vector state `{ℓ: amplitude}`.
#[pyfunction]
fn gns_rep(amplitudes: std::collections::BTreeMap<i64, Complex64>) -> PyResult<Vec<Vec<Vec<Complex64>>>> {
    let psi = ReferenceState::normalized(amplitudes).py()?;
    let rep = gns_rep_general(&psi).py()?;
    Ok(rep
        .matrices
        .iter()
        .map(|m| (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect()).collect())
        .collect())
}

/// `(fidelity, leakage, phase, matrix)` for a built-in gate.
#[pyfunction]
#[pyo3(signature = (name, phi = None, l_max = 32))]
#[allow(clippy::type_complexity)]
fn verify_gate(name: &str, phi: Option<f64>, l_max: i64) -> PyResult<(f64, f64, f64, Vec<Vec<Complex64>>)> {
    let r = optics::verify_gate(Gate::from_name(name, phi).py()?, l_max).py()?;
    let m = r.matrix.iter().map(|row| row.iter().map(|[re, im]| Complex64::new(*re, *im)).collect()).collect();
    Ok((r.fidelity, r.leakage, r.phase, m))
}

/// Apply a circuit (JSON) to an input state (JSON); returns the output as JSON.
#[pyfunction]
fn simulate(circuit: &str, state: &str) -> PyResult<String> {
    let c = OpticalCircuit::from_json(circuit).py()?;
    let v = optics::state_from_json(&c.space, state).py()?;
    let out = c.apply(&v).py()?;
    Ok(optics::state_to_json(&c.space, &out, 1e-14).to_string())
}

#[pymodule]
fn pyweylqubit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyElement>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(generators, m)?)?;
    m.add_function(wrap_pyfunction!(u1, m)?)?;
    m.add_function(wrap_pyfunction!(v1, m)?)?;
    m.add_function(wrap_pyfunction!(in_commutant, m)?)?;
    m.add_function(wrap_pyfunction!(nest_iso, m)?)?;
    m.add_function(wrap_pyfunction!(nest_iso_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(split, m)?)?;
    m.add_function(wrap_pyfunction!(recombine, m)?)?;
    m.add_function(wrap_pyfunction!(extract_qubits, m)?)?;
    m.add_function(wrap_pyfunction!(recombine_qubits, m)?)?;
    m.add_function(wrap_pyfunction!(verify_pauli, m)?)?;
    m.add_function(wrap_pyfunction!(verify_commutant, m)?)?;
    m.add_function(wrap_pyfunction!(verify_factor, m)?)?;
    m.add_function(wrap_pyfunction!(verify_tensor, m)?)?;
    m.add_function(wrap_pyfunction!(verify_qudit, m)?)?;
    m.add_function(wrap_pyfunction!(verify_optics, m)?)?;
    m.add_function(wrap_pyfunction!(gns_rep, m)?)?;
    m.add_function(wrap_pyfunction!(verify_gate, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    Ok(())
}
