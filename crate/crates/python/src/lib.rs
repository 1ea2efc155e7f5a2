//! Python module `zeno_lab`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use zeno_core::design;
use zeno_core::gate::{self, Aggregate, Scenario};
use zeno_core::optimizer::{self, OptimizationProblem};
use zeno_core::oracle::{self, ControlLevel, JointDensityState, TargetLevel};
use zeno_core::rates::{self, PhysicalScenario};
use zeno_core::Error;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Infeasible { .. } | Error::Degenerate { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn parse_aggregate(name: &str) -> PyResult<Aggregate> {
    match name {
        "max" => Ok(Aggregate::Max),
        "sum" => Ok(Aggregate::Sum),
        other => Err(PyValueError::new_err(format!("aggregate must be 'max' or 'sum', got {other:?}"))),
    }
}

#[pyclass(name = "GateConfig", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGateConfig(gate::GateConfig);

#[pymethods]
impl PyGateConfig {
    #[new]
    #[pyo3(signature = (segments, epsilon, xi_one, xi_two, xi_control = 0.0))]
    fn new(segments: usize, epsilon: f64, xi_one: f64, xi_two: f64, xi_control: f64) -> PyResult<Self> {
        gate::GateConfig::new(segments, epsilon, xi_one, xi_two)
            .and_then(|c| c.with_control_loss(xi_control))
            .map(Self)
            .map_err(to_py)
    }

    #[getter]
    fn segments(&self) -> usize {
        self.0.segments()
    }
    #[getter]
    fn epsilon(&self) -> f64 {
        self.0.epsilon()
    }
    #[getter]
    fn xi_one(&self) -> f64 {
        self.0.xi_one()
    }
    #[getter]
    fn xi_two(&self) -> f64 {
        self.0.xi_two()
    }
    #[getter]
    fn xi_control(&self) -> f64 {
        self.0.xi_control()
    }

    fn __repr__(&self) -> String {
        format!(
            "GateConfig(segments={}, epsilon={}, xi_one={}, xi_two={}, xi_control={})",
            self.0.segments(),
            self.0.epsilon(),
            self.0.xi_one(),
            self.0.xi_two(),
            self.0.xi_control()
        )
    }
}

/// Error budget as `(p_error_sum, p_error_max, {scenario: (success, absorbed, wrong, lost)})`.
#[pyfunction]
fn gate_error(config: &PyGateConfig) -> (f64, f64, Vec<(String, [f64; 4])>) {
    let b = gate::gate_error(&config.0);
    let per = Scenario::ALL
        .iter()
        .map(|s| {
            let o = b.outcome(*s);
            (s.as_str().to_string(), [o.p_success, o.p_absorbed, o.p_wrong_branch, o.p_control_lost])
        })
        .collect();
    (b.p_error_sum, b.p_error_max, per)
}

/// `(epsilon, xi_one, xi_two)` of the large-N design laws.
#[pyfunction]
fn asymptotic_params(p_error: f64, segments: usize) -> PyResult<(f64, f64, f64)> {
    let a = design::asymptotic_params(p_error, segments).map_err(to_py)?;
    Ok((a.epsilon, a.xi_one, a.xi_two))
}

#[pyfunction]
fn kappa_required(p_error: f64) -> PyResult<f64> {
    design::kappa_required(p_error).map_err(to_py)
}

/// Minimal `kappa` design as a dict.
#[pyfunction]
#[pyo3(signature = (segments, target_error, aggregate = "max"))]
fn minimize_kappa(py: Python<'_>, segments: usize, target_error: f64, aggregate: &str) -> PyResult<Py<PyAny>> {
    let problem = OptimizationProblem::new(segments, target_error)
        .map_err(to_py)?
        .with_aggregate(parse_aggregate(aggregate)?);
    let r = py.detach(|| optimizer::minimize_kappa(&problem)).map_err(to_py)?;
    let d = pyo3::types::PyDict::new(py);
    d.set_item("epsilon", r.epsilon)?;
    d.set_item("xi_one", r.xi_one)?;
    d.set_item("xi_two", r.xi_two)?;
    d.set_item("xi_control", r.xi_control)?;
    d.set_item("kappa", r.kappa)?;
    d.set_item("achieved_error", r.achieved_error)?;
    d.set_item("converged", r.converged)?;
    Ok(d.into_any().unbind())
}

/// Rows `(p_error, segments, p_two_segment, p_one_segment, kappa, repetitions)`.
#[pyfunction]
fn reproduce_table1(py: Python<'_>) -> PyResult<Vec<(f64, usize, f64, f64, f64, u64)>> {
    let rows = py.detach(optimizer::reproduce_table1).map_err(to_py)?;
    Ok(rows
        .into_iter()
        .map(|r| (r.target_error, r.segments, r.p_two_segment, r.p_one_segment, r.kappa, r.repetitions))
        .collect())
}

/// Two-photon absorption probability and one-photon ratio for the default scenario.
#[pyfunction]
fn default_rates() -> PyResult<(f64, f64)> {
    let sc = PhysicalScenario::default();
    Ok((rates::p_two_photon(&sc).map_err(to_py)?, rates::one_photon_ratio(&sc)))
}

/// Concurrence after post-selection for the control in superposition, target upper.
#[pyfunction]
fn gate_concurrence(config: &PyGateConfig) -> PyResult<(f64, f64)> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let input = JointDensityState::superposition(&[
        (TargetLevel::Upper, ControlLevel::Absent, h),
        (TargetLevel::Upper, ControlLevel::Present, h),
    ])
    .map_err(to_py)?;
    let r = oracle::gate_concurrence(&config.0, &input).map_err(to_py)?;
    Ok((r.concurrence, r.postselect_probability))
}

#[pymodule]
fn zeno_lab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGateConfig>()?;
    m.add_function(wrap_pyfunction!(gate_error, m)?)?;
    m.add_function(wrap_pyfunction!(asymptotic_params, m)?)?;
    m.add_function(wrap_pyfunction!(kappa_required, m)?)?;
    m.add_function(wrap_pyfunction!(minimize_kappa, m)?)?;
    m.add_function(wrap_pyfunction!(reproduce_table1, m)?)?;
    m.add_function(wrap_pyfunction!(default_rates, m)?)?;
    m.add_function(wrap_pyfunction!(gate_concurrence, m)?)?;
    Ok(())
}
