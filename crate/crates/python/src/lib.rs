//! Python bindings: material parameters, exact solutions, WENO derivatives
//! and the run driver.

use std::collections::HashMap;

use mindlin::config::preset;
use mindlin::driver::{self, RunOutput};
use mindlin::exact::{self, Family};
use mindlin::snapshot::Snapshot;
use mindlin::weno::{self, GhostRule, StencilDirection, Weighting};
use mindlin::{parse_config, parse_config_str, Error};
use pyo3::exceptions::{PyArithmeticError, PyIOError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::BlowUp { .. } => PyArithmeticError::new_err(e.to_string()),
        Error::Io { .. } | Error::Csv { .. } => PyIOError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn parse_family(name: &str) -> PyResult<Family> {
    match name {
        "sincos" => Ok(Family::SinCos),
        "cossin" => Ok(Family::CosSin),
        other => Err(PyValueError::new_err(format!("family must be 'sincos' or 'cossin', got '{other}'"))),
    }
}

/// The six material constants of the model.
#[pyclass(name = "MaterialParams", module = "mindlin_py", from_py_object)]
#[derive(Clone)]
struct PyMaterialParams {
    inner: mindlin::MaterialParams,
}

#[pymethods]
impl PyMaterialParams {
    #[new]
    #[pyo3(signature = (rho = 1.0, i_mu = 1.0, gamma = 0.99, a = -0.01, b = 10.0, c = 1.0))]
    fn new(rho: f64, i_mu: f64, gamma: f64, a: f64, b: f64, c: f64) -> Self {
        Self { inner: mindlin::MaterialParams::new(rho, i_mu, gamma, a, b, c) }
    }

    /// Reference parameter set of the benchmark problems.
    #[staticmethod]
    fn reference() -> Self {
        Self { inner: mindlin::MaterialParams::REFERENCE }
    }

    /// Raise `ValueError` naming every violated inequality.
    fn validate(&self) -> PyResult<()> {
        self.inner.validate().map_err(to_py)
    }

    fn violations(&self) -> Vec<String> {
        self.inner.violations().iter().map(|v| v.to_string()).collect()
    }

    /// Reduced coefficients `a1..a5` and coupling constants `c1, c2`.
    fn derived(&self) -> PyResult<HashMap<&'static str, f64>> {
        let c = mindlin::DerivedCoefficients::from_params(&self.inner).map_err(to_py)?;
        Ok(HashMap::from([("a1", c.a1), ("a2", c.a2), ("a3", c.a3), ("a4", c.a4), ("a5", c.a5), ("c1", c.c1), ("c2", c.c2)]))
    }

    fn kinetic_density(&self, u_t: f64, chi_t: f64) -> f64 {
        self.inner.kinetic_density(u_t, chi_t)
    }

    fn potential_density(&self, u_x: f64, chi: f64, chi_x: f64) -> f64 {
        self.inner.potential_density(u_x, chi, chi_x)
    }

    #[getter]
    fn rho(&self) -> f64 {
        self.inner.rho
    }
    #[getter]
    fn i_mu(&self) -> f64 {
        self.inner.i_mu
    }
    #[getter]
    fn gamma(&self) -> f64 {
        self.inner.gamma
    }
    #[getter]
    fn a(&self) -> f64 {
        self.inner.a_coupling
    }
    #[getter]
    fn b(&self) -> f64 {
        self.inner.b_micro
    }
    #[getter]
    fn c(&self) -> f64 {
        self.inner.c_micro
    }

    fn __repr__(&self) -> String {
        let p = &self.inner;
        format!(
            "MaterialParams(rho={}, i_mu={}, gamma={}, a={}, b={}, c={})",
            p.rho, p.i_mu, p.gamma, p.a_coupling, p.b_micro, p.c_micro
        )
    }
}

/// `(xi, eta)`: the two temporal frequencies of wavenumber `omega`.
#[pyfunction]
fn characteristic_roots(params: &PyMaterialParams, omega: f64) -> PyResult<(f64, f64)> {
    let c = mindlin::DerivedCoefficients::from_params(&params.inner).map_err(to_py)?;
    exact::characteristic_roots(&c, omega).map_err(to_py)
}

/// Superposition of exact modes `(family, omega, (k1, k2, k3, k4))`.
#[pyclass(name = "ExactSolution", module = "mindlin_py")]
struct PyExactSolution {
    inner: mindlin::ExactSolution,
}

#[pymethods]
impl PyExactSolution {
    #[new]
    fn new(params: &PyMaterialParams, modes: Vec<(String, f64, [f64; 4])>) -> PyResult<Self> {
        let c = mindlin::DerivedCoefficients::from_params(&params.inner).map_err(to_py)?;
        let specs = modes.iter().map(|(f, w, k)| Ok((parse_family(f)?, *w, *k))).collect::<PyResult<Vec<_>>>()?;
        Ok(Self { inner: mindlin::ExactSolution::new(c, &specs).map_err(to_py)? })
    }

    /// Values and first derivatives at `(t, x)`.
    fn eval(&self, t: f64, x: f64) -> HashMap<&'static str, f64> {
        let p = self.inner.eval(t, x);
        HashMap::from([
            ("u", p.u),
            ("chi", p.chi),
            ("u_t", p.u_t),
            ("chi_t", p.chi_t),
            ("u_x", p.u_x),
            ("chi_x", p.chi_x),
            ("u_tt", p.u_tt),
            ("chi_tt", p.chi_tt),
        ])
    }

    /// `(u, chi)` lists at time `t` on the points `xs`.
    fn sample(&self, t: f64, xs: Vec<f64>) -> (Vec<f64>, Vec<f64>) {
        let s = self.inner.sampler(&xs);
        let (mut u, mut chi) = (vec![0.0; xs.len()], vec![0.0; xs.len()]);
        s.fields_into(t, &mut u, &mut chi);
        (u, chi)
    }

    fn roots(&self) -> Vec<(f64, f64)> {
        self.inner.modes.iter().map(|m| (m.xi, m.eta)).collect()
    }
}

/// Periodic WENO5 derivative; `direction` is `"leftward"` or `"rightward"`.
#[pyfunction]
#[pyo3(signature = (values, dx, direction = "rightward", optimal_weights = false))]
fn weno5_derivative(values: Vec<f64>, dx: f64, direction: &str, optimal_weights: bool) -> PyResult<Vec<f64>> {
    let dir = match direction {
        "leftward" => StencilDirection::Leftward,
        "rightward" => StencilDirection::Rightward,
        other => return Err(PyValueError::new_err(format!("direction must be 'leftward' or 'rightward', got '{other}'"))),
    };
    let w = if optimal_weights { Weighting::Optimal } else { Weighting::JiangShu };
    let p = weno::fill_ghosts(&values, GhostRule::Periodic, GhostRule::Periodic).map_err(to_py)?;
    weno::weno5_derivative_with(&p, dx, dir, w).map_err(to_py)
}

/// A validated run configuration.
#[pyclass(name = "SimConfig", module = "mindlin_py", from_py_object)]
#[derive(Clone)]
struct PySimConfig {
    inner: mindlin::SimConfig,
}

fn overrides(o: Option<HashMap<String, String>>) -> Vec<(String, String)> {
    let mut v: Vec<(String, String)> = o.unwrap_or_default().into_iter().collect();
    v.sort();
    v
}

#[pymethods]
impl PySimConfig {
    /// Built-in configuration (`test-a`, `test-b`, `inhomogeneous`) with
    /// optional `{key: toml_value}` overrides.
    #[staticmethod]
    #[pyo3(signature = (name, overrides = None))]
    fn preset(name: &str, overrides: Option<HashMap<String, String>>) -> PyResult<Self> {
        let text = preset(name).map_err(to_py)?;
        Ok(Self { inner: parse_config_str(text, &self::overrides(overrides)).map_err(to_py)? })
    }

    #[staticmethod]
    #[pyo3(signature = (text, overrides = None))]
    fn from_toml(text: &str, overrides: Option<HashMap<String, String>>) -> PyResult<Self> {
        Ok(Self { inner: parse_config_str(text, &self::overrides(overrides)).map_err(to_py)? })
    }

    #[staticmethod]
    #[pyo3(signature = (path, overrides = None))]
    fn from_file(path: std::path::PathBuf, overrides: Option<HashMap<String, String>>) -> PyResult<Self> {
        Ok(Self { inner: parse_config(&path, &self::overrides(overrides)).map_err(to_py)? })
    }

    #[getter]
    fn grid_n(&self) -> usize {
        self.inner.grid_n
    }
    #[getter]
    fn t_end(&self) -> f64 {
        self.inner.t_end
    }
    #[getter]
    fn cfl(&self) -> f64 {
        self.inner.cfl
    }
    #[getter]
    fn mode(&self) -> &'static str {
        match self.inner.mode {
            mindlin::RunMode::ExactVerify => "exact",
            mindlin::RunMode::Inhomogeneous => "inhomogeneous",
        }
    }
    #[getter]
    fn regime(&self) -> &'static str {
        self.inner.regime.name()
    }
    #[getter]
    fn snapshot_times(&self) -> Vec<f64> {
        self.inner.snapshot_times.clone()
    }

    fn __repr__(&self) -> String {
        format!("SimConfig(mode={:?}, grid_n={}, t_end={}, cfl={})", self.mode(), self.inner.grid_n, self.inner.t_end, self.inner.cfl)
    }
}

fn snapshot_dict<'py>(py: Python<'py>, s: &Snapshot) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("t", s.t)?;
    d.set_item("x", s.x.clone())?;
    d.set_item("u", s.u.clone())?;
    d.set_item("chi", s.chi.clone())?;
    d.set_item("v", s.v.clone())?;
    d.set_item("w", s.w.clone())?;
    d.set_item("ux", s.ux.clone())?;
    Ok(d)
}

/// Run a configuration. Returns a dict with `snapshots` and, for exact
/// runs, `err_u`, `err_chi` and `energy`. Raises `ArithmeticError` on
/// numerical blow-up.
#[pyfunction]
fn run<'py>(py: Python<'py>, config: &PySimConfig) -> PyResult<Bound<'py, PyDict>> {
    let cfg = config.inner.clone();
    let out = py.detach(move || driver::run(&cfg)).map_err(to_py)?;
    let d = PyDict::new(py);
    let snaps = out.snapshots().iter().map(|s| snapshot_dict(py, s)).collect::<PyResult<Vec<_>>>()?;
    d.set_item("snapshots", snaps)?;
    match &out {
        RunOutput::Exact(r) => {
            d.set_item("err_u", r.report.err_u)?;
            d.set_item("err_chi", r.report.err_chi)?;
            d.set_item("energy", r.energy.clone())?;
            d.set_item("steps", r.steps)?;
        }
        RunOutput::Inhomogeneous(r) => d.set_item("steps", r.steps)?,
    }
    Ok(d)
}

/// Error table: list of `(n, err_u, order_u, err_chi, order_chi)`.
#[pyfunction]
#[allow(clippy::type_complexity)]
fn convergence_study(py: Python<'_>, config: &PySimConfig, ns: Vec<usize>) -> PyResult<Vec<(usize, f64, Option<f64>, f64, Option<f64>)>> {
    let cfg = config.inner.clone();
    let rows = py.detach(move || mindlin::convergence_study(&cfg, &ns)).map_err(to_py)?;
    Ok(rows.iter().map(|r| (r.n, r.err_u, r.order_u, r.err_chi, r.order_chi)).collect())
}

#[pymodule]
fn mindlin_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMaterialParams>()?;
    m.add_class::<PyExactSolution>()?;
    m.add_class::<PySimConfig>()?;
    m.add_function(wrap_pyfunction!(characteristic_roots, m)?)?;
    m.add_function(wrap_pyfunction!(weno5_derivative, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(convergence_study, m)?)?;
    Ok(())
}
