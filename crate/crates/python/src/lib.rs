//! Python bindings for the `asymwell` solvers.

use asymwell as core;
use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: core::WellError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Asymmetric infinite well on `[-a, b]` with a step of height `v0` at the origin.
///
/// Pass `delta` for exponential smoothing or `epsilon` for a linear ramp.
#[pyclass(frozen, name = "WellSpec", module = "asymwell")]
struct PyWellSpec(core::WellSpec);

#[pymethods]
impl PyWellSpec {
    #[new]
    #[pyo3(signature = (a = 3.0, b = 3.0, v0 = 20.0, delta = None, epsilon = None))]
    fn new(a: f64, b: f64, v0: f64, delta: Option<f64>, epsilon: Option<f64>) -> PyResult<Self> {
        let smoothing = match (delta, epsilon) {
            (Some(_), Some(_)) => {
                return Err(PyValueError::new_err(
                    "give either delta or epsilon, not both",
                ))
            }
            (Some(delta), None) => core::Smoothing::Exponential { delta },
            (None, Some(epsilon)) => core::Smoothing::Linear { epsilon },
            (None, None) => core::Smoothing::None,
        };
        core::WellSpec::with_smoothing(a, b, v0, smoothing)
            .map(PyWellSpec)
            .map_err(err)
    }

    #[getter]
    fn a(&self) -> f64 {
        self.0.a
    }

    #[getter]
    fn b(&self) -> f64 {
        self.0.b
    }

    #[getter]
    fn v0(&self) -> f64 {
        self.0.v0
    }

    /// "none", "exponential" or "linear".
    #[getter]
    fn smoothing(&self) -> &'static str {
        self.0.smoothing.name()
    }

    /// Floor value at `x`; `inf` outside the well.
    fn potential(&self, x: f64) -> f64 {
        core::evaluate(&self.0, x).finite().unwrap_or(f64::INFINITY)
    }

    fn __repr__(&self) -> String {
        let s = &self.0;
        match s.smoothing {
            core::Smoothing::None => format!("WellSpec(a={}, b={}, v0={})", s.a, s.b, s.v0),
            core::Smoothing::Exponential { delta } => {
                format!("WellSpec(a={}, b={}, v0={}, delta={delta})", s.a, s.b, s.v0)
            }
            core::Smoothing::Linear { epsilon } => {
                format!(
                    "WellSpec(a={}, b={}, v0={}, epsilon={epsilon})",
                    s.a, s.b, s.v0
                )
            }
        }
    }
}

/// Normalized closed-form eigenstate of the step well.
#[pyclass(frozen, name = "EigenState", module = "asymwell")]
struct PyEigenState(core::EigenState);

#[pymethods]
impl PyEigenState {
    #[getter]
    fn n(&self) -> usize {
        self.0.n
    }

    #[getter]
    fn energy(&self) -> f64 {
        self.0.energy
    }

    #[getter]
    fn k(&self) -> f64 {
        self.0.k
    }

    /// `q` above the step, `qbar` below it.
    #[getter]
    fn q(&self) -> f64 {
        self.0.q
    }

    #[getter]
    fn branch(&self) -> &'static str {
        self.0.branch.name()
    }

    #[getter]
    fn amp_left(&self) -> f64 {
        self.0.amp_left
    }

    #[getter]
    fn amp_right(&self) -> f64 {
        self.0.amp_right
    }

    fn psi(&self, x: f64) -> PyResult<f64> {
        self.0.psi(x).map_err(err)
    }

    /// `(P_left, P_right)`.
    fn side_probabilities(&self) -> (f64, f64) {
        core::side_probabilities(&self.0)
    }

    /// `(kind, node_metric, antinode_metric)` for an above-threshold state.
    #[pyo3(signature = (threshold = core::DEFAULT_MATCH_THRESHOLD))]
    fn classify(&self, threshold: f64) -> PyResult<(&'static str, f64, f64)> {
        let c = core::classify_matching(&self.0, threshold).map_err(err)?;
        Ok((c.kind.name(), c.node_metric, c.antinode_metric))
    }

    /// Momentum amplitude `phi(p)`.
    fn phi(&self, p: f64) -> Complex64 {
        core::phi(&self.0, p)
    }

    /// `(p, |phi|^2)` on `n_points` momenta spanning `[-p_max, p_max]`.
    fn momentum_density(&self, p_max: f64, n_points: usize) -> PyResult<(Vec<f64>, Vec<f64>)> {
        let d = core::density_series(&self.0, p_max, n_points).map_err(err)?;
        Ok((d.p_grid, d.density))
    }

    fn __repr__(&self) -> String {
        format!(
            "EigenState(n={}, energy={}, branch='{}')",
            self.0.n,
            self.0.energy,
            self.0.branch.name()
        )
    }
}

/// Eigenstate of a smoothed (or step) well found by Numerov shooting.
#[pyclass(frozen, name = "GridSolution", module = "asymwell")]
struct PyGridSolution(core::GridSolution);

#[pymethods]
impl PyGridSolution {
    #[getter]
    fn n(&self) -> usize {
        self.0.n
    }

    #[getter]
    fn energy(&self) -> f64 {
        self.0.energy
    }

    #[getter]
    fn grid(&self) -> Vec<f64> {
        self.0.grid.clone()
    }

    #[getter]
    fn values(&self) -> Vec<f64> {
        self.0.values.clone()
    }

    /// Left-side probability by quadrature.
    fn p_left(&self) -> f64 {
        core::side_probability_numeric(&self.0)
    }
}

/// Time-of-flight classical model of the step well.
#[pyclass(frozen, name = "ClassicalModel", module = "asymwell")]
struct PyClassicalModel(core::ClassicalModel);

#[pymethods]
impl PyClassicalModel {
    #[getter]
    fn energy(&self) -> f64 {
        self.0.energy
    }

    #[getter]
    fn p_left(&self) -> f64 {
        self.0.p_left
    }

    #[getter]
    fn p_right(&self) -> f64 {
        self.0.p_right
    }

    fn density(&self, x: f64) -> PyResult<f64> {
        self.0.density(x).map_err(err)
    }
}

#[pyfunction]
fn find_spectrum(spec: &PyWellSpec, e_max: f64) -> PyResult<Vec<PyEigenState>> {
    let states = core::find_spectrum(&spec.0, e_max).map_err(err)?;
    Ok(states.into_iter().map(PyEigenState).collect())
}

#[pyfunction]
fn lowest_states(spec: &PyWellSpec, n_max: usize) -> PyResult<Vec<PyEigenState>> {
    let states = core::spectrum::lowest_states(&spec.0, n_max).map_err(err)?;
    Ok(states.into_iter().map(PyEigenState).collect())
}

#[pyfunction]
fn characteristic(spec: &PyWellSpec, energy: f64) -> PyResult<f64> {
    core::characteristic(&spec.0, energy).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (spec, e_max, n_grid = core::DEFAULT_GRID))]
fn find_spectrum_numeric(
    spec: &PyWellSpec,
    e_max: f64,
    n_grid: usize,
) -> PyResult<Vec<PyGridSolution>> {
    let states = core::find_spectrum_numeric(&spec.0, e_max, n_grid).map_err(err)?;
    Ok(states.into_iter().map(PyGridSolution).collect())
}

#[pyfunction]
fn classical_model(spec: &PyWellSpec, energy: f64) -> PyResult<PyClassicalModel> {
    core::classical_model(&spec.0, energy)
        .map(PyClassicalModel)
        .map_err(err)
}

/// `(lower, upper)` limits on the quantum left-side probability above the step.
#[pyfunction]
fn bounds_at(spec: &PyWellSpec, energy: f64) -> PyResult<(f64, f64)> {
    let b = core::bounds_at(&spec.0, energy).map_err(err)?;
    Ok((b.lower, b.upper))
}

#[pyfunction]
fn peak_separation(spec: &PyWellSpec, energy: f64) -> PyResult<f64> {
    core::peak_separation(&spec.0, energy).map_err(err)
}

#[pyfunction]
fn match_smoothings(delta: f64) -> PyResult<f64> {
    core::match_smoothings(delta).map_err(err)
}

#[pymodule]
#[pyo3(name = "asymwell")]
fn asymwell_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyWellSpec>()?;
    m.add_class::<PyEigenState>()?;
    m.add_class::<PyGridSolution>()?;
    m.add_class::<PyClassicalModel>()?;
    m.add_function(wrap_pyfunction!(find_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(lowest_states, m)?)?;
    m.add_function(wrap_pyfunction!(characteristic, m)?)?;
    m.add_function(wrap_pyfunction!(find_spectrum_numeric, m)?)?;
    m.add_function(wrap_pyfunction!(classical_model, m)?)?;
    m.add_function(wrap_pyfunction!(bounds_at, m)?)?;
    m.add_function(wrap_pyfunction!(peak_separation, m)?)?;
    m.add_function(wrap_pyfunction!(match_smoothings, m)?)?;
    Ok(())
}
