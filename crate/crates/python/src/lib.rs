//! Python bindings for `xyqubit`.

use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;

use xyqubit::geometric::renner_teller_levels;
use xyqubit::sweep::Axis;
use xyqubit::{Error, GroundSector, Observable, ParamPath};

create_exception!(xyqubit, DomainError, PyValueError, "Parameters outside the domain of an operation.");

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Io { .. } => PyOSError::new_err(e.to_string()),
        Error::InvalidInput(_) => PyValueError::new_err(e.to_string()),
        other => DomainError::new_err(other.to_string()),
    }
}

type Matrix = Vec<Vec<Complex64>>;

fn rows<const N: usize>(h: &xyqubit::HermitianMatrix<N>) -> Matrix {
    h.entries().iter().map(|r| r.to_vec()).collect()
}

/// Normalized two-qubit pure state in the basis |00>, |01>, |10>, |11>.
#[pyclass(name = "PureState", module = "xyqubit", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPureState(xyqubit::PureState4);

#[pymethods]
impl PyPureState {
    #[new]
    #[pyo3(signature = (amplitudes, normalize = false))]
    fn new(amplitudes: [Complex64; 4], normalize: bool) -> PyResult<Self> {
        let state = if normalize {
            xyqubit::PureState4::normalized(amplitudes)
        } else {
            xyqubit::PureState4::new(amplitudes)
        };
        state.map(Self).map_err(to_py)
    }

    #[getter]
    fn amplitudes(&self) -> [Complex64; 4] {
        *self.0.amplitudes()
    }

    fn inner(&self, other: &PyPureState) -> Complex64 {
        self.0.inner(&other.0)
    }

    fn with_global_phase(&self, angle: f64) -> Self {
        Self(self.0.with_global_phase(angle))
    }

    fn distance_up_to_phase(&self, other: &PyPureState) -> f64 {
        self.0.distance_up_to_phase(&other.0)
    }

    fn __eq__(&self, other: &PyPureState) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        let a = self.0.amplitudes();
        format!("PureState([{}, {}, {}, {}])", a[0], a[1], a[2], a[3])
    }
}

#[pyclass(name = "GroundState", module = "xyqubit", frozen, get_all)]
struct PyGroundState {
    state: PyPureState,
    energy: f64,
    /// "even", "odd" or "degenerate"
    sector: &'static str,
    gap: f64,
}

#[pyclass(name = "PhaseResult", module = "xyqubit", frozen, get_all)]
struct PyPhaseResult {
    phase: f64,
    segment_count: usize,
    max_segment_phase: f64,
}

impl From<xyqubit::PhaseResult> for PyPhaseResult {
    fn from(p: xyqubit::PhaseResult) -> Self {
        Self {
            phase: p.phase,
            segment_count: p.segment_count,
            max_segment_phase: p.max_segment_phase,
        }
    }
}

/// Observable sampled on a square (lambda, gamma) grid, lambda outer.
#[pyclass(name = "SweepGrid", module = "xyqubit", frozen)]
struct PySweepGrid(xyqubit::SweepGrid);

#[pymethods]
impl PySweepGrid {
    #[getter]
    fn observable(&self) -> &'static str {
        self.0.observable.name()
    }

    #[getter]
    fn lambdas(&self) -> Vec<f64> {
        self.0.lambda_axis.nodes().collect()
    }

    #[getter]
    fn gammas(&self) -> Vec<f64> {
        self.0.gamma_axis.nodes().collect()
    }

    /// Values as rows indexed `[i_lambda][j_gamma]`.
    #[getter]
    fn values(&self) -> Vec<Vec<f64>> {
        self.0.values.chunks(self.0.gamma_axis.count).map(<[f64]>::to_vec).collect()
    }

    fn value(&self, i: usize, j: usize) -> PyResult<f64> {
        let n = (self.0.lambda_axis.count, self.0.gamma_axis.count);
        if i >= n.0 || j >= n.1 {
            return Err(PyValueError::new_err(format!("index ({i}, {j}) outside {n:?} grid")));
        }
        Ok(self.0.value(i, j))
    }

    fn crossings(&self, threshold: f64) -> PyResult<Vec<(f64, f64)>> {
        match xyqubit::detect_crossings(&self.0, threshold) {
            Ok(set) => Ok(set.points),
            Err(Error::EmptyResult { .. }) => Ok(Vec::new()),
            Err(e) => Err(to_py(e)),
        }
    }

    fn to_csv(&self, path: std::path::PathBuf) -> PyResult<()> {
        xyqubit::export_csv(&self.0, path).map_err(to_py)
    }

    fn __len__(&self) -> usize {
        self.0.values.len()
    }
}

#[pyfunction]
fn build_hamiltonian(lambda: f64, gamma: f64) -> Matrix {
    rows(&xyqubit::build_hamiltonian(lambda, gamma))
}

#[pyfunction]
fn build_rotated_hamiltonian(lambda: f64, gamma: f64, phi: f64) -> Matrix {
    rows(&xyqubit::build_rotated_hamiltonian(lambda, gamma, phi))
}

#[pyfunction]
fn build_x_rotated_hamiltonian(lambda: f64, phi: f64) -> Matrix {
    rows(&xyqubit::build_x_rotated_hamiltonian(lambda, phi))
}

/// Closed-form `(values, vectors)`, ascending, `vectors[i]` paired with `values[i]`.
#[pyfunction]
#[pyo3(signature = (lambda, gamma, phi = 0.0))]
fn eigensystem(lambda: f64, gamma: f64, phi: f64) -> ([f64; 4], [[Complex64; 4]; 4]) {
    let sys = xyqubit::analytic_eigensystem(lambda, gamma, phi);
    (sys.values, sys.vectors)
}

/// Numerical eigensystem of an arbitrary Hermitian 4x4 matrix.
#[pyfunction]
fn jacobi_eigensystem(matrix: [[Complex64; 4]; 4]) -> PyResult<([f64; 4], [[Complex64; 4]; 4])> {
    let h = xyqubit::HermitianMatrix::try_from_rows(matrix).map_err(to_py)?;
    let sys = xyqubit::jacobi_eigensystem(&h).map_err(to_py)?;
    Ok((sys.values, sys.vectors))
}

#[pyfunction]
#[pyo3(signature = (lambda, gamma, phi = 0.0))]
fn ground_state(lambda: f64, gamma: f64, phi: f64) -> PyGroundState {
    let gs = xyqubit::ground_state(lambda, gamma, phi);
    PyGroundState {
        state: PyPureState(gs.state),
        energy: gs.energy,
        sector: match gs.sector {
            GroundSector::Even => "even",
            GroundSector::Odd => "odd",
            GroundSector::Degenerate => "degenerate",
        },
        gap: gs.gap,
    }
}

#[pyfunction]
fn energy_gap(lambda: f64, gamma: f64) -> f64 {
    xyqubit::energy_gap(lambda, gamma)
}

#[pyfunction]
fn apply_uz(state: &PyPureState, phi: f64) -> PyPureState {
    PyPureState(xyqubit::apply_uz(&state.0, phi))
}

#[pyfunction]
fn concurrence(state: &PyPureState) -> f64 {
    xyqubit::concurrence(&state.0)
}

#[pyfunction]
fn fidelity(psi: &PyPureState, chi: &PyPureState) -> f64 {
    xyqubit::fidelity(&psi.0, &chi.0)
}

#[pyfunction]
fn ground_concurrence(lambda: f64, gamma: f64) -> PyResult<f64> {
    xyqubit::ground_concurrence(lambda, gamma).map_err(to_py)
}

#[pyfunction]
fn ground_fidelity_map(lambda: f64, gamma: f64) -> f64 {
    xyqubit::ground_fidelity_map(lambda, gamma)
}

#[pyfunction]
fn berry_connection(r: f64, theta: f64) -> PyResult<f64> {
    xyqubit::berry_connection(r, theta).map_err(to_py)
}

#[pyfunction]
fn berry_curvature(r: f64) -> PyResult<f64> {
    xyqubit::berry_curvature(r).map_err(to_py)
}

#[pyfunction]
fn loop_phase_analytic(r: f64, theta: f64) -> PyResult<f64> {
    xyqubit::loop_phase_analytic(r, theta).map_err(to_py)
}

/// Discrete Wilson-loop phase around the circle at fixed `(r, theta)`.
#[pyfunction]
#[pyo3(signature = (r, theta, segments = 2000, turns = 1))]
fn wilson_loop_phase(r: f64, theta: f64, segments: usize, turns: usize) -> PyResult<PyPhaseResult> {
    let path = ParamPath::circle_turns(r, theta, segments, turns).map_err(to_py)?;
    xyqubit::wilson_loop_phase(&path).map(Into::into).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (r, theta, phi_start, phi_end, segments = 1000))]
fn open_path_phase(r: f64, theta: f64, phi_start: f64, phi_end: f64, segments: usize) -> PyResult<PyPhaseResult> {
    xyqubit::open_path_phase(r, theta, phi_start, phi_end, segments)
        .map(Into::into)
        .map_err(to_py)
}

#[pyfunction]
fn closed_loop_phase(states: Vec<PyRef<'_, PyPureState>>) -> PyResult<PyPhaseResult> {
    let states: Vec<_> = states.iter().map(|s| s.0).collect();
    xyqubit::closed_loop_phase(&states).map(Into::into).map_err(to_py)
}

#[pyfunction]
fn monopole_field(r: f64) -> PyResult<f64> {
    xyqubit::monopole_field(r).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (r, n_theta = 256, n_phi = 256))]
fn monopole_flux(r: f64, n_theta: usize, n_phi: usize) -> PyResult<f64> {
    xyqubit::monopole_flux(r, n_theta, n_phi).map_err(to_py)
}

#[pyfunction]
fn renner_teller_ground_state(lambda: f64, phi: f64) -> PyPureState {
    PyPureState(xyqubit::renner_teller_ground_state(lambda, phi))
}

/// Lowest even and odd levels `(E_even, E_odd)` of `H(lambda, 1)`.
#[pyfunction]
fn renner_teller_energies(lambda: f64) -> (f64, f64) {
    renner_teller_levels(lambda)
}

#[pyfunction]
#[pyo3(signature = (lambda, segments = 2000))]
fn renner_teller_loop_phase(lambda: f64, segments: usize) -> PyResult<PyPhaseResult> {
    xyqubit::renner_teller_loop_phase(lambda, segments)
        .map(Into::into)
        .map_err(to_py)
}

/// Evaluates `"gap"`, `"concurrence"` or `"fidelity"` on a grid.
#[pyfunction]
#[pyo3(signature = (observable, lambda_range = (-2.0, 2.0), gamma_range = (-2.0, 2.0), resolution = 101))]
fn sweep(
    observable: &str,
    lambda_range: (f64, f64),
    gamma_range: (f64, f64),
    resolution: usize,
) -> PyResult<PySweepGrid> {
    let obs: Observable = observable.parse().map_err(to_py)?;
    xyqubit::sweep(obs, lambda_range, gamma_range, resolution)
        .map(PySweepGrid)
        .map_err(to_py)
}

/// Evenly spaced nodes, endpoints included.
#[pyfunction]
fn axis_nodes(min: f64, max: f64, count: usize) -> PyResult<Vec<f64>> {
    Ok(Axis::new(min, max, count).map_err(to_py)?.nodes().collect())
}

#[pymodule(name = "xyqubit")]
fn xyqubit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("DomainError", m.py().get_type::<DomainError>())?;
    m.add_class::<PyPureState>()?;
    m.add_class::<PyGroundState>()?;
    m.add_class::<PyPhaseResult>()?;
    m.add_class::<PySweepGrid>()?;
    m.add_function(wrap_pyfunction!(build_hamiltonian, m)?)?;
    m.add_function(wrap_pyfunction!(build_rotated_hamiltonian, m)?)?;
    m.add_function(wrap_pyfunction!(build_x_rotated_hamiltonian, m)?)?;
    m.add_function(wrap_pyfunction!(eigensystem, m)?)?;
    m.add_function(wrap_pyfunction!(jacobi_eigensystem, m)?)?;
    m.add_function(wrap_pyfunction!(ground_state, m)?)?;
    m.add_function(wrap_pyfunction!(energy_gap, m)?)?;
    m.add_function(wrap_pyfunction!(apply_uz, m)?)?;
    m.add_function(wrap_pyfunction!(concurrence, m)?)?;
    m.add_function(wrap_pyfunction!(fidelity, m)?)?;
    m.add_function(wrap_pyfunction!(ground_concurrence, m)?)?;
    m.add_function(wrap_pyfunction!(ground_fidelity_map, m)?)?;
    m.add_function(wrap_pyfunction!(berry_connection, m)?)?;
    m.add_function(wrap_pyfunction!(berry_curvature, m)?)?;
    m.add_function(wrap_pyfunction!(loop_phase_analytic, m)?)?;
    m.add_function(wrap_pyfunction!(wilson_loop_phase, m)?)?;
    m.add_function(wrap_pyfunction!(open_path_phase, m)?)?;
    m.add_function(wrap_pyfunction!(closed_loop_phase, m)?)?;
    m.add_function(wrap_pyfunction!(monopole_field, m)?)?;
    m.add_function(wrap_pyfunction!(monopole_flux, m)?)?;
    m.add_function(wrap_pyfunction!(renner_teller_ground_state, m)?)?;
    m.add_function(wrap_pyfunction!(renner_teller_energies, m)?)?;
    m.add_function(wrap_pyfunction!(renner_teller_loop_phase, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(axis_nodes, m)?)?;
    Ok(())
}
