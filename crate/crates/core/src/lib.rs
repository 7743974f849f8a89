//! Exact diagonalization of two qubits with XY interaction in a transverse
//! field.
//!
//! The crate covers the level-crossing circle `lambda^2 + gamma^2 = 1`, the
//! ground-state concurrence and fidelity across it, and the geometric phases
//! picked up around the monopole sphere obtained by rotating that circle
//! about the lambda axis, together with the zero-phase Renner-Teller
//! contact at `gamma = 1, lambda = 0`.

pub mod eigen;
pub mod error;
pub mod geometric;
pub mod model;
pub mod observables;
pub mod sweep;

pub use eigen::{
    analytic_eigensystem, energy_gap, ground_state, jacobi_eigensystem, EigenSystem, GroundSector,
    GroundStateResult, Sector, DEGENERACY_TOL,
};
pub use error::{Error, Result};
pub use geometric::{
    berry_connection, berry_curvature, closed_loop_phase, loop_phase_analytic, monopole_field,
    monopole_flux, open_path_phase, renner_teller_ground_state, renner_teller_loop_phase,
    wilson_loop_phase, ParamPath, PhaseResult,
};
pub use model::{
    apply_uz, build_even_block, build_hamiltonian, build_rotated_hamiltonian,
    build_x_rotated_hamiltonian, model_to_spherical, spherical_to_model, HermitianMatrix,
    ModelParams, PureState4, SphericalParams,
};
pub use observables::{concurrence, fidelity, ground_concurrence, ground_fidelity_map};
pub use sweep::{detect_crossings, export_csv, sweep, CrossingSet, Observable, SweepGrid};
