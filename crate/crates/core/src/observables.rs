//! Entanglement and fidelity of ground states.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::eigen::{ground_state, DEGENERACY_TOL};
use crate::error::{Error, Result};
use crate::model::{PureState4, ORIGIN_TOL};

/// Pure-state concurrence `2 |ad - bc|`.
///
/// The value is divided by the squared norm so that a state normalized up to
/// rounding still gives exactly 1 when maximally entangled.
pub fn concurrence(state: &PureState4) -> f64 {
    let det = state.a() * state.d() - state.b() * state.c();
    (2.0 * det.norm() / state.norm_sqr()).clamp(0.0, 1.0)
}

/// `|<psi|chi>|^2`, evaluated on the rays spanned by the two states.
pub fn fidelity(psi: &PureState4, chi: &PureState4) -> f64 {
    let overlap = psi.inner(chi).norm_sqr();
    (overlap / (psi.norm_sqr() * chi.norm_sqr())).clamp(0.0, 1.0)
}

/// Lower odd-sector eigenvector `(|01> + |10>)/sqrt 2`, the fidelity reference.
pub fn odd_reference_state() -> PureState4 {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let z = Complex64::new(0.0, 0.0);
    PureState4::from_normalized([z, h, h, z])
}

/// Closed-form ground-state concurrence: `|sin theta|` outside the unit
/// circle, 1 inside and on it.
pub fn ground_concurrence(lambda: f64, gamma: f64) -> Result<f64> {
    let r = lambda.hypot(gamma);
    if r < ORIGIN_TOL {
        return Err(Error::OriginUndefined);
    }
    if r > 1.0 + DEGENERACY_TOL {
        Ok(gamma.abs() / r)
    } else {
        Ok(1.0)
    }
}

/// Concurrence computed from the ground state vector. Defined everywhere,
/// including the origin.
pub fn ground_concurrence_from_state(lambda: f64, gamma: f64) -> f64 {
    concurrence(&ground_state(lambda, gamma, 0.0).state)
}

/// Fidelity of the ground state with [`odd_reference_state`]: 1 inside the
/// circle, 0 outside.
pub fn ground_fidelity_map(lambda: f64, gamma: f64) -> f64 {
    fidelity(&ground_state(lambda, gamma, 0.0).state, &odd_reference_state())
}
