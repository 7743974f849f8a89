//! Berry connection, geometric phases, the monopole field of the degeneracy
//! sphere, and the Renner-Teller family.
//!
//! Parameter space is addressed in the spherical chart `(r, theta, phi)`.
//! The degeneracy set is the unit sphere `r = 1`: outside it the ground
//! state lives in the even sector and carries a geometric phase, inside it
//! the ground state is the fixed odd-sector vector and carries none.
//!
//! Connections and unwrapped loop phases are reported in the gauge that is
//! regular at the north pole (`theta = 0`), where the ground state reads
//! `cos(t/2)|00> + sin(t/2) e^{2i phi}|11>` and the connection is
//! `A_phi = -2 sin^2(t/2) / (r sin t)`. Its Dirac string runs along
//! `theta = pi`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::eigen::{ground_state, jacobi_eigensystem, GroundSector, DEGENERACY_TOL};
use crate::error::{Error, Result};
use crate::model::{build_x_rotated_hamiltonian, spherical_to_model, PureState4, SphericalParams};
use crate::observables::odd_reference_state;

/// Points with `theta` this close to `pi` sit on the Dirac string.
pub const DIRAC_TOL: f64 = 1e-9;

/// Smallest overlap modulus accepted between neighbouring path states.
const MIN_OVERLAP: f64 = 1e-6;

fn check_off_sphere(r: f64) -> Result<()> {
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::invalid(format!("radius must be positive and finite, got {r}")));
    }
    let distance = (r - 1.0).abs();
    if distance <= DEGENERACY_TOL {
        return Err(Error::OnDegeneracySphere { distance });
    }
    Ok(())
}

fn check_outside(r: f64) -> Result<()> {
    check_off_sphere(r)?;
    if r < 1.0 {
        return Err(Error::InsideSphere { r });
    }
    Ok(())
}

fn check_theta(theta: f64) -> Result<()> {
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::invalid(format!("theta must lie in [0, pi], got {theta}")));
    }
    if theta >= PI - DIRAC_TOL {
        return Err(Error::DiracString { theta });
    }
    Ok(())
}

/// Azimuthal component of the ground-state Berry connection.
pub fn berry_connection(r: f64, theta: f64) -> Result<f64> {
    check_off_sphere(r)?;
    if r < 1.0 {
        return Ok(0.0);
    }
    check_theta(theta)?;
    if theta == 0.0 {
        return Ok(0.0);
    }
    let half = (theta / 2.0).sin();
    Ok(-(2.0 / (r * theta.sin())) * half * half)
}

/// Radial Berry curvature, the curl of [`berry_connection`]: `-1/r^2`
/// outside the sphere, 0 inside.
pub fn berry_curvature(r: f64) -> Result<f64> {
    check_off_sphere(r)?;
    Ok(if r > 1.0 { -1.0 / (r * r) } else { 0.0 })
}

/// Closed-circuit phase at fixed `(r, theta)`: 0 inside the sphere,
/// `-2 pi (1 - cos theta)` outside.
pub fn loop_phase_analytic(r: f64, theta: f64) -> Result<f64> {
    check_off_sphere(r)?;
    if !(0.0..PI).contains(&theta) {
        return Err(Error::invalid(format!("theta must lie in [0, pi), got {theta}")));
    }
    if r < 1.0 {
        return Ok(0.0);
    }
    Ok(-2.0 * PI * (1.0 - theta.cos()))
}

/// Radial component of the monopole field: `-2/r^2` outside, 0 inside.
pub fn monopole_field(r: f64) -> Result<f64> {
    check_off_sphere(r)?;
    Ok(if r > 1.0 { -2.0 / (r * r) } else { 0.0 })
}

/// Flux of [`monopole_field`] through the sphere of radius `r`.
///
/// Cells of a uniform `(theta, phi)` grid are weighted by their exact area
/// `r^2 (cos t_i - cos t_{i+1}) dphi`; the field is sampled at the cell
/// midpoint.
pub fn monopole_flux(r: f64, n_theta: usize, n_phi: usize) -> Result<f64> {
    if !r.is_finite() || r <= 1.0 + DEGENERACY_TOL {
        return Err(Error::InsideSphere { r });
    }
    if n_theta < 16 || n_phi < 16 {
        return Err(Error::invalid("flux grid needs at least 16 cells per axis"));
    }
    let field = monopole_field(r)?;
    let d_theta = PI / n_theta as f64;
    let d_phi = 2.0 * PI / n_phi as f64;
    let mut flux = 0.0;
    for i in 0..n_theta {
        let band = (i as f64 * d_theta).cos() - ((i + 1) as f64 * d_theta).cos();
        let area = r * r * band * d_phi;
        flux += (0..n_phi).map(|_| field * area).sum::<f64>();
    }
    Ok(flux)
}

/// Discretized path through parameter space.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamPath {
    points: Vec<SphericalParams>,
    closed: bool,
}

impl ParamPath {
    /// Validates the path. Closed paths need at least three points, all
    /// strictly on one side of the degeneracy sphere.
    pub fn new(points: Vec<SphericalParams>, closed: bool) -> Result<Self> {
        if points.len() < 2 || (closed && points.len() < 3) {
            return Err(Error::invalid("path has too few points"));
        }
        for (k, w) in points.windows(2).enumerate() {
            if w[0] == w[1] {
                return Err(Error::invalid(format!("points {k} and {} coincide", k + 1)));
            }
        }
        if closed {
            for p in &points {
                let distance = (p.r - 1.0).abs();
                if distance <= DEGENERACY_TOL {
                    return Err(Error::OnDegeneracySphere { distance });
                }
            }
            let outside = points[0].r > 1.0;
            if points.iter().any(|p| (p.r > 1.0) != outside) {
                return Err(Error::SphereCrossing);
            }
        }
        Ok(Self { points, closed })
    }

    /// Uniform circuit in `phi` over `[0, 2 pi)` at fixed `r` and `theta`.
    pub fn circle(r: f64, theta: f64, n: usize) -> Result<Self> {
        Self::circle_turns(r, theta, n, 1)
    }

    /// The circuit traversed `turns` times, `n` points per turn.
    pub fn circle_turns(r: f64, theta: f64, n: usize, turns: usize) -> Result<Self> {
        let total = n * turns;
        let points = (0..total)
            .map(|k| SphericalParams::new(r, theta, 2.0 * PI * k as f64 / n as f64))
            .collect::<Result<Vec<_>>>()?;
        Self::new(points, true)
    }

    pub fn points(&self) -> &[SphericalParams] {
        &self.points
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseResult {
    /// Accumulated phase in radians, not reduced modulo 2 pi.
    pub phase: f64,
    pub segment_count: usize,
    /// Largest single-segment phase magnitude.
    pub max_segment_phase: f64,
}

/// Sum of the per-segment phases `-arg <psi_k|psi_{k+1}>` around a closed
/// loop, including the segment from the last state back to the first.
///
/// The total is only unwrapped correctly when the states come in a gauge
/// that varies slowly along the path, so any segment phase of pi/2 or more is
/// rejected.
pub fn closed_loop_phase(states: &[PureState4]) -> Result<PhaseResult> {
    if states.len() < 3 {
        return Err(Error::invalid("closed loop needs at least three states"));
    }
    let n = states.len();
    let mut phase = 0.0;
    let mut max_segment_phase = 0.0f64;
    for k in 0..n {
        let overlap = states[k].inner(&states[(k + 1) % n]);
        let segment = -overlap.arg();
        if overlap.norm() < MIN_OVERLAP || segment.abs() >= FRAC_PI_2 {
            return Err(Error::InsufficientResolution {
                segment: k,
                phase: segment,
            });
        }
        max_segment_phase = max_segment_phase.max(segment.abs());
        phase += segment;
    }
    Ok(PhaseResult {
        phase,
        segment_count: n,
        max_segment_phase,
    })
}

/// Rephases each state so its overlap with the previous one is real and
/// positive. The first state is left as given.
pub fn parallel_transport(states: &mut [PureState4]) {
    for k in 1..states.len() {
        let overlap = states[k - 1].inner(&states[k]);
        if overlap.norm() > 0.0 {
            let w = overlap.conj() / overlap.norm();
            states[k] = PureState4::from_normalized(states[k].amplitudes().map(|z| z * w));
        }
    }
}

/// Moves a ground state into the north-regular gauge: the `|00>` amplitude
/// outside the sphere, or the overlap with the odd reference vector inside,
/// is made real and positive.
fn north_gauge(state: &PureState4, outside: bool, theta: f64) -> Result<PureState4> {
    let pivot = if outside {
        state.a()
    } else {
        odd_reference_state().inner(state)
    };
    if pivot.norm() < 1e-12 {
        return Err(Error::DiracString { theta });
    }
    let w: Complex64 = pivot.conj() / pivot.norm();
    Ok(PureState4::from_normalized(state.amplitudes().map(|z| z * w)))
}

/// Discrete Berry phase of the instantaneous ground state around a closed
/// path.
pub fn wilson_loop_phase(path: &ParamPath) -> Result<PhaseResult> {
    wilson_loop_phase_with(path, |_, s| s)
}

/// As [`wilson_loop_phase`], passing each raw eigenvector through `rephase`
/// before the gauge is fixed. Any per-point phase change applied here leaves
/// the result unchanged.
pub fn wilson_loop_phase_with(
    path: &ParamPath,
    mut rephase: impl FnMut(usize, PureState4) -> PureState4,
) -> Result<PhaseResult> {
    if !path.is_closed() {
        return Err(Error::invalid("Wilson loop requires a closed path"));
    }
    let outside = path.points()[0].r > 1.0;
    let mut states = Vec::with_capacity(path.len());
    for (k, p) in path.points().iter().enumerate() {
        if outside {
            check_theta(p.theta)?;
        }
        let m = spherical_to_model(*p);
        let ground = ground_state(m.lambda, m.gamma, m.phi);
        let expected = if outside { GroundSector::Even } else { GroundSector::Odd };
        if ground.sector != expected {
            return Err(Error::SphereCrossing);
        }
        let raw = rephase(k, ground.state);
        states.push(north_gauge(&raw, outside, p.theta)?);
    }
    closed_loop_phase(&states)
}

/// Line integral of the connection along the arc `phi_start -> phi_end` at
/// fixed `(r, theta)`, midpoint rule with `segments` pieces.
///
/// Open-path phases are gauge dependent; this one is in the north-regular
/// gauge of [`berry_connection`] and equals `-(1 - cos theta)(phi_end -
/// phi_start)`.
pub fn open_path_phase(
    r: f64,
    theta: f64,
    phi_start: f64,
    phi_end: f64,
    segments: usize,
) -> Result<PhaseResult> {
    check_outside(r)?;
    if !(theta > 0.0 && theta < PI) {
        return Err(Error::invalid(format!("theta must lie in (0, pi), got {theta}")));
    }
    if segments < 100 {
        return Err(Error::invalid("open path needs at least 100 segments"));
    }
    if !(phi_start.is_finite() && phi_end.is_finite()) {
        return Err(Error::invalid("path endpoints must be finite"));
    }
    let d_phi = (phi_end - phi_start) / segments as f64;
    let arc = r * theta.sin() * d_phi;
    let mut phase = 0.0;
    let mut max_segment_phase = 0.0f64;
    for _ in 0..segments {
        let step = berry_connection(r, theta)? * arc;
        max_segment_phase = max_segment_phase.max(step.abs());
        phase += step;
    }
    Ok(PhaseResult {
        phase,
        segment_count: segments,
        max_segment_phase,
    })
}

/// Closed-form ground state of `U_x(phi)^dag H(lambda, 1) U_x(phi)`:
///
/// `(a c^2 - b s^2)|00> + i (a+b)/2 sin(phi) (|01> + |10>) + (b c^2 - a s^2)|11>`
///
/// with `c, s = cos, sin(phi/2)`, `a, b = cos, sin(t/2)` and
/// `tan t = 1/lambda`.
pub fn renner_teller_ground_state(lambda: f64, phi: f64) -> PureState4 {
    let theta = 1f64.atan2(lambda);
    let (b, a) = (theta / 2.0).sin_cos();
    let (s, c) = (phi / 2.0).sin_cos();
    let mixed = Complex64::new(0.0, (a + b) / 2.0 * phi.sin());
    PureState4::from_normalized([
        Complex64::new(a * c * c - b * s * s, 0.0),
        mixed,
        mixed,
        Complex64::new(b * c * c - a * s * s, 0.0),
    ])
}

/// The two lowest levels of `H(lambda, 1)`: the even-sector
/// `-sqrt(1 + lambda^2)` and the odd-sector `-1`. They touch at
/// `lambda = 0` without crossing.
pub fn renner_teller_levels(lambda: f64) -> (f64, f64) {
    (-(1.0 + lambda * lambda).sqrt(), -1.0)
}

/// Berry phase of the x-rotated family around `phi in [0, 2 pi)` at fixed
/// `lambda`, from numerically diagonalized ground states.
pub fn renner_teller_loop_phase(lambda: f64, segments: usize) -> Result<PhaseResult> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::invalid(format!("lambda must be positive, got {lambda}")));
    }
    if segments < 100 {
        return Err(Error::invalid("loop needs at least 100 segments"));
    }
    let mut states = (0..segments)
        .map(|k| {
            let phi = 2.0 * PI * k as f64 / segments as f64;
            let sys = jacobi_eigensystem(&build_x_rotated_hamiltonian(lambda, phi))?;
            Ok(sys.state(0))
        })
        .collect::<Result<Vec<_>>>()?;
    parallel_transport(&mut states);
    closed_loop_phase(&states)
}
