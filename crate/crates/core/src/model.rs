//! Hamiltonians of the two-qubit XY model and the parameter charts used to
//! address them.
//!
//! Basis ordering throughout the crate is `|00>, |01>, |10>, |11>`, with the
//! first qubit as the most significant bit.

#![allow(clippy::needless_range_loop)]

use std::f64::consts::{FRAC_PI_2, PI};
use std::ops::Index;

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Normalization tolerance accepted by [`PureState4::new`].
pub const NORM_TOL: f64 = 1e-12;

/// Below this radius the polar angle of a parameter point is undefined.
pub const ORIGIN_TOL: f64 = 1e-15;

/// `e^{i angle}` with exact values at integer multiples of pi/2.
pub(crate) fn cis(angle: f64) -> Complex64 {
    let quarters = angle / FRAC_PI_2;
    if quarters.fract() == 0.0 && quarters.abs() < 1e15 {
        match quarters.rem_euclid(4.0) as u8 {
            0 => ONE,
            1 => I,
            2 => -ONE,
            _ => -I,
        }
    } else {
        Complex64::from_polar(1.0, angle)
    }
}

/// Cartesian control point of the rotated Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub lambda: f64,
    pub gamma: f64,
    pub phi: f64,
}

impl ModelParams {
    pub fn new(lambda: f64, gamma: f64, phi: f64) -> Result<Self> {
        if !(lambda.is_finite() && gamma.is_finite() && phi.is_finite()) {
            return Err(Error::invalid("model parameters must be finite"));
        }
        Ok(Self { lambda, gamma, phi })
    }

    pub fn radius(&self) -> f64 {
        self.lambda.hypot(self.gamma)
    }
}

/// Spherical chart `(r, theta, phi)` of parameter space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalParams {
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
}

impl SphericalParams {
    pub fn new(r: f64, theta: f64, phi: f64) -> Result<Self> {
        if !(r.is_finite() && theta.is_finite() && phi.is_finite()) {
            return Err(Error::invalid("spherical parameters must be finite"));
        }
        if r < 0.0 {
            return Err(Error::invalid(format!("radius must be nonnegative, got {r}")));
        }
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::invalid(format!("theta must lie in [0, pi], got {theta}")));
        }
        Ok(Self { r, theta, phi })
    }
}

/// Dense complex Hermitian matrix of fixed dimension `N`.
///
/// Only the upper triangle is ever computed; the lower triangle is its
/// conjugate mirror, so Hermiticity holds bit-for-bit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermitianMatrix<const N: usize> {
    entries: [[Complex64; N]; N],
}

pub type Hamiltonian4 = HermitianMatrix<4>;
pub type Hamiltonian2 = HermitianMatrix<2>;

impl<const N: usize> HermitianMatrix<N> {
    /// Builds the matrix from its upper triangle. Diagonal entries keep only
    /// their real part.
    pub fn from_upper(f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut entries = [[ZERO; N]; N];
        for i in 0..N {
            entries[i][i] = Complex64::new(f(i, i).re, 0.0);
            for j in i + 1..N {
                let z = f(i, j);
                entries[i][j] = z;
                entries[j][i] = z.conj();
            }
        }
        Self { entries }
    }

    /// Accepts a full matrix only if it is exactly Hermitian.
    pub fn try_from_rows(rows: [[Complex64; N]; N]) -> Result<Self> {
        for i in 0..N {
            for j in 0..N {
                let (a, b) = (rows[i][j], rows[j][i].conj());
                if a != b || !a.re.is_finite() || !a.im.is_finite() {
                    return Err(Error::invalid(format!(
                        "matrix is not Hermitian at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self { entries: rows })
    }

    pub fn diagonal(values: [f64; N]) -> Self {
        Self::from_upper(|i, j| if i == j { Complex64::new(values[i], 0.0) } else { ZERO })
    }

    pub const fn dimension(&self) -> usize {
        N
    }

    pub fn entries(&self) -> &[[Complex64; N]; N] {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        (0..N).map(|i| self.entries[i][i].re).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Matrix-vector product `H v`.
    pub fn apply(&self, v: &[Complex64; N]) -> [Complex64; N] {
        let mut out = [ZERO; N];
        for (o, row) in out.iter_mut().zip(&self.entries) {
            *o = row.iter().zip(v).map(|(h, x)| h * x).sum();
        }
        out
    }
}

impl<const N: usize> Index<(usize, usize)> for HermitianMatrix<N> {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i][j]
    }
}

/// Normalized two-qubit pure state, amplitudes of `|00>, |01>, |10>, |11>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureState4 {
    amps: [Complex64; 4],
}

impl PureState4 {
    /// Accepts amplitudes whose squared norm is 1 within [`NORM_TOL`].
    pub fn new(amps: [Complex64; 4]) -> Result<Self> {
        let norm_sqr: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(Error::invalid(format!(
                "state is not normalized (norm^2 = {norm_sqr})"
            )));
        }
        Ok(Self { amps })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(amps: [Complex64; 4]) -> Result<Self> {
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::invalid("cannot normalize a zero or non-finite vector"));
        }
        Ok(Self {
            amps: amps.map(|z| z / norm),
        })
    }

    pub fn from_real(amps: [f64; 4]) -> Result<Self> {
        Self::new(amps.map(|x| Complex64::new(x, 0.0)))
    }

    /// Internal constructor for amplitudes normalized by construction.
    pub(crate) fn from_normalized(amps: [Complex64; 4]) -> Self {
        debug_assert!((amps.iter().map(|z| z.norm_sqr()).sum::<f64>() - 1.0).abs() < 1e-9);
        Self { amps }
    }

    pub fn amplitudes(&self) -> &[Complex64; 4] {
        &self.amps
    }

    pub fn a(&self) -> Complex64 {
        self.amps[0]
    }
    pub fn b(&self) -> Complex64 {
        self.amps[1]
    }
    pub fn c(&self) -> Complex64 {
        self.amps[2]
    }
    pub fn d(&self) -> Complex64 {
        self.amps[3]
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &PureState4) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(x, y)| x.conj() * y)
            .sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Multiplies every amplitude by `e^{i angle}`.
    pub fn with_global_phase(&self, angle: f64) -> Self {
        let w = cis(angle);
        Self {
            amps: self.amps.map(|z| z * w),
        }
    }

    /// Largest component-wise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &PureState4) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    /// Component-wise distance after removing the relative global phase.
    pub fn distance_up_to_phase(&self, other: &PureState4) -> f64 {
        let overlap = other.inner(self);
        if overlap.norm() == 0.0 {
            return self.max_abs_diff(other).max(1.0);
        }
        let w = overlap / overlap.norm();
        let aligned = Self {
            amps: other.amps.map(|z| z * w),
        };
        self.max_abs_diff(&aligned)
    }
}

/// The matrix `-[[l, 0, 0, g], [0, 0, 1, 0], [0, 1, 0, 0], [g, 0, 0, -l]]`.
pub fn build_hamiltonian(lambda: f64, gamma: f64) -> Hamiltonian4 {
    build_rotated_hamiltonian(lambda, gamma, 0.0)
}

/// `U_z(phi)^dag H(lambda, gamma) U_z(phi)`, written out entrywise.
///
/// The rotation only dresses the even-sector corner with `e^{-2i phi}`, so
/// the result is pi-periodic in `phi`. The angle is reduced modulo pi before
/// the phase factor is evaluated, which makes `phi` and `phi + pi` produce
/// identical matrices whenever both are exactly representable.
pub fn build_rotated_hamiltonian(lambda: f64, gamma: f64, phi: f64) -> Hamiltonian4 {
    let corner = -gamma * cis(-2.0 * phi.rem_euclid(PI));
    HermitianMatrix::from_upper(|i, j| match (i, j) {
        (0, 0) => Complex64::new(-lambda, 0.0),
        (3, 3) => Complex64::new(lambda, 0.0),
        (0, 3) => corner,
        (1, 2) => -ONE,
        _ => ZERO,
    })
}

/// Even-sector block on `{|00>, |11>}`.
pub fn build_even_block(lambda: f64, gamma: f64, phi: f64) -> Hamiltonian2 {
    let h = build_rotated_hamiltonian(lambda, gamma, phi);
    HermitianMatrix::from_upper(|i, j| h[(3 * i, 3 * j)])
}

/// Single spin in a field of polar angle `theta`, rotated about z by `phi`:
/// `R_z^dag [[cos, sin], [sin, -cos]] R_z`. Unlike the two-qubit
/// Hamiltonian this has period 2 pi in `phi`.
pub fn build_single_spin_rotated(theta: f64, phi: f64) -> Hamiltonian2 {
    let (s, c) = theta.sin_cos();
    HermitianMatrix::from_upper(|i, j| match (i, j) {
        (0, 0) => Complex64::new(c, 0.0),
        (1, 1) => Complex64::new(-c, 0.0),
        _ => s * cis(-phi),
    })
}

fn kron2(a: &[[Complex64; 2]; 2], b: &[[Complex64; 2]; 2]) -> [[Complex64; 4]; 4] {
    let mut out = [[ZERO; 4]; 4];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, z) in row.iter_mut().enumerate() {
            *z = a[i / 2][j / 2] * b[i % 2][j % 2];
        }
    }
    out
}

/// `U_x(phi) = exp(-i phi/2 (sx_1 + sx_2))`.
pub fn ux_matrix(phi: f64) -> [[Complex64; 4]; 4] {
    let (s, c) = (phi / 2.0).sin_cos();
    let rx = [
        [Complex64::new(c, 0.0), Complex64::new(0.0, -s)],
        [Complex64::new(0.0, -s), Complex64::new(c, 0.0)],
    ];
    kron2(&rx, &rx)
}

/// `U_x(phi)^dag H(lambda, 1) U_x(phi)`, evaluated by explicit conjugation.
pub fn build_x_rotated_hamiltonian(lambda: f64, phi: f64) -> Hamiltonian4 {
    let h = build_hamiltonian(lambda, 1.0);
    let u = ux_matrix(phi);
    let mut hu = [[ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            hu[i][j] = (0..4).map(|k| h[(i, k)] * u[k][j]).sum();
        }
    }
    let mut m = [[ZERO; 4]; 4];
    for i in 0..4 {
        for j in i..4 {
            m[i][j] = (0..4).map(|k| u[k][i].conj() * hu[k][j]).sum();
        }
    }
    // Conjugation preserves the zero trace; strip the rounding residue.
    let partial = (m[0][0].re + m[1][1].re) + m[2][2].re;
    m[3][3] = Complex64::new(-partial, 0.0);
    HermitianMatrix::from_upper(|i, j| m[i][j])
}

/// `(r cos theta, r sin theta, phi)`.
pub fn spherical_to_model(s: SphericalParams) -> ModelParams {
    let (sin, cos) = s.theta.sin_cos();
    ModelParams {
        lambda: s.r * cos,
        gamma: s.r * sin,
        phi: s.phi,
    }
}

/// Polar chart used everywhere in the crate: `theta = atan2(|gamma|, lambda)`
/// in `[0, pi]`. A negative `gamma` is absorbed into the azimuth as
/// `phi + pi/2`, since `-gamma e^{-2i phi} = gamma e^{-2i (phi + pi/2)}`.
pub(crate) fn chart(lambda: f64, gamma: f64, phi: f64) -> (f64, f64, f64) {
    let r = lambda.hypot(gamma);
    let theta = gamma.abs().atan2(lambda);
    let phi = if gamma < 0.0 { phi + FRAC_PI_2 } else { phi };
    (r, theta, phi)
}

pub fn model_to_spherical(p: ModelParams) -> Result<SphericalParams> {
    let (r, theta, phi) = chart(p.lambda, p.gamma, p.phi);
    if !r.is_finite() {
        return Err(Error::invalid("model parameters must be finite"));
    }
    if r < ORIGIN_TOL {
        return Err(Error::OriginUndefined);
    }
    Ok(SphericalParams { r, theta, phi })
}

/// Applies `U_z(phi)^dag` to a state: amplitudes are multiplied by
/// `(e^{i phi}, 1, 1, e^{-i phi})`.
pub fn apply_uz(state: &PureState4, phi: f64) -> PureState4 {
    let [a, b, c, d] = *state.amplitudes();
    PureState4 {
        amps: [a * cis(phi), b, c, d * cis(-phi)],
    }
}
