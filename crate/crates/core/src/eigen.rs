//! Closed-form eigensystem of the two-qubit Hamiltonian and an independent
//! complex Jacobi eigensolver used to cross-check it.

#![allow(clippy::needless_range_loop)]

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{self, cis, HermitianMatrix, PureState4};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Points with `|r - 1|` at or below this are treated as level crossings.
pub const DEGENERACY_TOL: f64 = 1e-9;

pub const JACOBI_MAX_SWEEPS: usize = 100;
pub const JACOBI_REL_TOL: f64 = 1e-13;

/// Invariant subspace of the block-diagonal Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sector {
    /// span{|00>, |11>}
    Even,
    /// span{|01>, |10>}
    Odd,
}

impl Sector {
    /// Sector holding most of the weight of a 4-component vector.
    pub fn dominant(v: &[Complex64; 4]) -> Sector {
        let even = v[0].norm_sqr() + v[3].norm_sqr();
        let odd = v[1].norm_sqr() + v[2].norm_sqr();
        if odd > even {
            Sector::Odd
        } else {
            Sector::Even
        }
    }
}

/// Eigenvalues in ascending order with their eigenvectors; `vectors[i]`
/// belongs to `values[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSystem<const N: usize> {
    pub values: [f64; N],
    pub vectors: [[Complex64; N]; N],
    /// Present for 4x4 systems only.
    pub sectors: Option<[Sector; N]>,
}

impl<const N: usize> EigenSystem<N> {
    pub fn dimension(&self) -> usize {
        N
    }

    /// Largest `||H v - E v||_inf` over all pairs.
    pub fn max_residual(&self, h: &HermitianMatrix<N>) -> f64 {
        let mut worst = 0.0f64;
        for (e, v) in self.values.iter().zip(&self.vectors) {
            let hv = h.apply(v);
            for (x, y) in hv.iter().zip(v) {
                worst = worst.max((x - y * e).norm());
            }
        }
        worst
    }

    /// Largest deviation of the Gram matrix from the identity.
    pub fn orthonormality_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..N {
            for j in 0..N {
                let g: Complex64 = self.vectors[i]
                    .iter()
                    .zip(&self.vectors[j])
                    .map(|(x, y)| x.conj() * y)
                    .sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g - target).norm());
            }
        }
        worst
    }
}

impl EigenSystem<4> {
    pub fn state(&self, level: usize) -> PureState4 {
        PureState4::from_normalized(self.vectors[level])
    }
}

/// Classification of the ground level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroundSector {
    Even,
    Odd,
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundStateResult {
    pub state: PureState4,
    pub energy: f64,
    pub sector: GroundSector,
    /// Energy to the first excited level.
    pub gap: f64,
}

/// Sorts levels ascending. Levels closer than [`DEGENERACY_TOL`] are put in
/// sector order, odd before even.
fn sort_levels<const N: usize>(
    values: &mut [f64; N],
    vectors: &mut [[Complex64; N]; N],
    sectors: &mut Option<[Sector; N]>,
) {
    let mut order: [usize; N] = std::array::from_fn(|i| i);
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    if let Some(tags) = sectors.as_ref() {
        // insertion pass: move odd levels ahead of near-equal even levels
        for k in 1..N {
            let mut m = k;
            while m > 0 {
                let (lo, hi) = (order[m - 1], order[m]);
                let tied = (values[hi] - values[lo]).abs() <= DEGENERACY_TOL;
                if tied && tags[lo] == Sector::Even && tags[hi] == Sector::Odd {
                    order.swap(m - 1, m);
                    m -= 1;
                } else {
                    break;
                }
            }
        }
    }
    let (v, w) = (*values, *vectors);
    *values = order.map(|i| v[i]);
    *vectors = order.map(|i| w[i]);
    if let Some(tags) = sectors.as_mut() {
        let t = *tags;
        *tags = order.map(|i| t[i]);
    }
}

/// Closed-form eigensystem of the z-rotated Hamiltonian.
///
/// Even-sector levels are `-r` and `+r` with vectors
/// `cos(t/2) e^{-i phi}|00> + sin(t/2) e^{i phi}|11>` and
/// `-sin(t/2) e^{-i phi}|00> + cos(t/2) e^{i phi}|11>`; odd-sector levels are
/// `-1` with `(|01> + |10>)/sqrt 2` and `+1` with `(|01> - |10>)/sqrt 2`.
pub fn analytic_eigensystem(lambda: f64, gamma: f64, phi: f64) -> EigenSystem<4> {
    let (r, theta, phi) = model::chart(lambda, gamma, phi);
    let (s, c) = (theta / 2.0).sin_cos();
    let (down, up) = (cis(-phi), cis(phi));
    let h = FRAC_1_SQRT_2;

    let mut values = [-r, -1.0, 1.0, r];
    let mut vectors = [
        [down * c, ZERO, ZERO, up * s],
        [ZERO, Complex64::new(h, 0.0), Complex64::new(h, 0.0), ZERO],
        [ZERO, Complex64::new(h, 0.0), Complex64::new(-h, 0.0), ZERO],
        [-down * s, ZERO, ZERO, up * c],
    ];
    let mut sectors = Some([Sector::Even, Sector::Odd, Sector::Odd, Sector::Even]);
    sort_levels(&mut values, &mut vectors, &mut sectors);
    EigenSystem {
        values,
        vectors,
        sectors,
    }
}

fn off_diagonal_norm<const N: usize>(a: &[[Complex64; N]; N]) -> f64 {
    let mut sum = 0.0;
    for (i, row) in a.iter().enumerate() {
        for (j, z) in row.iter().enumerate() {
            if i != j {
                sum += z.norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
///
/// Each rotation acts on a pair `(p, q)` by first removing the phase of
/// `a_pq` and then applying the real symmetric Jacobi rotation. Pairs whose
/// coupling is exactly zero are skipped, so block-diagonal inputs keep
/// block-pure eigenvectors.
pub fn jacobi_eigensystem<const N: usize>(h: &HermitianMatrix<N>) -> Result<EigenSystem<N>> {
    let mut a = *h.entries();
    let mut v = [[ZERO; N]; N];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = Complex64::new(1.0, 0.0);
    }
    let scale = h.frobenius_norm();
    if !scale.is_finite() {
        return Err(Error::invalid("matrix has non-finite entries"));
    }
    let tol = JACOBI_REL_TOL * scale;

    let mut converged = off_diagonal_norm(&a) <= tol;
    let mut sweeps = 0;
    while !converged {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..N {
            for q in p + 1..N {
                rotate(&mut a, &mut v, p, q);
            }
        }
        converged = off_diagonal_norm(&a) <= tol;
    }

    let mut values: [f64; N] = std::array::from_fn(|i| a[i][i].re);
    // columns of v are eigenvectors
    let mut vectors: [[Complex64; N]; N] = std::array::from_fn(|k| std::array::from_fn(|i| v[i][k]));
    let mut sectors = if N == 4 {
        Some(std::array::from_fn(|k| {
            let w = &vectors[k];
            let even = w[0].norm_sqr() + w[N - 1].norm_sqr();
            let odd: f64 = w[1..N - 1].iter().map(|z| z.norm_sqr()).sum();
            if odd > even {
                Sector::Odd
            } else {
                Sector::Even
            }
        }))
    } else {
        None
    };
    sort_levels(&mut values, &mut vectors, &mut sectors);
    Ok(EigenSystem {
        values,
        vectors,
        sectors,
    })
}

fn rotate<const N: usize>(
    a: &mut [[Complex64; N]; N],
    v: &mut [[Complex64; N]; N],
    p: usize,
    q: usize,
) {
    let apq = a[p][q];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    // e^{i alpha} = apq / |apq|
    let w = apq / mag;
    let (app, aqq) = (a[p][p].re, a[q][q].re);
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // G = [[c, s], [-s e^{-i alpha}, c e^{-i alpha}]] on columns (p, q)
    let wc = w.conj();
    for row in a.iter_mut() {
        let (x, y) = (row[p], row[q]);
        row[p] = x * c - y * wc * s;
        row[q] = x * s + y * wc * c;
    }
    for k in 0..N {
        let (x, y) = (a[p][k], a[q][k]);
        a[p][k] = x * c - y * w * s;
        a[q][k] = x * s + y * w * c;
    }
    for row in v.iter_mut() {
        let (x, y) = (row[p], row[q]);
        row[p] = x * c - y * wc * s;
        row[q] = x * s + y * wc * c;
    }
    a[p][q] = ZERO;
    a[q][p] = ZERO;
    a[p][p] = Complex64::new(a[p][p].re, 0.0);
    a[q][q] = Complex64::new(a[q][q].re, 0.0);
}

/// Instantaneous ground state of the z-rotated Hamiltonian.
///
/// On the crossing circle (`|r - 1| <= DEGENERACY_TOL`) the odd-sector state
/// is returned and the sector is reported as degenerate.
pub fn ground_state(lambda: f64, gamma: f64, phi: f64) -> GroundStateResult {
    let sys = analytic_eigensystem(lambda, gamma, phi);
    let r = lambda.hypot(gamma);
    let gap = (r - 1.0).abs();
    let sector = if gap <= DEGENERACY_TOL {
        GroundSector::Degenerate
    } else if r > 1.0 {
        GroundSector::Even
    } else {
        GroundSector::Odd
    };
    let level = match sector {
        GroundSector::Even => 0,
        _ => sys
            .sectors
            .expect("4x4 systems carry sector tags")
            .iter()
            .position(|&s| s == Sector::Odd)
            .expect("odd sector present"),
    };
    GroundStateResult {
        state: sys.state(level),
        energy: sys.values[level],
        sector,
        gap,
    }
}

/// Gap between the ground and first excited levels, `|sqrt(l^2 + g^2) - 1|`.
pub fn energy_gap(lambda: f64, gamma: f64) -> f64 {
    (lambda.hypot(gamma) - 1.0).abs()
}

/// Rephases a vector so its largest-modulus component is real and
/// nonnegative. Ties go to the lowest index.
pub fn canonical_gauge<const N: usize>(v: &[Complex64; N]) -> [Complex64; N] {
    let mut best = 0;
    for (i, z) in v.iter().enumerate() {
        if z.norm() > v[best].norm() + 1e-12 {
            best = i;
        }
    }
    let pivot = v[best];
    if pivot.norm() == 0.0 {
        return *v;
    }
    let w = pivot.conj() / pivot.norm();
    v.map(|z| z * w)
}
