#![allow(dead_code)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use xyqubit::PureState4;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_state(rng: &mut impl Rng) -> PureState4 {
    let amps = std::array::from_fn(|_| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    PureState4::normalized(amps).unwrap()
}

/// Concurrence from the purity of the one-qubit reduced state,
/// `C = sqrt(2 (1 - tr rho_A^2))`, independent of the `2|ad - bc|` route.
pub fn concurrence_via_purity(s: &PureState4) -> f64 {
    let a = s.amplitudes();
    // rho_A[i][j] = sum_k a[2i + k] conj(a[2j + k])
    let mut rho = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            rho[i][j] = (0..2).map(|k| a[2 * i + k] * a[2 * j + k].conj()).sum();
        }
    }
    let purity: f64 = (0..2)
        .flat_map(|i| (0..2).map(move |j| (i, j)))
        .map(|(i, j)| (rho[i][j] * rho[j][i]).re)
        .sum();
    (2.0 * (1.0 - purity)).max(0.0).sqrt()
}
