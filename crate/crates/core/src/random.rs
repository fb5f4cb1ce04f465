//! Seeded samplers. Each work item gets its own ChaCha stream so parallel
//! runs reproduce sequential ones.

use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal, Uniform};
use std::f64::consts::TAU;

use crate::cartan::CartanAngles;
use crate::qmat::{DensityMatrix, Mat4, PureThreeQubitState, Spectrum, C64};
use crate::zoo;

/// Generator for work item `stream` of a run seeded with `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn gaussian_c64<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im)
}

/// Hilbert-Schmidt ensemble: `G G^dag / Tr(G G^dag)` for a complex Ginibre `G`.
pub fn hilbert_schmidt_state<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix {
    let g = Mat4::from_fn(|_, _| gaussian_c64(rng));
    let w = g * g.adjoint();
    let tr = w.trace();
    DensityMatrix::from_trusted(w / tr)
}

/// Uniform point on the probability simplex, sorted.
pub fn random_spectrum<R: Rng + ?Sized>(rng: &mut R) -> Spectrum {
    Spectrum::from_eigenvalues(random_weights(rng))
}

/// Uniform point on the probability simplex, unsorted.
pub fn random_weights<R: Rng + ?Sized>(rng: &mut R) -> [f64; 4] {
    let e: [f64; 4] = std::array::from_fn(|_| Exp1.sample(rng));
    let s: f64 = e.iter().sum();
    e.map(|x| x / s)
}

pub fn random_bell_diagonal<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix {
    zoo::bell_diagonal(random_weights(rng)).expect("simplex point")
}

pub fn random_comp_diagonal<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix {
    zoo::comp_diagonal(random_weights(rng)).expect("simplex point")
}

/// Haar-random pure state of three qubits.
pub fn random_pure_three_qubit<R: Rng + ?Sized>(rng: &mut R) -> PureThreeQubitState {
    let amps: [C64; 8] = std::array::from_fn(|_| gaussian_c64(rng));
    PureThreeQubitState::normalized(amps).expect("Gaussian vector is non-zero")
}

pub fn random_angles<R: Rng + ?Sized>(rng: &mut R) -> CartanAngles {
    let u = Uniform::new(0.0, TAU).expect("valid range");
    CartanAngles::new(u.sample(rng), u.sample(rng), u.sample(rng))
}
