//! Seeded random matrices for covariance checks and randomized searches.
//!
//! Densities are `G G^dagger / tr(G G^dagger)` with i.i.d. standard complex
//! Gaussian `G`; unitaries and orthogonals come from QR of Gaussian matrices
//! with the R diagonal phase/sign fixed, so identical seeds reproduce
//! identical matrices everywhere.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::matrix::{ComplexMatrix, C64};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard normal via Box-Muller; avoids a distributions dependency and is
/// stable across platforms for a fixed RNG stream.
fn normal(rng: &mut impl Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

fn complex_gaussian_matrix(d: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            m.set(i, j, C64::new(normal(rng), normal(rng)));
        }
    }
    m
}

fn real_gaussian_matrix(d: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            m.set(i, j, C64::new(normal(rng), 0.0));
        }
    }
    m
}

/// Random density matrix `G G^dagger / tr`.
pub fn random_density(d: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let g = complex_gaussian_matrix(d, rng);
    let rho = g.matmul(&g.adjoint());
    let t = rho.trace().re;
    rho.scale_re(1.0 / t)
}

/// QR of a Ginibre matrix with the R diagonal rotated onto the positive real
/// axis, giving a Haar-distributed unitary.
pub fn random_unitary(d: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let g = complex_gaussian_matrix(d, rng);
    let qr = g.to_na().qr();
    let r = qr.r();
    let mut q = ComplexMatrix::from_na(&qr.q());
    for j in 0..d {
        let diag = r[(j, j)];
        let phase = if diag.norm() > 0.0 {
            diag / diag.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        for i in 0..d {
            q.set(i, j, q.get(i, j) * phase);
        }
    }
    q
}

/// QR of a real Gaussian matrix with sign-fixed R diagonal: a random real
/// orthogonal matrix.
pub fn random_orthogonal(d: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let g = real_gaussian_matrix(d, rng);
    let qr = g.to_na().qr();
    let r = qr.r();
    let mut q = ComplexMatrix::from_na(&qr.q());
    for j in 0..d {
        let sign = if r[(j, j)].re < 0.0 { -1.0 } else { 1.0 };
        for i in 0..d {
            q.set(i, j, q.get(i, j).scale(sign));
        }
    }
    q
}

/// Haar-random pure state as a d x 1 column.
pub fn random_pure_state(d: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let mut v = ComplexMatrix::zeros(d, 1);
    loop {
        for i in 0..d {
            v.set(i, 0, C64::new(normal(rng), normal(rng)));
        }
        let norm = v.frobenius_norm();
        if norm > 1e-6 {
            return v.scale_re(1.0 / norm);
        }
    }
}

/// Projector |psi><psi| of a column state.
pub fn pure_density(state: &ComplexMatrix) -> ComplexMatrix {
    state.matmul(&state.adjoint())
}

/// Random probability vector, uniform on the simplex via normalized
/// exponentials.
pub fn random_probability_vector(d: usize, rng: &mut impl Rng) -> Vec<f64> {
    let mut v: Vec<f64> = (0..d)
        .map(|_| -(rng.gen_range(f64::MIN_POSITIVE..1.0_f64)).ln())
        .collect();
    let total: f64 = v.iter().sum();
    v.iter_mut().for_each(|x| *x /= total);
    v
}
