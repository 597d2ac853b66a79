//! Shared randomized fixtures for the unit tests.

use crate::linalg::{ComplexMatrix, DensityMatrix};
use crate::scalar::c;
use num_complex::Complex;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Haar-ish random unitary: Gram-Schmidt on a complex Gaussian matrix.
pub fn random_unitary(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix<f64> {
    let a = ComplexMatrix::from_fn(dim, dim, |_, _| -> Complex<f64> {
        c(
            rng.sample::<f64, _>(rand_distr::StandardNormal),
            rng.sample::<f64, _>(rand_distr::StandardNormal),
        )
    });
    let mut cols: Vec<Vec<Complex<f64>>> = (0..dim)
        .map(|j| (0..dim).map(|i| a[(i, j)]).collect())
        .collect();
    for j in 0..dim {
        for k in 0..j {
            let proj: Complex<f64> = (0..dim).map(|i| cols[k][i].conj() * cols[j][i]).sum();
            for i in 0..dim {
                let d = proj * cols[k][i];
                cols[j][i] -= d;
            }
        }
        let norm: f64 = cols[j].iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        for i in 0..dim {
            cols[j][i] /= norm;
        }
    }
    ComplexMatrix::from_fn(dim, dim, |i, j| cols[j][i])
}

/// Random full-rank density matrix as a mixture of random pure states.
pub fn random_density(rng: &mut ChaCha8Rng, dim: usize) -> DensityMatrix<f64> {
    let mut m = ComplexMatrix::zeros(dim, dim);
    let weights: Vec<f64> = (0..dim).map(|_| rng.gen_range(0.01..1.0)).collect();
    let total: f64 = weights.iter().sum();
    for w in &weights {
        let u = random_unitary(rng, dim);
        let psi: Vec<Complex<f64>> = (0..dim).map(|i| u[(i, 0)]).collect();
        for r in 0..dim {
            for col in 0..dim {
                m[(r, col)] += psi[r] * psi[col].conj() * c(w / total, 0.);
            }
        }
    }
    DensityMatrix::new(m).unwrap()
}

/// Random pure-state density matrix.
pub fn random_pure_density(rng: &mut ChaCha8Rng, dim: usize) -> DensityMatrix<f64> {
    let u = random_unitary(rng, dim);
    let m = ComplexMatrix::from_fn(dim, dim, |r, col| u[(r, 0)] * u[(col, 0)].conj());
    DensityMatrix::new(m).unwrap()
}
