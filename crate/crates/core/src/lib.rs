//! Density-matrix simulation of variational quantum classifiers whose
//! entangling gates are error-corrected while single-qubit rotations stay
//! noisy, together with the closed-form surface-code resource calculus that
//! motivates that trade-off.
//!
//! The crate is organized around seven areas:
//!
//! - [`linalg`]: dense complex matrices, density operators, vectorization,
//!   matrix exponentials;
//! - [`gates`]: parametrized rotations, Euler composition, the fixed
//!   two-qubit Cliffords and the crosstalk ZZ unitary;
//! - [`channels`]: depolarizing, Gaussian phase-damping, thermal-damping and
//!   crosstalk noise in Kraus and Lindblad form;
//! - [`data`]: IDX ingestion, a synthetic generator, preprocessing and
//!   amplitude encoding;
//! - [`vqc`]: the layered noisy forward pass, Pauli-Z readout, shot
//!   sampling and softmax prediction;
//! - [`training`]: cross-entropy loss, parameter-shift gradients, Adam and
//!   the training loop;
//! - [`estimator`]: error budgets, code-distance selection, data-qubit
//!   counts, distillation spacetime costs and noise-rate conversions.
//!
//! All numerics are generic over the floating-point [`scalar::Scalar`]
//! (`f32` or `f64`); the aliases below pin the default `f64` instantiation.

pub mod channels;
pub mod data;
pub mod error;
pub mod estimator;
pub mod gates;
pub mod linalg;
pub mod rng;
pub mod scalar;
pub mod training;
pub mod vqc;

#[cfg(test)]
pub(crate) mod test_util;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Complex number over `f64`.
pub type C64 = num_complex::Complex<f64>;
/// Complex number over `f32`.
pub type C32 = num_complex::Complex<f32>;

/// Default `f64` matrix.
pub type Matrix = linalg::ComplexMatrix<f64>;
/// Default `f64` pure state.
pub type State = linalg::PureState<f64>;
/// Default `f64` density operator.
pub type Density = linalg::DensityMatrix<f64>;
