//! Parametrized single-qubit rotations and the fixed two-qubit unitaries.
//!
//! All rotations use the half-angle convention `exp(-i theta A / 2)`; the
//! convention only reparametrizes the trainable angles and matches the
//! parameter-shift rule used by the training module. Global phase is never
//! observable through a density matrix, so none of the constructors try to
//! fix one.

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::scalar::{c, cre, czero, Scalar};
use num_complex::Complex;
use serde::{Deserialize, Serialize};

/// Named Pauli rotation axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// ZYZ Euler angles of a single-qubit rotation, in radians.
///
/// Unconstrained reals: training never wraps them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EulerAngles<T: Scalar> {
    pub alpha: T,
    pub beta: T,
    pub gamma: T,
}

impl<T: Scalar> EulerAngles<T> {
    pub fn new(alpha: T, beta: T, gamma: T) -> Self {
        Self { alpha, beta, gamma }
    }
}

/// Rotation by `theta` about the unit axis `n = (nx, ny, nz)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisAngle<T: Scalar> {
    pub axis: [T; 3],
    pub theta: T,
}

impl<T: Scalar> AxisAngle<T> {
    pub fn new(axis: [T; 3], theta: T) -> Result<Self> {
        let norm = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
        if (norm - T::one()).abs() > T::TOL_HERMITIAN {
            return Err(Error::InvalidParameter(format!(
                "rotation axis norm {:e} is not 1",
                norm.to_f64()
            )));
        }
        Ok(Self { axis, theta })
    }
}

pub fn pauli_x<T: Scalar>() -> ComplexMatrix<T> {
    ComplexMatrix::new(2, 2, vec![czero(), cone_c(), cone_c(), czero()]).unwrap()
}

pub fn pauli_y<T: Scalar>() -> ComplexMatrix<T> {
    ComplexMatrix::new(2, 2, vec![czero(), c(0., -1.), c(0., 1.), czero()]).unwrap()
}

pub fn pauli_z<T: Scalar>() -> ComplexMatrix<T> {
    ComplexMatrix::new(2, 2, vec![cone_c(), czero(), czero(), c(-1., 0.)]).unwrap()
}

pub fn hadamard<T: Scalar>() -> ComplexMatrix<T> {
    let h = T::from_f64(std::f64::consts::FRAC_1_SQRT_2);
    ComplexMatrix::new(2, 2, vec![cre(h), cre(h), cre(h), cre(-h)]).unwrap()
}

fn cone_c<T: Scalar>() -> Complex<T> {
    c(1., 0.)
}

/// `exp(-i theta A / 2)` for a named Pauli axis `A`.
pub fn rot_named<T: Scalar>(axis: Axis, theta: T) -> ComplexMatrix<T> {
    let half = theta * T::from_f64(0.5);
    let (cos, sin) = (half.cos(), half.sin());
    match axis {
        Axis::X => ComplexMatrix::new(
            2,
            2,
            vec![
                cre(cos),
                Complex::new(T::zero(), -sin),
                Complex::new(T::zero(), -sin),
                cre(cos),
            ],
        )
        .unwrap(),
        Axis::Y => {
            ComplexMatrix::new(2, 2, vec![cre(cos), cre(-sin), cre(sin), cre(cos)]).unwrap()
        }
        Axis::Z => ComplexMatrix::new(
            2,
            2,
            vec![
                Complex::new(cos, -sin),
                czero(),
                czero(),
                Complex::new(cos, sin),
            ],
        )
        .unwrap(),
    }
}

/// `cos(theta/2) I - i sin(theta/2) (n . sigma)` for a unit axis `n`.
pub fn rot_axis<T: Scalar>(p: &AxisAngle<T>) -> ComplexMatrix<T> {
    let half = p.theta * T::from_f64(0.5);
    let (cos, sin) = (half.cos(), half.sin());
    let [nx, ny, nz] = p.axis;
    // n.sigma = [[nz, nx - i ny], [nx + i ny, -nz]]
    ComplexMatrix::new(
        2,
        2,
        vec![
            Complex::new(cos, -sin * nz),
            Complex::new(-sin * ny, -sin * nx),
            Complex::new(sin * ny, -sin * nx),
            Complex::new(cos, sin * nz),
        ],
    )
    .unwrap()
}

/// `R_Z(alpha) R_Y(beta) R_Z(gamma)`; the rightmost factor acts first.
pub fn euler_compose<T: Scalar>(e: &EulerAngles<T>) -> ComplexMatrix<T> {
    rot_named(Axis::Z, e.alpha)
        .matmul(&rot_named(Axis::Y, e.beta))
        .matmul(&rot_named(Axis::Z, e.gamma))
}

/// Controlled-Z: `diag(1, 1, 1, -1)`.
pub fn cz<T: Scalar>() -> ComplexMatrix<T> {
    let mut m = ComplexMatrix::identity(4);
    m[(3, 3)] = c(-1., 0.);
    m
}

/// CNOT with qubit 0 as control (most significant axis).
pub fn cnot<T: Scalar>() -> ComplexMatrix<T> {
    let mut m = ComplexMatrix::zeros(4, 4);
    m[(0, 0)] = cone_c();
    m[(1, 1)] = cone_c();
    m[(2, 3)] = cone_c();
    m[(3, 2)] = cone_c();
    m
}

/// Crosstalk unitary `exp(-i alpha Z (x) Z)`; the generating Hamiltonian is
/// `ZZ` with rotation angle `2 alpha` in the half-angle convention.
pub fn crosstalk_zz<T: Scalar>(alpha: T) -> ComplexMatrix<T> {
    let minus = Complex::new(alpha.cos(), -alpha.sin());
    let plus = Complex::new(alpha.cos(), alpha.sin());
    let mut m = ComplexMatrix::zeros(4, 4);
    m[(0, 0)] = minus;
    m[(1, 1)] = plus;
    m[(2, 2)] = plus;
    m[(3, 3)] = minus;
    m
}

/// ZYZ Euler angles reproducing a single-qubit unitary up to global phase.
///
/// Numerical decomposition oracle for [`euler_compose`].
pub fn euler_fit<T: Scalar>(u: &ComplexMatrix<T>) -> Result<EulerAngles<T>> {
    if u.rows() != 2 || u.cols() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "euler_fit expects 2x2, got {}x{}",
            u.rows(),
            u.cols()
        )));
    }
    let two = T::from_f64(2.0);
    let beta = two * u[(1, 0)].norm().atan2(u[(0, 0)].norm());
    // Half-angle ZYZ template, up to a global phase:
    //   E = [[e^{-i(a+g)/2} cos(b/2), -e^{-i(a-g)/2} sin(b/2)],
    //        [e^{ i(a-g)/2} sin(b/2),  e^{ i(a+g)/2} cos(b/2)]]
    let eps = T::from_f64(1e-12);
    let (alpha, gamma);
    if u[(0, 0)].norm() > eps && u[(1, 0)].norm() > eps {
        let sum = u[(1, 1)].arg() - u[(0, 0)].arg(); // alpha + gamma
        let diff = u[(1, 0)].arg() - u[(0, 0)].arg(); // (alpha - gamma)/2 + (alpha + gamma)/2 = alpha... see below
        // arg(u10) - arg(u00) = (a-g)/2 + (a+g)/2 = a, so:
        let a = diff;
        alpha = a;
        gamma = sum - a;
    } else if u[(0, 0)].norm() <= eps {
        // Anti-diagonal: beta = pi, only alpha - gamma is determined.
        alpha = u[(1, 0)].arg() - u[(0, 1)].arg() - T::PI();
        gamma = T::zero();
    } else {
        // Diagonal: beta = 0, only alpha + gamma is determined.
        alpha = u[(1, 1)].arg() - u[(0, 0)].arg();
        gamma = T::zero();
    }
    Ok(EulerAngles::new(alpha, beta, gamma))
}
