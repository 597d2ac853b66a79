//! Floating-point scalar abstraction.
//!
//! All numerical code in this crate is generic over [`Scalar`], so the same
//! simulator runs in `f32` or `f64`. Concrete aliases for the common `f64`
//! instantiation live at the crate root.

use num_complex::Complex;
use num_traits::{Float, FloatConst, NumAssignOps};
use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

/// Floating point scalar: `f32` or `f64`.
pub trait Scalar:
    Float + FloatConst + NumAssignOps + Sum + Debug + Display + LowerExp + Send + Sync + 'static
{
    /// Tolerance for unitarity / Hermiticity / state-norm checks.
    const TOL_HERMITIAN: Self;
    /// Tolerance for trace-preservation checks.
    const TOL_TRACE: Self;
    /// Allowed negative slack on density-matrix eigenvalues.
    const TOL_PSD: Self;

    fn from_f64(v: f64) -> Self;
    fn from_usize(v: usize) -> Self;
    fn to_f64(self) -> f64;
}

impl Scalar for f64 {
    const TOL_HERMITIAN: Self = 1e-12;
    const TOL_TRACE: Self = 1e-10;
    const TOL_PSD: Self = 1e-9;

    #[inline]
    fn from_f64(v: f64) -> Self {
        v
    }
    #[inline]
    fn from_usize(v: usize) -> Self {
        v as f64
    }
    #[inline]
    fn to_f64(self) -> f64 {
        self
    }
}

impl Scalar for f32 {
    const TOL_HERMITIAN: Self = 1e-5;
    const TOL_TRACE: Self = 1e-4;
    const TOL_PSD: Self = 1e-3;

    #[inline]
    fn from_f64(v: f64) -> Self {
        v as f32
    }
    #[inline]
    fn from_usize(v: usize) -> Self {
        v as f32
    }
    #[inline]
    fn to_f64(self) -> f64 {
        self as f64
    }
}

/// Shorthand for a complex number over the scalar `T`.
#[inline]
pub fn c<T: Scalar>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::from_f64(re), T::from_f64(im))
}

/// Complex zero.
#[inline]
pub fn czero<T: Scalar>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

/// Complex one.
#[inline]
pub fn cone<T: Scalar>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}

/// Imaginary unit.
#[inline]
pub fn ci<T: Scalar>() -> Complex<T> {
    Complex::new(T::zero(), T::one())
}

/// Real number lifted to the complex plane.
#[inline]
pub fn cre<T: Scalar>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}
