//! Matrix exponential: degree-13 Pade approximant with scaling and squaring.
//!
//! The generators that show up here have one-norms of order ten at most, so
//! the single fixed approximant with scaling is accurate to close to machine
//! precision; no order selection is needed.

use super::ComplexMatrix;
use crate::error::{Error, Result};
use crate::scalar::{cre, czero, Scalar};
use num_complex::Complex;

const PADE13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

const THETA13: f64 = 5.371_920_351_148_152;

pub fn expm<T: Scalar>(a: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let norm = a.one_norm().to_f64();
    let squarings = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as u32
    } else {
        0
    };
    let scaled = a.scale(cre(T::from_f64(0.5f64.powi(squarings as i32))));

    let ident = ComplexMatrix::identity(n);
    let a2 = scaled.matmul(&scaled);
    let a4 = a2.matmul(&a2);
    let a6 = a2.matmul(&a4);

    let b = |k: usize| cre::<T>(T::from_f64(PADE13[k]));

    // U = A (A6 (b13 A6 + b11 A4 + b9 A2) + b7 A6 + b5 A4 + b3 A2 + b1 I)
    let inner_u = a6
        .scale(b(13))
        .add(&a4.scale(b(11)))
        .add(&a2.scale(b(9)));
    let u = scaled.matmul(
        &a6.matmul(&inner_u)
            .add(&a6.scale(b(7)))
            .add(&a4.scale(b(5)))
            .add(&a2.scale(b(3)))
            .add(&ident.scale(b(1))),
    );
    // V = A6 (b12 A6 + b10 A4 + b8 A2) + b6 A6 + b4 A4 + b2 A2 + b0 I
    let inner_v = a6
        .scale(b(12))
        .add(&a4.scale(b(10)))
        .add(&a2.scale(b(8)));
    let v = a6
        .matmul(&inner_v)
        .add(&a6.scale(b(6)))
        .add(&a4.scale(b(4)))
        .add(&a2.scale(b(2)))
        .add(&ident.scale(b(0)));

    // Solve (V - U) X = (V + U).
    let lhs = v.sub(&u);
    let rhs = v.add(&u);
    let mut result = lu_solve(&lhs, &rhs)?;
    for _ in 0..squarings {
        result = result.matmul(&result);
    }
    Ok(result)
}

/// Solve `A X = B` by LU with partial pivoting.
fn lu_solve<T: Scalar>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    let n = a.rows();
    let mut lu = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();

    for col in 0..n {
        let mut pivot = col;
        let mut best = lu[(col, col)].norm();
        for row in (col + 1)..n {
            let mag = lu[(row, col)].norm();
            if mag > best {
                best = mag;
                pivot = row;
            }
        }
        if best == T::zero() {
            return Err(Error::InvalidParameter(
                "singular matrix in Pade solve".into(),
            ));
        }
        if pivot != col {
            perm.swap(pivot, col);
            for k in 0..n {
                let tmp = lu[(col, k)];
                lu[(col, k)] = lu[(pivot, k)];
                lu[(pivot, k)] = tmp;
            }
        }
        let diag = lu[(col, col)];
        for row in (col + 1)..n {
            let factor = lu[(row, col)] / diag;
            lu[(row, col)] = factor;
            for k in (col + 1)..n {
                let sub = factor * lu[(col, k)];
                lu[(row, k)] -= sub;
            }
        }
    }

    let cols = b.cols();
    let mut x = ComplexMatrix::zeros(n, cols);
    let mut y: Vec<Complex<T>> = vec![czero(); n];
    for c in 0..cols {
        // Forward substitution on the permuted right-hand side.
        for i in 0..n {
            let mut s = b[(perm[i], c)];
            for k in 0..i {
                s -= lu[(i, k)] * y[k];
            }
            y[i] = s;
        }
        // Back substitution.
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in (i + 1)..n {
                s -= lu[(i, k)] * x[(k, c)];
            }
            x[(i, c)] = s / lu[(i, i)];
        }
    }
    Ok(x)
}
