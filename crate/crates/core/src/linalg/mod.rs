//! Dense complex matrices, state vectors and density operators.
//!
//! Everything here is dense and row-major; the target scale is at most ten
//! qubits (1024 x 1024 density matrices), where structured sparsity buys
//! nothing. Qubit 0 is the leftmost tensor factor, i.e. the most significant
//! bit of a computational-basis index.

mod matexp;

use crate::error::{Error, Result};
use crate::scalar::{c, cone, cre, czero, Scalar};
use num_complex::Complex;
use std::ops::{Index, IndexMut};

/// Dense complex matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<T: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Scalar> ComplexMatrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if rows * cols != data.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![czero(); rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = cone();
        }
        m
    }

    /// Build from a closure over (row, col).
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for col in 0..cols {
                data.push(f(r, col));
            }
        }
        Self { rows, cols, data }
    }

    /// Convenience constructor from `(re, im)` pairs in row-major order.
    pub fn from_parts(rows: usize, cols: usize, parts: &[(f64, f64)]) -> Result<Self> {
        Self::new(
            rows,
            cols,
            parts.iter().map(|&(re, im)| c(re, im)).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.data
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "matmul shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.norm_sqr() == T::zero() {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (o, &b) in out_row.iter_mut().zip(row.iter()) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, factor: Complex<T>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * factor).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.conj()).collect(),
        }
    }

    pub fn trace(&self) -> Complex<T> {
        assert!(self.is_square(), "trace of non-square matrix");
        (0..self.rows).map(|i| self.data[i * self.cols + i]).sum()
    }

    /// Entrywise comparison with an explicit absolute tolerance.
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| (a - b).norm() <= tol)
    }

    /// Largest entrywise deviation from `other`.
    pub fn max_deviation(&self, other: &Self) -> T {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }

    pub fn frobenius_norm(&self) -> T {
        self.data
            .iter()
            .map(|a| a.norm_sqr())
            .fold(T::zero(), |acc, x| acc + x)
            .sqrt()
    }

    /// Maximum absolute column sum.
    pub fn one_norm(&self) -> T {
        let mut best = T::zero();
        for col in 0..self.cols {
            let mut s = T::zero();
            for row in 0..self.rows {
                s += self[(row, col)].norm();
            }
            best = best.max(s);
        }
        best
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        if !self.is_square() {
            return false;
        }
        for r in 0..self.rows {
            for col in r..self.cols {
                if (self[(r, col)] - self[(col, r)].conj()).norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_unitary(&self, tol: T) -> bool {
        self.is_square() && self.dagger().matmul(self).approx_eq(&Self::identity(self.rows), tol)
    }

    /// Matrix exponential via Pade approximation with scaling and squaring.
    pub fn expm(&self) -> Result<Self> {
        matexp::expm(self)
    }

    /// Eigenvalues of a Hermitian matrix, ascending. Cyclic Jacobi sweeps.
    pub fn hermitian_eigenvalues(&self) -> Result<Vec<T>> {
        hermitian_eigenvalues(self)
    }

    /// Smallest eigenvalue of a Hermitian matrix.
    pub fn min_eigenvalue(&self) -> Result<T> {
        Ok(self.hermitian_eigenvalues()?[0])
    }
}

impl<T: Scalar> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Complex<T>;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Complex<T> {
        &self.data[r * self.cols + c]
    }
}

impl<T: Scalar> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[r * self.cols + c]
    }
}

/// Kronecker product `a (x) b`.
pub fn kron<T: Scalar>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    assert!(
        a.rows > 0 && a.cols > 0 && b.rows > 0 && b.cols > 0,
        "kron of empty matrix"
    );
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut out = ComplexMatrix::zeros(rows, cols);
    for ar in 0..a.rows {
        for ac in 0..a.cols {
            let f = a[(ar, ac)];
            for br in 0..b.rows {
                for bc in 0..b.cols {
                    out[(ar * b.rows + br, ac * b.cols + bc)] = f * b[(br, bc)];
                }
            }
        }
    }
    out
}

/// Matrix exponential (free-function form of [`ComplexMatrix::expm`]).
pub fn matexp<T: Scalar>(a: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    a.expm()
}

/// Column-stacking vectorization: `vec(rho)[r + c*dim] = rho[r, c]`.
///
/// With this convention the superoperator of `rho -> U rho V` is
/// `transpose(V) (x) U`; conjugation by a unitary becomes `conj(U) (x) U`.
pub fn vectorize<T: Scalar>(m: &ComplexMatrix<T>) -> Vec<Complex<T>> {
    assert!(m.is_square(), "vectorize expects a square matrix");
    let d = m.rows;
    let mut v = Vec::with_capacity(d * d);
    for col in 0..d {
        for row in 0..d {
            v.push(m[(row, col)]);
        }
    }
    v
}

/// Inverse of [`vectorize`].
pub fn devectorize<T: Scalar>(v: &[Complex<T>]) -> Result<ComplexMatrix<T>> {
    let d = (v.len() as f64).sqrt().round() as usize;
    if d * d != v.len() {
        return Err(Error::NotPerfectSquare(v.len()));
    }
    let mut m = ComplexMatrix::zeros(d, d);
    for col in 0..d {
        for row in 0..d {
            m[(row, col)] = v[col * d + row];
        }
    }
    Ok(m)
}

/// Superoperator of the map `rho -> A rho B` in the column-stacking convention.
pub fn superop_from_left_right<T: Scalar>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
) -> ComplexMatrix<T> {
    kron(&b.transpose(), a)
}

/// Superoperator of a unitary conjugation `rho -> U rho U^dag`.
pub fn superop_of_unitary<T: Scalar>(u: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    kron(&u.conj(), u)
}

/// Embed a k-qubit operator on the given target qubits of an n-qubit register.
///
/// Qubit 0 is the leftmost tensor factor (most significant index bit);
/// `targets[0]` maps to the most significant axis of `op`.
pub fn embed_local<T: Scalar>(
    op: &ComplexMatrix<T>,
    targets: &[usize],
    n_qubits: usize,
) -> Result<ComplexMatrix<T>> {
    let k = targets.len();
    let opdim = 1usize << k;
    if !op.is_square() || op.rows != opdim {
        return Err(Error::DimensionMismatch(format!(
            "operator is {}x{}, expected {}x{} for {} target(s)",
            op.rows, op.cols, opdim, opdim, k
        )));
    }
    for (i, &t) in targets.iter().enumerate() {
        if t >= n_qubits {
            return Err(Error::QubitOutOfRange {
                index: t,
                n_qubits,
            });
        }
        if targets[..i].contains(&t) {
            return Err(Error::DuplicateTarget(t));
        }
    }
    let dim = 1usize << n_qubits;
    // Bit position of qubit q inside an n-bit basis index.
    let shift = |q: usize| n_qubits - 1 - q;
    let rest_mask: usize = {
        let mut m = dim - 1;
        for &t in targets {
            m &= !(1usize << shift(t));
        }
        m
    };
    let mut out = ComplexMatrix::zeros(dim, dim);
    for row in 0..dim {
        let row_rest = row & rest_mask;
        let mut row_op = 0usize;
        for &t in targets {
            row_op = (row_op << 1) | ((row >> shift(t)) & 1);
        }
        for col_op in 0..opdim {
            let v = op[(row_op, col_op)];
            if v.norm_sqr() == T::zero() {
                continue;
            }
            let mut col = row_rest;
            for (i, &t) in targets.iter().enumerate() {
                let bit = (col_op >> (k - 1 - i)) & 1;
                col |= bit << shift(t);
            }
            out[(row, col)] = v;
        }
    }
    Ok(out)
}

/// Pure n-qubit state with unit norm.
#[derive(Debug, Clone)]
pub struct PureState<T: Scalar> {
    amplitudes: Vec<Complex<T>>,
}

impl<T: Scalar> PureState<T> {
    pub fn new(amplitudes: Vec<Complex<T>>) -> Result<Self> {
        if !amplitudes.len().is_power_of_two() {
            return Err(Error::DimensionMismatch(format!(
                "state length {} is not a power of two",
                amplitudes.len()
            )));
        }
        let norm_sq: T = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        let deviation = (norm_sq.sqrt() - T::one()).abs();
        if deviation > T::TOL_HERMITIAN {
            return Err(Error::NotNormalized {
                deviation: deviation.to_f64(),
            });
        }
        Ok(Self { amplitudes })
    }

    /// `|0...0>` on `n_qubits`.
    pub fn ground(n_qubits: usize) -> Self {
        let mut amplitudes = vec![czero(); 1 << n_qubits];
        amplitudes[0] = cone();
        Self { amplitudes }
    }

    /// Normalize an arbitrary nonzero vector.
    pub fn normalized(raw: Vec<Complex<T>>) -> Result<Self> {
        let norm_sq: T = raw.iter().map(|a| a.norm_sqr()).sum();
        if norm_sq == T::zero() {
            return Err(Error::ZeroVector);
        }
        let inv = cre(T::one() / norm_sq.sqrt());
        Self::new(raw.into_iter().map(|a| a * inv).collect())
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn n_qubits(&self) -> usize {
        self.amplitudes.len().trailing_zeros() as usize
    }

    /// Outer product `|psi><psi|`.
    pub fn to_density_matrix(&self) -> DensityMatrix<T> {
        let d = self.dim();
        let m = ComplexMatrix::from_fn(d, d, |r, c| {
            self.amplitudes[r] * self.amplitudes[c].conj()
        });
        DensityMatrix::new(m).expect("outer product of a unit vector is a valid density operator")
    }
}

/// Density operator: Hermitian, unit-trace, positive semidefinite (within
/// numerical tolerances) on a 2^n-dimensional space.
///
/// Construction checks Hermiticity and trace; the O(dim^3) eigenvalue check
/// is separate ([`DensityMatrix::validate_psd`]) so it can be reserved for
/// tests and the channel-check command.
#[derive(Debug, Clone)]
pub struct DensityMatrix<T: Scalar> {
    mat: ComplexMatrix<T>,
}

impl<T: Scalar> DensityMatrix<T> {
    pub fn new(mat: ComplexMatrix<T>) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::NotSquare {
                rows: mat.rows,
                cols: mat.cols,
            });
        }
        if !mat.rows.is_power_of_two() {
            return Err(Error::InvalidDensityMatrix(format!(
                "dimension {} is not a power of two",
                mat.rows
            )));
        }
        if !mat.is_hermitian(T::TOL_HERMITIAN) {
            return Err(Error::InvalidDensityMatrix(
                "not Hermitian within tolerance".into(),
            ));
        }
        let tr = mat.trace();
        if (tr.re - T::one()).abs() > T::TOL_TRACE || tr.im.abs() > T::TOL_TRACE {
            return Err(Error::InvalidDensityMatrix(format!(
                "trace {:e} + {:e}i deviates from 1",
                tr.re.to_f64(),
                tr.im.to_f64()
            )));
        }
        Ok(Self { mat })
    }

    /// `|0...0><0...0|` on `n_qubits`.
    pub fn ground(n_qubits: usize) -> Self {
        PureState::ground(n_qubits).to_density_matrix()
    }

    pub fn maximally_mixed(n_qubits: usize) -> Self {
        let d = 1usize << n_qubits;
        let m = ComplexMatrix::from_fn(d, d, |r, c| {
            if r == c {
                cre(T::one() / T::from_usize(d))
            } else {
                czero()
            }
        });
        Self { mat: m }
    }

    pub fn dim(&self) -> usize {
        self.mat.rows
    }

    pub fn n_qubits(&self) -> usize {
        self.mat.rows.trailing_zeros() as usize
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.mat
    }

    /// Tr(rho^2).
    pub fn purity(&self) -> T {
        let mut s = T::zero();
        for r in 0..self.dim() {
            for c in 0..self.dim() {
                s += self.mat[(r, c)].norm_sqr();
            }
        }
        s
    }

    /// Half the trace norm of `self - other`.
    pub fn trace_distance(&self, other: &Self) -> Result<T> {
        let diff = self.mat.sub(&other.mat);
        let eigs = hermitian_eigenvalues(&diff)?;
        let half = T::from_f64(0.5);
        Ok(eigs.iter().map(|e| e.abs()).fold(T::zero(), |a, b| a + b) * half)
    }

    /// Full eigenvalue positivity check: min eigenvalue >= -tol.
    pub fn validate_psd(&self, tol: T) -> Result<()> {
        let min = self.mat.min_eigenvalue()?;
        if min < -tol {
            return Err(Error::InvalidDensityMatrix(format!(
                "minimum eigenvalue {:e} below -{:e}",
                min.to_f64(),
                tol.to_f64()
            )));
        }
        Ok(())
    }

    /// `Tr(U rho U^dag)`-preserving conjugation; used by tests, not the hot path.
    pub fn conjugate(&self, u: &ComplexMatrix<T>) -> Result<Self> {
        if u.rows != self.dim() || u.cols != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "unitary is {}x{}, state dimension {}",
                u.rows,
                u.cols,
                self.dim()
            )));
        }
        Self::new(u.matmul(&self.mat).matmul(&u.dagger()))
    }
}

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.
pub fn hermitian_eigenvalues<T: Scalar>(m: &ComplexMatrix<T>) -> Result<Vec<T>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    let mut a = m.clone();
    // Symmetrize away numerically insignificant anti-Hermitian parts.
    for r in 0..n {
        for c in 0..n {
            let sym = (a[(r, c)] + a[(c, r)].conj()) * cre(T::from_f64(0.5));
            a[(r, c)] = sym;
        }
    }
    let tol = T::from_f64(1e-14) * a.frobenius_norm().max(T::one());
    for _sweep in 0..60 {
        let mut off = T::zero();
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a[(p, q)].norm());
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq.norm() <= tol {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let abs = apq.norm();
                let phase = apq / cre(abs);
                let theta = (T::from_f64(2.0) * abs).atan2(app - aqq) * T::from_f64(0.5);
                let cs = theta.cos();
                let sn = theta.sin();
                // Rotation: p' = cs*p + sn*phase*q ; q' = -sn*conj(phase)*p + cs*q
                let s_pq = phase * cre(sn);
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * cre(cs) + akq * s_pq.conj();
                    a[(k, q)] = akq * cre(cs) - akp * s_pq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = apk * cre(cs) + aqk * s_pq;
                    a[(q, k)] = aqk * cre(cs) - apk * s_pq.conj();
                }
            }
        }
    }
    let mut eigs: Vec<T> = (0..n).map(|i| a[(i, i)].re).collect();
    eigs.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(eigs)
}

/// Cholesky factorization of a Hermitian positive-definite matrix.
/// Fails if a pivot is non-positive.
pub fn cholesky<T: Scalar>(m: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    let mut l = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut s = m[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)].conj();
            }
            if i == j {
                if s.re <= T::zero() {
                    return Err(Error::InvalidDensityMatrix(format!(
                        "non-positive Cholesky pivot {:e} at {}",
                        s.re.to_f64(),
                        i
                    )));
                }
                l[(i, j)] = cre(s.re.sqrt());
            } else {
                l[(i, j)] = s / l[(j, j)];
            }
        }
    }
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_util::{random_density, random_unitary};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    type M = ComplexMatrix<f64>;

    fn pauli_x() -> M {
        M::from_parts(2, 2, &[(0., 0.), (1., 0.), (1., 0.), (0., 0.)]).unwrap()
    }

    fn pauli_z() -> M {
        M::from_parts(2, 2, &[(1., 0.), (0., 0.), (0., 0.), (-1., 0.)]).unwrap()
    }

    fn random_matrix(rng: &mut ChaCha8Rng, dim: usize, scale: f64) -> M {
        M::from_fn(dim, dim, |_, _| {
            c(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
        })
    }

    #[test]
    fn kron_identity_cases() {
        let i2 = M::identity(2);
        assert!(kron(&i2, &i2).approx_eq(&M::identity(4), 0.0));
        let zi = kron(&pauli_z(), &i2);
        let expect = M::from_fn(4, 4, |r, c| {
            if r != c {
                czero()
            } else if r < 2 {
                cone()
            } else {
                crate::scalar::c(-1., 0.)
            }
        });
        assert!(zi.approx_eq(&expect, 0.0));
    }

    #[test]
    fn kron_x_z_hand_expansion() {
        // X (x) Z = [[0, Z], [Z, 0]] in block form.
        let xz = kron(&pauli_x(), &pauli_z());
        let mut expect = M::zeros(4, 4);
        expect[(0, 2)] = cone();
        expect[(1, 3)] = c(-1., 0.);
        expect[(2, 0)] = cone();
        expect[(3, 1)] = c(-1., 0.);
        assert!(xz.approx_eq(&expect, 0.0));
    }

    #[test]
    fn matexp_zero_is_identity() {
        let e = M::zeros(3, 3).expm().unwrap();
        assert!(e.approx_eq(&M::identity(3), 1e-14));
    }

    #[test]
    fn matexp_pauli_x_euler_identity() {
        // exp(-i pi X / 2) = -i X
        let a = pauli_x().scale(c(0., -std::f64::consts::PI / 2.));
        let e = a.expm().unwrap();
        let expect = pauli_x().scale(c(0., -1.));
        assert!(e.approx_eq(&expect, 1e-12));
    }

    #[test]
    fn matexp_diagonal() {
        let d = M::from_parts(2, 2, &[(0.3, 0.7), (0., 0.), (0., 0.), (-1.2, 0.4)]).unwrap();
        let e = d.expm().unwrap();
        let e00 = num_complex::Complex::new(0.3, 0.7).exp();
        let e11 = num_complex::Complex::new(-1.2, 0.4).exp();
        assert!((e[(0, 0)] - e00).norm() < 1e-13);
        assert!((e[(1, 1)] - e11).norm() < 1e-13);
        assert!(e[(0, 1)].norm() < 1e-14 && e[(1, 0)].norm() < 1e-14);
    }

    #[test]
    fn matexp_inverse_property() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for dim in [2, 5, 9] {
            for _ in 0..5 {
                let a = random_matrix(&mut rng, dim, 5.0 / dim as f64);
                let e = a.expm().unwrap();
                let em = a.scale(c(-1., 0.)).expm().unwrap();
                assert!(
                    e.matmul(&em).approx_eq(&M::identity(dim), 1e-9),
                    "expm(A)expm(-A) != I at dim {dim}"
                );
            }
        }
    }

    #[test]
    fn matexp_matches_hermitian_eigendecomposition() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let dim = 4;
            let raw = random_matrix(&mut rng, dim, 1.5);
            let h = raw.add(&raw.dagger()).scale(c(0.5, 0.));
            // exp(-iH) is unitary; verify unitarity and spectral radius.
            let u = h.scale(c(0., -1.)).expm().unwrap();
            assert!(u.is_unitary(1e-11));
        }
    }

    #[test]
    fn matexp_rejects_non_square() {
        assert!(M::zeros(2, 3).expm().is_err());
    }

    #[test]
    fn vectorize_ground_state() {
        let rho = DensityMatrix::<f64>::ground(1);
        let v = vectorize(rho.matrix());
        assert_eq!(v.len(), 4);
        assert!((v[0] - cone::<f64>()).norm() < 1e-15);
        assert!(v[1..].iter().all(|x| x.norm() < 1e-15));
    }

    #[test]
    fn vectorize_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let rho = random_density(&mut rng, 4);
            let v = vectorize(rho.matrix());
            let back = devectorize(&v).unwrap();
            assert!(back.approx_eq(rho.matrix(), 0.0), "round trip must be exact");
        }
    }

    #[test]
    fn devectorize_rejects_non_square_length() {
        let v = vec![czero::<f64>(); 5];
        assert!(devectorize(&v).is_err());
    }

    #[test]
    fn unitary_superoperator_acts_as_conjugation() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..10 {
            let u = random_unitary(&mut rng, 2);
            let rho = random_density(&mut rng, 2);
            let sup = superop_of_unitary(&u);
            let v = vectorize(rho.matrix());
            let mut out = vec![czero::<f64>(); 4];
            for r in 0..4 {
                for c in 0..4 {
                    out[r] += sup[(r, c)] * v[c];
                }
            }
            let lhs = devectorize(&out).unwrap();
            let rhs = u.matmul(rho.matrix()).matmul(&u.dagger());
            assert!(lhs.approx_eq(&rhs, 1e-12));
        }
    }

    #[test]
    fn embed_single_qubit() {
        let x = pauli_x();
        let e = embed_local(&x, &[0], 1).unwrap();
        assert!(e.approx_eq(&x, 0.0));
        let z1 = embed_local(&pauli_z(), &[1], 2).unwrap();
        assert!(z1.approx_eq(&kron(&M::identity(2), &pauli_z()), 0.0));
    }

    #[test]
    fn embed_cz_on_outer_qubits() {
        // CZ on qubits 0 and 2 of 3: -1 exactly on |1b1>.
        let cz = M::from_fn(4, 4, |r, c| {
            if r != c {
                czero()
            } else if r == 3 {
                crate::scalar::c(-1., 0.)
            } else {
                cone()
            }
        });
        let e = embed_local(&cz, &[0, 2], 3).unwrap();
        for idx in 0..8 {
            let b0 = (idx >> 2) & 1;
            let b2 = idx & 1;
            let expect = if b0 == 1 && b2 == 1 { -1.0 } else { 1.0 };
            assert!((e[(idx, idx)] - c(expect, 0.)).norm() < 1e-15, "idx {idx}");
        }
    }

    #[test]
    fn embed_rejects_bad_inputs() {
        let x = pauli_x();
        assert!(embed_local(&x, &[0, 1], 2).is_err()); // dim mismatch
        assert!(embed_local(&x, &[3], 2).is_err()); // out of range
        let xx = kron(&x, &x);
        assert!(embed_local(&xx, &[1, 1], 3).is_err()); // duplicate
    }

    #[test]
    fn trace_preserved_under_conjugation() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let u = random_unitary(&mut rng, 4);
            let rho = random_density(&mut rng, 4);
            let out = rho.conjugate(&u).unwrap();
            let tr = out.matrix().trace();
            assert!((tr.re - 1.0).abs() < 1e-12 && tr.im.abs() < 1e-12);
        }
    }

    #[test]
    fn jacobi_eigenvalues_known_spectrum() {
        let z = pauli_z();
        let eigs = hermitian_eigenvalues(&z).unwrap();
        assert!((eigs[0] + 1.0).abs() < 1e-12 && (eigs[1] - 1.0).abs() < 1e-12);

        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let u = random_unitary(&mut rng, 5);
        let d: Vec<f64> = vec![-2.0, -0.5, 0.0, 1.25, 3.0];
        let diag = M::from_fn(5, 5, |r, c| if r == c { crate::scalar::c(d[r], 0.) } else { czero() });
        let h = u.matmul(&diag).matmul(&u.dagger());
        let eigs = hermitian_eigenvalues(&h).unwrap();
        for (e, want) in eigs.iter().zip(&d) {
            assert!((e - want).abs() < 1e-10, "{e} vs {want}");
        }
    }

    #[test]
    fn density_matrix_validation() {
        let ok = DensityMatrix::<f64>::maximally_mixed(2);
        ok.validate_psd(1e-9).unwrap();
        assert!((ok.purity() - 0.25).abs() < 1e-14);

        let bad_trace = M::identity(2);
        assert!(DensityMatrix::new(bad_trace).is_err());

        let not_herm =
            M::from_parts(2, 2, &[(0.5, 0.), (0.3, 0.1), (0.3, 0.1), (0.5, 0.)]).unwrap();
        assert!(DensityMatrix::new(not_herm).is_err());
    }

    #[test]
    fn cholesky_detects_indefiniteness() {
        let m = M::from_parts(2, 2, &[(1., 0.), (0., 0.), (0., 0.), (-0.1, 0.)]).unwrap();
        assert!(cholesky(&m).is_err());
        let ok = M::from_parts(2, 2, &[(1., 0.), (0.2, 0.1), (0.2, -0.1), (0.5, 0.)]).unwrap();
        cholesky(&ok).unwrap();
    }

    #[test]
    fn pure_state_norm_enforced() {
        assert!(PureState::new(vec![cone::<f64>(), cone()]).is_err());
        let s = PureState::normalized(vec![cone::<f64>(), cone()]).unwrap();
        assert!((s.amplitudes()[0].re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }
}
