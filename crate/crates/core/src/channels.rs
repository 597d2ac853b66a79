//! Noise channels in Kraus and Lindblad form.
//!
//! Four channel families: depolarizing, Gaussian phase damping with a
//! possibly non-zero mean over-rotation angle, thermal damping at a
//! generalized temperature, and the crosstalk ZZ coupling that accompanies
//! two-qubit gates. Single-qubit channels are applied through exact closed
//! forms; the composite two-qubit noise is the exponential of a summed
//! Lindbladian over each affected neighbor pair.

use crate::error::{Error, Result};
use crate::gates;
use crate::linalg::{embed_local, kron, vectorize, ComplexMatrix, DensityMatrix};
use crate::scalar::{c, cre, czero, Scalar};
use num_complex::Complex;
use serde::{Deserialize, Serialize};

/// Where a single-qubit channel attaches to a decomposed rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Placement {
    /// After each of the three Euler factors.
    PerFactor,
    /// Once after the full composed rotation.
    PerGate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseDampingParams<T: Scalar> {
    /// Mean over-rotation angle (radians).
    pub mu: T,
    /// Standard deviation of the over-rotation angle (radians).
    pub sigma: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermalParams<T: Scalar> {
    /// Generalized temperature 2 k_B T / (hbar omega).
    pub t_tilde: T,
    /// Decay probability for the elapsed time, in [0, 1].
    pub gamma: T,
}

/// Noise attached to every single-qubit rotation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingleQubitNoise<T: Scalar> {
    pub depol: Option<T>,
    pub phase_damping: Option<PhaseDampingParams<T>>,
    pub thermal: Option<ThermalParams<T>>,
    /// Depolarizing placement; it commutes with unitaries, so once per
    /// composed rotation is the default.
    pub depol_placement: Placement,
    /// Phase-damping placement; after each decomposed factor by default.
    pub pd_placement: Placement,
}

impl<T: Scalar> Default for SingleQubitNoise<T> {
    fn default() -> Self {
        Self {
            depol: None,
            phase_damping: None,
            thermal: None,
            depol_placement: Placement::PerGate,
            pd_placement: Placement::PerFactor,
        }
    }
}

/// Noise attached to every two-qubit gate (disabled under partial error
/// correction).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoQubitNoise<T: Scalar> {
    /// Per-qubit depolarizing strength on the gate's qubits.
    pub depol: Option<T>,
    /// Crosstalk ZZ angle on the neighboring pairs.
    pub crosstalk_alpha: Option<T>,
}

/// Declarative description of which channels follow each gate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec<T: Scalar> {
    pub single_qubit: Option<SingleQubitNoise<T>>,
    pub two_qubit: Option<TwoQubitNoise<T>>,
}

impl<T: Scalar> Default for NoiseSpec<T> {
    fn default() -> Self {
        Self {
            single_qubit: None,
            two_qubit: None,
        }
    }
}

impl<T: Scalar> NoiseSpec<T> {
    pub fn noiseless() -> Self {
        Self::default()
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(sq) = &self.single_qubit {
            if let Some(p) = sq.depol {
                check_depol_strength(p)?;
            }
            if let Some(pd) = &sq.phase_damping {
                if pd.sigma < T::zero() {
                    return Err(Error::InvalidParameter(format!(
                        "phase damping sigma {:e} < 0",
                        pd.sigma.to_f64()
                    )));
                }
                if !pd.mu.is_finite() || !pd.sigma.is_finite() {
                    return Err(Error::InvalidParameter("non-finite phase damping".into()));
                }
            }
            if let Some(th) = &sq.thermal {
                check_thermal_params(th.t_tilde, th.gamma)?;
            }
        }
        if let Some(tq) = &self.two_qubit {
            if let Some(p) = tq.depol {
                check_depol_strength(p)?;
            }
            if let Some(a) = tq.crosstalk_alpha {
                if !a.is_finite() {
                    return Err(Error::InvalidParameter("non-finite crosstalk angle".into()));
                }
            }
        }
        Ok(())
    }

    pub fn is_noiseless(&self) -> bool {
        let sq_quiet = match &self.single_qubit {
            None => true,
            Some(sq) => sq.depol.is_none() && sq.phase_damping.is_none() && sq.thermal.is_none(),
        };
        let tq_quiet = match &self.two_qubit {
            None => true,
            Some(tq) => tq.depol.is_none() && tq.crosstalk_alpha.is_none(),
        };
        sq_quiet && tq_quiet
    }
}

fn check_depol_strength<T: Scalar>(p: T) -> Result<()> {
    let cap = T::from_f64(0.75);
    if p < T::zero() || p > cap || !p.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "depolarizing strength {:e} outside [0, 3/4]",
            p.to_f64()
        )));
    }
    Ok(())
}

fn check_thermal_params<T: Scalar>(t_tilde: T, gamma: T) -> Result<()> {
    if t_tilde <= T::zero() || !t_tilde.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "generalized temperature {:e} must be positive",
            t_tilde.to_f64()
        )));
    }
    if gamma < T::zero() || gamma > T::one() || !gamma.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "decay probability {:e} outside [0, 1]",
            gamma.to_f64()
        )));
    }
    Ok(())
}

/// A channel in Kraus form: `E(rho) = sum_i E_i rho E_i^dag`.
#[derive(Debug, Clone)]
pub struct KrausChannel<T: Scalar> {
    operators: Vec<ComplexMatrix<T>>,
    arity: usize,
}

impl<T: Scalar> KrausChannel<T> {
    pub fn new(operators: Vec<ComplexMatrix<T>>, arity: usize) -> Result<Self> {
        let dim = 1usize << arity;
        for op in &operators {
            if op.rows() != dim || op.cols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "Kraus operator is {}x{}, expected {}x{}",
                    op.rows(),
                    op.cols(),
                    dim,
                    dim
                )));
            }
        }
        let ch = Self { operators, arity };
        let dev = ch.completeness_deviation();
        if dev > T::from_f64(1e-10).max(T::TOL_TRACE) {
            return Err(Error::InvalidParameter(format!(
                "Kraus completeness violated by {:e}",
                dev.to_f64()
            )));
        }
        Ok(ch)
    }

    pub fn identity(arity: usize) -> Self {
        Self {
            operators: vec![ComplexMatrix::identity(1 << arity)],
            arity,
        }
    }

    pub fn operators(&self) -> &[ComplexMatrix<T>] {
        &self.operators
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Largest entrywise deviation of `sum_i E_i^dag E_i` from the identity.
    pub fn completeness_deviation(&self) -> T {
        let dim = 1usize << self.arity;
        let mut acc = ComplexMatrix::zeros(dim, dim);
        for op in &self.operators {
            acc = acc.add(&op.dagger().matmul(op));
        }
        acc.max_deviation(&ComplexMatrix::identity(dim))
    }

    /// Column-stacking superoperator `sum_i conj(E_i) (x) E_i`.
    pub fn superoperator(&self) -> ComplexMatrix<T> {
        let dim = 1usize << self.arity;
        let mut s = ComplexMatrix::zeros(dim * dim, dim * dim);
        for op in &self.operators {
            s = s.add(&kron(&op.conj(), op));
        }
        s
    }
}

/// Depolarizing channel `(1-p) rho + p/3 (X rho X + Y rho Y + Z rho Z)`.
///
/// `p` is capped at 3/4; beyond that the parametrization over-rotates past
/// the maximally mixed state.
pub fn depolarizing_kraus<T: Scalar>(p: T) -> Result<KrausChannel<T>> {
    check_depol_strength(p)?;
    let w0 = cre((T::one() - p).sqrt());
    let w = cre((p / T::from_f64(3.0)).sqrt());
    let ops = vec![
        ComplexMatrix::identity(2).scale(w0),
        gates::pauli_x().scale(w),
        gates::pauli_y().scale(w),
        gates::pauli_z().scale(w),
    ];
    KrausChannel::new(ops, 1)
}

/// Thermal damping channel at generalized temperature `t_tilde` with decay
/// probability `gamma`.
pub fn thermal_kraus<T: Scalar>(t_tilde: T, gamma: T) -> Result<KrausChannel<T>> {
    check_thermal_params(t_tilde, gamma)?;
    let p_minus = thermal_p_minus(t_tilde);
    let sq = |x: T| x.max(T::zero()).sqrt();
    let keep = sq(T::one() - gamma);
    let e0 = ComplexMatrix::new(
        2,
        2,
        vec![cre(sq(p_minus)), czero(), czero(), cre(sq(p_minus) * keep)],
    )?;
    let e1 = ComplexMatrix::new(
        2,
        2,
        vec![czero(), cre(sq(p_minus * gamma)), czero(), czero()],
    )?;
    let one_m = T::one() - p_minus;
    let e2 = ComplexMatrix::new(
        2,
        2,
        vec![cre(sq(one_m) * keep), czero(), czero(), cre(sq(one_m))],
    )?;
    let e3 = ComplexMatrix::new(
        2,
        2,
        vec![czero(), czero(), cre(sq(one_m * gamma)), czero()],
    )?;
    KrausChannel::new(vec![e0, e1, e2, e3], 1)
}

/// Spontaneous-decay probability `e^{1/t} / (2 cosh(1/t))`, evaluated in the
/// overflow-free form `1 / (1 + e^{-2/t})`.
pub fn thermal_p_minus<T: Scalar>(t_tilde: T) -> T {
    T::one() / (T::one() + (-T::from_f64(2.0) / t_tilde).exp())
}

/// Apply a Kraus channel on the given target qubits of an n-qubit state.
///
/// Reference implementation through embedded dense operators; the simulator
/// hot path uses specialized in-place kernels instead.
pub fn apply_channel<T: Scalar>(
    rho: &DensityMatrix<T>,
    ch: &KrausChannel<T>,
    targets: &[usize],
) -> Result<DensityMatrix<T>> {
    if ch.arity() != targets.len() {
        return Err(Error::DimensionMismatch(format!(
            "channel arity {} vs {} target(s)",
            ch.arity(),
            targets.len()
        )));
    }
    let n = rho.n_qubits();
    let dim = rho.dim();
    let mut out = ComplexMatrix::zeros(dim, dim);
    for op in ch.operators() {
        let e = embed_local(op, targets, n)?;
        out = out.add(&e.matmul(rho.matrix()).matmul(&e.dagger()));
    }
    DensityMatrix::new(out)
}

/// Gaussian phase damping: populations fixed, each coherence of the target
/// qubit scaled by the characteristic function `e^{-i mu} e^{-sigma^2/2}`.
///
/// Exact closed form of the over-rotation integral; the Monte Carlo version
/// survives only as a test oracle.
pub fn gaussian_phase_damping_apply<T: Scalar>(
    rho: &DensityMatrix<T>,
    mu: T,
    sigma: T,
    target: usize,
) -> Result<DensityMatrix<T>> {
    if sigma < T::zero() {
        return Err(Error::InvalidParameter(format!(
            "phase damping sigma {:e} < 0",
            sigma.to_f64()
        )));
    }
    let n = rho.n_qubits();
    if target >= n {
        return Err(Error::QubitOutOfRange {
            index: target,
            n_qubits: n,
        });
    }
    let mut m = rho.matrix().clone();
    phase_damping_in_place(m.data_mut(), n, target, mu, sigma);
    DensityMatrix::new(m)
}

/// In-place closed form shared with the simulator engine.
pub(crate) fn phase_damping_in_place<T: Scalar>(
    data: &mut [Complex<T>],
    n_qubits: usize,
    target: usize,
    mu: T,
    sigma: T,
) {
    let dim = 1usize << n_qubits;
    let damp = (-sigma * sigma * T::from_f64(0.5)).exp();
    let factor = Complex::new(mu.cos() * damp, -mu.sin() * damp);
    let shift = n_qubits - 1 - target;
    for row in 0..dim {
        let rb = (row >> shift) & 1;
        let base = row * dim;
        for col in 0..dim {
            let cb = (col >> shift) & 1;
            if rb == cb {
                continue;
            }
            let f = if rb == 0 { factor } else { factor.conj() };
            data[base + col] = data[base + col] * f;
        }
    }
}

/// A Lindbladian generator over the vectorized one- or two-qubit space.
#[derive(Debug, Clone)]
pub struct LindbladGenerator<T: Scalar> {
    matrix: ComplexMatrix<T>,
}

impl<T: Scalar> LindbladGenerator<T> {
    pub fn new(matrix: ComplexMatrix<T>) -> Result<Self> {
        if !matrix.is_square() || (matrix.rows() != 4 && matrix.rows() != 16) {
            return Err(Error::DimensionMismatch(format!(
                "Lindblad generator must be 4x4 or 16x16, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn arity(&self) -> usize {
        if self.matrix.rows() == 4 {
            1
        } else {
            2
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.matrix.rows() != other.matrix.rows() {
            return Err(Error::DimensionMismatch(
                "cannot sum generators of different arity".into(),
            ));
        }
        Ok(Self {
            matrix: self.matrix.add(&other.matrix),
        })
    }

    /// Time-1 endpoint channel `exp(L)` as a superoperator.
    pub fn exp_channel(&self) -> Result<ComplexMatrix<T>> {
        self.matrix.expm()
    }
}

/// Single-qubit Pauli operators including the identity.
fn pauli_basis_1q<T: Scalar>() -> [ComplexMatrix<T>; 4] {
    [
        ComplexMatrix::identity(2),
        gates::pauli_x(),
        gates::pauli_y(),
        gates::pauli_z(),
    ]
}

/// Depolarizing generator: the logarithm of the channel superoperator, which
/// is diagonal in the Pauli transfer basis with eigenvalue `ln(1 - 4p/3)` on
/// the non-identity Paulis. `exp` of the result reproduces
/// [`depolarizing_kraus`] exactly, which pins the normalization.
pub fn lindblad_depolarizing<T: Scalar>(p: T) -> Result<LindbladGenerator<T>> {
    check_depol_strength(p)?;
    let contraction = T::one() - T::from_f64(4.0 / 3.0) * p;
    if contraction <= T::zero() {
        return Err(Error::InvalidParameter(
            "depolarizing strength too close to 3/4 for a finite generator".into(),
        ));
    }
    let lambda = contraction.ln();
    let paulis = pauli_basis_1q::<T>();
    let mut gen = ComplexMatrix::zeros(4, 4);
    for p_op in paulis.iter().skip(1) {
        let v = vectorize(p_op);
        let w = cre(lambda * T::from_f64(0.5));
        for r in 0..4 {
            for col in 0..4 {
                gen[(r, col)] = gen[(r, col)] + v[r] * v[col].conj() * w;
            }
        }
    }
    LindbladGenerator::new(gen)
}

/// Same generator lifted onto one slot (0 = more significant qubit) of the
/// vectorized two-qubit space, ready for summation with a crosstalk term.
pub fn lindblad_depolarizing_on_pair<T: Scalar>(p: T, slot: usize) -> Result<LindbladGenerator<T>> {
    check_depol_strength(p)?;
    assert!(slot < 2, "pair slot must be 0 or 1");
    let contraction = T::one() - T::from_f64(4.0 / 3.0) * p;
    if contraction <= T::zero() {
        return Err(Error::InvalidParameter(
            "depolarizing strength too close to 3/4 for a finite generator".into(),
        ));
    }
    let lambda = contraction.ln();
    let paulis = pauli_basis_1q::<T>();
    let mut gen = ComplexMatrix::zeros(16, 16);
    for a in 0..4 {
        for b in 0..4 {
            let on_slot = if slot == 0 { a } else { b };
            if on_slot == 0 {
                continue;
            }
            let prod = kron(&paulis[a], &paulis[b]);
            let v = vectorize(&prod);
            let w = cre(lambda * T::from_f64(0.25));
            for r in 0..16 {
                for col in 0..16 {
                    gen[(r, col)] = gen[(r, col)] + v[r] * v[col].conj() * w;
                }
            }
        }
    }
    LindbladGenerator::new(gen)
}

/// Hamiltonian generator of the crosstalk conjugation
/// `rho -> exp(-i a ZZ) rho exp(i a ZZ)`: `-i a (I (x) ZZ - ZZ^T (x) I)`.
pub fn lindblad_crosstalk<T: Scalar>(alpha: T) -> Result<LindbladGenerator<T>> {
    if !alpha.is_finite() {
        return Err(Error::InvalidParameter("non-finite crosstalk angle".into()));
    }
    let zz = kron(&gates::pauli_z::<T>(), &gates::pauli_z());
    let i4 = ComplexMatrix::identity(4);
    let gen = kron(&i4, &zz)
        .sub(&kron(&zz.transpose(), &i4))
        .scale(Complex::new(T::zero(), -alpha));
    LindbladGenerator::new(gen)
}

/// One exponentiated noise block of the composite two-qubit channel.
#[derive(Debug, Clone)]
pub struct NoiseBlock<T: Scalar> {
    /// One or two target qubits, most significant first.
    pub qubits: Vec<usize>,
    /// `exp(sum L)` over the block's vectorized space.
    pub superop: ComplexMatrix<T>,
}

/// Composite noise following an error-prone two-qubit gate: per-qubit
/// depolarizing on the gate qubits plus crosstalk ZZ on the neighbor pairs
/// `(q1-1, q1)` and `(q2, q2+1)`.
///
/// The four Lindblad terms split into two blocks with disjoint supports, so
/// the joint exponential factorizes exactly into one 16x16 exponential per
/// existing neighbor pair. Neighbor pairs that fall off the chain are
/// dropped (open boundary).
#[derive(Debug, Clone)]
pub struct TwoQubitNoiseChannel<T: Scalar> {
    blocks: Vec<NoiseBlock<T>>,
    n_qubits: usize,
}

pub fn two_qubit_noise_channel<T: Scalar>(
    spec: &NoiseSpec<T>,
    q1: usize,
    q2: usize,
    n_qubits: usize,
) -> Result<TwoQubitNoiseChannel<T>> {
    if q1 == q2 {
        return Err(Error::InvalidParameter(
            "two-qubit noise needs distinct qubits".into(),
        ));
    }
    for q in [q1, q2] {
        if q >= n_qubits {
            return Err(Error::QubitOutOfRange {
                index: q,
                n_qubits,
            });
        }
    }
    let (lo, hi) = if q1 < q2 { (q1, q2) } else { (q2, q1) };
    let params = spec.two_qubit.unwrap_or(TwoQubitNoise {
        depol: None,
        crosstalk_alpha: None,
    });
    let mut blocks = Vec::new();
    // Block around the lower gate qubit: neighbor pair (lo-1, lo).
    blocks.extend(build_block(&params, lo, lo.checked_sub(1), true)?);
    // Block around the upper gate qubit: neighbor pair (hi, hi+1).
    let right = if hi + 1 < n_qubits { Some(hi + 1) } else { None };
    blocks.extend(build_block(&params, hi, right, false)?);
    Ok(TwoQubitNoiseChannel { blocks, n_qubits })
}

/// Assemble one block: depolarizing on `gate_qubit` plus crosstalk toward
/// `neighbor` when it exists. `neighbor_is_lower` fixes the tensor order.
fn build_block<T: Scalar>(
    params: &TwoQubitNoise<T>,
    gate_qubit: usize,
    neighbor: Option<usize>,
    neighbor_is_lower: bool,
) -> Result<Option<NoiseBlock<T>>> {
    let crosstalk_active = params.crosstalk_alpha.is_some() && neighbor.is_some();
    match (params.depol, crosstalk_active) {
        (None, false) => Ok(None),
        (Some(p), false) => {
            let gen = lindblad_depolarizing(p)?;
            Ok(Some(NoiseBlock {
                qubits: vec![gate_qubit],
                superop: gen.exp_channel()?,
            }))
        }
        (depol, true) => {
            let nb = neighbor.expect("crosstalk_active implies neighbor");
            let (first, second, gate_slot) = if neighbor_is_lower {
                (nb, gate_qubit, 1)
            } else {
                (gate_qubit, nb, 0)
            };
            let mut gen = lindblad_crosstalk(params.crosstalk_alpha.unwrap())?;
            if let Some(p) = depol {
                gen = gen.add(&lindblad_depolarizing_on_pair(p, gate_slot)?)?;
            }
            Ok(Some(NoiseBlock {
                qubits: vec![first, second],
                superop: gen.exp_channel()?,
            }))
        }
    }
}

impl<T: Scalar> TwoQubitNoiseChannel<T> {
    pub fn blocks(&self) -> &[NoiseBlock<T>] {
        &self.blocks
    }

    pub fn apply(&self, rho: &DensityMatrix<T>) -> Result<DensityMatrix<T>> {
        if rho.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch(format!(
                "channel built for {} qubits, state has {}",
                self.n_qubits,
                rho.n_qubits()
            )));
        }
        let mut m = rho.matrix().clone();
        let mut scratch = Vec::new();
        for block in &self.blocks {
            apply_superop_in_place(
                m.data_mut(),
                self.n_qubits,
                &block.qubits,
                &block.superop,
                &mut scratch,
            );
        }
        DensityMatrix::new(m)
    }

    pub(crate) fn apply_in_place(
        &self,
        data: &mut [Complex<T>],
        n_qubits: usize,
        scratch: &mut Vec<Complex<T>>,
    ) {
        debug_assert_eq!(n_qubits, self.n_qubits);
        for block in &self.blocks {
            apply_superop_in_place(data, n_qubits, &block.qubits, &block.superop, scratch);
        }
    }
}

/// Apply a local superoperator (column-stacking convention) to the given
/// qubits of a row-major density-matrix buffer.
pub fn apply_superop_in_place<T: Scalar>(
    data: &mut [Complex<T>],
    n_qubits: usize,
    targets: &[usize],
    superop: &ComplexMatrix<T>,
    scratch: &mut Vec<Complex<T>>,
) {
    let k = targets.len();
    let local_dim = 1usize << k;
    let local_sq = local_dim * local_dim;
    debug_assert_eq!(superop.rows(), local_sq);
    let dim = 1usize << n_qubits;
    debug_assert_eq!(data.len(), dim * dim);

    let shifts: Vec<usize> = targets.iter().map(|&q| n_qubits - 1 - q).collect();
    // All basis indices with every target bit clear.
    let free = dim >> k;
    let mut rest_patterns = Vec::with_capacity(free);
    'outer: for idx in 0..dim {
        for &s in &shifts {
            if (idx >> s) & 1 == 1 {
                continue 'outer;
            }
        }
        rest_patterns.push(idx);
        if rest_patterns.len() == free {
            break;
        }
    }
    // Full-index offset contributed by each local basis value.
    let mut offsets = vec![0usize; local_dim];
    for (loc, off) in offsets.iter_mut().enumerate() {
        for (i, &s) in shifts.iter().enumerate() {
            if (loc >> (k - 1 - i)) & 1 == 1 {
                *off |= 1 << s;
            }
        }
    }

    scratch.clear();
    scratch.resize(2 * local_sq, czero());
    let (local, out) = scratch.split_at_mut(local_sq);
    for &rr in &rest_patterns {
        for &cr in &rest_patterns {
            for r_loc in 0..local_dim {
                let row = rr | offsets[r_loc];
                for c_loc in 0..local_dim {
                    let col = cr | offsets[c_loc];
                    // Column-stacking local vec index.
                    local[r_loc + c_loc * local_dim] = data[row * dim + col];
                }
            }
            for (v_out, out_slot) in out.iter_mut().enumerate() {
                let mut acc = czero();
                for (v_in, &x) in local.iter().enumerate() {
                    acc = acc + superop[(v_out, v_in)] * x;
                }
                *out_slot = acc;
            }
            for r_loc in 0..local_dim {
                let row = rr | offsets[r_loc];
                for c_loc in 0..local_dim {
                    let col = cr | offsets[c_loc];
                    data[row * dim + col] = out[r_loc + c_loc * local_dim];
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Property suite shared by the channel-check command and the acceptance gate.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChannelCheckOptions {
    /// Random parameter draws per channel family.
    pub draws: usize,
    /// Monte Carlo samples for the phase-damping oracle.
    pub mc_samples: usize,
    pub seed: u64,
    /// Test hook: perturbs the closed-form dephasing factor to prove the
    /// Monte Carlo comparison can fail.
    pub inject_dephasing_error: Option<f64>,
}

impl Default for ChannelCheckOptions {
    fn default() -> Self {
        Self {
            draws: 100,
            mc_samples: 1_000_000,
            seed: 7,
            inject_dephasing_error: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PropertyReport {
    pub name: String,
    /// Worst observed deviation, in the property's own units.
    pub max_deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl PropertyReport {
    fn from_deviation(name: &str, max_deviation: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            max_deviation,
            tolerance,
            pass: max_deviation <= tolerance,
        }
    }
}

/// Run the full channel property suite with `f64` arithmetic.
pub fn property_suite(opts: &ChannelCheckOptions) -> Vec<PropertyReport> {
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut reports = Vec::new();

    // 1. Kraus completeness over random parameters.
    let mut worst = 0f64;
    for _ in 0..opts.draws {
        let p = rng.gen_range(0.0..=0.75);
        worst = worst.max(depolarizing_kraus::<f64>(p).unwrap().completeness_deviation());
        let t_tilde = 10f64.powf(rng.gen_range(-2.0..2.0));
        let gamma = rng.gen_range(0.0..=1.0);
        worst = worst.max(
            thermal_kraus::<f64>(t_tilde, gamma)
                .unwrap()
                .completeness_deviation(),
        );
    }
    reports.push(PropertyReport::from_deviation(
        "kraus_completeness",
        worst,
        1e-10,
    ));

    // 2. Trace and Hermiticity preservation across every channel family,
    //    plus eigenvalue positivity of the outputs.
    let mut worst_tr = 0f64;
    let mut worst_psd = 0f64;
    for _ in 0..opts.draws {
        let rho = random_density_1q(&mut rng);
        let mut outputs: Vec<DensityMatrix<f64>> = Vec::new();
        let p = rng.gen_range(0.0..=0.75);
        outputs.push(apply_channel(&rho, &depolarizing_kraus(p).unwrap(), &[0]).unwrap());
        let mu = rng.gen_range(-3.2..3.2);
        let sigma = rng.gen_range(0.0..1.5);
        outputs.push(gaussian_phase_damping_apply(&rho, mu, sigma, 0).unwrap());
        let t_tilde = 10f64.powf(rng.gen_range(-2.0..2.0));
        let gamma = rng.gen_range(0.0..=1.0);
        outputs.push(apply_channel(&rho, &thermal_kraus(t_tilde, gamma).unwrap(), &[0]).unwrap());

        let spec = NoiseSpec {
            single_qubit: None,
            two_qubit: Some(TwoQubitNoise {
                depol: Some(rng.gen_range(0.0..0.7)),
                crosstalk_alpha: Some(rng.gen_range(-0.3..0.3)),
            }),
        };
        let rho3 = random_density_n(&mut rng, 3);
        let ch = two_qubit_noise_channel(&spec, 1, 2, 3).unwrap();
        outputs.push(ch.apply(&rho3).unwrap());

        for out in &outputs {
            let tr = out.matrix().trace();
            worst_tr = worst_tr.max((tr.re - 1.0).abs().max(tr.im.abs()));
            worst_tr = worst_tr.max(hermiticity_deviation(out.matrix()));
            let min_eig = out.matrix().min_eigenvalue().unwrap();
            worst_psd = worst_psd.max((-min_eig).max(0.0));
        }
    }
    reports.push(PropertyReport::from_deviation(
        "trace_hermiticity_preservation",
        worst_tr,
        1e-10,
    ));
    reports.push(PropertyReport::from_deviation(
        "output_positivity",
        worst_psd,
        1e-9,
    ));

    // 3. Depolarizing channel commutes with unitary conjugation.
    let mut worst = 0f64;
    for _ in 0..opts.draws {
        let rho = random_density_1q(&mut rng);
        let p = rng.gen_range(0.0..=0.75);
        let ch = depolarizing_kraus(p).unwrap();
        let u = random_unitary_1q(&mut rng);
        let a = apply_channel(&rho.conjugate(&u).unwrap(), &ch, &[0]).unwrap();
        let b = apply_channel(&rho, &ch, &[0])
            .unwrap()
            .conjugate(&u)
            .unwrap();
        worst = worst.max(a.matrix().max_deviation(b.matrix()));
    }
    reports.push(PropertyReport::from_deviation(
        "depolarizing_unitary_commutation",
        worst,
        1e-12,
    ));

    // 4. Closed-form dephasing factor vs Monte Carlo over-rotation sampling,
    //    in units of three standard errors.
    let mut worst = 0f64;
    for _ in 0..opts.draws {
        let mu = rng.gen_range(-3.2..3.2);
        let sigma = rng.gen_range(0.0..1.5);
        let k = opts.mc_samples;
        let mut sum_re = 0f64;
        let mut sum_im = 0f64;
        let mut sum_re2 = 0f64;
        let mut sum_im2 = 0f64;
        for _ in 0..k {
            let theta: f64 = mu + sigma * rng.sample::<f64, _>(rand_distr::StandardNormal);
            let (s, c_) = theta.sin_cos();
            sum_re += c_;
            sum_im += -s;
            sum_re2 += c_ * c_;
            sum_im2 += s * s;
        }
        let kf = k as f64;
        let mean_re = sum_re / kf;
        let mean_im = sum_im / kf;
        let se_re = ((sum_re2 / kf - mean_re * mean_re).max(0.0) / kf).sqrt();
        let se_im = ((sum_im2 / kf - mean_im * mean_im).max(0.0) / kf).sqrt();
        let mut damp = (-sigma * sigma / 2.0).exp();
        if let Some(inject) = opts.inject_dephasing_error {
            damp *= 1.0 + inject;
        }
        let closed_re = mu.cos() * damp;
        let closed_im = -mu.sin() * damp;
        // Floor the standard error so the sigma = 0 edge stays well posed.
        let floor = 1e-12;
        let dev_re = (mean_re - closed_re).abs() / (3.0 * se_re + floor);
        let dev_im = (mean_im - closed_im).abs() / (3.0 * se_im + floor);
        worst = worst.max(dev_re.max(dev_im));
    }
    reports.push(PropertyReport::from_deviation(
        "gaussian_closed_form_vs_monte_carlo",
        worst,
        1.0,
    ));

    // 5. Non-zero-mean compensation identity: a trailing R_Z(-mu) on the
    //    ideal gate makes the mean-mu channel equal the zero-mean channel.
    let mut worst = 0f64;
    for _ in 0..opts.draws {
        let rho = random_density_1q(&mut rng);
        let mu = rng.gen_range(-3.2..3.2);
        let sigma = rng.gen_range(0.0..1.5);
        let u = random_unitary_1q(&mut rng);
        let comp = gates::rot_named(gates::Axis::Z, -mu).matmul(&u);
        let lhs =
            gaussian_phase_damping_apply(&rho.conjugate(&comp).unwrap(), mu, sigma, 0).unwrap();
        let rhs = gaussian_phase_damping_apply(&rho.conjugate(&u).unwrap(), 0.0, sigma, 0).unwrap();
        worst = worst.max(lhs.matrix().max_deviation(rhs.matrix()));
    }
    reports.push(PropertyReport::from_deviation(
        "mean_compensation_identity",
        worst,
        1e-12,
    ));

    // 6. Thermal damping strictly purifies the maximally mixed state at low
    //    temperature. Deviation reported as the worst shortfall below zero.
    let mut min_increase = f64::INFINITY;
    for gamma in [1e-3, 1e-1, 1.0] {
        let mixed = DensityMatrix::<f64>::maximally_mixed(1);
        let out = apply_channel(&mixed, &thermal_kraus(0.01, gamma).unwrap(), &[0]).unwrap();
        min_increase = min_increase.min(out.purity() - mixed.purity());
    }
    reports.push(PropertyReport {
        name: "thermal_purity_increase".into(),
        max_deviation: (-min_increase).max(0.0),
        tolerance: 0.0,
        pass: min_increase > 0.0,
    });

    // 7. Small-sigma limit: trace distance from the input is bounded by
    //    sigma^2 for sigma <= 0.1.
    let mut worst = 0f64;
    for _ in 0..opts.draws {
        let rho = random_density_1q(&mut rng);
        let sigma = rng.gen_range(0.0..=0.1);
        let out = gaussian_phase_damping_apply(&rho, 0.0, sigma, 0).unwrap();
        let diff = out.matrix().sub(rho.matrix());
        let eigs = diff.hermitian_eigenvalues().unwrap();
        let trace_norm: f64 = eigs.iter().map(|e| e.abs()).sum();
        let excess = trace_norm - sigma * sigma;
        worst = worst.max(excess.max(0.0));
    }
    reports.push(PropertyReport::from_deviation(
        "small_sigma_trace_bound",
        worst,
        0.0,
    ));

    reports
}

fn hermiticity_deviation<T: Scalar>(m: &ComplexMatrix<T>) -> f64 {
    let mut worst = T::zero();
    for r in 0..m.rows() {
        for col in r..m.cols() {
            worst = worst.max((m[(r, col)] - m[(col, r)].conj()).norm());
        }
    }
    worst.to_f64()
}

fn random_density_1q(rng: &mut impl rand::Rng) -> DensityMatrix<f64> {
    // Uniform in the Bloch ball.
    loop {
        let x = rng.gen_range(-1.0..1.0);
        let y = rng.gen_range(-1.0..1.0);
        let z = rng.gen_range(-1.0..1.0f64);
        if x * x + y * y + z * z > 0.9999 {
            continue;
        }
        let m = ComplexMatrix::new(
            2,
            2,
            vec![
                c(0.5 * (1.0 + z), 0.),
                c(0.5 * x, -0.5 * y),
                c(0.5 * x, 0.5 * y),
                c(0.5 * (1.0 - z), 0.),
            ],
        )
        .unwrap();
        return DensityMatrix::new(m).unwrap();
    }
}

fn random_density_n(rng: &mut impl rand::Rng, n_qubits: usize) -> DensityMatrix<f64> {
    let dim = 1usize << n_qubits;
    let mut m = ComplexMatrix::zeros(dim, dim);
    let mut weights = vec![0f64; dim];
    let mut total = 0.0;
    for w in weights.iter_mut() {
        *w = rng.gen_range(0.01..1.0);
        total += *w;
    }
    for w in &weights {
        let mut psi: Vec<Complex<f64>> = (0..dim)
            .map(|_| {
                Complex::new(
                    rng.sample::<f64, _>(rand_distr::StandardNormal),
                    rng.sample::<f64, _>(rand_distr::StandardNormal),
                )
            })
            .collect();
        let norm: f64 = psi.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in psi.iter_mut() {
            *a /= norm;
        }
        for r in 0..dim {
            for col in 0..dim {
                m[(r, col)] += psi[r] * psi[col].conj() * c(w / total, 0.);
            }
        }
    }
    DensityMatrix::new(m).unwrap()
}

fn random_unitary_1q(rng: &mut impl rand::Rng) -> ComplexMatrix<f64> {
    gates::euler_compose(&gates::EulerAngles::new(
        rng.gen_range(-3.2..3.2),
        rng.gen_range(-3.2..3.2),
        rng.gen_range(-3.2..3.2f64),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_util;

    type M = ComplexMatrix<f64>;

    #[test]
    fn depolarizing_endpoints() {
        let id = depolarizing_kraus::<f64>(0.0).unwrap();
        let rho = DensityMatrix::<f64>::ground(1);
        let out = apply_channel(&rho, &id, &[0]).unwrap();
        assert!(out.matrix().approx_eq(rho.matrix(), 1e-15));

        let full = depolarizing_kraus::<f64>(0.75).unwrap();
        let out = apply_channel(&rho, &full, &[0]).unwrap();
        assert!(out
            .matrix()
            .approx_eq(DensityMatrix::maximally_mixed(1).matrix(), 1e-15));
    }

    #[test]
    fn depolarizing_ground_state_populations() {
        let ch = depolarizing_kraus::<f64>(0.3).unwrap();
        let out = apply_channel(&DensityMatrix::ground(1), &ch, &[0]).unwrap();
        assert!((out.matrix()[(0, 0)].re - 0.8).abs() < 1e-14);
        assert!((out.matrix()[(1, 1)].re - 0.2).abs() < 1e-14);
    }

    #[test]
    fn depolarizing_rejects_out_of_range() {
        assert!(depolarizing_kraus::<f64>(-0.1).is_err());
        assert!(depolarizing_kraus::<f64>(0.76).is_err());
    }

    #[test]
    fn apply_on_embedded_qubit() {
        // Depolarizing on qubit 0 of |00><00| -> diag(1 - 2p/3, 0, 2p/3, 0).
        let p = 0.21;
        let ch = depolarizing_kraus::<f64>(p).unwrap();
        let rho = DensityMatrix::<f64>::ground(2);
        let out = apply_channel(&rho, &ch, &[0]).unwrap();
        let d: Vec<f64> = (0..4).map(|i| out.matrix()[(i, i)].re).collect();
        assert!((d[0] - (1.0 - 2.0 * p / 3.0)).abs() < 1e-14);
        assert!(d[1].abs() < 1e-14);
        assert!((d[2] - 2.0 * p / 3.0).abs() < 1e-14);
        assert!(d[3].abs() < 1e-14);
    }

    #[test]
    fn apply_channel_arity_mismatch() {
        let ch = depolarizing_kraus::<f64>(0.1).unwrap();
        let rho = DensityMatrix::<f64>::ground(2);
        assert!(apply_channel(&rho, &ch, &[0, 1]).is_err());
    }

    #[test]
    fn phase_damping_identity_and_delta() {
        let mut rng = test_util::rng(3);
        let rho = test_util::random_density(&mut rng, 4);
        let out = gaussian_phase_damping_apply(&rho, 0.0, 0.0, 0).unwrap();
        assert!(out.matrix().approx_eq(rho.matrix(), 1e-15));

        // sigma = 0, mu != 0 is exactly the R_Z(mu) conjugation.
        let mu = 0.83;
        let out = gaussian_phase_damping_apply(&rho, mu, 0.0, 1).unwrap();
        let rz = embed_local(&gates::rot_named(gates::Axis::Z, mu), &[1], 2).unwrap();
        let expect = rho.conjugate(&rz).unwrap();
        assert!(out.matrix().approx_eq(expect.matrix(), 1e-14));
    }

    #[test]
    fn phase_damping_plus_state_factor() {
        // |+><+| with sigma = 1: off-diagonal becomes 0.5 e^{-1/2}.
        let plus = M::from_parts(2, 2, &[(0.5, 0.), (0.5, 0.), (0.5, 0.), (0.5, 0.)]).unwrap();
        let rho = DensityMatrix::new(plus).unwrap();
        let out = gaussian_phase_damping_apply(&rho, 0.0, 1.0, 0).unwrap();
        let expect = 0.5 * (-0.5f64).exp();
        assert!((out.matrix()[(0, 1)].re - expect).abs() < 1e-15);
        assert!(out.matrix()[(0, 1)].im.abs() < 1e-15);
    }

    #[test]
    fn phase_damping_rejects_negative_sigma() {
        let rho = DensityMatrix::<f64>::ground(1);
        assert!(gaussian_phase_damping_apply(&rho, 0.0, -0.1, 0).is_err());
    }

    #[test]
    fn thermal_gamma_zero_is_identity() {
        for t in [0.01, 1.0, 100.0] {
            let ch = thermal_kraus::<f64>(t, 0.0).unwrap();
            let mut rng = test_util::rng(5);
            let rho = test_util::random_density(&mut rng, 4);
            let out = apply_channel(&rho, &ch, &[1]).unwrap();
            assert!(out.matrix().approx_eq(rho.matrix(), 1e-12));
        }
    }

    #[test]
    fn thermal_cold_full_decay_reaches_ground() {
        let ch = thermal_kraus::<f64>(0.01, 1.0).unwrap();
        let mut rng = test_util::rng(11);
        let rho = test_util::random_density(&mut rng, 2);
        let out = apply_channel(&rho, &ch, &[0]).unwrap();
        assert!(out
            .matrix()
            .approx_eq(DensityMatrix::ground(1).matrix(), 1e-12));
    }

    #[test]
    fn thermal_hot_limit_fixed_point() {
        // t_tilde -> infinity: p_minus -> 1/2, and gamma = 1 maps everything
        // to the maximally mixed state.
        let ch = thermal_kraus::<f64>(1e12, 1.0).unwrap();
        let mut rng = test_util::rng(13);
        let rho = test_util::random_density(&mut rng, 2);
        let out = apply_channel(&rho, &ch, &[0]).unwrap();
        assert!(out
            .matrix()
            .approx_eq(DensityMatrix::maximally_mixed(1).matrix(), 1e-10));
    }

    #[test]
    fn thermal_completeness() {
        for (t, g) in [(0.01, 0.3), (0.5, 0.9), (3.0, 1.0), (100.0, 0.05)] {
            let ch = thermal_kraus::<f64>(t, g).unwrap();
            assert!(ch.completeness_deviation() < 1e-12);
        }
    }

    #[test]
    fn thermal_rejects_bad_params() {
        assert!(thermal_kraus::<f64>(0.0, 0.5).is_err());
        assert!(thermal_kraus::<f64>(-1.0, 0.5).is_err());
        assert!(thermal_kraus::<f64>(0.01, 1.5).is_err());
    }

    #[test]
    fn lindblad_depolarizing_matches_kraus() {
        for p in [0.0, 1e-3, 0.1, 0.5] {
            let gen = lindblad_depolarizing::<f64>(p).unwrap();
            let exp = gen.exp_channel().unwrap();
            let kraus_super = depolarizing_kraus::<f64>(p).unwrap().superoperator();
            assert!(
                exp.approx_eq(&kraus_super, 1e-9),
                "mismatch at p = {p}: dev {:e}",
                exp.max_deviation(&kraus_super)
            );
        }
    }

    #[test]
    fn lindblad_depolarizing_ground_state() {
        let p = 0.2;
        let gen = lindblad_depolarizing::<f64>(p).unwrap();
        let sup = gen.exp_channel().unwrap();
        let rho = DensityMatrix::<f64>::ground(1);
        let v = vectorize(rho.matrix());
        let mut out = vec![czero::<f64>(); 4];
        for r in 0..4 {
            for col in 0..4 {
                out[r] += sup[(r, col)] * v[col];
            }
        }
        let m = crate::linalg::devectorize(&out).unwrap();
        assert!((m[(0, 0)].re - (1.0 - 2.0 * p / 3.0)).abs() < 1e-12);
        assert!((m[(1, 1)].re - 2.0 * p / 3.0).abs() < 1e-12);
    }

    #[test]
    fn lindblad_crosstalk_zero_and_unitary() {
        let zero = lindblad_crosstalk::<f64>(0.0).unwrap();
        assert!(zero.matrix().approx_eq(&M::zeros(16, 16), 1e-15));

        let alpha = 0.42;
        let gen = lindblad_crosstalk::<f64>(alpha).unwrap();
        let exp = gen.exp_channel().unwrap();
        let u = gates::crosstalk_zz::<f64>(alpha);
        let direct = crate::linalg::superop_of_unitary(&u);
        assert!(exp.approx_eq(&direct, 1e-12));
    }

    #[test]
    fn two_qubit_noise_identity_when_quiet() {
        let spec = NoiseSpec::<f64>::noiseless();
        let ch = two_qubit_noise_channel(&spec, 0, 1, 3).unwrap();
        assert!(ch.blocks().is_empty());
        let mut rng = test_util::rng(17);
        let rho = test_util::random_density(&mut rng, 8);
        let out = ch.apply(&rho).unwrap();
        assert!(out.matrix().approx_eq(rho.matrix(), 0.0));
    }

    #[test]
    fn two_qubit_crosstalk_only_equals_direct_conjugation() {
        let alpha = 0.2;
        let spec = NoiseSpec {
            single_qubit: None,
            two_qubit: Some(TwoQubitNoise {
                depol: None,
                crosstalk_alpha: Some(alpha),
            }),
        };
        // Gate on (1, 2) of 4 qubits: crosstalk pairs (0, 1) and (2, 3).
        let ch = two_qubit_noise_channel(&spec, 1, 2, 4).unwrap();
        assert_eq!(ch.blocks().len(), 2);
        let mut rng = test_util::rng(19);
        let rho = test_util::random_density(&mut rng, 16);
        let out = ch.apply(&rho).unwrap();

        let u01 = embed_local(&gates::crosstalk_zz(alpha), &[0, 1], 4).unwrap();
        let u23 = embed_local(&gates::crosstalk_zz(alpha), &[2, 3], 4).unwrap();
        let expect = rho.conjugate(&u01).unwrap().conjugate(&u23).unwrap();
        assert!(out.matrix().approx_eq(expect.matrix(), 1e-12));
    }

    #[test]
    fn two_qubit_depol_only_factorizes() {
        let p = 0.15;
        let spec = NoiseSpec {
            single_qubit: None,
            two_qubit: Some(TwoQubitNoise {
                depol: Some(p),
                crosstalk_alpha: None,
            }),
        };
        let ch = two_qubit_noise_channel(&spec, 0, 1, 2).unwrap();
        let mut rng = test_util::rng(23);
        let rho = test_util::random_density(&mut rng, 4);
        let out = ch.apply(&rho).unwrap();

        let k = depolarizing_kraus::<f64>(p).unwrap();
        let expect = apply_channel(&apply_channel(&rho, &k, &[0]).unwrap(), &k, &[1]).unwrap();
        assert!(out.matrix().approx_eq(expect.matrix(), 1e-11));
    }

    #[test]
    fn two_qubit_boundary_pairs_dropped() {
        let spec = NoiseSpec {
            single_qubit: None,
            two_qubit: Some(TwoQubitNoise {
                depol: None,
                crosstalk_alpha: Some(0.3),
            }),
        };
        // Gate on (0, 1) of 2 qubits: both neighbor pairs fall off the chain.
        let ch = two_qubit_noise_channel(&spec, 0, 1, 2).unwrap();
        assert!(ch.blocks().is_empty());
    }

    #[test]
    fn two_qubit_noise_preserves_trace() {
        let spec = NoiseSpec {
            single_qubit: None,
            two_qubit: Some(TwoQubitNoise {
                depol: Some(0.0019),
                crosstalk_alpha: Some(1.16e-3),
            }),
        };
        let ch = two_qubit_noise_channel(&spec, 1, 2, 4).unwrap();
        let mut rng = test_util::rng(29);
        for _ in 0..5 {
            let rho = test_util::random_density(&mut rng, 16);
            let out = ch.apply(&rho).unwrap();
            let tr = out.matrix().trace();
            assert!((tr.re - 1.0).abs() < 1e-9 && tr.im.abs() < 1e-9);
        }
    }

    #[test]
    fn two_qubit_rejects_bad_qubits() {
        let spec = NoiseSpec::<f64>::noiseless();
        assert!(two_qubit_noise_channel(&spec, 1, 1, 3).is_err());
        assert!(two_qubit_noise_channel(&spec, 0, 3, 3).is_err());
    }

    #[test]
    fn property_suite_passes_and_negative_control_fails() {
        let opts = ChannelCheckOptions {
            draws: 10,
            mc_samples: 200_000,
            seed: 7,
            inject_dephasing_error: None,
        };
        let reports = property_suite(&opts);
        for r in &reports {
            assert!(
                r.pass,
                "{} failed with deviation {:e}",
                r.name, r.max_deviation
            );
        }

        let broken = ChannelCheckOptions {
            inject_dephasing_error: Some(0.05),
            ..opts
        };
        let reports = property_suite(&broken);
        let mc = reports
            .iter()
            .find(|r| r.name == "gaussian_closed_form_vs_monte_carlo")
            .unwrap();
        assert!(!mc.pass, "injected dephasing error must be caught");
    }

    #[test]
    fn noise_spec_validation() {
        let mut spec = NoiseSpec::<f64>::noiseless();
        assert!(spec.validate().is_ok() && spec.is_noiseless());
        spec.single_qubit = Some(SingleQubitNoise {
            depol: Some(0.9),
            ..Default::default()
        });
        assert!(spec.validate().is_err());
        spec.single_qubit = Some(SingleQubitNoise {
            phase_damping: Some(PhaseDampingParams {
                mu: 0.0,
                sigma: -1.0,
            }),
            ..Default::default()
        });
        assert!(spec.validate().is_err());
        spec.single_qubit = Some(SingleQubitNoise {
            thermal: Some(ThermalParams {
                t_tilde: 0.01,
                gamma: 0.5,
            }),
            ..Default::default()
        });
        assert!(spec.validate().is_ok());
        assert!(!spec.is_noiseless());
    }

    #[test]
    fn superop_in_place_matches_embedded_application() {
        let mut rng = test_util::rng(31);
        for _ in 0..5 {
            let rho = test_util::random_density(&mut rng, 8);
            let u = test_util::random_unitary(&mut rng, 4);
            let sup = crate::linalg::superop_of_unitary(&u);
            let mut m = rho.matrix().clone();
            let mut scratch = Vec::new();
            apply_superop_in_place(m.data_mut(), 3, &[0, 2], &sup, &mut scratch);

            let embedded = embed_local(&u, &[0, 2], 3).unwrap();
            let expect = rho.conjugate(&embedded).unwrap();
            assert!(m.approx_eq(expect.matrix(), 1e-12));
        }
    }
}
