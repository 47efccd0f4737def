//! Correlation quantifiers for 2×d bipartite states, with subsystem A fixed
//! as the first tensor factor (the qubit).
//!
//! Conventions, pinned once and tested:
//! - QFI carries the 1/4 prefactor normalization, so pure-state QFI equals
//!   the variance and a qubit probe maxes out at 1.
//! - The 3×3 matrix M is summed over *all* eigenvalue pairs including i = j
//!   (weight pᵢ), which is the unique convention consistent with the spectral
//!   QFI sum and with pure-state variance. The off-diagonal-only variant is
//!   kept behind [`MatrixConvention::PaperOffDiagonalOnly`] for comparison.
//! - Pairs with pᵢ + pⱼ ≤ 1e-14 are skipped; both weight numerators vanish at
//!   that scale, so the skipped terms are exactly zero in the limit.

use crate::spectral::{
    kron, pauli_matrices, ComplexMatrix, DensityMatrix, HermitianOperator, SpectralDecomposition,
    SpectralError,
};
use num_complex::Complex64;
use std::num::NonZeroU32;
use thiserror::Error;

/// Cutoff on pᵢ + pⱼ below which an eigenvalue pair contributes nothing.
pub const PAIR_CUTOFF: f64 = 1e-14;

/// Tolerance used by the inequality chain audits.
pub const CHAIN_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum QuantifierError {
    #[error("dimension mismatch: state dim {state} vs operator dim {operator}")]
    DimensionMismatch { state: usize, operator: usize },
    #[error("state dimension {0} is not 2×d (first factor must be a qubit)")]
    NotBipartiteQubit(usize),
    #[error("Fisher value is zero; the Cramér-Rao bound is undefined")]
    ZeroFisher,
    #[error("direction vector has zero norm")]
    ZeroDirection,
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// Unit 3-vector selecting the local observable r·σ on subsystem A.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochDirection {
    r: [f64; 3],
}

impl BlochDirection {
    /// Normalizes the input; zero vectors are rejected.
    pub fn new(r: [f64; 3]) -> Result<Self, QuantifierError> {
        let norm = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
        if !norm.is_finite() || norm <= 1e-300 {
            return Err(QuantifierError::ZeroDirection);
        }
        Ok(Self { r: [r[0] / norm, r[1] / norm, r[2] / norm] })
    }

    pub fn x() -> Self {
        Self { r: [1.0, 0.0, 0.0] }
    }

    pub fn y() -> Self {
        Self { r: [0.0, 1.0, 0.0] }
    }

    pub fn z() -> Self {
        Self { r: [0.0, 0.0, 1.0] }
    }

    pub fn components(&self) -> [f64; 3] {
        self.r
    }

    /// The 2×2 observable r·σ.
    pub fn observable(&self) -> HermitianOperator {
        let [sx, sy, sz] = pauli_matrices();
        let m = &(&sx.matrix().scale(self.r[0]) + &sy.matrix().scale(self.r[1]))
            + &sz.matrix().scale(self.r[2]);
        HermitianOperator::new(m).expect("r·σ is Hermitian")
    }

    /// (r·σ) ⊗ I_d acting on the full 2×d space.
    pub fn local_observable(&self, dim_b: usize) -> HermitianOperator {
        HermitianOperator::new(kron(self.observable().matrix(), &ComplexMatrix::identity(dim_b)))
            .expect("local observable is Hermitian")
    }

    /// Angle in radians to another direction, identifying r with −r.
    pub fn angle_up_to_sign(&self, other: &Self) -> f64 {
        let dot: f64 = (0..3).map(|i| self.r[i] * other.r[i]).sum();
        dot.abs().clamp(0.0, 1.0).acos()
    }
}

/// Which eigenvalue pairs enter the M sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixConvention {
    /// All ordered pairs including i = j (ground truth).
    AllPairs,
    /// i ≠ j only, exactly as printed.
    PaperOffDiagonalOnly,
}

/// Real symmetric 3×3 matrix M of pairwise σ-overlaps weighted by
/// 2pᵢpⱼ/(pᵢ+pⱼ); LQFI is 1 − λ_max(M) under the all-pairs convention.
#[derive(Clone, Debug)]
pub struct CorrelationMatrixM {
    m: [[f64; 3]; 3],
    convention: MatrixConvention,
}

impl CorrelationMatrixM {
    pub fn entries(&self) -> &[[f64; 3]; 3] {
        &self.m
    }

    pub fn convention(&self) -> MatrixConvention {
        self.convention
    }

    pub fn quadratic_form(&self, dir: &BlochDirection) -> f64 {
        quadratic_form(&self.m, dir)
    }

    pub fn eigenvalues(&self) -> [f64; 3] {
        symmetric_3x3_eigenvalues(&self.m)
    }

    pub fn max_eigenpair(&self) -> (f64, BlochDirection) {
        max_eigenpair_3x3(&self.m)
    }
}

/// Real symmetric 3×3 matrix W with entries Tr{√ρ(σᵢ⊗I)√ρ(σⱼ⊗I)};
/// LQU is 1 − ξ_max(W).
#[derive(Clone, Debug)]
pub struct CorrelationMatrixW {
    w: [[f64; 3]; 3],
}

impl CorrelationMatrixW {
    pub fn entries(&self) -> &[[f64; 3]; 3] {
        &self.w
    }

    pub fn quadratic_form(&self, dir: &BlochDirection) -> f64 {
        quadratic_form(&self.w, dir)
    }

    pub fn eigenvalues(&self) -> [f64; 3] {
        symmetric_3x3_eigenvalues(&self.w)
    }

    pub fn max_eigenpair(&self) -> (f64, BlochDirection) {
        max_eigenpair_3x3(&self.w)
    }
}

/// Per-state record of both quantifiers and their supporting matrices.
#[derive(Clone, Debug)]
pub struct CorrelationReport {
    /// LQFI, always computed under the all-pairs convention.
    pub lqfi: f64,
    pub lqu: f64,
    /// M under the convention requested at build time (informational).
    pub matrix_m: CorrelationMatrixM,
    pub matrix_w: CorrelationMatrixW,
    pub optimal_dir_lqfi: BlochDirection,
    pub optimal_dir_lqu: BlochDirection,
    /// True iff lqu − ε ≤ lqfi ≤ 2·lqu + ε with ε = 1e-10.
    pub inequality_ok: bool,
}

impl CorrelationReport {
    pub fn compute(
        rho: &DensityMatrix,
        convention: MatrixConvention,
    ) -> Result<Self, QuantifierError> {
        let (q, dir_q) = lqfi(rho)?;
        let (u, dir_u) = lqu(rho)?;
        let matrix_m = matrix_m(rho, convention)?;
        let matrix_w = matrix_w(rho)?;
        let inequality_ok = u - CHAIN_TOL <= q && q <= 2.0 * u + CHAIN_TOL;
        Ok(Self {
            lqfi: q,
            lqu: u,
            matrix_m,
            matrix_w,
            optimal_dir_lqfi: dir_q,
            optimal_dir_lqu: dir_u,
            inequality_ok,
        })
    }
}

/// Fisher value plus repetition count for a Cramér-Rao query.
#[derive(Clone, Copy, Debug)]
pub struct CramerRaoQuery {
    fisher_value: f64,
    repetitions: NonZeroU32,
}

impl CramerRaoQuery {
    pub fn new(fisher_value: f64, repetitions: NonZeroU32) -> Result<Self, QuantifierError> {
        if fisher_value.is_nan() || fisher_value < 0.0 {
            return Err(QuantifierError::ZeroFisher);
        }
        Ok(Self { fisher_value, repetitions })
    }

    pub fn fisher_value(&self) -> f64 {
        self.fisher_value
    }

    pub fn repetitions(&self) -> NonZeroU32 {
        self.repetitions
    }
}

/// Lower bound 1/(n·F) on the variance of an unbiased estimator.
pub fn cramer_rao_bound(q: &CramerRaoQuery) -> Result<f64, QuantifierError> {
    if q.fisher_value <= 0.0 {
        return Err(QuantifierError::ZeroFisher);
    }
    Ok(1.0 / (q.repetitions.get() as f64 * q.fisher_value))
}

/// Quantum Fisher information of ρ for the unitary family generated by H:
/// (1/2)·Σ_{i≠j} (pᵢ−pⱼ)²/(pᵢ+pⱼ)·|⟨ψᵢ|H|ψⱼ⟩|².
pub fn qfi(rho: &DensityMatrix, h: &HermitianOperator) -> Result<f64, QuantifierError> {
    check_dims(rho, h)?;
    let p = rho.eigenvalues();
    let hb = rho.spectrum().in_eigenbasis(h.matrix());
    let n = p.len();
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let s = p[i] + p[j];
            if s <= PAIR_CUTOFF {
                continue;
            }
            let d = p[i] - p[j];
            total += d * d / s * hb[(i, j)].norm_sqr();
        }
    }
    Ok(0.5 * total)
}

/// QFI for the local observable (r·σ)⊗I; same code path as [`qfi`].
pub fn qfi_local(rho: &DensityMatrix, dir: &BlochDirection) -> Result<f64, QuantifierError> {
    let dim_b = subsystem_b_dim(rho)?;
    qfi(rho, &dir.local_observable(dim_b))
}

/// Wigner-Yanase skew information:
/// (1/2)·Σ_{i,j} (√pᵢ−√pⱼ)²·|⟨ψᵢ|H|ψⱼ⟩|².
pub fn skew_information(
    rho: &DensityMatrix,
    h: &HermitianOperator,
) -> Result<f64, QuantifierError> {
    check_dims(rho, h)?;
    let p = rho.eigenvalues();
    let roots: Vec<f64> = p.iter().map(|&x| x.max(0.0).sqrt()).collect();
    let hb = rho.spectrum().in_eigenbasis(h.matrix());
    let n = p.len();
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            let d = roots[i] - roots[j];
            total += d * d * hb[(i, j)].norm_sqr();
        }
    }
    Ok(0.5 * total)
}

/// The 3×3 matrix M with entries
/// Σ 2pᵢpⱼ/(pᵢ+pⱼ)·⟨ψᵢ|σ_l⊗I|ψⱼ⟩⟨ψⱼ|σ_k⊗I|ψᵢ⟩.
pub fn matrix_m(
    rho: &DensityMatrix,
    convention: MatrixConvention,
) -> Result<CorrelationMatrixM, QuantifierError> {
    let dim_b = subsystem_b_dim(rho)?;
    let p = rho.eigenvalues();
    let sig = local_pauli_elements(rho.spectrum(), dim_b);
    let m = weighted_overlap_sum(p, &sig, |pi, pj| {
        let s = pi + pj;
        if s <= PAIR_CUTOFF {
            None
        } else {
            Some(2.0 * pi * pj / s)
        }
    }, convention == MatrixConvention::PaperOffDiagonalOnly);
    Ok(CorrelationMatrixM { m, convention })
}

/// The 3×3 matrix W with entries Tr{√ρ(σᵢ⊗I)√ρ(σⱼ⊗I)}, evaluated as
/// Σ √(p_m p_n)·⟨ψ_m|σᵢ⊗I|ψ_n⟩⟨ψ_n|σⱼ⊗I|ψ_m⟩ over all pairs (the trace
/// admits no exclusion).
pub fn matrix_w(rho: &DensityMatrix) -> Result<CorrelationMatrixW, QuantifierError> {
    let dim_b = subsystem_b_dim(rho)?;
    let p = rho.eigenvalues();
    let sig = local_pauli_elements(rho.spectrum(), dim_b);
    let w = matrix_w_from_parts(p, &sig);
    Ok(CorrelationMatrixW { w })
}

/// Local quantum Fisher information: Q(ρ) = 1 − λ_max(M) under the all-pairs
/// convention, clamped to [0, 1], together with the minimizing direction.
pub fn lqfi(rho: &DensityMatrix) -> Result<(f64, BlochDirection), QuantifierError> {
    let m = matrix_m(rho, MatrixConvention::AllPairs)?;
    let (lambda, dir) = m.max_eigenpair();
    Ok(((1.0 - lambda).clamp(0.0, 1.0), dir))
}

/// Local quantum uncertainty: U(ρ) = 1 − ξ_max(W), clamped to [0, 1],
/// together with the minimizing direction.
pub fn lqu(rho: &DensityMatrix) -> Result<(f64, BlochDirection), QuantifierError> {
    let w = matrix_w(rho)?;
    let (xi, dir) = w.max_eigenpair();
    Ok(((1.0 - xi).clamp(0.0, 1.0), dir))
}

/// Joint audit of the inequality chain I ≤ F ≤ 2I, U ≤ Q ≤ 2U, and U ≤ F.
/// H must be a local observable (r·σ)⊗I for the U ≤ F leg to be meaningful.
#[derive(Clone, Copy, Debug)]
pub struct InequalityAudit {
    pub skew: f64,
    pub qfi: f64,
    pub lqu: f64,
    pub lqfi: f64,
    pub chain_ok: bool,
}

pub fn audit_inequalities(
    rho: &DensityMatrix,
    h: &HermitianOperator,
) -> Result<InequalityAudit, QuantifierError> {
    let i = skew_information(rho, h)?;
    let f = qfi(rho, h)?;
    let (q, _) = lqfi(rho)?;
    let (u, _) = lqu(rho)?;
    let e = CHAIN_TOL;
    let chain_ok = i - e <= f
        && f <= 2.0 * i + e
        && u - e <= q
        && q <= 2.0 * u + e
        && u <= f + e;
    Ok(InequalityAudit { skew: i, qfi: f, lqu: u, lqfi: q, chain_ok })
}

fn check_dims(rho: &DensityMatrix, h: &HermitianOperator) -> Result<(), QuantifierError> {
    if rho.dim() != h.dim() {
        return Err(QuantifierError::DimensionMismatch { state: rho.dim(), operator: h.dim() });
    }
    Ok(())
}

fn subsystem_b_dim(rho: &DensityMatrix) -> Result<usize, QuantifierError> {
    let n = rho.dim();
    if n < 2 || !n.is_multiple_of(2) {
        return Err(QuantifierError::NotBipartiteQubit(n));
    }
    Ok(n / 2)
}

/// ⟨ψᵢ|σ_l⊗I|ψⱼ⟩ for l = 1, 2, 3, as three dense matrices in the eigenbasis.
fn local_pauli_elements(
    spectrum: &SpectralDecomposition,
    dim_b: usize,
) -> [ComplexMatrix; 3] {
    let eye_b = ComplexMatrix::identity(dim_b);
    pauli_matrices().map(|s| spectrum.in_eigenbasis(&kron(s.matrix(), &eye_b)))
}

/// Σ over eigenvalue pairs of weight(pᵢ,pⱼ)·A_l[i][j]·A_k[j][i]. The complex
/// accumulation is real after the conjugate-pair sum; the imaginary residue is
/// asserted tiny and dropped.
fn weighted_overlap_sum(
    p: &[f64],
    sig: &[ComplexMatrix; 3],
    weight: impl Fn(f64, f64) -> Option<f64>,
    skip_diagonal: bool,
) -> [[f64; 3]; 3] {
    let n = p.len();
    let mut acc = [[Complex64::new(0.0, 0.0); 3]; 3];
    for i in 0..n {
        for j in 0..n {
            if skip_diagonal && i == j {
                continue;
            }
            let Some(w) = weight(p[i], p[j]) else { continue };
            for l in 0..3 {
                for k in 0..3 {
                    acc[l][k] += sig[l][(i, j)] * sig[k][(j, i)] * w;
                }
            }
        }
    }
    let mut out = [[0.0; 3]; 3];
    for l in 0..3 {
        for k in 0..3 {
            debug_assert!(
                acc[l][k].im.abs() <= 1e-12,
                "imaginary residue {:.3e} in correlation matrix",
                acc[l][k].im
            );
            out[l][k] = acc[l][k].re;
        }
    }
    out
}

/// W assembled from eigenvalues and precomputed local Pauli elements; split
/// out so degenerate-subspace invariance can be tested on remixed spectra.
fn matrix_w_from_parts(p: &[f64], sig: &[ComplexMatrix; 3]) -> [[f64; 3]; 3] {
    let roots: Vec<f64> = p.iter().map(|&x| x.max(0.0).sqrt()).collect();
    let n = p.len();
    let mut acc = [[Complex64::new(0.0, 0.0); 3]; 3];
    for m in 0..n {
        for nn in 0..n {
            let w = roots[m] * roots[nn];
            if w == 0.0 {
                continue;
            }
            for i in 0..3 {
                for j in 0..3 {
                    acc[i][j] += sig[i][(m, nn)] * sig[j][(nn, m)] * w;
                }
            }
        }
    }
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            debug_assert!(acc[i][j].im.abs() <= 1e-12);
            out[i][j] = acc[i][j].re;
        }
    }
    out
}

fn quadratic_form(m: &[[f64; 3]; 3], dir: &BlochDirection) -> f64 {
    let r = dir.components();
    let mut total = 0.0;
    for l in 0..3 {
        for k in 0..3 {
            total += r[l] * m[l][k] * r[k];
        }
    }
    total
}

fn symmetric_3x3_eigenvalues(m: &[[f64; 3]; 3]) -> [f64; 3] {
    let spec = eigh_3x3(m);
    [spec.eigenvalues()[0], spec.eigenvalues()[1], spec.eigenvalues()[2]]
}

fn eigh_3x3(m: &[[f64; 3]; 3]) -> SpectralDecomposition {
    let mat = ComplexMatrix::from_fn(3, 3, |i, j| {
        // Symmetrize so tiny asymmetries never trip the Hermiticity gate.
        Complex64::new(0.5 * (m[i][j] + m[j][i]), 0.0)
    });
    let h = HermitianOperator::new(mat).expect("symmetrized 3x3 is Hermitian");
    crate::spectral::eigh(&h).expect("3x3 Jacobi converges")
}

/// Largest eigenvalue of a real symmetric 3×3 matrix plus its eigenvector as
/// a Bloch direction. Eigenvalue ties (within 1e-12) are broken by picking
/// the candidate with lexicographically largest (|r₁|, |r₂|, |r₃|); the sign
/// is fixed so the first non-negligible component is positive.
fn max_eigenpair_3x3(m: &[[f64; 3]; 3]) -> (f64, BlochDirection) {
    let spec = eigh_3x3(m);
    let evs = spec.eigenvalues();
    let lambda_max = evs[2];
    let mut best: Option<[f64; 3]> = None;
    for (idx, &ev) in evs.iter().enumerate() {
        if ev < lambda_max - 1e-12 {
            continue;
        }
        let col = spec.eigenvector(idx);
        let cand = [col[0].re, col[1].re, col[2].re];
        let better = match &best {
            None => true,
            Some(b) => {
                let ka = [cand[0].abs(), cand[1].abs(), cand[2].abs()];
                let kb = [b[0].abs(), b[1].abs(), b[2].abs()];
                ka > kb
            }
        };
        if better {
            best = Some(cand);
        }
    }
    let mut r = best.expect("at least one eigenvector");
    if let Some(first) = r.iter().find(|x| x.abs() > 1e-12) {
        if *first < 0.0 {
            for x in &mut r {
                *x = -*x;
            }
        }
    }
    (lambda_max, BlochDirection::new(r).expect("eigenvector has unit norm"))
}
