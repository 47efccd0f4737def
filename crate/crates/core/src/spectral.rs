//! Dense complex-Hermitian linear algebra at small dimension (≤ 256).
//!
//! Everything downstream (correlation quantifiers, thermal states, oracles)
//! runs on the exact eigendecompositions produced here. The eigensolver is a
//! cyclic Jacobi iteration on the Hermitian matrix: no external dependency,
//! deterministic for identical input bits, and O(n³) per sweep is irrelevant
//! at desk scale.

use num_complex::Complex64;
use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};
use thiserror::Error;

/// Largest matrix dimension the solver accepts.
pub const MAX_DIM: usize = 256;

/// Absolute tolerance on `max |A[i][j] − conj(A[j][i])|`.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Convergence target: off-diagonal Frobenius norm ≤ this times ‖A‖_F.
const JACOBI_REL_TOL: f64 = 1e-13;

/// Sweep bound; cyclic Jacobi converges quadratically, so hitting this
/// signals genuinely ill-conditioned input rather than slow progress.
const JACOBI_MAX_SWEEPS: usize = 64;

/// Eigenvalues in [−EIGENVALUE_CLAMP, 0) count as roundoff and clamp to 0.
pub const EIGENVALUE_CLAMP: f64 = 1e-12;

/// Eigenvalues below this are genuinely non-PSD input, not roundoff.
pub const PSD_HARD_FLOOR: f64 = -1e-8;

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("matrix is not Hermitian: asymmetry {residual:.3e} exceeds 1e-12")]
    NonHermitianInput { residual: f64 },
    #[error("eigensolver failed to converge on a {dim}x{dim} matrix after {sweeps} sweeps")]
    ConvergenceFailure { dim: usize, sweeps: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix dimension {0} exceeds the supported maximum {MAX_DIM}")]
    DimensionTooLarge(usize),
    #[error("trace is too small to normalize against")]
    ZeroTrace,
    #[error("matrix is not positive semidefinite: eigenvalue {min_eigenvalue:.3e}")]
    NotPositive { min_eigenvalue: f64 },
    #[error("spectral function undefined at eigenvalue {eigenvalue:.6e}")]
    DomainError { eigenvalue: f64 },
}

/// Row-major dense complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Build from rows of (re, im) pairs; handy for literals in tests.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let data = rows.iter().flatten().copied().collect();
        Self { rows: r, cols: c, data }
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

    pub fn scale(&self, s: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_complex(&self, s: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// max `|A[i][j] − conj(A[j][i])|` over all entries.
    pub fn hermiticity_residual(&self) -> f64 {
        assert!(self.is_square());
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in 0..=i {
                let d = (self[(i, j)] - self[(j, i)].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "matmul dimension mismatch");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Kronecker product; dimensions multiply.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(a.rows * b.rows, a.cols * b.cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let aij = a[(i, j)];
            if aij.norm_sqr() == 0.0 {
                continue;
            }
            for k in 0..b.rows {
                for l in 0..b.cols {
                    out[(i * b.rows + k, j * b.cols + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Square complex matrix that is Hermitian within [`HERMITICITY_TOL`].
#[derive(Clone, Debug)]
pub struct HermitianOperator {
    mat: ComplexMatrix,
}

impl HermitianOperator {
    pub fn new(mat: ComplexMatrix) -> Result<Self, SpectralError> {
        if !mat.is_square() {
            return Err(SpectralError::DimensionMismatch { left: mat.rows, right: mat.cols });
        }
        if mat.rows > MAX_DIM {
            return Err(SpectralError::DimensionTooLarge(mat.rows));
        }
        let residual = mat.hermiticity_residual();
        if residual > HERMITICITY_TOL {
            return Err(SpectralError::NonHermitianInput { residual });
        }
        Ok(Self { mat })
    }

    pub fn identity(n: usize) -> Self {
        Self { mat: ComplexMatrix::identity(n) }
    }

    pub fn zero(n: usize) -> Self {
        Self { mat: ComplexMatrix::zeros(n, n) }
    }

    pub fn dim(&self) -> usize {
        self.mat.rows
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    /// Real trace (the imaginary part of a Hermitian trace is exactly zero).
    pub fn trace(&self) -> f64 {
        self.mat.trace().re
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { mat: self.mat.scale(s) }
    }

    /// Tensor product of Hermitian operators is Hermitian entry-exactly.
    pub fn kron(&self, other: &Self) -> Self {
        Self { mat: kron(&self.mat, &other.mat) }
    }
}

/// Pauli σ₁ (x).
pub fn pauli_x() -> HermitianOperator {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    HermitianOperator {
        mat: ComplexMatrix::from_rows(&[vec![zero, one], vec![one, zero]]),
    }
}

/// Pauli σ₂ (y).
pub fn pauli_y() -> HermitianOperator {
    let zero = Complex64::new(0.0, 0.0);
    HermitianOperator {
        mat: ComplexMatrix::from_rows(&[
            vec![zero, Complex64::new(0.0, -1.0)],
            vec![Complex64::new(0.0, 1.0), zero],
        ]),
    }
}

/// Pauli σ₃ (z).
pub fn pauli_z() -> HermitianOperator {
    let zero = Complex64::new(0.0, 0.0);
    HermitianOperator {
        mat: ComplexMatrix::from_rows(&[
            vec![Complex64::new(1.0, 0.0), zero],
            vec![zero, Complex64::new(-1.0, 0.0)],
        ]),
    }
}

/// The three Pauli matrices in index order (σ₁, σ₂, σ₃).
pub fn pauli_matrices() -> [HermitianOperator; 3] {
    [pauli_x(), pauli_y(), pauli_z()]
}

/// Eigenvalues (ascending) and orthonormal eigenvectors (columns) of a
/// Hermitian operator.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: ComplexMatrix,
}

impl SpectralDecomposition {
    /// Assemble from raw parts; the caller vouches for orthonormality.
    #[cfg(test)]
    pub(crate) fn from_parts(eigenvalues: Vec<f64>, eigenvectors: ComplexMatrix) -> Self {
        Self { eigenvalues, eigenvectors }
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Column `j` of the eigenvector matrix.
    pub fn eigenvector(&self, j: usize) -> Vec<Complex64> {
        (0..self.dim()).map(|i| self.eigenvectors[(i, j)]).collect()
    }

    pub fn eigenvectors(&self) -> &ComplexMatrix {
        &self.eigenvectors
    }

    /// Transform an operator into this eigenbasis: `V† A V`, so that
    /// entry (i, j) is ⟨ψᵢ|A|ψⱼ⟩.
    pub fn in_eigenbasis(&self, a: &ComplexMatrix) -> ComplexMatrix {
        let av = a * &self.eigenvectors;
        &self.eigenvectors.adjoint() * &av
    }

    /// Σᵢ f(pᵢ)|ψᵢ⟩⟨ψᵢ|, assembled so the result is Hermitian entry-exactly.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.dim();
        let v = &self.eigenvectors;
        let weights: Vec<f64> = self.eigenvalues.iter().map(|&p| f(p)).collect();
        let mut out = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let mut s = Complex64::new(0.0, 0.0);
                for (k, &w) in weights.iter().enumerate() {
                    if w != 0.0 {
                        s += v[(i, k)] * v[(j, k)].conj() * w;
                    }
                }
                if i == j {
                    out[(i, i)] = Complex64::new(s.re, 0.0);
                } else {
                    out[(i, j)] = s;
                    out[(j, i)] = s.conj();
                }
            }
        }
        out
    }

    /// Σᵢ pᵢ|ψᵢ⟩⟨ψᵢ| with the stored eigenvalues.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.reconstruct_with(|p| p)
    }
}

/// Eigendecomposition of a Hermitian operator by cyclic Jacobi rotations.
///
/// Eigenvalues come back ascending; eigenvectors are the matching columns.
/// The rotation order is fixed, so identical input bits give identical
/// output bits.
pub fn eigh(a: &HermitianOperator) -> Result<SpectralDecomposition, SpectralError> {
    let n = a.dim();
    let mut m = a.matrix().clone();
    let mut v = ComplexMatrix::identity(n);

    if n <= 1 {
        let eigenvalues = (0..n).map(|i| m[(i, i)].re).collect();
        return Ok(SpectralDecomposition { eigenvalues, eigenvectors: v });
    }

    let norm = m.frobenius_norm();
    let target = JACOBI_REL_TOL * norm;

    let mut converged = norm == 0.0;
    let mut sweeps = 0usize;
    while !converged {
        if sweeps >= JACOBI_MAX_SWEEPS {
            return Err(SpectralError::ConvergenceFailure { dim: n, sweeps });
        }
        sweeps += 1;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let g = m[(p, q)];
                let r = g.norm();
                if r <= target / (n as f64) {
                    continue;
                }
                // Phase that makes the pivot real, then a real rotation
                // with |θ| ≤ π/4 (the convergent branch).
                let w = g.conj() / r; // e^{-iφ}
                let alpha = m[(p, p)].re;
                let beta = m[(q, q)].re;
                let tau = (beta - alpha) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // A ← A·U with U = [[c, s], [-s·w, c·w]] on columns (p, q).
                for i in 0..n {
                    let aip = m[(i, p)];
                    let aiq = m[(i, q)];
                    m[(i, p)] = aip * c - aiq * (w * s);
                    m[(i, q)] = aip * s + aiq * (w * c);
                }
                // A ← U†·A on rows (p, q).
                let wc = w.conj();
                for j in 0..n {
                    let apj = m[(p, j)];
                    let aqj = m[(q, j)];
                    m[(p, j)] = apj * c - aqj * (wc * s);
                    m[(q, j)] = apj * s + aqj * (wc * c);
                }
                m[(p, q)] = Complex64::new(0.0, 0.0);
                m[(q, p)] = Complex64::new(0.0, 0.0);
                m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
                m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);
                // V ← V·U accumulates eigenvectors as columns.
                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * c - viq * (w * s);
                    v[(i, q)] = vip * s + viq * (w * c);
                }
            }
        }
        let mut off = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    off += m[(i, j)].norm_sqr();
                }
            }
        }
        converged = off.sqrt() <= target;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.partial_cmp(&m[(j, j)].re).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| m[(i, i)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(SpectralDecomposition { eigenvalues, eigenvectors })
}

/// Apply a real function to a Hermitian operator through its spectrum:
/// returns Σᵢ f(pᵢ)|ψᵢ⟩⟨ψᵢ|.
pub fn spectral_fn(
    a: &HermitianOperator,
    f: impl Fn(f64) -> f64,
) -> Result<HermitianOperator, SpectralError> {
    let spec = eigh(a)?;
    for &p in spec.eigenvalues() {
        if !f(p).is_finite() {
            return Err(SpectralError::DomainError { eigenvalue: p });
        }
    }
    Ok(HermitianOperator { mat: spec.reconstruct_with(&f) })
}

/// Square root of a positive-semidefinite operator. Eigenvalues in
/// [−EIGENVALUE_CLAMP, 0) are clamped to zero first; anything smaller is a
/// domain error.
pub fn sqrt_psd(a: &HermitianOperator) -> Result<HermitianOperator, SpectralError> {
    let spec = eigh(a)?;
    for &p in spec.eigenvalues() {
        if p < -EIGENVALUE_CLAMP {
            return Err(SpectralError::DomainError { eigenvalue: p });
        }
    }
    Ok(HermitianOperator { mat: spec.reconstruct_with(|p| p.max(0.0).sqrt()) })
}

/// Unit-trace positive-semidefinite operator with its spectral decomposition
/// cached at construction.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    op: HermitianOperator,
    spectrum: SpectralDecomposition,
}

impl DensityMatrix {
    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn operator(&self) -> &HermitianOperator {
        &self.op
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.op.matrix()
    }

    pub fn spectrum(&self) -> &SpectralDecomposition {
        &self.spectrum
    }

    pub fn eigenvalues(&self) -> &[f64] {
        self.spectrum.eigenvalues()
    }

    /// √ρ from the cached (already clamped) spectrum.
    pub fn sqrt_op(&self) -> HermitianOperator {
        HermitianOperator { mat: self.spectrum.reconstruct_with(|p| p.max(0.0).sqrt()) }
    }

    /// Rank-1 state |ψ⟩⟨ψ| from a (not necessarily normalized) state vector.
    ///
    /// The spectrum is written down exactly — eigenvalue 1 on ψ, zeros on a
    /// Gram-Schmidt completion — rather than recovered by the solver, so the
    /// zero eigenvalues carry no roundoff for √ρ to amplify.
    pub fn pure(psi: &[Complex64]) -> Result<Self, SpectralError> {
        let n = psi.len();
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm <= 1e-300 {
            return Err(SpectralError::ZeroTrace);
        }
        let unit: Vec<Complex64> = psi.iter().map(|z| z / norm).collect();

        // Orthonormal basis with ψ as its final column: drop the standard
        // basis vector with the largest overlap, Gram-Schmidt the rest.
        let pivot = (0..n)
            .max_by(|&a, &b| unit[a].norm().partial_cmp(&unit[b].norm()).unwrap())
            .unwrap();
        let mut columns: Vec<Vec<Complex64>> = Vec::with_capacity(n);
        for k in 0..n {
            if k == pivot {
                continue;
            }
            let mut col = vec![Complex64::new(0.0, 0.0); n];
            col[k] = Complex64::new(1.0, 0.0);
            columns.push(col);
        }
        let mut basis: Vec<Vec<Complex64>> = vec![unit.clone()];
        for mut col in columns {
            for b in &basis {
                let proj: Complex64 = (0..n).map(|i| b[i].conj() * col[i]).sum();
                for i in 0..n {
                    let delta = proj * b[i];
                    col[i] -= delta;
                }
            }
            let cnorm: f64 = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            for z in &mut col {
                *z /= cnorm;
            }
            basis.push(col);
        }
        // Ascending eigenvalues: zeros first, ψ last.
        basis.rotate_left(1);
        let eigenvectors = ComplexMatrix::from_fn(n, n, |i, j| basis[j][i]);
        let mut eigenvalues = vec![0.0; n];
        eigenvalues[n - 1] = 1.0;
        let spectrum = SpectralDecomposition { eigenvalues, eigenvectors };
        let op = HermitianOperator { mat: spectrum.reconstruct() };
        Ok(DensityMatrix { op, spectrum })
    }
}

/// Normalize a Hermitian operator into a density matrix: divide by the trace,
/// clamp roundoff-negative eigenvalues to zero, renormalize, and cache the
/// spectrum. Eigenvalues below [`PSD_HARD_FLOOR`] are rejected as genuinely
/// non-PSD input.
pub fn make_density(a: HermitianOperator) -> Result<DensityMatrix, SpectralError> {
    let tr = a.trace();
    if tr.is_nan() || tr <= 1e-300 {
        return Err(SpectralError::ZeroTrace);
    }
    let normalized = a.scale(1.0 / tr);
    let spec = eigh(&normalized)?;
    let min = spec.eigenvalues().iter().copied().fold(f64::INFINITY, f64::min);
    if min < PSD_HARD_FLOOR {
        return Err(SpectralError::NotPositive { min_eigenvalue: min });
    }
    let clamped: Vec<f64> = spec.eigenvalues().iter().map(|&p| p.max(0.0)).collect();
    let total: f64 = clamped.iter().sum();
    if total.is_nan() || total <= 1e-300 {
        return Err(SpectralError::ZeroTrace);
    }
    let probs: Vec<f64> = clamped.iter().map(|&p| p / total).collect();
    let spectrum = SpectralDecomposition {
        eigenvalues: probs,
        eigenvectors: spec.eigenvectors.clone(),
    };
    let op = HermitianOperator { mat: spectrum.reconstruct() };
    Ok(DensityMatrix { op, spectrum })
}
