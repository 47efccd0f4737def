//! Discord-like quantum correlation quantifiers for 2×d bipartite states.
//!
//! The crate computes local quantum Fisher information (LQFI) and local
//! quantum uncertainty (LQU) from exact eigendecompositions, builds thermal
//! states of two-qubit XY chains, and ships brute-force oracles that verify
//! every fast path.
//!
//! Modules:
//! - [`spectral`] — dense complex-Hermitian linear algebra (Jacobi eigensolver,
//!   spectral functions, tensor products, density-matrix normalization).
//! - [`quantifiers`] — QFI, skew information, the 3×3 correlation matrices
//!   M and W, LQFI/LQU, inequality audits, and the Cramér–Rao bound.
//! - [`models`] — Heisenberg chain Hamiltonians, thermal Gibbs states for the
//!   anisotropic XY and isotropic-XY-with-field scenarios, and their printed
//!   closed-form quantifier expressions as a separate analytic path.
//! - [`oracle`] — independent verifiers: Bloch-sphere brute-force minimization,
//!   SLD-based QFI, commutator-trace skew information.
//! - [`random`] — seeded generators for random states, unitaries, and
//!   directions used by the verification suites.

pub mod models;
pub mod oracle;
pub mod quantifiers;
pub mod random;
pub mod spectral;

pub use num_complex::Complex64;

pub use quantifiers::{
    audit_inequalities, cramer_rao_bound, lqfi, lqu, matrix_m, matrix_w, qfi, qfi_local,
    skew_information, BlochDirection, CorrelationMatrixM, CorrelationMatrixW, CorrelationReport,
    CramerRaoQuery, MatrixConvention,
};
pub use spectral::{
    eigh, kron, make_density, spectral_fn, sqrt_psd, ComplexMatrix, DensityMatrix,
    HermitianOperator, SpectralDecomposition, SpectralError,
};
