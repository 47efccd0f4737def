//! Heisenberg XY Hamiltonians and their two-qubit thermal states, plus the
//! printed closed-form quantifier expressions as a separate "paper-analytic"
//! evaluation path.
//!
//! Two scenarios are covered: the anisotropic XY chain (coupling J fixed to 1,
//! anisotropy γ ∈ [−1, 1]) and the isotropic XY chain in a magnetic field B
//! along z (J free). Temperatures are in units of J/k with k = 1, so β = 1/T
//! exactly. The thermal 4×4 matrices are assembled directly from their
//! cosh/sinh entry patterns; the partition function is always the true trace
//! normalizer (for the field model the printed Z misses a factor of 2, which
//! cancels in every printed ratio expression but not in the matrix itself).

use crate::quantifiers::{self, QuantifierError};
use crate::spectral::{
    eigh, kron, make_density, pauli_matrices, ComplexMatrix, DensityMatrix, HermitianOperator,
    SpectralError,
};
use num_complex::Complex64;
use thiserror::Error;

/// cosh overflows past ~709; β·scale beyond this cannot produce finite states.
const MAX_THERMAL_EXPONENT: f64 = 700.0;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("chain of {0} sites exceeds the supported maximum of 8")]
    SizeTooLarge(usize),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Quantifier(#[from] QuantifierError),
}

fn check_positive_temperature(t: f64) -> Result<(), ModelError> {
    if !t.is_finite() || t <= 0.0 {
        return Err(ModelError::InvalidParameter {
            name: "temperature",
            reason: format!("must be finite and > 0, got {t}"),
        });
    }
    Ok(())
}

fn check_thermal_scale(beta: f64, scale: f64) -> Result<(), ModelError> {
    if beta * scale.max(1.0) > MAX_THERMAL_EXPONENT {
        return Err(ModelError::InvalidParameter {
            name: "temperature",
            reason: format!(
                "β·max(1, couplings) = {:.3e} would overflow cosh; raise T",
                beta * scale.max(1.0)
            ),
        });
    }
    Ok(())
}

/// Anisotropic XY chain parameters: J = 1, |γ| ≤ 1, T > 0.
#[derive(Clone, Copy, Debug)]
pub struct AnisotropicXyParams {
    gamma: f64,
    temperature: f64,
}

impl AnisotropicXyParams {
    pub fn new(gamma: f64, temperature: f64) -> Result<Self, ModelError> {
        if !(-1.0..=1.0).contains(&gamma) {
            return Err(ModelError::InvalidParameter {
                name: "gamma",
                reason: format!("anisotropy must lie in [-1, 1], got {gamma}"),
            });
        }
        check_positive_temperature(temperature)?;
        check_thermal_scale(1.0 / temperature, 1.0)?;
        Ok(Self { gamma, temperature })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn beta(&self) -> f64 {
        1.0 / self.temperature
    }

    /// Thermal state; see [`xy_anisotropic_state`].
    pub fn state(&self) -> DensityMatrix {
        xy_anisotropic_state(self)
    }
}

/// Isotropic XY chain in a z-field: coupling J, field B, T > 0.
#[derive(Clone, Copy, Debug)]
pub struct IsotropicFieldParams {
    coupling: f64,
    field: f64,
    temperature: f64,
}

impl IsotropicFieldParams {
    pub fn new(coupling: f64, field: f64, temperature: f64) -> Result<Self, ModelError> {
        if !coupling.is_finite() {
            return Err(ModelError::InvalidParameter {
                name: "coupling",
                reason: format!("must be finite, got {coupling}"),
            });
        }
        if !field.is_finite() {
            return Err(ModelError::InvalidParameter {
                name: "field",
                reason: format!("must be finite, got {field}"),
            });
        }
        check_positive_temperature(temperature)?;
        check_thermal_scale(1.0 / temperature, coupling.abs().max(field.abs()))?;
        Ok(Self { coupling, field, temperature })
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn field(&self) -> f64 {
        self.field
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn beta(&self) -> f64 {
        1.0 / self.temperature
    }

    /// Thermal state; see [`xy_isotropic_field_state`].
    pub fn state(&self) -> DensityMatrix {
        xy_isotropic_field_state(self)
    }
}

/// Periodic N-qubit chain parameters for the general Hamiltonian builder.
#[derive(Clone, Copy, Debug)]
pub struct ChainParams {
    pub n_sites: usize,
    pub jx: f64,
    pub jy: f64,
    pub jz: f64,
    pub periodic: bool,
}

impl ChainParams {
    pub fn new(n_sites: usize, jx: f64, jy: f64, jz: f64, periodic: bool) -> Result<Self, ModelError> {
        if !(2..=8).contains(&n_sites) {
            return Err(if n_sites > 8 {
                ModelError::SizeTooLarge(n_sites)
            } else {
                ModelError::InvalidParameter {
                    name: "n_sites",
                    reason: format!("need at least 2 sites, got {n_sites}"),
                }
            });
        }
        Ok(Self { n_sites, jx, jy, jz, periodic })
    }
}

/// General N-qubit Heisenberg chain
/// H = (1/4)·Σᵢ (Jx σᵢˣσᵢ₊₁ˣ + Jy σᵢʸσᵢ₊₁ʸ + Jz σᵢᶻσᵢ₊₁ᶻ),
/// with the (N+1)-th site identified with the first when periodic.
///
/// At N = 2 the periodic sum visits the single bond twice, which together
/// with the 1/4 prefactor reproduces the two-qubit form with couplings
/// J = (Jx+Jy)/2 and Jγ = (Jx−Jy)/2 — the same spectrum {±J, ±Jγ} as
/// [`xy_anisotropic_hamiltonian`]. The open chain keeps the bond once.
pub fn chain_hamiltonian(p: &ChainParams) -> Result<HermitianOperator, ModelError> {
    let n = p.n_sites;
    if !(2..=8).contains(&n) {
        return Err(ModelError::SizeTooLarge(n));
    }
    let dim = 1usize << n;
    let paulis = pauli_matrices();
    let couplings = [p.jx, p.jy, p.jz];

    let mut h = ComplexMatrix::zeros(dim, dim);
    let last_bond = if p.periodic { n } else { n - 1 };
    for site in 0..last_bond {
        let next = (site + 1) % n;
        for (axis, &j) in couplings.iter().enumerate() {
            if j == 0.0 {
                continue;
            }
            let term = two_site_operator(n, site, next, paulis[axis].matrix());
            h = &h + &term.scale(0.25 * j);
        }
    }
    Ok(HermitianOperator::new(h)?)
}

/// σ at `site_a` and `site_b`, identity elsewhere, on an n-qubit register.
fn two_site_operator(
    n: usize,
    site_a: usize,
    site_b: usize,
    sigma: &ComplexMatrix,
) -> ComplexMatrix {
    let mut out = ComplexMatrix::identity(1);
    for site in 0..n {
        let factor = if site == site_a || site == site_b {
            sigma.clone()
        } else {
            ComplexMatrix::identity(2)
        };
        out = kron(&out, &factor);
    }
    out
}

/// Two-qubit anisotropic XY Hamiltonian with J = 1:
/// couples |01⟩↔|10⟩ with strength 1 and |00⟩↔|11⟩ with strength γ,
/// so the spectrum is {±1, ±γ} on the Bell basis.
pub fn xy_anisotropic_hamiltonian(gamma: f64) -> HermitianOperator {
    let mut h = ComplexMatrix::zeros(4, 4);
    let one = Complex64::new(1.0, 0.0);
    h[(1, 2)] = one;
    h[(2, 1)] = one;
    h[(0, 3)] = Complex64::new(gamma, 0.0);
    h[(3, 0)] = Complex64::new(gamma, 0.0);
    HermitianOperator::new(h).expect("XY Hamiltonian is Hermitian")
}

/// Two-qubit isotropic XY Hamiltonian with a z-field:
/// spectrum {B, −B, ±J} on {|00⟩, |11⟩, Bell ψ±}.
pub fn xy_isotropic_field_hamiltonian(coupling: f64, field: f64) -> HermitianOperator {
    let mut h = ComplexMatrix::zeros(4, 4);
    h[(0, 0)] = Complex64::new(field, 0.0);
    h[(3, 3)] = Complex64::new(-field, 0.0);
    h[(1, 2)] = Complex64::new(coupling, 0.0);
    h[(2, 1)] = Complex64::new(coupling, 0.0);
    HermitianOperator::new(h).expect("XY+field Hamiltonian is Hermitian")
}

/// Thermal state of [`xy_anisotropic_hamiltonian`] assembled from its
/// closed-form entries: diagonal (cosh γβ, cosh β, cosh β, cosh γβ)/Z and
/// anti-diagonal (−sinh γβ, −sinh β, −sinh β, −sinh γβ)/Z with
/// Z = 2(cosh β + cosh γβ).
pub fn xy_anisotropic_state(p: &AnisotropicXyParams) -> DensityMatrix {
    let beta = p.beta();
    let g = p.gamma;
    let z = 2.0 * (beta.cosh() + (g * beta).cosh());
    let mut m = ComplexMatrix::zeros(4, 4);
    let put = |m: &mut ComplexMatrix, i: usize, j: usize, x: f64| {
        m[(i, j)] = Complex64::new(x / z, 0.0);
    };
    put(&mut m, 0, 0, (g * beta).cosh());
    put(&mut m, 3, 3, (g * beta).cosh());
    put(&mut m, 1, 1, beta.cosh());
    put(&mut m, 2, 2, beta.cosh());
    put(&mut m, 0, 3, -(g * beta).sinh());
    put(&mut m, 3, 0, -(g * beta).sinh());
    put(&mut m, 1, 2, -beta.sinh());
    put(&mut m, 2, 1, -beta.sinh());
    let op = HermitianOperator::new(m).expect("thermal matrix is Hermitian");
    make_density(op).expect("thermal state is PSD with unit trace")
}

/// Thermal state of [`xy_isotropic_field_hamiltonian`]: diagonal
/// (e^{−Bβ}, cosh Jβ, cosh Jβ, e^{Bβ})/Z, central anti-diagonal −sinh(Jβ)/Z,
/// with Z the true trace 2(cosh Bβ + cosh Jβ).
pub fn xy_isotropic_field_state(p: &IsotropicFieldParams) -> DensityMatrix {
    let beta = p.beta();
    let b = p.field * beta;
    let j = p.coupling * beta;
    let z = 2.0 * (b.cosh() + j.cosh());
    let mut m = ComplexMatrix::zeros(4, 4);
    m[(0, 0)] = Complex64::new((-b).exp() / z, 0.0);
    m[(3, 3)] = Complex64::new(b.exp() / z, 0.0);
    m[(1, 1)] = Complex64::new(j.cosh() / z, 0.0);
    m[(2, 2)] = Complex64::new(j.cosh() / z, 0.0);
    m[(1, 2)] = Complex64::new(-j.sinh() / z, 0.0);
    m[(2, 1)] = Complex64::new(-j.sinh() / z, 0.0);
    let op = HermitianOperator::new(m).expect("thermal matrix is Hermitian");
    make_density(op).expect("thermal state is PSD with unit trace")
}

/// Gibbs state exp(−βH)/Z for an arbitrary Hermitian H, computed through the
/// spectrum with the ground energy shifted out so large β stays finite.
pub fn gibbs_state(h: &HermitianOperator, beta: f64) -> Result<DensityMatrix, ModelError> {
    if !beta.is_finite() || beta <= 0.0 {
        return Err(ModelError::InvalidParameter {
            name: "beta",
            reason: format!("must be finite and > 0, got {beta}"),
        });
    }
    let spec = eigh(h)?;
    let e0 = spec.eigenvalues().iter().copied().fold(f64::INFINITY, f64::min);
    let weights = spec.reconstruct_with(|e| (-beta * (e - e0)).exp());
    Ok(make_density(HermitianOperator::new(weights)?)?)
}

/// Numerically stable sech.
fn sech(x: f64) -> f64 {
    let e = (-x.abs()).exp();
    2.0 * e / (1.0 + e * e)
}

/// Printed M diagonal for the anisotropic model:
/// (sech²((1−γ)β/2), sech²((1+γ)β/2), sech β · sech γβ).
pub fn paper_matrix_m_diag_anisotropic(p: &AnisotropicXyParams) -> [f64; 3] {
    let beta = p.beta();
    let g = p.gamma;
    [
        sech((1.0 - g) * beta / 2.0).powi(2),
        sech((1.0 + g) * beta / 2.0).powi(2),
        sech(beta) * sech(g * beta),
    ]
}

/// Printed W diagonal for the anisotropic model (ω₁₁, ω₂₂, ω₃₃), evaluated
/// exactly as the cosh/sinh/sqrt expressions are written.
pub fn paper_matrix_w_diag_anisotropic(p: &AnisotropicXyParams) -> [f64; 3] {
    let beta = p.beta();
    let g = p.gamma;
    let cb = beta.cosh();
    let cg = (g * beta).cosh();
    let root = ((cb + 1.0) * (cg + 1.0)).sqrt();
    let denom = (cg + cb) * root;
    let cross = (g * beta).sinh() * beta.sinh();
    [
        ((cb + 1.0) * (cg + 1.0) + cross) / denom,
        ((cb + 1.0) * (cg + 1.0) - cross) / denom,
        2.0 / (cg + cb),
    ]
}

/// Printed piecewise LQFI for the anisotropic model: 1 − M₂₂ on γ ∈ [−1, 0],
/// 1 − M₁₁ on γ ∈ [0, 1]; continuous at γ = 0. Clamped to [0, 1] against
/// float noise at the boundaries.
pub fn paper_lqfi_anisotropic(p: &AnisotropicXyParams) -> f64 {
    let [m11, m22, _] = paper_matrix_m_diag_anisotropic(p);
    let q = if p.gamma >= 0.0 { 1.0 - m11 } else { 1.0 - m22 };
    q.clamp(0.0, 1.0)
}

/// Printed piecewise LQU for the anisotropic model: 1 − ω₁₁ on γ ∈ [0, 1],
/// 1 − ω₂₂ on γ ∈ [−1, 0]. Clamped to [0, 1].
pub fn paper_lqu_anisotropic(p: &AnisotropicXyParams) -> f64 {
    let [w11, w22, _] = paper_matrix_w_diag_anisotropic(p);
    let u = if p.gamma >= 0.0 { 1.0 - w11 } else { 1.0 - w22 };
    u.clamp(0.0, 1.0)
}

/// Scaled hyperbolic helpers for the field model: every printed ratio is
/// rewritten with exp of non-positive arguments so large Bβ stays finite.
struct FieldScales {
    /// max(|Bβ|, |Jβ|)
    m: f64,
    /// cosh(Bβ)·e^{−m}
    cb: f64,
    /// cosh(Jβ)·e^{−m}
    cj: f64,
}

impl FieldScales {
    fn new(p: &IsotropicFieldParams) -> Self {
        let beta = p.beta();
        let b = (p.field * beta).abs();
        let j = (p.coupling * beta).abs();
        let m = b.max(j);
        let scaled_cosh = |x: f64| 0.5 * ((x - m).exp() + (-x - m).exp());
        Self { m, cb: scaled_cosh(b), cj: scaled_cosh(j) }
    }
}

/// Printed M₁₁ = M₂₂ for the field model:
/// 2(1 + cosh Bβ · cosh Jβ)/(cosh Bβ + cosh Jβ)².
pub fn paper_m11_isotropic_field(p: &IsotropicFieldParams) -> f64 {
    let s = FieldScales::new(p);
    let denom = (s.cb + s.cj) * (s.cb + s.cj);
    2.0 * ((-2.0 * s.m).exp() + s.cb * s.cj) / denom
}

/// Printed M₃₃ for the field model, verbatim:
/// sech(Jβ)/(4(cosh Bβ + cosh Jβ)). Kept for completeness; never used to
/// decide the maximum (the printed derivation itself selects M₁₁).
pub fn paper_m33_isotropic_field(p: &IsotropicFieldParams) -> f64 {
    let beta = p.beta();
    let s = FieldScales::new(p);
    sech(p.coupling * beta) * (-s.m).exp() / (4.0 * (s.cb + s.cj))
}

/// Printed ω₁₁ = ω₂₂ for the field model:
/// √((cosh Bβ + 1)(cosh Jβ + 1))/(cosh Bβ + cosh Jβ).
pub fn paper_w11_isotropic_field(p: &IsotropicFieldParams) -> f64 {
    let s = FieldScales::new(p);
    let em = (-s.m).exp();
    ((s.cb + em) * (s.cj + em)).sqrt() / (s.cb + s.cj)
}

/// Printed ω₃₃ for the field model, verbatim: 2/(cosh Bβ + cosh Jβ).
pub fn paper_w33_isotropic_field(p: &IsotropicFieldParams) -> f64 {
    let s = FieldScales::new(p);
    2.0 * (-s.m).exp() / (s.cb + s.cj)
}

/// Printed LQFI for the field model, evaluated verbatim. This is the
/// paper-analytic path: for B > J at low temperature it diverges from the
/// general-engine value (the thermal ground state turns into a product
/// state); the audit reports that gap rather than reconciling it.
pub fn paper_lqfi_isotropic_field(p: &IsotropicFieldParams) -> f64 {
    (1.0 - paper_m11_isotropic_field(p)).clamp(0.0, 1.0)
}

/// Printed LQU for the field model, evaluated verbatim; same divergence
/// caveat as [`paper_lqfi_isotropic_field`].
pub fn paper_lqu_isotropic_field(p: &IsotropicFieldParams) -> f64 {
    (1.0 - paper_w11_isotropic_field(p)).clamp(0.0, 1.0)
}

/// General-engine LQFI of the anisotropic thermal state.
pub fn numeric_lqfi_anisotropic(p: &AnisotropicXyParams) -> Result<f64, ModelError> {
    Ok(quantifiers::lqfi(&p.state())?.0)
}

/// General-engine LQU of the anisotropic thermal state.
pub fn numeric_lqu_anisotropic(p: &AnisotropicXyParams) -> Result<f64, ModelError> {
    Ok(quantifiers::lqu(&p.state())?.0)
}

/// General-engine LQFI of the field-model thermal state.
pub fn numeric_lqfi_isotropic_field(p: &IsotropicFieldParams) -> Result<f64, ModelError> {
    Ok(quantifiers::lqfi(&p.state())?.0)
}

/// General-engine LQU of the field-model thermal state.
pub fn numeric_lqu_isotropic_field(p: &IsotropicFieldParams) -> Result<f64, ModelError> {
    Ok(quantifiers::lqu(&p.state())?.0)
}
