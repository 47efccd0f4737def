//! Random states, unitaries, and directions for the verification suites.
//!
//! Density matrices come from the Ginibre construction GG†/Tr(GG†), which is
//! the partial trace of a random purification with a full-rank ancilla.

use crate::quantifiers::BlochDirection;
use crate::spectral::{kron, make_density, ComplexMatrix, DensityMatrix, HermitianOperator};
use num_complex::Complex64;
use rand::Rng;
use std::f64::consts::TAU;

/// Standard normal via Box-Muller.
pub fn standard_normal(rng: &mut impl Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (TAU * u2).cos()
}

fn complex_normal(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(standard_normal(rng), standard_normal(rng))
}

/// n×n matrix of independent complex Gaussians.
pub fn ginibre(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |_, _| complex_normal(rng))
}

/// Random full-rank density matrix from the Hilbert-Schmidt ensemble.
pub fn density(rng: &mut impl Rng, dim: usize) -> DensityMatrix {
    loop {
        let g = ginibre(rng, dim);
        let rho = &g * &g.adjoint();
        if let Ok(dm) = make_density(HermitianOperator::new(rho).expect("GG† is Hermitian")) {
            return dm;
        }
    }
}

/// Random pure state vector, normalized.
pub fn pure_state(rng: &mut impl Rng, dim: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..dim).map(|_| complex_normal(rng)).collect();
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Random unitary: modified Gram-Schmidt on a Ginibre matrix.
pub fn unitary(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    loop {
        let g = ginibre(rng, n);
        if let Some(q) = gram_schmidt(&g) {
            return q;
        }
    }
}

fn gram_schmidt(g: &ComplexMatrix) -> Option<ComplexMatrix> {
    let n = g.rows();
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|j| (0..n).map(|i| g[(i, j)]).collect())
        .collect();
    for j in 0..n {
        for k in 0..j {
            let proj: Complex64 =
                cols[k].iter().zip(&cols[j]).map(|(a, b)| a.conj() * b).sum();
            let scaled: Vec<Complex64> = cols[k].iter().map(|z| proj * z).collect();
            for (t, delta) in cols[j].iter_mut().zip(scaled) {
                *t -= delta;
            }
        }
        let norm: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            return None;
        }
        for z in &mut cols[j] {
            *z /= norm;
        }
    }
    Some(ComplexMatrix::from_fn(n, n, |i, j| cols[j][i]))
}

/// Uniformly distributed Bloch direction.
pub fn direction(rng: &mut impl Rng) -> BlochDirection {
    loop {
        let r = [
            standard_normal(rng),
            standard_normal(rng),
            standard_normal(rng),
        ];
        if let Ok(d) = BlochDirection::new(r) {
            return d;
        }
    }
}

/// Random classical-quantum (zero-discord) state
/// q·|u₀⟩⟨u₀|⊗ρ₀ + (1−q)·|u₁⟩⟨u₁|⊗ρ₁ with {|u₀⟩, |u₁⟩} a random
/// orthonormal qubit basis.
pub fn classical_quantum(rng: &mut impl Rng, dim_b: usize) -> DensityMatrix {
    let basis = unitary(rng, 2);
    let q: f64 = rng.gen_range(0.0..=1.0);
    let weights = [q, 1.0 - q];
    let mut total = ComplexMatrix::zeros(2 * dim_b, 2 * dim_b);
    for (k, &w) in weights.iter().enumerate() {
        let mut proj = ComplexMatrix::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                proj[(i, j)] = basis[(i, k)] * basis[(j, k)].conj();
            }
        }
        let rho_b = density(rng, dim_b);
        total = &total + &kron(&proj, rho_b.matrix()).scale(w);
    }
    make_density(HermitianOperator::new(total).expect("CQ mixture is Hermitian"))
        .expect("CQ mixture is PSD")
}

/// U_A ⊗ U_B with independent Haar-ish factors.
pub fn local_unitary(rng: &mut impl Rng, dim_b: usize) -> ComplexMatrix {
    kron(&unitary(rng, 2), &unitary(rng, dim_b))
}

/// Conjugate a state by a unitary: UρU†.
pub fn conjugate(rho: &DensityMatrix, u: &ComplexMatrix) -> DensityMatrix {
    let m = &(u * rho.matrix()) * &u.adjoint();
    make_density(HermitianOperator::new(m).expect("conjugation preserves Hermiticity"))
        .expect("conjugation preserves positivity")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn density_is_normalized_and_psd() {
        let mut rng = StdRng::seed_from_u64(1);
        for dim in [2, 4, 6] {
            let rho = density(&mut rng, dim);
            assert!((rho.operator().trace() - 1.0).abs() < 1e-12);
            assert!(rho.eigenvalues().iter().all(|&p| p >= 0.0));
        }
    }

    #[test]
    fn unitary_is_unitary() {
        let mut rng = StdRng::seed_from_u64(2);
        for n in [2, 3, 4] {
            let u = unitary(&mut rng, n);
            let gram = &u.adjoint() * &u;
            assert!((&gram - &ComplexMatrix::identity(n)).max_abs() < 1e-10);
        }
    }

    #[test]
    fn conjugation_keeps_spectrum() {
        let mut rng = StdRng::seed_from_u64(3);
        let rho = density(&mut rng, 4);
        let u = local_unitary(&mut rng, 2);
        let sigma = conjugate(&rho, &u);
        for (a, b) in rho.eigenvalues().iter().zip(sigma.eigenvalues()) {
            assert!((a - b).abs() < 1e-10);
        }
    }
}
