//! Property tests for the spectral core: round-trips, orthonormality, and
//! algebraic identities on randomly generated matrices.

use num_complex::Complex64;
use proptest::prelude::*;
use qcorr::spectral::{
    eigh, kron, make_density, spectral_fn, ComplexMatrix, HermitianOperator,
};

fn hermitian_strategy(max_dim: usize) -> impl Strategy<Value = HermitianOperator> {
    (2usize..=max_dim)
        .prop_flat_map(|n| {
            let entries = prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0), n * n);
            (Just(n), entries)
        })
        .prop_map(|(n, raw)| {
            let g = ComplexMatrix::from_fn(n, n, |i, j| {
                let (re, im) = raw[i * n + j];
                Complex64::new(re, im)
            });
            // (G + G†)/2 is Hermitian entry-exactly.
            let mut h = ComplexMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    let s = (g[(i, j)] + g[(j, i)].conj()) * 0.5;
                    h[(i, j)] = if i == j { Complex64::new(s.re, 0.0) } else { s };
                }
            }
            HermitianOperator::new(h).expect("symmetrized matrix is Hermitian")
        })
}

fn matrix_strategy(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), n * n).prop_map(move |raw| {
        ComplexMatrix::from_fn(n, n, |i, j| {
            let (re, im) = raw[i * n + j];
            Complex64::new(re, im)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn eigh_roundtrip_reconstructs_input(h in hermitian_strategy(16)) {
        let spec = eigh(&h).unwrap();
        let rebuilt = spec.reconstruct();
        let scale = h.matrix().frobenius_norm().max(1.0);
        prop_assert!((&rebuilt - h.matrix()).max_abs() <= 1e-10 * scale);
    }

    #[test]
    fn eigh_vectors_are_orthonormal(h in hermitian_strategy(16)) {
        let spec = eigh(&h).unwrap();
        let v = spec.eigenvectors();
        let gram = &v.adjoint() * v;
        let eye = ComplexMatrix::identity(h.dim());
        prop_assert!((&gram - &eye).max_abs() <= 1e-10);
    }

    #[test]
    fn eigh_eigenvalues_ascend(h in hermitian_strategy(12)) {
        let spec = eigh(&h).unwrap();
        let evs = spec.eigenvalues();
        prop_assert!(evs.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn spectral_identity_function_is_identity(h in hermitian_strategy(10)) {
        let same = spectral_fn(&h, |x| x).unwrap();
        let scale = h.matrix().frobenius_norm().max(1.0);
        prop_assert!((same.matrix() - h.matrix()).max_abs() <= 1e-12 * scale);
    }

    #[test]
    fn kron_mixed_product_identity(
        a in matrix_strategy(2),
        b in matrix_strategy(3),
        c in matrix_strategy(2),
        d in matrix_strategy(3),
    ) {
        // kron(A,B)·kron(C,D) = kron(AC, BD)
        let lhs = &kron(&a, &b) * &kron(&c, &d);
        let rhs = kron(&(&a * &c), &(&b * &d));
        let scale = lhs.frobenius_norm().max(1.0);
        prop_assert!((&lhs - &rhs).max_abs() <= 1e-10 * scale);
    }

    #[test]
    fn make_density_invariants_hold_under_scaling(
        h in hermitian_strategy(8),
        scale in 0.001f64..1000.0,
    ) {
        // GG†-style PSD input: square the Hermitian matrix.
        let psd = HermitianOperator::new(h.matrix() * h.matrix()).unwrap();
        if psd.trace() <= 1e-300 {
            return Ok(());
        }
        let rho = make_density(psd.scale(scale)).unwrap();
        prop_assert!((rho.operator().trace() - 1.0).abs() <= 1e-12);
        prop_assert!(rho.eigenvalues().iter().all(|&p| p >= 0.0));
        let sum: f64 = rho.eigenvalues().iter().sum();
        prop_assert!((sum - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn sqrt_squares_back_on_psd_input(h in hermitian_strategy(8)) {
        let psd = HermitianOperator::new(h.matrix() * h.matrix()).unwrap();
        let root = qcorr::spectral::sqrt_psd(&psd).unwrap();
        let squared = root.matrix() * root.matrix();
        let scale = psd.matrix().frobenius_norm().max(1.0);
        prop_assert!((&squared - psd.matrix()).max_abs() <= 1e-10 * scale);
    }
}
