#![allow(dead_code)]

use edeco::quantum::{c, eig_h, CMatrix, DensityMatrix, HilbertSpace, Operator, PureState};
use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    let a = DMatrix::from_fn(n, n, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    (&a + a.adjoint()) * c(0.5, 0.0)
}

/// Haar-ish unitary from the eigenvectors of a random Hermitian matrix.
pub fn random_unitary(rng: &mut ChaCha8Rng, space: &HilbertSpace) -> Operator {
    let h = Operator::new(space.clone(), random_hermitian(rng, space.dim())).unwrap();
    eig_h(&h).unwrap().vectors
}

/// `U diag(values) U†`.
pub fn in_basis(u: &Operator, values: &[f64]) -> Operator {
    let d = DMatrix::from_diagonal(&DVector::from_iterator(values.len(), values.iter().map(|&v| c(v, 0.0))));
    let m = u.matrix() * d * u.matrix().adjoint();
    let m = (&m + m.adjoint()) * c(0.5, 0.0);
    Operator::new(u.space().clone(), m).unwrap()
}

pub fn random_state(rng: &mut ChaCha8Rng, space: &HilbertSpace, rank: usize) -> DensityMatrix {
    let parts: Vec<(f64, DensityMatrix)> = (0..rank)
        .map(|_| {
            let v = DVector::from_fn(space.dim(), |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            (1.0 / rank as f64, PureState::normalized(space.clone(), v).unwrap().to_density())
        })
        .collect();
    DensityMatrix::mixture(&parts).unwrap()
}

/// Spectrum with deliberate degeneracies: `levels` distinct values.
pub fn degenerate_spectrum(rng: &mut ChaCha8Rng, n: usize, levels: usize) -> Vec<f64> {
    let values: Vec<f64> = (0..levels).map(|_| rng.gen_range(-1.0..1.0)).collect();
    (0..n).map(|i| values[i % levels]).collect()
}

pub fn check_state(rho: &DensityMatrix) {
    assert!((rho.trace().re - 1.0).abs() <= 1e-10, "trace {}", rho.trace());
    assert!(rho.hermitian_deviation() <= 1e-10);
    assert!(rho.is_positive(1e-9), "min eig {}", rho.min_eigenvalue());
}
