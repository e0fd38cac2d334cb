use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::operator::Operator;
use super::state::DensityMatrix;
use super::CMatrix;
use crate::constants::OPERATOR_TOL;
use crate::error::{Error, Result};

/// Spectrum of a Hermitian operator.
#[derive(Clone, Debug)]
pub struct Eigen {
    /// Ascending eigenvalues.
    pub values: Vec<f64>,
    /// Unitary whose columns are the matching eigenvectors.
    pub vectors: Operator,
}

/// Hermitian eigendecomposition `op = U diag(λ) U†` with ascending `λ`.
pub fn eig_h(op: &Operator) -> Result<Eigen> {
    let dev = op.hermitian_deviation();
    if dev > OPERATOR_TOL {
        return Err(Error::NotHermitian(dev));
    }
    let (values, vectors) = hermitian_eigen(op.matrix());
    Ok(Eigen {
        values,
        vectors: Operator::new(op.space().clone(), vectors)?,
    })
}

/// Eigendecomposition of the Hermitian part of `m`, sorted ascending.
pub(crate) fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = m.nrows();
    if n == 0 {
        return (Vec::new(), DMatrix::zeros(0, 0));
    }
    let herm = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(herm);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Sum of the magnitudes of the off-diagonal entries of `U† ρ U`.
///
/// With `basis` the eigenvectors of a Hamiltonian this measures the
/// coherence left between energy eigenstates.
pub fn coherence_weight(rho: &DensityMatrix, basis: &Operator) -> Result<f64> {
    if basis.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: basis.dim(),
        });
    }
    let u = basis.matrix();
    let rotated = u.adjoint() * rho.matrix() * u;
    let n = rotated.nrows();
    let mut total = 0.0;
    for j in 0..n {
        for i in 0..n {
            if i != j {
                total += rotated[(i, j)].norm();
            }
        }
    }
    Ok(total)
}
