use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::operator::{check_square, Operator};
use super::space::HilbertSpace;
use super::{frobenius, hermitian_eigen, CMatrix, CVector};
use crate::constants::{HERM_TOL, NORM_TOL, PSD_TOL, TRACE_TOL};
use crate::error::{Error, Result};

/// Normalized state vector.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    space: HilbertSpace,
    amplitudes: CVector,
}

impl PureState {
    /// Wraps amplitudes whose 2-norm is one within `NORM_TOL`.
    pub fn new(space: HilbertSpace, amplitudes: CVector) -> Result<Self> {
        check_len(&space, amplitudes.len())?;
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { space, amplitudes })
    }

    /// Rescales arbitrary non-zero amplitudes to unit norm.
    pub fn normalized(space: HilbertSpace, amplitudes: CVector) -> Result<Self> {
        check_len(&space, amplitudes.len())?;
        let norm = amplitudes.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self {
            space,
            amplitudes: amplitudes / Complex64::new(norm, 0.0),
        })
    }

    pub fn basis(space: &HilbertSpace, index: usize) -> Result<Self> {
        check_index(space, index)?;
        let mut amplitudes = DVector::zeros(space.dim());
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self {
            space: space.clone(),
            amplitudes,
        })
    }

    /// Product basis state given one digit per factor.
    pub fn basis_digits(space: &HilbertSpace, digits: &[usize]) -> Result<Self> {
        Self::basis(space, space.index(digits)?)
    }

    pub fn space(&self) -> &HilbertSpace {
        &self.space
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn overlap(&self, other: &PureState) -> Result<Complex64> {
        if self.space != other.space {
            return Err(Error::DimensionMismatch {
                expected: self.space.dim(),
                found: other.space.dim(),
            });
        }
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &PureState) -> Result<f64> {
        Ok(self.overlap(other)?.norm_sqr())
    }

    pub fn apply(&self, op: &Operator) -> Result<CVector> {
        check_len(op.space(), self.amplitudes.len())?;
        Ok(op.matrix() * &self.amplitudes)
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix {
            space: self.space.clone(),
            matrix: &self.amplitudes * self.amplitudes.adjoint(),
        }
    }

    pub fn relabeled<S: AsRef<str>>(&self, labels: &[S]) -> Result<Self> {
        Ok(Self {
            space: self.space.relabeled(labels)?,
            amplitudes: self.amplitudes.clone(),
        })
    }
}

/// Density matrix on a labelled Hilbert space.
///
/// Construction only checks the shape. Physical validity is checked
/// explicitly with [`DensityMatrix::validate`], so integrator intermediates
/// may carry small violations.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    space: HilbertSpace,
    matrix: CMatrix,
}

impl DensityMatrix {
    pub fn new(space: HilbertSpace, matrix: CMatrix) -> Result<Self> {
        check_square(&space, &matrix)?;
        Ok(Self { space, matrix })
    }

    pub fn from_diagonal(space: &HilbertSpace, populations: &[f64]) -> Result<Self> {
        check_len(space, populations.len())?;
        let diag = DVector::from_iterator(
            populations.len(),
            populations.iter().map(|p| Complex64::new(*p, 0.0)),
        );
        Ok(Self {
            space: space.clone(),
            matrix: DMatrix::from_diagonal(&diag),
        })
    }

    /// Maximally mixed state.
    pub fn maximally_mixed(space: &HilbertSpace) -> Self {
        let n = space.dim();
        Self {
            space: space.clone(),
            matrix: DMatrix::identity(n, n) / Complex64::new(n as f64, 0.0),
        }
    }

    /// Weighted mixture of states on the same space.
    pub fn mixture(parts: &[(f64, DensityMatrix)]) -> Result<Self> {
        let (_, first) = parts.first().ok_or(Error::Empty("mixture components"))?;
        let mut matrix = DMatrix::zeros(first.space.dim(), first.space.dim());
        for (w, rho) in parts {
            if rho.space != first.space {
                return Err(Error::DimensionMismatch {
                    expected: first.space.dim(),
                    found: rho.space.dim(),
                });
            }
            matrix += &rho.matrix * Complex64::new(*w, 0.0);
        }
        Ok(Self {
            space: first.space.clone(),
            matrix,
        })
    }

    pub fn space(&self) -> &HilbertSpace {
        &self.space
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    pub fn purity(&self) -> f64 {
        // tr(ρ²) = Σ |ρ_ij|² for Hermitian ρ
        self.matrix.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `‖ρ − ρ†‖_F / ‖ρ‖_F`.
    pub fn hermitian_deviation(&self) -> f64 {
        let scale = frobenius(&self.matrix).max(f64::MIN_POSITIVE);
        frobenius(&(&self.matrix - self.matrix.adjoint())) / scale
    }

    pub fn min_eigenvalue(&self) -> f64 {
        let herm = (&self.matrix + self.matrix.adjoint()) * Complex64::new(0.5, 0.0);
        let (values, _) = hermitian_eigen(&herm);
        values.first().copied().unwrap_or(0.0)
    }

    /// True when every eigenvalue is at least `−tol`, decided by a Cholesky
    /// factorization of `ρ + tol·1`; much cheaper than the spectrum.
    pub fn is_positive(&self, tol: f64) -> bool {
        let n = self.dim();
        let mut a = (&self.matrix + self.matrix.adjoint()) * Complex64::new(0.5, 0.0);
        for i in 0..n {
            a[(i, i)] += tol;
        }
        // Right-looking factorization on the lower triangle. nalgebra's
        // complex Cholesky takes complex square roots of the pivots, so it
        // would accept indefinite matrices.
        for j in 0..n {
            let pivot = a[(j, j)].re;
            if !(pivot > 0.0) {
                return false;
            }
            let root = pivot.sqrt();
            for i in j..n {
                a[(i, j)] /= root;
            }
            for l in j + 1..n {
                let f = a[(l, j)].conj();
                if f == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for i in l..n {
                    let lij = a[(i, j)];
                    a[(i, l)] -= lij * f;
                }
            }
        }
        true
    }

    /// Checks Hermiticity, unit trace and positivity at the crate tolerances.
    pub fn validate(&self) -> Result<()> {
        let dev = self.hermitian_deviation();
        if dev > HERM_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "not Hermitian (relative deviation {dev:.3e})"
            )));
        }
        let tr = self.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidDensityMatrix(format!("trace {tr}")));
        }
        if !self.is_positive(PSD_TOL) {
            return Err(Error::InvalidDensityMatrix(format!(
                "smallest eigenvalue {:.3e}",
                self.min_eigenvalue()
            )));
        }
        Ok(())
    }

    pub fn expectation(&self, op: &Operator) -> Result<Complex64> {
        if op.space() != &self.space {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: op.dim(),
            });
        }
        // tr(Aρ) = Σ_ij A_ij ρ_ji
        let a = op.matrix();
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                acc += a[(i, j)] * self.matrix[(j, i)];
            }
        }
        Ok(acc)
    }

    /// Diagonal in the computational basis.
    pub fn populations(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.matrix[(i, i)].re).collect()
    }

    /// `U ρ U†`.
    pub fn conjugated(&self, unitary: &Operator) -> Result<Self> {
        if unitary.space() != &self.space {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: unitary.dim(),
            });
        }
        let u = unitary.matrix();
        Ok(Self {
            space: self.space.clone(),
            matrix: u * &self.matrix * u.adjoint(),
        })
    }

    pub fn relabeled<S: AsRef<str>>(&self, labels: &[S]) -> Result<Self> {
        Ok(Self {
            space: self.space.relabeled(labels)?,
            matrix: self.matrix.clone(),
        })
    }

    /// Frobenius distance to another state on the same space.
    pub fn distance(&self, other: &DensityMatrix) -> Result<f64> {
        if self.space != other.space {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(frobenius(&(&self.matrix - &other.matrix)))
    }
}

fn check_len(space: &HilbertSpace, len: usize) -> Result<()> {
    if len != space.dim() {
        return Err(Error::DimensionMismatch {
            expected: space.dim(),
            found: len,
        });
    }
    Ok(())
}

fn check_index(space: &HilbertSpace, index: usize) -> Result<()> {
    if index >= space.dim() {
        return Err(Error::DimensionMismatch {
            expected: space.dim(),
            found: index,
        });
    }
    Ok(())
}
