use nalgebra::DMatrix;
use num_complex::Complex64;

use super::space::HilbertSpace;
use super::{frobenius, CMatrix};
use crate::error::{Error, Result};

/// Square matrix acting on a labelled Hilbert space.
///
/// Hamiltonians throughout the crate are stored as angular frequencies,
/// i.e. `H / ħ` in rad/s.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    space: HilbertSpace,
    matrix: CMatrix,
}

impl Operator {
    pub fn new(space: HilbertSpace, matrix: CMatrix) -> Result<Self> {
        check_square(&space, &matrix)?;
        Ok(Self { space, matrix })
    }

    pub fn identity(space: &HilbertSpace) -> Self {
        let n = space.dim();
        Self {
            space: space.clone(),
            matrix: DMatrix::identity(n, n),
        }
    }

    pub fn zeros(space: &HilbertSpace) -> Self {
        let n = space.dim();
        Self {
            space: space.clone(),
            matrix: DMatrix::zeros(n, n),
        }
    }

    pub fn from_diagonal(space: &HilbertSpace, diagonal: &[f64]) -> Result<Self> {
        if diagonal.len() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                found: diagonal.len(),
            });
        }
        let n = space.dim();
        let mut matrix = DMatrix::zeros(n, n);
        for (i, d) in diagonal.iter().enumerate() {
            matrix[(i, i)] = Complex64::new(*d, 0.0);
        }
        Ok(Self {
            space: space.clone(),
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

    pub fn adjoint(&self) -> Self {
        Self {
            space: self.space.clone(),
            matrix: self.matrix.adjoint(),
        }
    }

    /// `‖A − A†‖_F / ‖A‖_F` (zero for the zero operator).
    pub fn hermitian_deviation(&self) -> f64 {
        let scale = frobenius(&self.matrix);
        if scale == 0.0 {
            return 0.0;
        }
        frobenius(&(&self.matrix - self.matrix.adjoint())) / scale
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    /// `‖U†U − 1‖_F / √dim ≤ tol`.
    pub fn is_unitary(&self, tol: f64) -> bool {
        let n = self.dim();
        let prod = self.matrix.adjoint() * &self.matrix;
        frobenius(&(prod - CMatrix::identity(n, n))) / (n as f64).sqrt() <= tol
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            space: self.space.clone(),
            matrix: &self.matrix * Complex64::new(factor, 0.0),
        }
    }

    pub fn plus(&self, other: &Operator) -> Result<Self> {
        self.same_space(other)?;
        Ok(Self {
            space: self.space.clone(),
            matrix: &self.matrix + &other.matrix,
        })
    }

    pub fn times(&self, other: &Operator) -> Result<Self> {
        self.same_space(other)?;
        Ok(Self {
            space: self.space.clone(),
            matrix: &self.matrix * &other.matrix,
        })
    }

    pub fn commutator(&self, other: &Operator) -> Result<Self> {
        self.same_space(other)?;
        Ok(Self {
            space: self.space.clone(),
            matrix: &self.matrix * &other.matrix - &other.matrix * &self.matrix,
        })
    }

    pub fn relabeled<S: AsRef<str>>(&self, labels: &[S]) -> Result<Self> {
        Ok(Self {
            space: self.space.relabeled(labels)?,
            matrix: self.matrix.clone(),
        })
    }

    /// Lift an operator defined on some factors of `full` to the whole space,
    /// acting as the identity on the remaining factors.
    ///
    /// The factors may appear in any order in `self`'s space; they are
    /// matched to `full` by label.
    pub fn embed(&self, full: &HilbertSpace) -> Result<Self> {
        if &self.space == full {
            return Ok(self.clone());
        }
        let inner = full.offsets_of(&self.space)?;
        let labels: Vec<&str> = self.space.labels().collect();
        let outer = match full.complement(&labels) {
            Some(rest) => full.offsets_of(&rest)?,
            None => vec![0],
        };
        let n = full.dim();
        let mut matrix = DMatrix::zeros(n, n);
        for (j, &cj) in inner.iter().enumerate() {
            for (i, &ci) in inner.iter().enumerate() {
                let v = self.matrix[(i, j)];
                if v == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for &r in &outer {
                    matrix[(ci + r, cj + r)] = v;
                }
            }
        }
        Ok(Self {
            space: full.clone(),
            matrix,
        })
    }

    fn same_space(&self, other: &Operator) -> Result<()> {
        if self.space != other.space {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }
}

pub(crate) fn check_square(space: &HilbertSpace, matrix: &CMatrix) -> Result<()> {
    let n = space.dim();
    if matrix.nrows() != n || matrix.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: if matrix.nrows() != n {
                matrix.nrows()
            } else {
                matrix.ncols()
            },
        });
    }
    Ok(())
}
