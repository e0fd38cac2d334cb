//! Dense linear algebra on small composite Hilbert spaces.

mod composite;
mod eigen;
pub mod fock;
mod operator;
mod space;
mod state;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub use composite::{partial_trace, permute_factors, Tensor};
pub use eigen::{coherence_weight, eig_h, Eigen};
pub use fock::{
    coherent_state, fock_cutoff, fock_space, fock_state, mode_ops, poisson_tail, poisson_weights,
    ModeOps, CUTOFF_DEFICIT, MODE,
};
pub use operator::Operator;
pub use space::{Factor, HilbertSpace};
pub use state::{DensityMatrix, PureState};

pub(crate) use eigen::hermitian_eigen;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn frobenius(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Two-level atom space with `|g⟩ = 0`, `|e⟩ = 1`.
pub fn qubit_space(label: &str) -> crate::Result<HilbertSpace> {
    HilbertSpace::single(label, 2)
}
