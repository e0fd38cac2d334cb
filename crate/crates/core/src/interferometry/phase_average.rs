//! The decohered single-mode state written two ways: as a Poisson mixture
//! of Fock states, and as a uniform average of coherent states over the
//! optical phase.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quantum::{coherent_state, fock_space, frobenius, poisson_weights, DensityMatrix, MODE};

/// `Σ_n p_n |n⟩⟨n|` with Poisson weights of mean `mean`, renormalized over
/// `0..=n_max`.
pub fn poisson_mixture(mean: f64, n_max: usize) -> Result<DensityMatrix> {
    let w = poisson_weights(mean, n_max);
    let total: f64 = w.iter().sum();
    let p: Vec<f64> = w.iter().map(|x| x / total).collect();
    DensityMatrix::from_diagonal(&fock_space(MODE, n_max)?, &p)
}

/// `(1/M) Σ_k |α e^{iφ_k}⟩⟨α e^{iφ_k}|` over `M = nodes` equally spaced
/// phases.
pub fn phase_averaged_coherent(alpha: Complex64, n_max: usize, nodes: usize) -> Result<DensityMatrix> {
    if nodes == 0 {
        return Err(Error::TooFewNodes { found: 0, required: 1 });
    }
    let parts = (0..nodes)
        .map(|k| {
            let phi = 2.0 * std::f64::consts::PI * k as f64 / nodes as f64;
            let s = coherent_state(alpha * Complex64::from_polar(1.0, phi), n_max)?;
            Ok((1.0, s.to_density()))
        })
        .collect::<Result<Vec<_>>>()?;
    // sum first, divide once: keeps α = 0 exact
    let sum = DensityMatrix::mixture(&parts)?;
    let space = sum.space().clone();
    DensityMatrix::new(space, sum.into_matrix() / Complex64::new(nodes as f64, 0.0))
}

/// Frobenius distance between the Poisson mixture and the phase average
/// of `|α⟩`, using `nodes ≥ 4·n_max` quadrature points.
pub fn phase_average_check(alpha: Complex64, n_max: usize, nodes: usize) -> Result<f64> {
    let required = (4 * n_max).max(1);
    if nodes < required {
        return Err(Error::TooFewNodes { found: nodes, required });
    }
    let mixture = poisson_mixture(alpha.norm_sqr(), n_max)?;
    let average = phase_averaged_coherent(alpha, n_max, nodes)?;
    Ok(frobenius(&(mixture.matrix() - average.matrix())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{c, fock_cutoff};

    #[test]
    fn vacuum_is_exact() {
        assert_eq!(phase_average_check(c(0.0, 0.0), 10, 40).unwrap(), 0.0);
    }

    #[test]
    fn two_forms_agree() {
        let d = phase_average_check(c(2.0, 0.0), 40, 160).unwrap();
        assert!(d <= 1e-8, "{d}");
        let alpha = c(-0.7, 1.1);
        let n = fock_cutoff(alpha.norm());
        assert!(phase_average_check(alpha, n, 4 * n).unwrap() <= 1e-8);
    }

    #[test]
    fn too_few_nodes() {
        assert_eq!(
            phase_average_check(c(2.0, 0.0), 40, 159).unwrap_err(),
            Error::TooFewNodes { found: 159, required: 160 }
        );
    }

    #[test]
    fn mixture_is_a_state() {
        let rho = poisson_mixture(3.0, 30).unwrap();
        rho.validate().unwrap();
        assert!((rho.trace().re - 1.0).abs() < 1e-14);
    }
}
