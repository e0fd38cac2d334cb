//! Truncated single-mode Fock space: number states, coherent states and the
//! ladder operators.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::operator::Operator;
use super::space::HilbertSpace;
use super::state::PureState;
use crate::error::{invalid, Error, Result};

/// Default factor label of a single mode.
pub const MODE: &str = "mode";

/// Largest tolerated norm deficit of a truncated coherent state.
pub const CUTOFF_DEFICIT: f64 = 1e-10;

/// Fock cutoff `n_max = ⌈|α|² + 8|α| + 10⌉`.
pub fn fock_cutoff(alpha_abs: f64) -> usize {
    let a = alpha_abs.abs();
    (a * a + 8.0 * a + 10.0).ceil() as usize
}

/// Mode space holding `|0⟩ … |n_max⟩`.
pub fn fock_space(label: &str, n_max: usize) -> Result<HilbertSpace> {
    HilbertSpace::single(label, n_max + 1)
}

pub fn fock_state(n: usize, n_max: usize) -> Result<PureState> {
    if n > n_max {
        return Err(invalid("n", format!("{n} exceeds cutoff {n_max}")));
    }
    PureState::basis(&fock_space(MODE, n_max)?, n)
}

/// Poisson weights `e^{-μ} μⁿ / n!` for `n = 0..=n_max` (not renormalized).
pub fn poisson_weights(mean: f64, n_max: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut log_p = -mean;
    for n in 0..=n_max {
        if n > 0 {
            log_p += mean.ln() - (n as f64).ln();
        }
        out.push(if mean == 0.0 {
            if n == 0 {
                1.0
            } else {
                0.0
            }
        } else {
            log_p.exp()
        });
    }
    out
}

/// Poisson probability mass beyond `n_max`, summed term by term.
pub fn poisson_tail(mean: f64, n_max: usize) -> f64 {
    if mean == 0.0 {
        return 0.0;
    }
    let mut n = n_max + 1;
    let mut log_p = -mean + n as f64 * mean.ln() - ln_factorial(n);
    let mut tail = 0.0;
    loop {
        let p = log_p.exp();
        tail += p;
        // terms decrease geometrically once n > mean
        if (n as f64) > mean && p < tail * 1e-17 {
            break;
        }
        if p == 0.0 && (n as f64) > mean {
            break;
        }
        n += 1;
        log_p += mean.ln() - (n as f64).ln();
    }
    tail
}

fn ln_factorial(n: usize) -> f64 {
    (1..=n).map(|k| (k as f64).ln()).sum()
}

/// Coherent state `|α⟩` truncated at `n_max` and renormalized.
///
/// Fails when the discarded norm exceeds [`CUTOFF_DEFICIT`].
pub fn coherent_state(alpha: Complex64, n_max: usize) -> Result<PureState> {
    let mean = alpha.norm_sqr();
    let deficit = poisson_tail(mean, n_max);
    if deficit > CUTOFF_DEFICIT {
        return Err(Error::CutoffTooSmall { n_max, deficit });
    }
    let mut amps = DVector::zeros(n_max + 1);
    let mut c = Complex64::new((-mean / 2.0).exp(), 0.0);
    amps[0] = c;
    for n in 1..=n_max {
        c = c * alpha / (n as f64).sqrt();
        amps[n] = c;
    }
    PureState::normalized(fock_space(MODE, n_max)?, amps)
}

/// Annihilation and number operators of one truncated mode.
#[derive(Clone, Debug)]
pub struct ModeOps {
    pub annihilation: Operator,
    pub number: Operator,
}

impl ModeOps {
    pub fn creation(&self) -> Operator {
        self.annihilation.adjoint()
    }

    pub fn relabeled(&self, label: &str) -> Result<Self> {
        Ok(Self {
            annihilation: self.annihilation.relabeled(&[label])?,
            number: self.number.relabeled(&[label])?,
        })
    }
}

pub fn mode_ops(n_max: usize) -> Result<ModeOps> {
    if n_max < 1 {
        return Err(invalid("n_max", "must be at least 1"));
    }
    let space = fock_space(MODE, n_max)?;
    let dim = n_max + 1;
    let mut a = DMatrix::zeros(dim, dim);
    for n in 1..dim {
        a[(n - 1, n)] = Complex64::new((n as f64).sqrt(), 0.0);
    }
    let number: Vec<f64> = (0..dim).map(|n| n as f64).collect();
    Ok(ModeOps {
        annihilation: Operator::new(space.clone(), a)?,
        number: Operator::from_diagonal(&space, &number)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{c, DensityMatrix};

    #[test]
    fn vacuum_coherent_state() {
        let s = coherent_state(c(0.0, 0.0), 12).unwrap();
        assert_eq!(s, fock_state(0, 12).unwrap());
    }

    #[test]
    fn coherent_mean_photon_number() {
        let s = coherent_state(c(2.0, 0.0), 40).unwrap();
        let ops = mode_ops(40).unwrap();
        let mean = s.to_density().expectation(&ops.number).unwrap().re;
        assert!((mean - 4.0).abs() < 1e-8, "{mean}");
    }

    #[test]
    fn cutoff_rule_keeps_deficit_small() {
        for k in 0..=50 {
            let a = k as f64 * 0.1;
            let n = fock_cutoff(a);
            assert!(poisson_tail(a * a, n) <= CUTOFF_DEFICIT, "alpha {a}");
        }
    }

    #[test]
    fn cutoff_too_small_is_an_error() {
        assert!(matches!(
            coherent_state(c(3.0, 0.0), 10),
            Err(Error::CutoffTooSmall { .. })
        ));
    }

    #[test]
    fn ladder_actions() {
        let ops = mode_ops(5).unwrap();
        let one = fock_state(1, 5).unwrap();
        let zero = fock_state(0, 5).unwrap();
        assert_eq!(one.apply(&ops.annihilation).unwrap(), zero.amplitudes().clone());
        assert!(zero.apply(&ops.annihilation).unwrap().iter().all(|z| z.norm() == 0.0));
        for n in 0..5 {
            let v = fock_state(n, 5).unwrap();
            let out = v.apply(&ops.number).unwrap();
            assert_eq!(out, v.amplitudes() * c(n as f64, 0.0));
        }
    }

    #[test]
    fn number_annihilation_commutator() {
        let n_max = 7;
        let ops = mode_ops(n_max).unwrap();
        let comm = ops.number.commutator(&ops.annihilation).unwrap();
        let expected = ops.annihilation.scaled(-1.0);
        // holds on the whole truncated space since a only lowers
        assert!((comm.matrix() - expected.matrix()).norm() < 1e-12);
    }

    #[test]
    fn poisson_statistics() {
        let alpha = c(1.5, -0.8);
        let n_max = fock_cutoff(alpha.norm());
        let rho: DensityMatrix = coherent_state(alpha, n_max).unwrap().to_density();
        let closed = poisson_weights(alpha.norm_sqr(), n_max);
        let tv: f64 = rho
            .populations()
            .iter()
            .zip(&closed)
            .map(|(p, q)| (p - q).abs())
            .sum::<f64>()
            / 2.0;
        assert!(tv < 1e-8, "{tv}");
    }
}
