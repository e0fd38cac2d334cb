use num_complex::Complex64;

use super::spec::EvolutionSpec;
use crate::error::{Error, Result};
use crate::quantum::{hermitian_eigen, CMatrix, DensityMatrix, HilbertSpace};

/// Right-hand side of the master equation, pre-assembled for repeated use.
///
/// Written as `dρ/dt = Kρ + ρK† + Σ_j c_j A_j ρ A_j†` with
/// `K = −iH − σ Σ_b H_b² − ½ Σ_k γ_k L_k†L_k`; the jump terms are
/// `2σ H_b ρ H_b` and `γ_k L_k ρ L_k†`.
#[derive(Clone, Debug)]
pub(crate) struct Liouvillian {
    k: CMatrix,
    k_adj: CMatrix,
    jumps: Vec<(f64, CMatrix, CMatrix)>,
    norm_bound: f64,
}

impl Liouvillian {
    pub(crate) fn build(space: &HilbertSpace, spec: &EvolutionSpec) -> Result<Self> {
        let n = space.dim();
        if spec.hamiltonian.space() != space {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: spec.hamiltonian.dim(),
            });
        }
        let h = spec.hamiltonian.matrix();
        let i = Complex64::new(0.0, 1.0);
        let mut k = h * (-i);
        let mut jumps = Vec::new();
        let mut norm_bound = 2.0 * spectral_norm_hermitian(h);

        let sigma = spec.decoherence.sigma();
        if sigma > 0.0 {
            for hb in spec.decoherence.embedded(space)? {
                let hb = hb.into_matrix();
                k -= (&hb * &hb) * Complex64::new(sigma, 0.0);
                let nb = spectral_norm_hermitian(&hb);
                norm_bound += 4.0 * sigma * nb * nb;
                jumps.push((2.0 * sigma, hb.clone(), hb));
            }
        }
        for loss in &spec.losses {
            if loss.rate() == 0.0 {
                continue;
            }
            let l = loss.lowering().embed(space)?.into_matrix();
            let ldl = l.adjoint() * &l;
            k -= &ldl * Complex64::new(0.5 * loss.rate(), 0.0);
            norm_bound += 2.0 * loss.rate() * spectral_norm_hermitian(&ldl);
            let l_adj = l.adjoint();
            jumps.push((loss.rate(), l, l_adj));
        }
        let k_adj = k.adjoint();
        Ok(Self {
            k,
            k_adj,
            jumps,
            norm_bound,
        })
    }

    pub(crate) fn apply(&self, rho: &CMatrix) -> CMatrix {
        let mut out = &self.k * rho + rho * &self.k_adj;
        for (coeff, a, a_adj) in &self.jumps {
            out += (a * rho * a_adj) * Complex64::new(*coeff, 0.0);
        }
        out
    }

    /// Upper bound on the operator norm of the superoperator.
    pub(crate) fn norm_bound(&self) -> f64 {
        self.norm_bound
    }
}

fn spectral_norm_hermitian(m: &CMatrix) -> f64 {
    if m.iter().all(|z| z.norm_sqr() == 0.0) {
        return 0.0;
    }
    if is_diagonal(m) {
        return (0..m.nrows()).map(|i| m[(i, i)].norm()).fold(0.0, f64::max);
    }
    let (values, _) = hermitian_eigen(m);
    values.iter().map(|v| v.abs()).fold(0.0, f64::max)
}

pub(crate) fn is_diagonal(m: &CMatrix) -> bool {
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            if i != j && m[(i, j)].norm_sqr() != 0.0 {
                return false;
            }
        }
    }
    true
}

/// `dρ/dt` of the master equation at `rho`.
///
/// The unitary term is `−i[H, ρ]`; each decoherence block contributes
/// `−σ[H_b, [H_b, ρ]]` and each loss channel its dissipator.
pub fn generator(rho: &DensityMatrix, spec: &EvolutionSpec) -> Result<CMatrix> {
    spec.check()?;
    let l = Liouvillian::build(rho.space(), spec)?;
    Ok(l.apply(rho.matrix()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{DecoherenceSpec, LossChannel};
    use crate::quantum::{c, frobenius, Operator, PureState};
    use nalgebra::DVector;

    fn qubit() -> HilbertSpace {
        HilbertSpace::single("atom", 2).unwrap()
    }

    #[test]
    fn eigenprojector_is_stationary() {
        let h = Operator::from_diagonal(&qubit(), &[0.0, 3.0]).unwrap();
        let spec = EvolutionSpec::new(h.clone(), 1.0)
            .with_decoherence(DecoherenceSpec::global(0.2, h).unwrap());
        let rho = PureState::basis(&qubit(), 1).unwrap().to_density();
        let d = generator(&rho, &spec).unwrap();
        assert_eq!(frobenius(&d), 0.0);
    }

    #[test]
    fn two_level_off_diagonal_rate() {
        let (w0, sigma) = (2.5, 0.3);
        let h = Operator::from_diagonal(&qubit(), &[0.0, w0]).unwrap();
        let spec = EvolutionSpec::new(h.clone(), 1.0)
            .with_decoherence(DecoherenceSpec::global(sigma, h).unwrap());
        let r = c(0.2, -0.1);
        let m = CMatrix::from_row_slice(2, 2, &[c(0.5, 0.0), r, r.conj(), c(0.5, 0.0)]);
        let rho = DensityMatrix::new(qubit(), m).unwrap();
        let d = generator(&rho, &spec).unwrap();
        // ρ_eg picks up (−iω₀ − σω₀²), ρ_ge its conjugate
        let expected_eg = (c(0.0, -w0) - c(sigma * w0 * w0, 0.0)) * r.conj();
        assert!((d[(1, 0)] - expected_eg).norm() < 1e-14);
        assert!((d[(0, 1)] - expected_eg.conj()).norm() < 1e-14);
    }

    #[test]
    fn traceless_and_hermitian() {
        let s = HilbertSpace::new([("a", 2), ("b", 3)]).unwrap();
        let m = CMatrix::from_fn(6, 6, |i, j| c((i * j) as f64 * 0.1 + 0.2, i as f64 - j as f64));
        let h = Operator::new(s.clone(), (&m + m.adjoint()) * c(0.5, 0.0)).unwrap();
        let hb = Operator::from_diagonal(&HilbertSpace::single("b", 3).unwrap(), &[0.0, 1.0, 2.5]).unwrap();
        let lower = Operator::new(
            HilbertSpace::single("a", 2).unwrap(),
            CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]),
        )
        .unwrap();
        let spec = EvolutionSpec::new(h, 1.0)
            .with_decoherence(DecoherenceSpec::local(0.4, vec![hb]).unwrap())
            .with_loss(LossChannel::amplitude_damping(0.7, lower).unwrap());
        let v = DVector::from_fn(6, |i, _| c(1.0 + i as f64, 0.5 * i as f64));
        let rho = PureState::normalized(s, v).unwrap().to_density();
        let d = generator(&rho, &spec).unwrap();
        assert!(d.trace().norm() < 1e-12);
        assert!(frobenius(&(&d - d.adjoint())) < 1e-12);
    }
}
