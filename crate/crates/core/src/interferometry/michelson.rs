//! Michelson interferometer fed with a coherent state.
//!
//! The balanced beamsplitter conserves the total photon number, so it is
//! stored and applied one total-number block at a time. Blocks with total
//! `T ≤ n_max` are complete and exact; larger totals are truncated but
//! carry no weight for inputs satisfying the cutoff rule.

use std::f64::consts::FRAC_PI_4;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::Partition;
use crate::engine::{evolve, DecoherenceSpec, EvolutionSpec};
use crate::error::{invalid, Result};
use crate::quantum::{
    c, coherent_state, fock_cutoff, fock_state, hermitian_eigen, mode_ops, partial_trace,
    CMatrix, DensityMatrix, HilbertSpace, Operator, PureState, Tensor,
};

pub const ARM_C: &str = "arm_c";
pub const ARM_D: &str = "arm_d";

/// Balanced beamsplitter `exp(θ(c†d − cd†))` with `θ = −π/4`, which sends
/// `|α⟩|0⟩` to `|α/√2⟩|α/√2⟩`.
#[derive(Clone, Debug)]
pub struct BeamSplitter {
    space: HilbertSpace,
    /// Flat indices of each total-number block and the block unitary.
    blocks: Vec<(Vec<usize>, CMatrix)>,
}

impl BeamSplitter {
    pub fn new(n_max: usize) -> Result<Self> {
        Self::with_angle(n_max, -FRAC_PI_4)
    }

    pub fn with_angle(n_max: usize, theta: f64) -> Result<Self> {
        let space = HilbertSpace::new([(ARM_C, n_max + 1), (ARM_D, n_max + 1)])?;
        let mut blocks = Vec::with_capacity(2 * n_max + 1);
        for total in 0..=2 * n_max {
            let lo = total.saturating_sub(n_max);
            let hi = total.min(n_max);
            // basis |k, T−k⟩ for k = lo..=hi
            let idx: Vec<usize> = (lo..=hi)
                .map(|k| space.index(&[k, total - k]))
                .collect::<Result<_>>()?;
            let m = idx.len();
            // iG with G = c†d − cd†, Hermitian and tridiagonal in this basis
            let mut ig = DMatrix::zeros(m, m);
            for r in 0..m.saturating_sub(1) {
                let k = (lo + r) as f64;
                let amp = ((k + 1.0) * (total as f64 - k)).sqrt();
                // c†d |k, T−k⟩ = amp |k+1, T−k−1⟩
                ig[(r + 1, r)] = c(0.0, amp);
                ig[(r, r + 1)] = c(0.0, -amp);
            }
            let (values, vectors) = hermitian_eigen(&ig);
            // exp(θG) = exp(−iθ·iG)
            let phases = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
                m,
                values.iter().map(|l| Complex64::from_polar(1.0, -theta * l)),
            ));
            blocks.push((idx, &vectors * phases * vectors.adjoint()));
        }
        Ok(Self { space, blocks })
    }

    pub fn space(&self) -> &HilbertSpace {
        &self.space
    }

    /// Dense unitary on the two-mode space.
    pub fn operator(&self) -> Result<Operator> {
        let n = self.space.dim();
        let mut u = DMatrix::zeros(n, n);
        for (idx, b) in &self.blocks {
            for (r, &i) in idx.iter().enumerate() {
                for (s, &j) in idx.iter().enumerate() {
                    u[(i, j)] = b[(r, s)];
                }
            }
        }
        Operator::new(self.space.clone(), u)
    }

    pub fn apply_state(&self, psi: &PureState) -> Result<PureState> {
        self.check(psi.space())?;
        let amps = psi.amplitudes();
        let mut out = amps.clone();
        for (idx, b) in &self.blocks {
            for (r, &i) in idx.iter().enumerate() {
                out[i] = idx.iter().enumerate().map(|(s, &j)| b[(r, s)] * amps[j]).sum();
            }
        }
        PureState::normalized(self.space.clone(), out)
    }

    /// `U ρ U†`, or `U† ρ U` when `inverse`.
    pub fn apply_density(&self, rho: &DensityMatrix, inverse: bool) -> Result<DensityMatrix> {
        self.check(rho.space())?;
        let m = rho.matrix();
        let n = m.nrows();
        let mut out = DMatrix::zeros(n, n);
        let blocks: Vec<(&Vec<usize>, CMatrix)> = self
            .blocks
            .iter()
            .map(|(idx, b)| (idx, if inverse { b.adjoint() } else { b.clone() }))
            .collect();
        for (ri, ui) in &blocks {
            for (rj, uj) in &blocks {
                let sub = DMatrix::from_fn(ri.len(), rj.len(), |r, s| m[(ri[r], rj[s])]);
                if sub.iter().all(|z| z.norm_sqr() == 0.0) {
                    continue;
                }
                let res = ui * sub * uj.adjoint();
                for (r, &i) in ri.iter().enumerate() {
                    for (s, &j) in rj.iter().enumerate() {
                        out[(i, j)] = res[(r, s)];
                    }
                }
            }
        }
        DensityMatrix::new(self.space.clone(), out)
    }

    fn check(&self, space: &HilbertSpace) -> Result<()> {
        if space != &self.space {
            return Err(crate::Error::DimensionMismatch {
                expected: self.space.dim(),
                found: space.dim(),
            });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MichelsonConfig {
    pub alpha: Complex64,
    /// Per-mode truncation; `None` applies the cutoff rule to `|α|`.
    pub n_max: Option<usize>,
    /// Time spent in the arms, s.
    pub arm_time: f64,
    /// Mode frequency ω, rad/s.
    pub omega: f64,
    pub sigma: f64,
    pub partition: Partition,
}

impl MichelsonConfig {
    pub fn new(alpha: Complex64, omega: f64, arm_time: f64) -> Self {
        Self {
            alpha,
            n_max: None,
            arm_time,
            omega,
            sigma: 0.0,
            partition: Partition::Global,
        }
    }

    pub fn with_decoherence(mut self, sigma: f64, partition: Partition) -> Self {
        self.sigma = sigma;
        self.partition = partition;
        self
    }

    pub fn cutoff(&self) -> usize {
        self.n_max.unwrap_or_else(|| fock_cutoff(self.alpha.norm()))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MichelsonResult {
    pub mean_photons_out_a: f64,
    pub mean_photons_out_b: f64,
    #[serde(skip)]
    pub state_out: DensityMatrix,
}

/// Input `|α⟩|0⟩` on the two arm modes.
pub fn michelson_input(alpha: Complex64, n_max: usize) -> Result<PureState> {
    coherent_state(alpha, n_max)?
        .relabeled(&[ARM_C])?
        .tensor(&fock_state(0, n_max)?.relabeled(&[ARM_D])?)
}

fn arm_blocks(cfg: &MichelsonConfig, n_max: usize, space: &HilbertSpace) -> Result<DecoherenceSpec> {
    let number = mode_ops(n_max)?.number;
    let n_c = number.relabeled(&[ARM_C])?;
    let n_d = number.relabeled(&[ARM_D])?;
    match &cfg.partition {
        Partition::Global => {
            // integer total number first, so equal totals share one energy
            let total = n_c.embed(space)?.plus(&n_d.embed(space)?)?;
            DecoherenceSpec::global(cfg.sigma, total.scaled(cfg.omega))
        }
        Partition::Local => DecoherenceSpec::local(
            cfg.sigma,
            vec![n_c.scaled(cfg.omega), n_d.scaled(cfg.omega)],
        ),
        Partition::Only(l) if l == ARM_C => DecoherenceSpec::local(cfg.sigma, vec![n_c.scaled(cfg.omega)]),
        Partition::Only(l) if l == ARM_D => DecoherenceSpec::local(cfg.sigma, vec![n_d.scaled(cfg.omega)]),
        Partition::Only(l) => Err(invalid("partition", format!("unknown subsystem `{l}`"))),
    }
}

/// State in the arms after the first beamsplitter and the arm delay.
pub fn arm_state(cfg: &MichelsonConfig) -> Result<(BeamSplitter, DensityMatrix)> {
    if !(cfg.arm_time >= 0.0) || !cfg.arm_time.is_finite() {
        return Err(invalid("arm_time", format!("must be finite and >= 0, got {}", cfg.arm_time)));
    }
    let n_max = cfg.cutoff();
    let input = michelson_input(cfg.alpha, n_max)?;
    let bs = BeamSplitter::new(n_max)?;
    let split = bs.apply_state(&input)?.to_density();
    let space = split.space().clone();
    // frame rotating at ω: the free arm Hamiltonian drops out of the drive
    let spec = EvolutionSpec::new(Operator::zeros(&space), cfg.arm_time)
        .with_decoherence(arm_blocks(cfg, n_max, &space)?);
    Ok((bs, evolve(&split, &spec)?))
}

pub fn run_michelson(cfg: &MichelsonConfig) -> Result<MichelsonResult> {
    let (bs, arms) = arm_state(cfg)?;
    let out = bs.apply_density(&arms, true)?;
    let number = mode_ops(cfg.cutoff())?.number;
    let a = out.expectation(&number.relabeled(&[ARM_C])?.embed(out.space())?)?.re;
    let b = out.expectation(&number.relabeled(&[ARM_D])?.embed(out.space())?)?.re;
    Ok(MichelsonResult {
        mean_photons_out_a: a,
        mean_photons_out_b: b,
        state_out: out,
    })
}

/// Reduced state of arm `c` after splitting `|α⟩` and fully dephasing each
/// arm separately.
pub fn dephased_arm_state(alpha: Complex64, n_max: usize) -> Result<DensityMatrix> {
    let omega = 1.0;
    let cfg = MichelsonConfig {
        n_max: Some(n_max),
        ..MichelsonConfig::new(alpha, omega, 1.0).with_decoherence(50.0, Partition::Local)
    };
    let (_, arms) = arm_state(&cfg)?;
    partial_trace(&arms, &[ARM_C])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::frobenius;

    #[test]
    fn beamsplitter_is_unitary_and_splits_evenly() {
        let bs = BeamSplitter::new(6).unwrap();
        assert!(bs.operator().unwrap().is_unitary(1e-12));
        let one = PureState::basis_digits(bs.space(), &[1, 0]).unwrap();
        let out = bs.apply_state(&one).unwrap();
        let r = 0.5f64.sqrt();
        assert!((out.amplitudes()[bs.space().index(&[1, 0]).unwrap()] - c(r, 0.0)).norm() < 1e-14);
        assert!((out.amplitudes()[bs.space().index(&[0, 1]).unwrap()] - c(r, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn coherent_input_splits_into_two_coherent_arms() {
        let alpha = c(1.2, 0.5);
        let n_max = fock_cutoff(alpha.norm());
        let bs = BeamSplitter::new(n_max).unwrap();
        let out = bs.apply_state(&michelson_input(alpha, n_max).unwrap()).unwrap();
        let half = alpha / 2f64.sqrt();
        let expected = coherent_state(half, n_max)
            .unwrap()
            .relabeled(&[ARM_C])
            .unwrap()
            .tensor(&coherent_state(half, n_max).unwrap().relabeled(&[ARM_D]).unwrap())
            .unwrap();
        assert!(out.fidelity(&expected).unwrap() > 1.0 - 1e-10);
    }

    #[test]
    fn blockwise_conjugation_matches_dense() {
        let n_max = 4;
        let bs = BeamSplitter::new(n_max).unwrap();
        let u = bs.operator().unwrap();
        let rho = DensityMatrix::maximally_mixed(bs.space());
        let psi = PureState::basis_digits(bs.space(), &[2, 1]).unwrap().to_density();
        let mixed = DensityMatrix::mixture(&[(0.3, rho), (0.7, psi)]).unwrap();
        let dense = u.matrix() * mixed.matrix() * u.matrix().adjoint();
        let fast = bs.apply_density(&mixed, false).unwrap();
        assert!(frobenius(&(fast.matrix() - dense)) < 1e-12);
        let back = bs.apply_density(&fast, true).unwrap();
        assert!(frobenius(&(back.matrix() - mixed.matrix())) < 1e-12);
    }

    #[test]
    fn ideal_interferometer() {
        let cfg = MichelsonConfig::new(c(2.0, 0.0), 1.0e15, 1e-9);
        let r = run_michelson(&cfg).unwrap();
        assert!(r.mean_photons_out_b <= 1e-9, "{}", r.mean_photons_out_b);
        assert!((r.mean_photons_out_a - 4.0).abs() < 1e-8);
    }

    #[test]
    fn unknown_arm_is_rejected() {
        let cfg = MichelsonConfig::new(c(1.0, 0.0), 1.0, 1.0).with_decoherence(1.0, Partition::Only("arm_x".into()));
        assert!(run_michelson(&cfg).is_err());
    }
}
