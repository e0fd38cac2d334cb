use std::collections::BTreeSet;

use crate::constants::OPERATOR_TOL;
use crate::error::{invalid, Error, Result};
use crate::quantum::{HilbertSpace, Operator};

/// One group of subsystems that decoheres as a single system.
///
/// The Hamiltonian is stored on the block's own factors, so it acts as the
/// identity everywhere else once embedded in the full space.
#[derive(Clone, Debug, PartialEq)]
pub struct DecoherenceBlock {
    hamiltonian: Operator,
}

impl DecoherenceBlock {
    pub fn new(hamiltonian: Operator) -> Result<Self> {
        let dev = hamiltonian.hermitian_deviation();
        if dev > OPERATOR_TOL {
            return Err(Error::NotHermitian(dev));
        }
        Ok(Self { hamiltonian })
    }

    pub fn hamiltonian(&self) -> &Operator {
        &self.hamiltonian
    }

    pub fn labels(&self) -> BTreeSet<&str> {
        self.hamiltonian.space().labels().collect()
    }
}

/// Strength `σ` (seconds) and partition of the energy-decoherence term.
#[derive(Clone, Debug, PartialEq)]
pub struct DecoherenceSpec {
    sigma: f64,
    blocks: Vec<DecoherenceBlock>,
}

impl DecoherenceSpec {
    pub fn new(sigma: f64, blocks: Vec<DecoherenceBlock>) -> Result<Self> {
        if !(sigma >= 0.0) || !sigma.is_finite() {
            return Err(invalid("sigma", format!("must be finite and >= 0, got {sigma}")));
        }
        let mut seen = BTreeSet::new();
        for b in &blocks {
            for l in b.labels() {
                if !seen.insert(l.to_string()) {
                    return Err(Error::OverlappingBlocks(l.to_string()));
                }
            }
        }
        Ok(Self { sigma, blocks })
    }

    /// No decoherence at all.
    pub fn none() -> Self {
        Self {
            sigma: 0.0,
            blocks: Vec::new(),
        }
    }

    /// A single block holding the total Hamiltonian of every subsystem.
    pub fn global(sigma: f64, total: Operator) -> Result<Self> {
        Self::new(sigma, vec![DecoherenceBlock::new(total)?])
    }

    /// One block per subsystem Hamiltonian.
    pub fn local(sigma: f64, hamiltonians: Vec<Operator>) -> Result<Self> {
        let blocks = hamiltonians
            .into_iter()
            .map(DecoherenceBlock::new)
            .collect::<Result<Vec<_>>>()?;
        Self::new(sigma, blocks)
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn blocks(&self) -> &[DecoherenceBlock] {
        &self.blocks
    }

    pub fn is_inactive(&self) -> bool {
        self.sigma == 0.0 || self.blocks.is_empty()
    }

    /// Block Hamiltonians lifted to `space`.
    pub fn embedded(&self, space: &HilbertSpace) -> Result<Vec<Operator>> {
        self.blocks
            .iter()
            .map(|b| b.hamiltonian.embed(space))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LossKind {
    AmplitudeDamping,
}

/// Phenomenological loss `γ (LρL† − ½{L†L, ρ})`.
#[derive(Clone, Debug, PartialEq)]
pub struct LossChannel {
    kind: LossKind,
    rate: f64,
    lowering: Operator,
}

impl LossChannel {
    pub fn amplitude_damping(rate: f64, lowering: Operator) -> Result<Self> {
        if !(rate >= 0.0) || !rate.is_finite() {
            return Err(invalid("rate", format!("must be finite and >= 0, got {rate}")));
        }
        Ok(Self {
            kind: LossKind::AmplitudeDamping,
            rate,
            lowering,
        })
    }

    pub fn kind(&self) -> LossKind {
        self.kind
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn lowering(&self) -> &Operator {
        &self.lowering
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Method {
    /// Exact propagation in the joint eigenbasis.
    Analytic,
    /// Fixed-step classical Runge–Kutta with the given maximal step (s).
    Stepped { step: f64 },
}

/// Everything needed to propagate a state over one segment.
#[derive(Clone, Debug, PartialEq)]
pub struct EvolutionSpec {
    /// Drive Hamiltonian in rad/s.
    pub hamiltonian: Operator,
    pub decoherence: DecoherenceSpec,
    pub losses: Vec<LossChannel>,
    /// Seconds.
    pub duration: f64,
    pub method: Method,
}

impl EvolutionSpec {
    pub fn new(hamiltonian: Operator, duration: f64) -> Self {
        Self {
            hamiltonian,
            decoherence: DecoherenceSpec::none(),
            losses: Vec::new(),
            duration,
            method: Method::Analytic,
        }
    }

    pub fn with_decoherence(mut self, decoherence: DecoherenceSpec) -> Self {
        self.decoherence = decoherence;
        self
    }

    pub fn with_loss(mut self, loss: LossChannel) -> Self {
        self.losses.push(loss);
        self
    }

    pub fn stepped(mut self, step: f64) -> Self {
        self.method = Method::Stepped { step };
        self
    }

    pub fn analytic(mut self) -> Self {
        self.method = Method::Analytic;
        self
    }

    pub(crate) fn check(&self) -> Result<()> {
        if !(self.duration >= 0.0) || !self.duration.is_finite() {
            return Err(invalid("duration", format!("must be finite and >= 0, got {}", self.duration)));
        }
        if let Method::Stepped { step } = self.method {
            if !(step > 0.0) || !step.is_finite() {
                return Err(invalid("step", format!("must be > 0, got {step}")));
            }
        }
        let dev = self.hamiltonian.hermitian_deviation();
        if dev > OPERATOR_TOL {
            return Err(Error::NotHermitian(dev));
        }
        Ok(())
    }
}
