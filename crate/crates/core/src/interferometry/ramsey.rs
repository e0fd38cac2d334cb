//! Ramsey interferometry with a classical or a quantized driving field.
//!
//! Waiting periods are evolved in the frame rotating at the field
//! frequency `ω = ω₀ − δ`, where the drive reduces to `δ|e⟩⟨e|`. The
//! decoherence blocks keep the lab-frame energies; they commute with the
//! excitation number that generates the frame change, so the double
//! commutators are unaffected by it.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::fringe::{phase_scan, FringePoint, FringeResult};
use super::Partition;
use crate::engine::{evolve, DecoherenceSpec, EvolutionSpec, LossChannel};
use crate::error::{invalid, Result};
use crate::quantum::{
    c, coherent_state, eig_h, fock_cutoff, fock_state, mode_ops, CMatrix, DensityMatrix,
    HilbertSpace, Operator, PureState, Tensor,
};

pub const ATOM: &str = "atom";
pub const FIELD: &str = "field";

/// Initial state of the driving field.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FieldState {
    Fock(usize),
    Coherent(Complex64),
}

impl FieldState {
    /// Photon number used to time the pulses.
    pub fn dominant_number(&self) -> usize {
        match self {
            FieldState::Fock(n) => *n,
            FieldState::Coherent(a) => a.norm_sqr().round() as usize,
        }
    }

    /// Default truncation of the field mode.
    pub fn default_cutoff(&self) -> usize {
        match self {
            FieldState::Fock(n) => *n,
            FieldState::Coherent(a) => fock_cutoff(a.norm()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RamseyConfig {
    pub field: FieldState,
    /// Field truncation; `None` picks [`FieldState::default_cutoff`].
    pub n_max: Option<usize>,
    /// Atom–field coupling g, rad/s.
    pub coupling: f64,
    /// Bloch rotation angle of each pulse, rad.
    pub pulse_area: f64,
    /// Atomic minus field frequency, rad/s.
    pub detuning: f64,
    /// Atomic transition frequency ΔE/ħ, rad/s.
    pub omega0: f64,
    /// Free evolution time between the pulses, s.
    pub wait: f64,
    /// Injected relative phases to scan, rad.
    pub phases: Vec<f64>,
    /// Decoherence timescale σ, s.
    pub sigma: f64,
    pub partition: Partition,
    /// Spontaneous decay rate Γ of `|e⟩`, 1/s.
    pub spontaneous_rate: f64,
}

impl RamseyConfig {
    /// Resonant π/2 pulses, 32 phases, no decoherence.
    pub fn new(field: FieldState, omega0: f64, wait: f64) -> Self {
        Self {
            field,
            n_max: None,
            coupling: 1.0,
            pulse_area: PI / 2.0,
            detuning: 0.0,
            omega0,
            wait,
            phases: phase_scan(32),
            sigma: 0.0,
            partition: Partition::Global,
            spontaneous_rate: 0.0,
        }
    }

    pub fn with_decoherence(mut self, sigma: f64, partition: Partition) -> Self {
        self.sigma = sigma;
        self.partition = partition;
        self
    }

    pub fn field_frequency(&self) -> f64 {
        self.omega0 - self.detuning
    }

    pub fn cutoff(&self) -> usize {
        self.n_max.unwrap_or_else(|| self.field.default_cutoff())
    }

    fn validate(&self) -> Result<()> {
        if !(self.pulse_area > 0.0 && self.pulse_area <= PI) {
            return Err(invalid("pulse_area", format!("must lie in (0, π], got {}", self.pulse_area)));
        }
        if self.phases.is_empty() {
            return Err(invalid("phases", "scan is empty"));
        }
        if !(self.wait >= 0.0) || !self.wait.is_finite() {
            return Err(invalid("wait", format!("must be finite and >= 0, got {}", self.wait)));
        }
        if !(self.coupling > 0.0) {
            return Err(invalid("coupling", format!("must be > 0, got {}", self.coupling)));
        }
        if !(self.spontaneous_rate >= 0.0) {
            return Err(invalid("spontaneous_rate", "must be >= 0"));
        }
        if !self.omega0.is_finite() || !self.detuning.is_finite() {
            return Err(invalid("omega0", "frequencies must be finite"));
        }
        Ok(())
    }

    /// Integrator step keeping `‖L‖·step` well below the stability limit.
    fn stepped_method(&self, block_norm_sq: f64) -> f64 {
        let bound = 2.0 * self.detuning.abs()
            + 4.0 * self.sigma * block_norm_sq
            + 2.0 * self.spontaneous_rate;
        let steps = (bound * self.wait / 0.05).ceil().max(1000.0);
        self.wait / steps
    }
}

fn projector(space: &HilbertSpace, index: usize) -> Result<Operator> {
    let mut diag = vec![0.0; space.dim()];
    diag[index] = 1.0;
    Operator::from_diagonal(space, &diag)
}

fn sigma_minus(atom: &HilbertSpace) -> Result<Operator> {
    let mut m = DMatrix::zeros(2, 2);
    m[(0, 1)] = c(1.0, 0.0);
    Operator::new(atom.clone(), m)
}

/// `exp(−i (θ/2) σx)` on the atom.
fn rotation(atom: &HilbertSpace, area: f64) -> Result<Operator> {
    let (s, co) = (area / 2.0).sin_cos();
    Operator::new(
        atom.clone(),
        CMatrix::from_row_slice(2, 2, &[c(co, 0.0), c(0.0, -s), c(0.0, -s), c(co, 0.0)]),
    )
}

/// `|g⟩⟨g| + e^{iφ}|e⟩⟨e|` lifted to the full space, as a diagonal.
fn phase_diagonal(space: &HilbertSpace, phi: f64) -> Result<Vec<Complex64>> {
    let atom_pos = space
        .position(ATOM)
        .ok_or_else(|| crate::Error::UnknownLabel(ATOM.into()))?;
    let e = Complex64::from_polar(1.0, phi);
    Ok((0..space.dim())
        .map(|i| if space.digits(i)[atom_pos] == 1 { e } else { c(1.0, 0.0) })
        .collect())
}

/// `tr(M · D ρ D†)` for diagonal `D`, in O(n²).
fn weighted_trace(m: &CMatrix, rho: &CMatrix, d: &[Complex64]) -> f64 {
    let n = rho.nrows();
    let mut acc = c(0.0, 0.0);
    for j in 0..n {
        for i in 0..n {
            acc += m[(j, i)] * d[i] * rho[(i, j)] * d[j].conj();
        }
    }
    acc.re
}

/// Ramsey fringe with classical pulses acting on the atom alone.
///
/// The first pulse is a rotation by `pulse_area`; the second undoes it, so
/// that without decoherence the atom returns to `|g⟩` at zero phase and
/// `p_g(φ) = ½(1 + V cos(φ − δ·wait))`.
pub fn run_ramsey_semiclassical(cfg: &RamseyConfig) -> Result<FringeResult> {
    cfg.validate()?;
    let atom = HilbertSpace::single(ATOM, 2)?;
    match &cfg.partition {
        Partition::Global => {}
        Partition::Only(l) if l == ATOM => {}
        other => {
            return Err(invalid(
                "partition",
                format!("{other} is not available without a quantized field"),
            ))
        }
    }
    let gap = Operator::from_diagonal(&atom, &[0.0, cfg.omega0])?;
    let drive = Operator::from_diagonal(&atom, &[0.0, cfg.detuning])?;
    let mut spec = EvolutionSpec::new(drive, cfg.wait)
        .with_decoherence(DecoherenceSpec::global(cfg.sigma, gap)?);
    if cfg.spontaneous_rate > 0.0 {
        spec = spec
            .with_loss(LossChannel::amplitude_damping(cfg.spontaneous_rate, sigma_minus(&atom)?)?)
            .stepped(cfg.stepped_method(cfg.omega0 * cfg.omega0));
    }

    let pulse = rotation(&atom, cfg.pulse_area)?;
    let ground = PureState::basis(&atom, 0)?.to_density();
    let prepared = ground.conjugated(&pulse)?;
    let waited = evolve(&prepared, &spec)?;

    let undo = pulse.adjoint().into_matrix();
    let detect = undo.adjoint() * projector(&atom, 0)?.matrix() * &undo;
    let points = cfg
        .phases
        .iter()
        .map(|&phi| {
            let d = phase_diagonal(&atom, phi)?;
            let p_g = weighted_trace(&detect, waited.matrix(), &d).clamp(0.0, 1.0);
            Ok(FringePoint { phi, p_g })
        })
        .collect::<Result<Vec<_>>>()?;
    FringeResult::from_points(points)
}

/// Atom ⊗ field Ramsey experiment with Jaynes–Cummings pulses.
///
/// Holds the state after the first pulse and after the waiting period; the
/// fringe is obtained by injecting a phase on `|e⟩` and applying a second,
/// identical pulse.
#[derive(Clone, Debug)]
pub struct QuantizedRamsey {
    config: RamseyConfig,
    space: HilbertSpace,
    pulse: Operator,
    wait_spec: EvolutionSpec,
    after_pulse: DensityMatrix,
    after_wait: DensityMatrix,
}

impl QuantizedRamsey {
    pub fn new(cfg: &RamseyConfig) -> Result<Self> {
        cfg.validate()?;
        let n_max = cfg.cutoff();
        let n_dom = cfg.field.dominant_number();
        if n_dom == 0 {
            return Err(invalid("field", "needs at least one photon to drive the atom"));
        }
        if n_dom > n_max {
            return Err(invalid("n_max", format!("cutoff {n_max} below photon number {n_dom}")));
        }
        let field_state = match cfg.field {
            FieldState::Fock(n) => fock_state(n, n_max)?,
            FieldState::Coherent(a) => coherent_state(a, n_max)?,
        }
        .relabeled(&[FIELD])?;
        let atom = HilbertSpace::single(ATOM, 2)?;
        let ground = PureState::basis(&atom, 0)?;
        let initial = ground.tensor(&field_state)?.to_density();
        let space = initial.space().clone();

        let field_ops = mode_ops(n_max.max(1))?.relabeled(FIELD)?;
        let a = if n_max == 0 {
            return Err(invalid("n_max", "must be at least 1"));
        } else {
            field_ops.annihilation.clone()
        };
        let raise = sigma_minus(&atom)?.adjoint();
        let jc = raise
            .tensor(&a)?
            .plus(&raise.adjoint().tensor(&a.adjoint())?)?
            .scaled(cfg.coupling);
        let pulse_time = cfg.pulse_area / (2.0 * cfg.coupling * (n_dom as f64).sqrt());
        let eig = eig_h(&jc)?;
        let v = eig.vectors.matrix();
        let phases = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            space.dim(),
            eig.values.iter().map(|l| Complex64::from_polar(1.0, -l * pulse_time)),
        ));
        let pulse = Operator::new(space.clone(), v * phases * v.adjoint())?;

        let excited = projector(&atom, 1)?;
        let exc_full = excited.embed(&space)?;
        let number = field_ops.number.embed(&space)?;
        let total_number = exc_full.plus(&number)?;
        let omega = cfg.field_frequency();
        let drive = exc_full.scaled(cfg.detuning);

        let blocks = match &cfg.partition {
            Partition::Global => {
                // ω N_exc + δ|e⟩⟨e| = ω₀|e⟩⟨e| + ω n, built so that equal
                // excitation numbers give bit-identical energies
                let total = total_number.scaled(omega).plus(&drive)?;
                DecoherenceSpec::global(cfg.sigma, total)?
            }
            Partition::Local => DecoherenceSpec::local(
                cfg.sigma,
                vec![excited.scaled(cfg.omega0), field_ops.number.scaled(omega)],
            )?,
            Partition::Only(l) if l == ATOM => {
                DecoherenceSpec::local(cfg.sigma, vec![excited.scaled(cfg.omega0)])?
            }
            Partition::Only(l) if l == FIELD => {
                DecoherenceSpec::local(cfg.sigma, vec![field_ops.number.scaled(omega)])?
            }
            Partition::Only(l) => {
                return Err(invalid("partition", format!("unknown subsystem `{l}`")))
            }
        };
        let mut wait_spec = EvolutionSpec::new(drive, cfg.wait).with_decoherence(blocks);
        if cfg.spontaneous_rate > 0.0 {
            let top = cfg.omega0.abs() + omega.abs() * n_max as f64;
            wait_spec = wait_spec
                .with_loss(LossChannel::amplitude_damping(cfg.spontaneous_rate, sigma_minus(&atom)?)?)
                .stepped(cfg.stepped_method(top * top));
        }

        let after_pulse = initial.conjugated(&pulse)?;
        let after_wait = evolve(&after_pulse, &wait_spec)?;
        Ok(Self {
            config: cfg.clone(),
            space,
            pulse,
            wait_spec,
            after_pulse,
            after_wait,
        })
    }

    pub fn space(&self) -> &HilbertSpace {
        &self.space
    }

    pub fn pulse(&self) -> &Operator {
        &self.pulse
    }

    pub fn after_first_pulse(&self) -> &DensityMatrix {
        &self.after_pulse
    }

    pub fn after_wait(&self) -> &DensityMatrix {
        &self.after_wait
    }

    /// State part-way through the waiting period.
    pub fn during_wait(&self, t: f64) -> Result<DensityMatrix> {
        if !(0.0..=self.config.wait).contains(&t) {
            return Err(invalid("t", format!("outside the waiting period [0, {}]", self.config.wait)));
        }
        let mut spec = self.wait_spec.clone();
        spec.duration = t;
        if let crate::engine::Method::Stepped { step } = spec.method {
            spec.method = crate::engine::Method::Stepped { step: step.min(t.max(f64::MIN_POSITIVE)) };
        }
        evolve(&self.after_pulse, &spec)
    }

    /// Joint state after the phase injection and the second pulse.
    pub fn final_state(&self, phi: f64) -> Result<DensityMatrix> {
        let d = phase_diagonal(&self.space, phi)?;
        let n = self.space.dim();
        let shifted = DMatrix::from_fn(n, n, |i, j| d[i] * self.after_wait.matrix()[(i, j)] * d[j].conj());
        DensityMatrix::new(self.space.clone(), shifted)?.conjugated(&self.pulse)
    }

    pub fn fringe(&self) -> Result<FringeResult> {
        let u = self.pulse.matrix();
        let pg = projector(&HilbertSpace::single(ATOM, 2)?, 0)?.embed(&self.space)?;
        let detect = u.adjoint() * pg.matrix() * u;
        let points = self
            .config
            .phases
            .iter()
            .map(|&phi| {
                let d = phase_diagonal(&self.space, phi)?;
                let p_g = weighted_trace(&detect, self.after_wait.matrix(), &d).clamp(0.0, 1.0);
                Ok(FringePoint { phi, p_g })
            })
            .collect::<Result<Vec<_>>>()?;
        FringeResult::from_points(points)
    }
}

/// Ramsey fringe with the field treated as a quantized mode.
pub fn run_ramsey_quantized(cfg: &RamseyConfig) -> Result<FringeResult> {
    QuantizedRamsey::new(cfg)?.fringe()
}

/// Two-pulse construction: `N` photons split on a balanced beamsplitter
/// into pulses 1 and 2, then pulse 1 interacts with an atom in `|g⟩` for
/// `pulse_time` at coupling `coupling`.
///
/// Returns the joint state on `pulse1 ⊗ pulse2 ⊗ atom`.
pub fn split_pulse_state(n_total: usize, coupling: f64, pulse_time: f64) -> Result<DensityMatrix> {
    if n_total == 0 || n_total > 6 {
        return Err(invalid("n_total", "supported for 1 ≤ N ≤ 6"));
    }
    let dim = n_total + 1;
    let space = HilbertSpace::new([("pulse1", dim), ("pulse2", dim), (ATOM, 2)])?;
    let mut amps = nalgebra::DVector::zeros(space.dim());
    for n in 0..=n_total {
        // c_n = √(C(N, n) / 2^N)
        let c_n = (binomial(n_total, n) / 2f64.powi(n_total as i32)).sqrt();
        let m = n_total - n;
        let k = coupling * (m as f64).sqrt() * pulse_time;
        amps[space.index(&[m, n, 0])?] += c(c_n * k.cos(), 0.0);
        if m > 0 {
            amps[space.index(&[m - 1, n, 1])?] += c(0.0, -c_n * k.sin());
        }
    }
    Ok(PureState::normalized(space, amps)?.to_density())
}

pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}
