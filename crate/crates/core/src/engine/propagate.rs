use num_complex::Complex64;

use super::generator::{is_diagonal, Liouvillian};
use super::spec::{EvolutionSpec, Method};
use crate::constants::PSD_TOL;
use crate::error::{invalid, Error, Result};
use crate::quantum::{frobenius, hermitian_eigen, CMatrix, DensityMatrix};

/// Relative commutator norm above which operators count as non-commuting.
pub const COMMUTE_TOL: f64 = 1e-9;

/// Largest allowed `‖L‖ · step` for the stepped integrator.
pub const MAX_STEP_NORM: f64 = 0.1;

/// Propagates with the method selected in `spec`.
pub fn evolve(rho0: &DensityMatrix, spec: &EvolutionSpec) -> Result<DensityMatrix> {
    match spec.method {
        Method::Analytic => evolve_analytic(rho0, spec),
        Method::Stepped { .. } => evolve_stepped(rho0, spec),
    }
}

/// A common eigenbasis of mutually commuting Hermitian matrices.
pub(crate) struct JointBasis {
    /// `None` when every input was already diagonal.
    pub unitary: Option<CMatrix>,
    /// Diagonal of `U† A U` for each input, in input order.
    pub values: Vec<Vec<f64>>,
}

pub(crate) fn check_commuting(ops: &[&CMatrix]) -> Result<()> {
    for (i, a) in ops.iter().enumerate() {
        for b in &ops[i + 1..] {
            if is_diagonal(a) && is_diagonal(b) {
                continue;
            }
            let scale = frobenius(a) * frobenius(b);
            if scale == 0.0 {
                continue;
            }
            let comm = *a * *b - *b * *a;
            let rel = frobenius(&comm) / scale;
            if rel > COMMUTE_TOL {
                return Err(Error::NonCommuting(rel));
            }
        }
    }
    Ok(())
}

/// Simultaneous diagonalization by successive refinement of degenerate
/// eigenspaces.
pub(crate) fn joint_eigenbasis(ops: &[&CMatrix]) -> JointBasis {
    let n = ops.first().map_or(0, |m| m.nrows());
    if ops.iter().all(|m| is_diagonal(m)) {
        return JointBasis {
            unitary: None,
            values: ops
                .iter()
                .map(|m| (0..n).map(|i| m[(i, i)].re).collect())
                .collect(),
        };
    }
    let mut u = CMatrix::identity(n, n);
    let mut clusters: Vec<Vec<usize>> = vec![(0..n).collect()];
    for a in ops {
        let scale = frobenius(a);
        if scale == 0.0 {
            continue;
        }
        let tol = 1e-9 * scale;
        let mut refined = Vec::with_capacity(clusters.len());
        for cluster in clusters {
            if cluster.len() == 1 {
                refined.push(cluster);
                continue;
            }
            let k = cluster.len();
            let uc = CMatrix::from_fn(n, k, |r, c| u[(r, cluster[c])]);
            let sub = uc.adjoint() * *a * &uc;
            let (values, v) = hermitian_eigen(&sub);
            let rotated = &uc * v;
            for (c, &col) in cluster.iter().enumerate() {
                u.set_column(col, &rotated.column(c));
            }
            let mut group = vec![cluster[0]];
            for c in 1..k {
                if values[c] - values[c - 1] > tol {
                    refined.push(std::mem::take(&mut group));
                }
                group.push(cluster[c]);
            }
            refined.push(group);
        }
        clusters = refined;
    }
    let values = ops
        .iter()
        .map(|a| {
            let au = *a * &u;
            (0..n)
                .map(|m| u.column(m).dotc(&au.column(m)).re)
                .collect()
        })
        .collect();
    JointBasis {
        unitary: Some(u),
        values,
    }
}

/// Exact solution for commuting drive and block Hamiltonians:
/// `ρ_mn(t) = ρ_mn(0) exp(−i ω_mn t − σ t Σ_b (ω^b_mn)²)` in the joint
/// eigenbasis.
pub fn evolve_analytic(rho0: &DensityMatrix, spec: &EvolutionSpec) -> Result<DensityMatrix> {
    spec.check()?;
    if !spec.losses.is_empty() {
        return Err(Error::LossesNotSupported);
    }
    let space = rho0.space();
    if spec.hamiltonian.space() != space {
        return Err(Error::DimensionMismatch {
            expected: space.dim(),
            found: spec.hamiltonian.dim(),
        });
    }
    let sigma = spec.decoherence.sigma();
    let blocks: Vec<CMatrix> = if sigma > 0.0 {
        spec.decoherence
            .embedded(space)?
            .into_iter()
            .map(|o| o.into_matrix())
            .collect()
    } else {
        Vec::new()
    };
    let mut ops: Vec<&CMatrix> = vec![spec.hamiltonian.matrix()];
    ops.extend(blocks.iter());
    check_commuting(&ops)?;

    let basis = joint_eigenbasis(&ops);
    let mut rho = match &basis.unitary {
        Some(u) => u.adjoint() * rho0.matrix() * u,
        None => rho0.matrix().clone(),
    };
    let t = spec.duration;
    let n = space.dim();
    let drive = &basis.values[0];
    let gaps = &basis.values[1..];
    for j in 0..n {
        for i in 0..n {
            if i == j {
                continue;
            }
            let damping: f64 = gaps.iter().map(|b| (b[i] - b[j]).powi(2)).sum::<f64>() * sigma * t;
            let phase = -(drive[i] - drive[j]) * t;
            rho[(i, j)] *= Complex64::from_polar((-damping).exp(), phase);
        }
    }
    if let Some(u) = &basis.unitary {
        rho = u * rho * u.adjoint();
    }
    DensityMatrix::new(space.clone(), rho)
}

/// Fixed-step classical fourth-order Runge–Kutta integration.
///
/// The step actually taken is `duration / ⌈duration / step⌉`. The final
/// state is re-Hermitized and renormalized to unit trace.
pub fn evolve_stepped(rho0: &DensityMatrix, spec: &EvolutionSpec) -> Result<DensityMatrix> {
    spec.check()?;
    let Method::Stepped { step } = spec.method else {
        return Err(invalid("method", "evolve_stepped needs a stepped method"));
    };
    if spec.duration == 0.0 {
        return Ok(rho0.clone());
    }
    if step > spec.duration {
        return Err(invalid(
            "step",
            format!("step {step:e} s exceeds duration {:e} s", spec.duration),
        ));
    }
    let liouvillian = Liouvillian::build(rho0.space(), spec)?;
    let n_steps = (spec.duration / step).ceil().max(1.0) as usize;
    let h = spec.duration / n_steps as f64;
    let product = liouvillian.norm_bound() * h;
    if product > MAX_STEP_NORM {
        return Err(Error::StepTooLarge { step: h, product });
    }

    let half = Complex64::new(h / 2.0, 0.0);
    let full = Complex64::new(h, 0.0);
    let sixth = Complex64::new(h / 6.0, 0.0);
    let two = Complex64::new(2.0, 0.0);
    let mut rho = rho0.matrix().clone();
    for _ in 0..n_steps {
        let k1 = liouvillian.apply(&rho);
        let k2 = liouvillian.apply(&(&rho + &k1 * half));
        let k3 = liouvillian.apply(&(&rho + &k2 * half));
        let k4 = liouvillian.apply(&(&rho + &k3 * full));
        rho += (k1 + k2 * two + k3 * two + k4) * sixth;
    }

    let mut rho = (&rho + rho.adjoint()) * Complex64::new(0.5, 0.0);
    let tr = rho.trace().re;
    rho /= Complex64::new(tr, 0.0);
    let (values, _) = hermitian_eigen(&rho);
    if let Some(&min) = values.first() {
        if min < -PSD_TOL {
            return Err(Error::NotPositive(min));
        }
    }
    DensityMatrix::new(rho0.space().clone(), rho)
}
