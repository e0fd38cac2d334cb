use nalgebra::DMatrix;
use num_complex::Complex64;

use super::operator::Operator;
use super::space::HilbertSpace;
use super::state::{DensityMatrix, PureState};
use crate::error::{Error, Result};

/// Kronecker product of two objects of the same kind.
///
/// The result lives on `self.space ⊗ other.space`; labels must stay unique.
pub trait Tensor: Sized {
    fn tensor(&self, other: &Self) -> Result<Self>;
}

impl Tensor for Operator {
    fn tensor(&self, other: &Self) -> Result<Self> {
        let space = self.space().concat(other.space())?;
        Operator::new(space, self.matrix().kronecker(other.matrix()))
    }
}

impl Tensor for PureState {
    fn tensor(&self, other: &Self) -> Result<Self> {
        let space = self.space().concat(other.space())?;
        PureState::normalized(space, self.amplitudes().kronecker(other.amplitudes()))
    }
}

impl Tensor for DensityMatrix {
    fn tensor(&self, other: &Self) -> Result<Self> {
        let space = self.space().concat(other.space())?;
        DensityMatrix::new(space, self.matrix().kronecker(other.matrix()))
    }
}

/// Traces out every factor not listed in `keep`.
///
/// The kept factors retain their original order.
pub fn partial_trace<S: AsRef<str>>(rho: &DensityMatrix, keep: &[S]) -> Result<DensityMatrix> {
    let space = rho.space();
    let kept = space.subspace(keep)?;
    let labels: Vec<&str> = kept.labels().collect();
    let kept_offsets = space.offsets_of(&kept)?;
    let traced_offsets = match space.complement(&labels) {
        Some(rest) => space.offsets_of(&rest)?,
        None => vec![0],
    };
    let m = rho.matrix();
    let n = kept.dim();
    let mut out = DMatrix::<Complex64>::zeros(n, n);
    for (j, &oj) in kept_offsets.iter().enumerate() {
        for (i, &oi) in kept_offsets.iter().enumerate() {
            out[(i, j)] = traced_offsets
                .iter()
                .map(|&t| m[(oi + t, oj + t)])
                .sum();
        }
    }
    DensityMatrix::new(kept, out)
}

/// Reorders the factors of a state; `order` lists every label once.
pub fn permute_factors<S: AsRef<str>>(rho: &DensityMatrix, order: &[S]) -> Result<DensityMatrix> {
    let space = rho.space();
    if order.len() != space.factors().len() {
        return Err(Error::DimensionMismatch {
            expected: space.factors().len(),
            found: order.len(),
        });
    }
    let target = HilbertSpace::new(
        order
            .iter()
            .map(|l| Ok((l.as_ref().to_string(), space.factor_dim(l.as_ref())?)))
            .collect::<Result<Vec<_>>>()?,
    )?;
    let map = space.offsets_of(&target)?;
    let m = rho.matrix();
    let n = target.dim();
    let out = DMatrix::from_fn(n, n, |i, j| m[(map[i], map[j])]);
    DensityMatrix::new(target, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{c, frobenius};
    use nalgebra::DVector;

    fn random_density(label: &str, dim: usize, seed: u64) -> DensityMatrix {
        // deterministic pseudo-random positive matrix A A† / tr
        let mut state = seed;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        let a = DMatrix::from_fn(dim, dim, |_, _| c(next(), next()));
        let p = &a * a.adjoint();
        let tr = p.trace();
        DensityMatrix::new(HilbertSpace::single(label, dim).unwrap(), p / tr).unwrap()
    }

    #[test]
    fn identity_tensor_identity() {
        let a = Operator::identity(&HilbertSpace::single("a", 2).unwrap());
        let b = Operator::identity(&HilbertSpace::single("b", 3).unwrap());
        let ab = a.tensor(&b).unwrap();
        assert_eq!(ab.matrix(), &DMatrix::<Complex64>::identity(6, 6));
        assert_eq!(ab.dim(), 6);
    }

    #[test]
    fn basis_tensor_basis() {
        let g = PureState::basis(&HilbertSpace::single("atom", 2).unwrap(), 0).unwrap();
        let vac = PureState::basis(&HilbertSpace::single("field", 4).unwrap(), 0).unwrap();
        let s = g.tensor(&vac).unwrap();
        let mut expected = DVector::zeros(8);
        expected[0] = c(1.0, 0.0);
        assert_eq!(s.amplitudes(), &expected);
    }

    #[test]
    fn product_projector_is_pure() {
        let e = PureState::basis(&HilbertSpace::single("atom", 2).unwrap(), 1).unwrap();
        let one = PureState::basis(&HilbertSpace::single("field", 3).unwrap(), 1).unwrap();
        let rho = e.to_density().tensor(&one.to_density()).unwrap();
        assert!((rho.trace().re - 1.0).abs() < 1e-15);
        assert!((rho.purity() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn tensor_rejects_duplicate_labels() {
        let a = Operator::identity(&HilbertSpace::single("a", 2).unwrap());
        assert!(a.tensor(&a).is_err());
    }

    #[test]
    fn partial_trace_of_product() {
        let ra = random_density("A", 3, 1);
        let rb = random_density("B", 4, 2);
        let joint = ra.tensor(&rb).unwrap();
        let back_a = partial_trace(&joint, &["A"]).unwrap();
        let back_b = partial_trace(&joint, &["B"]).unwrap();
        assert!(back_a.distance(&ra).unwrap() < 1e-12);
        assert!(back_b.distance(&rb).unwrap() < 1e-12);
        let all = partial_trace(&joint, &["B", "A"]).unwrap();
        assert!(frobenius(&(all.matrix() - joint.matrix())) < 1e-15);
    }

    #[test]
    fn partial_trace_of_bell_state() {
        let s = HilbertSpace::new([("x", 2), ("y", 2)]).unwrap();
        let v = DVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let bell = PureState::normalized(s, v).unwrap().to_density();
        let r = partial_trace(&bell, &["y"]).unwrap();
        let half = DensityMatrix::maximally_mixed(r.space());
        assert!(r.distance(&half).unwrap() < 1e-15);
    }

    #[test]
    fn partial_trace_errors() {
        let rho = random_density("A", 2, 3);
        assert!(matches!(partial_trace(&rho, &["Z"]), Err(Error::UnknownLabel(_))));
        assert!(matches!(partial_trace::<&str>(&rho, &[]), Err(Error::EmptyKeepSet)));
    }

    #[test]
    fn permute_then_trace() {
        let ra = random_density("A", 2, 4);
        let rb = random_density("B", 3, 5);
        let joint = ra.tensor(&rb).unwrap();
        let swapped = permute_factors(&joint, &["B", "A"]).unwrap();
        let expected = rb.tensor(&ra).unwrap();
        assert!(swapped.distance(&expected).unwrap() < 1e-15);
    }
}
