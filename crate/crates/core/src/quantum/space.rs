use std::fmt;

use crate::error::{Error, Result};

/// One tensor factor of a composite Hilbert space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    label: String,
    dim: usize,
}

impl Factor {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// Ordered tensor product of labelled factors.
///
/// Basis states are indexed in Kronecker order: the first factor is the most
/// significant digit of the flat index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HilbertSpace {
    factors: Vec<Factor>,
    total_dim: usize,
}

impl HilbertSpace {
    pub fn new<I, S>(factors: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, usize)>,
        S: Into<String>,
    {
        let factors: Vec<Factor> = factors
            .into_iter()
            .map(|(label, dim)| Factor {
                label: label.into(),
                dim,
            })
            .collect();
        if factors.is_empty() {
            return Err(Error::InvalidSpace("no factors".into()));
        }
        for (i, f) in factors.iter().enumerate() {
            if f.label.is_empty() {
                return Err(Error::InvalidSpace("empty factor label".into()));
            }
            if f.dim == 0 {
                return Err(Error::InvalidSpace(format!("factor `{}` has dimension 0", f.label)));
            }
            if factors[..i].iter().any(|g| g.label == f.label) {
                return Err(Error::InvalidSpace(format!("duplicate factor label `{}`", f.label)));
            }
        }
        let total_dim = factors
            .iter()
            .try_fold(1usize, |acc, f| acc.checked_mul(f.dim))
            .ok_or_else(|| Error::InvalidSpace("total dimension overflows".into()))?;
        Ok(Self { factors, total_dim })
    }

    pub fn single(label: impl Into<String>, dim: usize) -> Result<Self> {
        Self::new([(label.into(), dim)])
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn dim(&self) -> usize {
        self.total_dim
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.factors.iter().map(|f| f.label.as_str())
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.factors.iter().position(|f| f.label == label)
    }

    pub fn contains(&self, label: &str) -> bool {
        self.position(label).is_some()
    }

    pub fn factor_dim(&self, label: &str) -> Result<usize> {
        self.position(label)
            .map(|i| self.factors[i].dim)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Tensor product `self ⊗ other`.
    pub fn concat(&self, other: &HilbertSpace) -> Result<Self> {
        Self::new(
            self.factors
                .iter()
                .chain(other.factors.iter())
                .map(|f| (f.label.clone(), f.dim)),
        )
    }

    /// Sub-space spanned by the given labels, kept in this space's factor order.
    pub fn subspace<S: AsRef<str>>(&self, labels: &[S]) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptyKeepSet);
        }
        for l in labels {
            if !self.contains(l.as_ref()) {
                return Err(Error::UnknownLabel(l.as_ref().to_string()));
            }
        }
        Self::new(
            self.factors
                .iter()
                .filter(|f| labels.iter().any(|l| l.as_ref() == f.label))
                .map(|f| (f.label.clone(), f.dim)),
        )
    }

    /// Same dimensions, new labels.
    pub fn relabeled<S: AsRef<str>>(&self, labels: &[S]) -> Result<Self> {
        if labels.len() != self.factors.len() {
            return Err(Error::DimensionMismatch {
                expected: self.factors.len(),
                found: labels.len(),
            });
        }
        Self::new(
            labels
                .iter()
                .zip(&self.factors)
                .map(|(l, f)| (l.as_ref().to_string(), f.dim)),
        )
    }

    /// Flat-index stride of each factor.
    pub(crate) fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.factors.len()];
        for k in (0..self.factors.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.factors[k + 1].dim;
        }
        strides
    }

    /// Per-factor digits of a flat basis index.
    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for (k, f) in self.factors.iter().enumerate().rev() {
            out[k] = index % f.dim;
            index /= f.dim;
        }
        out
    }

    /// Flat basis index of per-factor digits.
    pub fn index(&self, digits: &[usize]) -> Result<usize> {
        if digits.len() != self.factors.len() {
            return Err(Error::DimensionMismatch {
                expected: self.factors.len(),
                found: digits.len(),
            });
        }
        let mut index = 0;
        for (d, f) in digits.iter().zip(&self.factors) {
            if *d >= f.dim {
                return Err(Error::DimensionMismatch {
                    expected: f.dim,
                    found: *d,
                });
            }
            index = index * f.dim + d;
        }
        Ok(index)
    }

    /// Offsets into this space's flat index contributed by the factors of
    /// `part`, enumerated in `part`'s own basis order.
    pub(crate) fn offsets_of(&self, part: &HilbertSpace) -> Result<Vec<usize>> {
        let strides = self.strides();
        let mut map = Vec::with_capacity(part.factors.len());
        for f in &part.factors {
            let pos = self
                .position(&f.label)
                .ok_or_else(|| Error::UnknownLabel(f.label.clone()))?;
            if self.factors[pos].dim != f.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.factors[pos].dim,
                    found: f.dim,
                });
            }
            map.push(strides[pos]);
        }
        Ok((0..part.total_dim)
            .map(|i| {
                part.digits(i)
                    .iter()
                    .zip(&map)
                    .map(|(d, s)| d * s)
                    .sum()
            })
            .collect())
    }

    /// The factors of this space not present in `labels`, in order.
    pub(crate) fn complement<S: AsRef<str>>(&self, labels: &[S]) -> Option<HilbertSpace> {
        let rest: Vec<_> = self
            .factors
            .iter()
            .filter(|f| !labels.iter().any(|l| l.as_ref() == f.label))
            .map(|f| (f.label.clone(), f.dim))
            .collect();
        if rest.is_empty() {
            None
        } else {
            Self::new(rest).ok()
        }
    }
}

impl fmt::Display for HilbertSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" ⊗ ")?;
            }
            write!(f, "{}[{}]", factor.label, factor.dim)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn total_dim_is_product() {
        let s = HilbertSpace::new([("atom", 2), ("field", 13)]).unwrap();
        assert_eq!(s.dim(), 26);
        assert_eq!(s.to_string(), "atom[2] ⊗ field[13]");
    }

    #[test]
    fn rejects_bad_labels() {
        assert!(HilbertSpace::new([("a", 2), ("a", 3)]).is_err());
        assert!(HilbertSpace::new([("", 2)]).is_err());
        assert!(HilbertSpace::new([("a", 0)]).is_err());
        assert!(HilbertSpace::new(Vec::<(String, usize)>::new()).is_err());
    }

    #[test]
    fn digits_round_trip() {
        let s = HilbertSpace::new([("a", 2), ("b", 3), ("c", 4)]).unwrap();
        for i in 0..s.dim() {
            assert_eq!(s.index(&s.digits(i)).unwrap(), i);
        }
        assert_eq!(s.digits(23), vec![1, 2, 3]);
    }

    #[test]
    fn subspace_keeps_order() {
        let s = HilbertSpace::new([("a", 2), ("b", 3), ("c", 4)]).unwrap();
        let sub = s.subspace(&["c", "a"]).unwrap();
        assert_eq!(sub.labels().collect::<Vec<_>>(), vec!["a", "c"]);
        assert!(matches!(s.subspace(&["x"]), Err(Error::UnknownLabel(_))));
        assert!(matches!(s.subspace::<&str>(&[]), Err(Error::EmptyKeepSet)));
    }
}
