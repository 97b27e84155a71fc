use std::fmt;
use std::ops::Index;

use thiserror::Error;

use super::ExactScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VectorError {
    #[error("vector must have at least one entry")]
    Empty,
    #[error("entry {value} at index {index} is not strictly positive")]
    NonPositive { index: usize, value: ExactScalar },
}

/// A nonempty list of strictly positive exact scalars. Order and repeats are
/// preserved, so this behaves as an ordered multiset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PositiveVector {
    entries: Vec<ExactScalar>,
}

impl PositiveVector {
    pub fn new(entries: Vec<ExactScalar>) -> Result<Self, VectorError> {
        if entries.is_empty() {
            return Err(VectorError::Empty);
        }
        if let Some((index, value)) = entries.iter().enumerate().find(|(_, x)| !x.is_positive()) {
            return Err(VectorError::NonPositive {
                index,
                value: value.clone(),
            });
        }
        Ok(Self { entries })
    }

    /// Convenience constructor for integer entries.
    pub fn from_integers<I, T>(values: I) -> Result<Self, VectorError>
    where
        I: IntoIterator<Item = T>,
        T: Into<ExactScalar>,
    {
        Self::new(values.into_iter().map(Into::into).collect())
    }

    /// `n` copies of `value`.
    pub fn uniform(n: usize, value: ExactScalar) -> Result<Self, VectorError> {
        Self::new(vec![value; n])
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Always false; a `PositiveVector` is never empty.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[ExactScalar] {
        &self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ExactScalar> {
        self.entries.iter()
    }

    pub fn total(&self) -> ExactScalar {
        self.entries.iter().sum()
    }

    pub fn is_uniform(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] == w[1])
    }

    /// Multiplies every entry by `factor`, which must be positive.
    pub fn scaled(&self, factor: &ExactScalar) -> Result<Self, VectorError> {
        Self::new(self.entries.iter().map(|x| x * factor).collect())
    }

    /// Rescales so the entries sum to one.
    pub fn normalized(&self) -> Self {
        let total = self.total();
        Self {
            entries: self.entries.iter().map(|x| x / &total).collect(),
        }
    }

    pub fn permuted(&self, order: &[usize]) -> Self {
        Self {
            entries: order.iter().map(|&i| self.entries[i].clone()).collect(),
        }
    }

    pub fn into_entries(self) -> Vec<ExactScalar> {
        self.entries
    }
}

impl Index<usize> for PositiveVector {
    type Output = ExactScalar;

    fn index(&self, index: usize) -> &ExactScalar {
        &self.entries[index]
    }
}

impl<'a> IntoIterator for &'a PositiveVector {
    type Item = &'a ExactScalar;
    type IntoIter = std::slice::Iter<'a, ExactScalar>;

    fn into_iter(self) -> Self::IntoIter {
        self.entries.iter()
    }
}

/// Comma-separated canonical entries, e.g. `1,3/2,2`.
impl fmt::Display for PositiveVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PositiveVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PositiveVector({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keeps_order_and_repeats() {
        let v = PositiveVector::from_integers([1, 2, 3]).unwrap();
        assert_eq!(v.to_string(), "1,2,3");
        let w = PositiveVector::from_integers([2, 2, 2]).unwrap();
        assert_eq!(w.len(), 3);
        assert!(w.is_uniform());
    }

    #[test]
    fn reports_offending_index() {
        assert_eq!(
            PositiveVector::from_integers([1, 0, 3]),
            Err(VectorError::NonPositive {
                index: 1,
                value: ExactScalar::zero()
            })
        );
        assert!(matches!(
            PositiveVector::from_integers([1, 2, -5]),
            Err(VectorError::NonPositive { index: 2, .. })
        ));
    }

    #[test]
    fn rejects_empty() {
        assert_eq!(PositiveVector::new(vec![]), Err(VectorError::Empty));
    }

    #[test]
    fn normalization_sums_to_one() {
        let v = PositiveVector::from_integers([1, 2, 3]).unwrap().normalized();
        assert_eq!(v.total(), ExactScalar::one());
        assert_eq!(v[0], ExactScalar::new(1, 6).unwrap());
    }
}
