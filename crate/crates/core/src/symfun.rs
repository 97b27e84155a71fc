//! k-subset enumeration and the symmetric-function kernels built on it.

use std::fmt;

use thiserror::Error;

use crate::exact::{ExactScalar, PositiveVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubsetError {
    #[error("subset size k={k} must satisfy 1 <= k <= n={n}")]
    KOutOfRange { k: usize, n: usize },
    #[error("index {index} out of range for a vector of length {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("subset indices must be strictly increasing")]
    NotIncreasing,
    #[error("subset must be nonempty")]
    Empty,
}

pub(crate) fn check_k(n: usize, k: usize) -> Result<(), SubsetError> {
    if k == 0 || k > n {
        Err(SubsetError::KOutOfRange { k, n })
    } else {
        Ok(())
    }
}

/// A nonempty subset of `{0, .., n-1}` stored as strictly increasing indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetIndex(Vec<usize>);

impl SubsetIndex {
    pub fn new(indices: Vec<usize>) -> Result<Self, SubsetError> {
        if indices.is_empty() {
            return Err(SubsetError::Empty);
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SubsetError::NotIncreasing);
        }
        Ok(Self(indices))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.0.binary_search(&index).is_ok()
    }

    fn check_bounds(&self, n: usize) -> Result<(), SubsetError> {
        match self.0.last() {
            Some(&last) if last >= n => Err(SubsetError::IndexOutOfRange { index: last, n }),
            _ => Ok(()),
        }
    }
}

impl fmt::Debug for SubsetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.0).finish()
    }
}

/// Lexicographic iterator over the k-subsets of `{0, .., n-1}`.
#[derive(Debug, Clone)]
pub struct KSubsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl KSubsets {
    pub fn new(n: usize, k: usize) -> Result<Self, SubsetError> {
        check_k(n, k)?;
        Ok(Self {
            n,
            current: Some((0..k).collect()),
        })
    }
}

impl Iterator for KSubsets {
    type Item = SubsetIndex;

    fn next(&mut self) -> Option<SubsetIndex> {
        let current = self.current.as_mut()?;
        let out = SubsetIndex(current.clone());

        // Advance the rightmost index that still has room.
        let k = current.len();
        let mut i = k;
        while i > 0 && current[i - 1] == self.n - k + (i - 1) {
            i -= 1;
        }
        if i == 0 {
            self.current = None;
        } else {
            current[i - 1] += 1;
            for j in i..k {
                current[j] = current[j - 1] + 1;
            }
        }
        Some(out)
    }
}

pub fn iterate_k_subsets(n: usize, k: usize) -> Result<KSubsets, SubsetError> {
    KSubsets::new(n, k)
}

/// C(n, k), or `None` on overflow.
pub fn binomial(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

pub fn subset_sum(v: &PositiveVector, s: &SubsetIndex) -> Result<ExactScalar, SubsetError> {
    s.check_bounds(v.len())?;
    Ok(s.indices().iter().map(|&i| &v[i]).sum())
}

pub fn subset_product(v: &PositiveVector, s: &SubsetIndex) -> Result<ExactScalar, SubsetError> {
    s.check_bounds(v.len())?;
    Ok(s.indices().iter().map(|&i| &v[i]).product())
}

/// `e_0, e_1, .., e_n` of the entries, by the row recurrence
/// `e_j(a_1..a_m) = e_j(a_1..a_{m-1}) + a_m e_{j-1}(a_1..a_{m-1})`.
pub fn elementary_symmetric_all(v: &PositiveVector) -> Vec<ExactScalar> {
    elementary_symmetric_prefix(v, v.len())
}

fn elementary_symmetric_prefix(v: &PositiveVector, k: usize) -> Vec<ExactScalar> {
    let mut e = vec![ExactScalar::zero(); k + 1];
    e[0] = ExactScalar::one();
    for (m, a) in v.iter().enumerate() {
        for j in (1..=k.min(m + 1)).rev() {
            let term = a * &e[j - 1];
            e[j] = &e[j] + term;
        }
    }
    e
}

/// `e_k` of the entries in `O(n k)` exact operations.
pub fn elementary_symmetric(v: &PositiveVector, k: usize) -> Result<ExactScalar, SubsetError> {
    check_k(v.len(), k)?;
    Ok(elementary_symmetric_prefix(v, k).swap_remove(k))
}

/// `e_k` as the literal sum of subset products. Exponential; kept as the
/// independent cross-check for [`elementary_symmetric`].
pub fn elementary_symmetric_by_enumeration(v: &PositiveVector, k: usize) -> Result<ExactScalar, SubsetError> {
    let mut total = ExactScalar::zero();
    for s in KSubsets::new(v.len(), k)? {
        total = total + subset_product(v, &s)?;
    }
    Ok(total)
}
