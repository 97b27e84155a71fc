//! Exact evaluation of the harmonic-mean weighted subset-product inequality
//!
//! ```text
//!   sum over k-subsets S of  prod(a_S) / sum(a_S)
//!     <=  (n / k) * e_k(a) / sum(a)
//! ```
//!
//! together with its supporting lemmas, the rearrangement identity used to
//! prove it, and the classification of its equality cases.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{ExactScalar, PositiveVector};
use crate::symfun::{check_k, elementary_symmetric, KSubsets, SubsetError, SubsetIndex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Statement {
    MainTheorem,
    ReciprocalLemma,
    PairwiseLemma,
    ProofIdentity,
}

impl Statement {
    pub fn as_str(self) -> &'static str {
        match self {
            Statement::MainTheorem => "main_theorem",
            Statement::ReciprocalLemma => "reciprocal_lemma",
            Statement::PairwiseLemma => "pairwise_lemma",
            Statement::ProofIdentity => "proof_identity",
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An instance where the claimed small side exceeded the large side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub statement: Statement,
    pub vector: PositiveVector,
    pub k: usize,
    pub lhs: ExactScalar,
    pub rhs: ExactScalar,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} violated at v=[{}], k={}: lhs={} > rhs={}",
            self.statement, self.vector, self.k, self.lhs, self.rhs
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InequalityError {
    #[error(transparent)]
    Subset(#[from] SubsetError),
    #[error("{statement} needs at least {required} entries, got {n}")]
    TooFewEntries {
        statement: Statement,
        n: usize,
        required: usize,
    },
    #[error("{statement} needs k < n, got k={k}, n={n}")]
    NoLargerSubsets { statement: Statement, k: usize, n: usize },
    #[error("{0}")]
    Violation(Box<Violation>),
}

/// Both sides of one verified instance. `slack = rhs - lhs` is never
/// negative; a negative slack is surfaced as [`InequalityError::Violation`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawReport")]
pub struct InequalityReport {
    n: usize,
    k: usize,
    statement: Statement,
    lhs: ExactScalar,
    rhs: ExactScalar,
    slack: ExactScalar,
    is_equality: bool,
}

impl InequalityReport {
    /// Builds a report from the two sides, failing with a `Violation` when
    /// `lhs > rhs`.
    pub fn certify(
        statement: Statement,
        vector: &PositiveVector,
        k: usize,
        lhs: ExactScalar,
        rhs: ExactScalar,
    ) -> Result<Self, InequalityError> {
        let slack = &rhs - &lhs;
        if slack.is_negative() {
            return Err(InequalityError::Violation(Box::new(Violation {
                statement,
                vector: vector.clone(),
                k,
                lhs,
                rhs,
            })));
        }
        Ok(Self {
            n: vector.len(),
            k,
            statement,
            is_equality: slack.is_zero(),
            lhs,
            rhs,
            slack,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn statement(&self) -> Statement {
        self.statement
    }

    pub fn lhs(&self) -> &ExactScalar {
        &self.lhs
    }

    pub fn rhs(&self) -> &ExactScalar {
        &self.rhs
    }

    pub fn slack(&self) -> &ExactScalar {
        &self.slack
    }

    pub fn is_equality(&self) -> bool {
        self.is_equality
    }

    /// True when every numeric field matches, ignoring which statement
    /// produced the report.
    pub fn same_values(&self, other: &Self) -> bool {
        self.n == other.n
            && self.k == other.k
            && self.lhs == other.lhs
            && self.rhs == other.rhs
            && self.slack == other.slack
            && self.is_equality == other.is_equality
    }
}

#[derive(Deserialize)]
struct RawReport {
    n: usize,
    k: usize,
    statement: Statement,
    lhs: ExactScalar,
    rhs: ExactScalar,
    slack: ExactScalar,
    is_equality: bool,
}

impl TryFrom<RawReport> for InequalityReport {
    type Error = String;

    fn try_from(raw: RawReport) -> Result<Self, String> {
        if raw.slack != &raw.rhs - &raw.lhs {
            return Err(format!("slack {} != rhs - lhs", raw.slack));
        }
        if raw.slack.is_negative() {
            return Err(format!("negative slack {}", raw.slack));
        }
        if raw.is_equality != raw.slack.is_zero() {
            return Err("is_equality disagrees with slack".into());
        }
        Ok(Self {
            n: raw.n,
            k: raw.k,
            statement: raw.statement,
            lhs: raw.lhs,
            rhs: raw.rhs,
            slack: raw.slack,
            is_equality: raw.is_equality,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EqualityClass {
    /// k = 1 or k = n: both sides agree for every vector.
    BoundaryAlwaysEqual,
    /// 1 < k < n and all entries equal.
    UniformEqual,
    Strict,
}

impl EqualityClass {
    pub fn is_equality(self) -> bool {
        !matches!(self, EqualityClass::Strict)
    }
}

/// Sum over k-subsets `S` of `prod(a_S) / sum(a_S)`.
pub fn lhs_main(v: &PositiveVector, k: usize) -> Result<ExactScalar, InequalityError> {
    let terms = KSubsets::new(v.len(), k)?.map(|s| subset_ratio(v, &s));
    Ok(ExactScalar::sum_balanced(terms))
}

fn subset_ratio(v: &PositiveVector, s: &SubsetIndex) -> ExactScalar {
    let mut sum = ExactScalar::zero();
    let mut product = ExactScalar::one();
    for &i in s.indices() {
        sum = sum + &v[i];
        product = product * &v[i];
    }
    product / sum
}

/// `(n / k) * e_k(a) / sum(a)`, with `e_k` from the row recurrence.
pub fn rhs_main(v: &PositiveVector, k: usize) -> Result<ExactScalar, InequalityError> {
    let e_k = elementary_symmetric(v, k)?;
    let n = ExactScalar::from(v.len());
    Ok(n / ExactScalar::from(k) * e_k / v.total())
}

pub fn check_main(v: &PositiveVector, k: usize) -> Result<InequalityReport, InequalityError> {
    let lhs = lhs_main(v, k)?;
    let rhs = rhs_main(v, k)?;
    InequalityReport::certify(Statement::MainTheorem, v, k, lhs, rhs)
}

fn require_len(v: &PositiveVector, statement: Statement, required: usize) -> Result<(), InequalityError> {
    if v.len() < required {
        Err(InequalityError::TooFewEntries {
            statement,
            n: v.len(),
            required,
        })
    } else {
        Ok(())
    }
}

/// Sum of reciprocals against the sum of reciprocals of the leave-one-out
/// averages. The report's `rhs` is `sum 1/a_i` (the large side) and `lhs` is
/// `sum_j (n-1) / (sum(a) - a_j)`, so `slack >= 0` means the lemma holds.
pub fn check_reciprocal_lemma(v: &PositiveVector) -> Result<InequalityReport, InequalityError> {
    require_len(v, Statement::ReciprocalLemma, 2)?;
    let n = v.len();
    let total = v.total();
    let others = ExactScalar::from(n - 1);
    let averages: ExactScalar = v.iter().map(|a| &others / (&total - a)).sum();
    let reciprocals: ExactScalar = v.iter().map(|a| ExactScalar::one() / a).sum();
    InequalityReport::certify(Statement::ReciprocalLemma, v, n - 1, averages, reciprocals)
}

/// The k = 2 case evaluated by its own double sum:
/// `sum_{i<j} a_i a_j / (a_i + a_j) <= n / (2 sum(a)) * sum_{i<j} a_i a_j`.
pub fn check_pairwise_lemma(v: &PositiveVector) -> Result<InequalityReport, InequalityError> {
    require_len(v, Statement::PairwiseLemma, 2)?;
    let a = v.entries();
    let mut harmonic = ExactScalar::zero();
    let mut products = ExactScalar::zero();
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            let p = &a[i] * &a[j];
            harmonic = harmonic + &p / (&a[i] + &a[j]);
            products = products + p;
        }
    }
    let rhs = ExactScalar::from(a.len()) / (ExactScalar::from(2) * v.total()) * products;
    InequalityReport::certify(Statement::PairwiseLemma, v, 2, harmonic, rhs)
}

/// Both sides of the rearrangement identity, evaluated on the normalized
/// vector `w = v / sum(v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofIdentity {
    /// `k * sum_{|S|=k} prod(w_S) (1 - sum(w_S)) / sum(w_S)`
    pub left: ExactScalar,
    /// `k * sum_{|S|=k+1} sum_{T in S, |T|=k} prod(w_S) / sum(w_T)`
    pub right: ExactScalar,
    /// The factor `sum(v)` divided out before evaluation.
    pub scale: ExactScalar,
}

impl ProofIdentity {
    pub fn holds(&self) -> bool {
        self.left == self.right
    }
}

pub fn proof_identity(v: &PositiveVector, k: usize) -> Result<ProofIdentity, InequalityError> {
    let n = v.len();
    check_k(n, k)?;
    if k >= n {
        return Err(InequalityError::NoLargerSubsets {
            statement: Statement::ProofIdentity,
            k,
            n,
        });
    }
    let scale = v.total();
    let w = v.normalized();
    let one = ExactScalar::one();
    let weight = ExactScalar::from(k);

    let left = ExactScalar::sum_balanced(KSubsets::new(n, k)?.map(|s| {
        let sum: ExactScalar = s.indices().iter().map(|&i| &w[i]).sum();
        let product: ExactScalar = s.indices().iter().map(|&i| &w[i]).product();
        product * (&one - &sum) / sum
    }));

    let mut right_terms = Vec::new();
    for s in KSubsets::new(n, k + 1)? {
        let product: ExactScalar = s.indices().iter().map(|&i| &w[i]).product();
        let sum: ExactScalar = s.indices().iter().map(|&i| &w[i]).sum();
        // each k-subset T of S leaves out exactly one member
        for &dropped in s.indices() {
            right_terms.push(&product / (&sum - &w[dropped]));
        }
    }
    let right = ExactScalar::sum_balanced(right_terms);

    Ok(ProofIdentity {
        left: &weight * left,
        right: weight * right,
        scale,
    })
}

/// Wraps [`proof_identity`] as a report with `lhs = left`, `rhs = right`.
/// Any mismatch between the sides is a violation: the identity is exact.
pub fn check_proof_identity(v: &PositiveVector, k: usize) -> Result<InequalityReport, InequalityError> {
    let identity = proof_identity(v, k)?;
    if !identity.holds() {
        return Err(InequalityError::Violation(Box::new(Violation {
            statement: Statement::ProofIdentity,
            vector: v.clone(),
            k,
            lhs: identity.left,
            rhs: identity.right,
        })));
    }
    InequalityReport::certify(Statement::ProofIdentity, v, k, identity.left, identity.right)
}

pub fn classify_equality(v: &PositiveVector, k: usize) -> Result<EqualityClass, InequalityError> {
    let n = v.len();
    check_k(n, k)?;
    Ok(if k == 1 || k == n {
        EqualityClass::BoundaryAlwaysEqual
    } else if v.is_uniform() {
        EqualityClass::UniformEqual
    } else {
        EqualityClass::Strict
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfun::binomial;

    fn ints(values: &[i64]) -> PositiveVector {
        PositiveVector::from_integers(values.iter().copied()).unwrap()
    }

    fn q(n: i64, d: i64) -> ExactScalar {
        ExactScalar::new(n, d).unwrap()
    }

    #[test]
    fn main_sides_on_worked_vector() {
        let v = ints(&[1, 2, 3]);
        // pairs: 2/3 + 3/4 + 6/5
        assert_eq!(lhs_main(&v, 2).unwrap(), q(2, 3) + q(3, 4) + q(6, 5));
        assert_eq!(lhs_main(&v, 2).unwrap(), q(157, 60));
        // (3/2) * 11 / 6
        assert_eq!(rhs_main(&v, 2).unwrap(), q(11, 4));
        let report = check_main(&v, 2).unwrap();
        assert_eq!(report.slack(), &q(2, 15));
        assert!(!report.is_equality());
        assert_eq!(classify_equality(&v, 2).unwrap(), EqualityClass::Strict);
    }

    #[test]
    fn uniform_closed_form() {
        let c = q(5, 3);
        for n in 1..=7 {
            let v = PositiveVector::uniform(n, c.clone()).unwrap();
            for k in 1..=n {
                let expected =
                    ExactScalar::from(binomial(n, k).unwrap() as u64) * c.powi(k as i32 - 1) / ExactScalar::from(k);
                assert_eq!(lhs_main(&v, k).unwrap(), expected);
                assert_eq!(rhs_main(&v, k).unwrap(), expected);
            }
        }
    }

    #[test]
    fn boundary_k() {
        let v = ints(&[1, 7, 3, 9]);
        assert_eq!(lhs_main(&v, 1).unwrap(), 4.into());
        let product: ExactScalar = v.iter().product();
        assert_eq!(rhs_main(&v, 4).unwrap(), product / v.total());
        assert!(check_main(&v, 1).unwrap().is_equality());
        assert!(check_main(&v, 4).unwrap().is_equality());
        assert!(check_main(&ints(&[1, 2, 3, 4]), 1).unwrap().is_equality());
        assert_eq!(
            classify_equality(&ints(&[1, 7, 3]), 1).unwrap(),
            EqualityClass::BoundaryAlwaysEqual
        );
    }

    #[test]
    fn single_entry_is_degenerate_equality() {
        let v = PositiveVector::new(vec![q(7, 2)]).unwrap();
        let report = check_main(&v, 1).unwrap();
        assert_eq!(report.lhs(), &ExactScalar::one());
        assert_eq!(report.rhs(), &ExactScalar::one());
        assert!(report.is_equality());
    }

    #[test]
    fn uniform_vectors_are_equality() {
        assert!(check_main(&ints(&[5, 5, 5, 5]), 2).unwrap().is_equality());
        assert_eq!(
            classify_equality(&ints(&[4, 4, 4]), 2).unwrap(),
            EqualityClass::UniformEqual
        );
    }

    #[test]
    fn k_out_of_range() {
        let v = ints(&[1, 2, 3]);
        for k in [0, 4] {
            let expected = InequalityError::Subset(SubsetError::KOutOfRange { k, n: 3 });
            assert_eq!(check_main(&v, k).unwrap_err(), expected);
            assert_eq!(classify_equality(&v, k).unwrap_err(), expected);
        }
    }

    #[test]
    fn reciprocal_lemma_examples() {
        let v = ints(&[1, 2, 3]);
        let r = check_reciprocal_lemma(&v).unwrap();
        assert_eq!(r.rhs(), &q(11, 6));
        // 2/5 + 2/4 + 2/3
        assert_eq!(r.lhs(), &(q(2, 5) + q(2, 4) + q(2, 3)));
        assert_eq!(r.lhs(), &q(47, 30));
        assert_eq!(r.slack(), &q(4, 15));

        // 2/(3/2) + 2/(3/2) + 2/2 against 1 + 1 + 1/2
        let r = check_reciprocal_lemma(&ints(&[1, 1, 2])).unwrap();
        assert_eq!(r.lhs(), &q(7, 3));
        assert_eq!(r.rhs(), &q(5, 2));
        assert_eq!(r.slack(), &q(1, 6));

        assert!(check_reciprocal_lemma(&ints(&[3, 3, 3, 3])).unwrap().is_equality());
        assert!(matches!(
            check_reciprocal_lemma(&ints(&[3])),
            Err(InequalityError::TooFewEntries { n: 1, required: 2, .. })
        ));
    }

    #[test]
    fn pairwise_lemma_examples() {
        let v = ints(&[1, 2, 3]);
        let r = check_pairwise_lemma(&v).unwrap();
        assert_eq!(r.lhs(), &q(157, 60));
        assert_eq!(r.rhs(), &q(11, 4));
        assert!(r.same_values(&check_main(&v, 2).unwrap()));

        let r = check_pairwise_lemma(&ints(&[1, 2])).unwrap();
        assert_eq!(r.lhs(), &q(2, 3));
        assert_eq!(r.rhs(), &q(2, 3));
        assert!(r.is_equality());
        assert!(check_pairwise_lemma(&ints(&[9, 9, 9])).unwrap().is_equality());
        assert!(check_pairwise_lemma(&ints(&[9])).is_err());
    }

    #[test]
    fn proof_identity_examples() {
        let v = PositiveVector::new(vec![q(1, 6), q(1, 3), q(1, 2)]).unwrap();
        let id = proof_identity(&v, 2).unwrap();
        assert_eq!(id.left, q(47, 180));
        assert_eq!(id.right, q(47, 180));
        assert_eq!(id.scale, ExactScalar::one());

        let id = proof_identity(&PositiveVector::uniform(2, q(1, 2)).unwrap(), 1).unwrap();
        assert_eq!(id.left, ExactScalar::one());
        assert_eq!(id.right, ExactScalar::one());

        // unnormalized input gives the same sides and records the scale
        let id = proof_identity(&ints(&[1, 2, 3]), 2).unwrap();
        assert_eq!(id.left, q(47, 180));
        assert_eq!(id.scale, 6.into());

        assert!(matches!(
            proof_identity(&ints(&[1, 2, 3]), 3),
            Err(InequalityError::NoLargerSubsets { k: 3, n: 3, .. })
        ));
        assert!(proof_identity(&ints(&[1, 2, 3]), 0).is_err());
    }

    #[test]
    fn proof_identity_uniform_closed_form() {
        // each k-subset of (1/n,..) contributes n^-k (n-k)/n / (k/n)
        for n in 2..=7 {
            let v = PositiveVector::uniform(n, q(1, n as i64)).unwrap();
            for k in 1..n {
                let expected = ExactScalar::from(binomial(n, k).unwrap() as u64 * (n - k) as u64)
                    * ExactScalar::from(n).powi(-(k as i32));
                let id = proof_identity(&v, k).unwrap();
                assert_eq!(id.left, expected, "n={n} k={k}");
                assert_eq!(id.right, expected, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn certify_rejects_inverted_sides() {
        let v = ints(&[1, 2, 3]);
        let err = InequalityReport::certify(Statement::MainTheorem, &v, 2, q(11, 4), q(157, 60)).unwrap_err();
        match err {
            InequalityError::Violation(violation) => {
                assert_eq!(violation.vector, v);
                assert_eq!(violation.lhs, q(11, 4));
                assert_eq!(violation.rhs, q(157, 60));
            }
            other => panic!("expected violation, got {other:?}"),
        }
    }

    #[test]
    fn report_json_shape() {
        let report = check_main(&ints(&[1, 2, 3]), 2).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        assert_eq!(
            json,
            r#"{"n":3,"k":2,"statement":"main_theorem","lhs":"157/60","rhs":"11/4","slack":"2/15","is_equality":false}"#
        );
        let back: InequalityReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);

        let tampered = json.replace(r#""slack":"2/15""#, r#""slack":"1/15""#);
        assert!(serde_json::from_str::<InequalityReport>(&tampered).is_err());
    }
}
