//! Exact verification of the harmonic-mean weighted subset-product
//! inequality
//!
//! ```text
//!   sum_{|S|=k} prod(a_S) / sum(a_S)  <=  (n / k) * e_k(a) / sum(a)
//! ```
//!
//! for positive rationals `a_1, .., a_n` and `1 <= k <= n`, with its
//! lemmas, the rearrangement identity behind its proof, equality-case
//! classification, seeded fuzzing, and a float search for the maximizing
//! ratio.
//!
//! ```
//! use symineq::{check_main, PositiveVector};
//!
//! let v = PositiveVector::from_integers([1, 2, 3]).unwrap();
//! let report = check_main(&v, 2).unwrap();
//! assert_eq!(report.slack().to_string(), "2/15");
//! ```

pub mod exact;
pub mod inequality;
pub mod search;
pub mod symfun;

pub use exact::{make_vector, parse_scalar, ExactScalar, PositiveVector, ScalarError, VectorError};
pub use inequality::{
    check_main, check_pairwise_lemma, check_proof_identity, check_reciprocal_lemma, classify_equality, lhs_main,
    proof_identity, rhs_main, EqualityClass, InequalityError, InequalityReport, ProofIdentity, Statement, Violation,
};
pub use search::{
    fuzz, fuzz_with, maximize_ratio, ratio, Distribution, FuzzConfig, FuzzError, FuzzReport, KPolicy, SearchConfig,
    SearchError, SearchResult, StopReason,
};
pub use symfun::{
    binomial, elementary_symmetric, elementary_symmetric_all, elementary_symmetric_by_enumeration, iterate_k_subsets,
    subset_product, subset_sum, SubsetError, SubsetIndex,
};
