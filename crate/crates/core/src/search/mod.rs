//! Randomized evidence for the inequality and a float search for its
//! maximizing ratio.
//!
//! Floats live only here. Nothing float-valued decides a violation: fuzz
//! trials are checked exactly, and the maximizer's endpoint is rationalized
//! and re-evaluated exactly before it is returned.

mod fuzz;
mod maximize;

pub use fuzz::{fuzz, fuzz_with, Distribution, FuzzConfig, FuzzError, FuzzReport, KPolicy, SlackWitness};
pub use maximize::{
    float_ratio, float_ratio_gradient, maximize_ratio, project_to_simplex, SearchConfig, SearchError, SearchResult,
    StopReason, TraceStep, COORDINATE_FLOOR,
};

use crate::exact::{ExactScalar, PositiveVector};
use crate::inequality::{lhs_main, rhs_main, InequalityError};

/// `lhs / rhs` of the main inequality, exactly. Lies in `(0, 1]`.
pub fn ratio(v: &PositiveVector, k: usize) -> Result<ExactScalar, InequalityError> {
    let lhs = lhs_main(v, k)?;
    let rhs = rhs_main(v, k)?;
    Ok(lhs / rhs)
}
