//! Exact rational scalars and validated positive input vectors.
//!
//! Every quantity that a checker reports as verified is computed with these
//! types; floats never enter this module except through the explicit,
//! lossless [`ExactScalar::from_f64`].

mod scalar;
mod vector;

pub use scalar::{ExactScalar, ScalarError};
pub use vector::{PositiveVector, VectorError};

/// Parses a scalar literal. See [`ExactScalar::parse`] for the grammar.
pub fn parse_scalar(text: &str) -> Result<ExactScalar, ScalarError> {
    ExactScalar::parse(text)
}

pub fn make_vector(values: Vec<ExactScalar>) -> Result<PositiveVector, VectorError> {
    PositiveVector::new(values)
}
