//! Weighted polynomial algebra over the coefficient field.

pub mod poly;
pub mod weight;

pub use poly::{FiberMonomial, WeightedPolynomial};
pub use weight::{degree_le, Degree, Weight};

use crate::field::FieldError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeightedError {
    #[error("polynomials live over different coordinate frames")]
    FrameMismatch,
    #[error("unknown fiber coordinate index {0}")]
    UnknownCoordinate(usize),
    #[error(transparent)]
    Field(FieldError),
}
