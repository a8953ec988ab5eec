//! Coordinate frames, transitions, atlases and morphisms of filtered bundles.

pub mod atlas;
pub mod frame;
pub mod map;
pub mod morphism;
pub mod report;
pub mod validate;

pub use atlas::{Atlas, FilteredBundleSpec, Overlap};
pub use frame::{BaseCoord, CoordinateFrame, FiberCoord};
pub use map::CoordinateMap;
pub use morphism::{compose_morphisms, FilteredMorphism};
pub use report::{Check, Finding, ValidationReport};
pub use validate::{check_cocycle, check_inverse_pairs, validate_bundle, validate_morphism, validate_transition};

use crate::field::FieldError;
use crate::weighted::WeightedError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BundleError {
    #[error("frames do not match")]
    FrameMismatch,
    #[error("invalid frame: {0}")]
    InvalidFrame(String),
    #[error("invalid atlas: {0}")]
    InvalidAtlas(String),
    #[error("unknown chart `{0}`")]
    UnknownChart(String),
    #[error("no rule for coordinate `{0}`")]
    MissingRule(String),
    #[error("missing transition {0} -> {1}")]
    MissingTransition(String, String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Weighted(#[from] WeightedError),
}
