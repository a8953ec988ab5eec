//! Canonical constructions on filtered bundles and their morphisms.

pub mod dual;
pub mod gr;
pub mod jet;
pub mod lift;
pub mod lin;
pub mod totw;

pub use dual::dual_vertical_lift;
pub use gr::{gr_bundle, gr_morphism};
pub use jet::{jet_prolong, jet_prolong_morphism};
pub use lift::{tangent_lift, tangent_morphism, vertical_lift, vertical_morphism};
pub use lin::{linearise, linearise_morphism};
pub use totw::{total_weight, total_weight_morphism};

use crate::bundle::{validate_bundle, Atlas, BundleError, CoordinateFrame, CoordinateMap, FilteredBundleSpec};
use crate::field::FieldError;
use crate::weighted::WeightedError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FunctorError {
    #[error(transparent)]
    Bundle(#[from] BundleError),
    #[error("construction broke a structural invariant: {0}")]
    InternalInvariantBroken(String),
    #[error("singular linear part in weight block {0}")]
    SingularLinearPart(String),
    #[error("base Jacobian is singular")]
    SingularJacobian,
    #[error("base map is not a diffeomorphism of the horizontal base: {0}")]
    NotOverDiffeomorphism(String),
    #[error("rule for `{coordinate}` references deleted coordinate `{reference}`")]
    DanglingReference { coordinate: String, reference: String },
    #[error("construction requires a single weight axis, found {0}")]
    NotSingleAxis(usize),
    #[error("construction requires degree at least 1")]
    DegreeTooLow,
}

impl From<FieldError> for FunctorError {
    fn from(e: FieldError) -> Self {
        FunctorError::Bundle(BundleError::Field(e))
    }
}

impl From<WeightedError> for FunctorError {
    fn from(e: WeightedError) -> Self {
        FunctorError::Bundle(BundleError::Weighted(e))
    }
}

/// Builds a bundle from transformed transitions and re-validates it.
pub(crate) fn derived_bundle<F>(
    name: String,
    frame: CoordinateFrame,
    source: &Atlas,
    mut f: F,
) -> Result<FilteredBundleSpec, FunctorError>
where
    F: FnMut(&CoordinateMap) -> Result<CoordinateMap, FunctorError>,
{
    let atlas = source.try_map(|_, _, m| f(m))?;
    let spec = FilteredBundleSpec::new(name, frame, atlas)?;
    let report = validate_bundle(&spec)?;
    if !report.passed() {
        return Err(FunctorError::InternalInvariantBroken(report.to_string()));
    }
    Ok(spec)
}

pub(crate) fn single_axis(frame: &CoordinateFrame) -> Result<u32, FunctorError> {
    if frame.axes() != 1 {
        return Err(FunctorError::NotSingleAxis(frame.axes()));
    }
    Ok(frame.degree().0[0])
}
