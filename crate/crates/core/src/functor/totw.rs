use crate::bundle::{CoordinateFrame, FiberCoord, FilteredBundleSpec, FilteredMorphism};
use crate::weighted::Weight;

use super::{derived_bundle, FunctorError};

pub fn total_weight_frame(frame: &CoordinateFrame) -> Result<CoordinateFrame, FunctorError> {
    let fibers = frame
        .fibers()
        .iter()
        .map(|f| FiberCoord { name: f.name.clone(), weight: Weight::single(f.weight.total()) })
        .collect();
    Ok(CoordinateFrame::new(1, frame.base().to_vec(), fibers)?)
}

/// Collapses every multi-weight to its component sum; rules are unchanged.
pub fn total_weight(bundle: &FilteredBundleSpec) -> Result<FilteredBundleSpec, FunctorError> {
    let frame = total_weight_frame(&bundle.frame)?;
    derived_bundle(format!("Totw_{}", bundle.name), frame, &bundle.atlas, |m| Ok(m.clone()))
}

pub fn total_weight_morphism(phi: &FilteredMorphism) -> Result<FilteredMorphism, FunctorError> {
    Ok(FilteredMorphism::between_frames(
        format!("Totw_{}", phi.name),
        format!("Totw_{}", phi.source),
        format!("Totw_{}", phi.target),
        total_weight_frame(&phi.source_frame)?,
        total_weight_frame(&phi.target_frame)?,
        phi.map.clone(),
    )?)
}
