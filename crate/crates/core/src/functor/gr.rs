use crate::bundle::{CoordinateFrame, CoordinateMap, FilteredBundleSpec, FilteredMorphism};

use super::{derived_bundle, FunctorError};

/// Keeps, in each fiber rule, the component of the target coordinate's weight.
pub fn gr_map(map: &CoordinateMap, source: &CoordinateFrame, target: &CoordinateFrame) -> CoordinateMap {
    let weights = source.weights();
    let mut i = 0;
    map.map_fiber_rules(|rule| {
        let w = &target.fibers()[i].weight;
        i += 1;
        rule.homogeneous_component(w, &weights)
    })
}

pub fn gr_bundle(bundle: &FilteredBundleSpec) -> Result<FilteredBundleSpec, FunctorError> {
    let frame = bundle.frame.clone();
    derived_bundle(format!("Gr_{}", bundle.name), frame.clone(), &bundle.atlas, |m| Ok(gr_map(m, &frame, &frame)))
}

pub fn gr_morphism(phi: &FilteredMorphism) -> Result<FilteredMorphism, FunctorError> {
    let map = gr_map(&phi.map, &phi.source_frame, &phi.target_frame);
    Ok(FilteredMorphism::between_frames(
        format!("Gr_{}", phi.name),
        format!("Gr_{}", phi.source),
        format!("Gr_{}", phi.target),
        phi.source_frame.clone(),
        phi.target_frame.clone(),
        map,
    )?)
}
