use super::atlas::FilteredBundleSpec;
use super::frame::CoordinateFrame;
use super::map::CoordinateMap;
use super::BundleError;

/// A morphism of filtered bundles, given by one local coordinate expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredMorphism {
    pub name: String,
    pub source: String,
    pub target: String,
    pub source_frame: CoordinateFrame,
    pub target_frame: CoordinateFrame,
    pub map: CoordinateMap,
}

impl FilteredMorphism {
    pub fn new(
        name: impl Into<String>,
        source: &FilteredBundleSpec,
        target: &FilteredBundleSpec,
        map: CoordinateMap,
    ) -> Result<Self, BundleError> {
        Self::between_frames(
            name,
            source.name.clone(),
            target.name.clone(),
            source.frame.clone(),
            target.frame.clone(),
            map,
        )
    }

    pub fn between_frames(
        name: impl Into<String>,
        source: String,
        target: String,
        source_frame: CoordinateFrame,
        target_frame: CoordinateFrame,
        map: CoordinateMap,
    ) -> Result<Self, BundleError> {
        if source_frame.axes() != target_frame.axes()
            || map.nbase_src() != source_frame.nbase()
            || map.nfiber_src() != source_frame.nfiber()
            || map.nbase_tgt() != target_frame.nbase()
            || map.nfiber_tgt() != target_frame.nfiber()
        {
            return Err(BundleError::FrameMismatch);
        }
        Ok(FilteredMorphism { name: name.into(), source, target, source_frame, target_frame, map })
    }

    pub fn identity(bundle: &FilteredBundleSpec) -> Self {
        FilteredMorphism {
            name: format!("id_{}", bundle.name),
            source: bundle.name.clone(),
            target: bundle.name.clone(),
            source_frame: bundle.frame.clone(),
            target_frame: bundle.frame.clone(),
            map: CoordinateMap::identity(bundle.frame.nbase(), bundle.frame.nfiber()),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.source_frame == self.target_frame && self.map.is_identity()
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &FilteredMorphism) -> Result<FilteredMorphism, BundleError> {
        if !self.target_frame.same_shape(&then.source_frame) {
            return Err(BundleError::FrameMismatch);
        }
        Ok(FilteredMorphism {
            name: format!("{}_after_{}", then.name, self.name),
            source: self.source.clone(),
            target: then.target.clone(),
            source_frame: self.source_frame.clone(),
            target_frame: then.target_frame.clone(),
            map: self.map.then(&then.map)?,
        })
    }

    /// Equality of the underlying maps and frame shapes, ignoring every name.
    pub fn same_map(&self, other: &FilteredMorphism) -> bool {
        self.source_frame.same_shape(&other.source_frame)
            && self.target_frame.same_shape(&other.target_frame)
            && self.map == other.map
    }
}

/// `ψ ∘ φ` for `φ: F -> G` and `ψ: G -> H`.
pub fn compose_morphisms(phi: &FilteredMorphism, psi: &FilteredMorphism) -> Result<FilteredMorphism, BundleError> {
    phi.then(psi)
}
