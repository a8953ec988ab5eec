//! Linearisation: the vertical lift with the differentials shifted down one weight
//! and the top-weight coordinates removed.

use crate::bundle::{CoordinateFrame, CoordinateMap, FiberCoord, FilteredBundleSpec, FilteredMorphism};
use crate::weighted::Weight;

use super::lift::{vertical_frame, vertical_map};
use super::{derived_bundle, single_axis, FunctorError};

/// Index bookkeeping from `V(F)` to `Lin(F)`.
struct Layout {
    frame: CoordinateFrame,
    /// New index of each `V(F)` fiber, `None` for deleted top-weight coordinates.
    map: Vec<Option<usize>>,
    /// `V(F)` fiber indices kept, in new order.
    keep: Vec<usize>,
    /// Names of the `V(F)` fibers, for diagnostics.
    names: Vec<String>,
}

fn layout(frame: &CoordinateFrame) -> Result<Layout, FunctorError> {
    let k = single_axis(frame)?;
    if k == 0 {
        return Err(FunctorError::DegreeTooLow);
    }
    let vframe = vertical_frame(frame)?;
    let n = frame.nfiber();
    let mut fibers = Vec::new();
    let mut map = vec![None; 2 * n];
    let mut keep = Vec::new();
    for (i, f) in frame.fibers().iter().enumerate() {
        let w = f.weight.0[0];
        if w < k {
            map[i] = Some(fibers.len());
            keep.push(i);
            fibers.push(FiberCoord { name: f.name.clone(), weight: Weight(vec![w, 0]) });
        }
    }
    for (i, f) in frame.fibers().iter().enumerate() {
        let d = &vframe.fibers()[n + i];
        map[n + i] = Some(fibers.len());
        keep.push(n + i);
        fibers.push(FiberCoord { name: d.name.clone(), weight: Weight(vec![f.weight.0[0] - 1, 1]) });
    }
    Ok(Layout {
        frame: CoordinateFrame::new(2, frame.base().to_vec(), fibers)?,
        map,
        keep,
        names: vframe.fiber_names(),
    })
}

fn restrict(vmap: &CoordinateMap, source: &Layout, target: &Layout) -> Result<CoordinateMap, FunctorError> {
    vmap.restrict(source.frame.nfiber(), &source.map, &target.keep).map_err(|(i, v)| {
        FunctorError::DanglingReference { coordinate: target.names[i].clone(), reference: source.names[v].clone() }
    })
}

pub fn linearise(bundle: &FilteredBundleSpec) -> Result<FilteredBundleSpec, FunctorError> {
    let lay = layout(&bundle.frame)?;
    derived_bundle(format!("Lin_{}", bundle.name), lay.frame.clone(), &bundle.atlas, |m| {
        restrict(&vertical_map(m)?, &lay, &lay)
    })
}

pub fn linearise_morphism(phi: &FilteredMorphism) -> Result<FilteredMorphism, FunctorError> {
    let src = layout(&phi.source_frame)?;
    let tgt = layout(&phi.target_frame)?;
    let map = restrict(&vertical_map(&phi.map)?, &src, &tgt)?;
    Ok(FilteredMorphism::between_frames(
        format!("Lin_{}", phi.name),
        format!("Lin_{}", phi.source),
        format!("Lin_{}", phi.target),
        src.frame,
        tgt.frame,
        map,
    )?)
}
