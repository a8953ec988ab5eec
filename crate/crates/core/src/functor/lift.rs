//! Tangent and vertical lifts: adjoin differentials transforming by the total differential.

use crate::bundle::{BaseCoord, CoordinateFrame, CoordinateMap, FiberCoord, FilteredBundleSpec, FilteredMorphism};
use crate::weighted::{Weight, WeightedPolynomial};

use super::{derived_bundle, FunctorError};

pub(crate) fn prefixed(prefix: &str, name: &str) -> String {
    format!("{prefix}{name}")
}

fn originals(frame: &CoordinateFrame) -> Vec<FiberCoord> {
    frame
        .fibers()
        .iter()
        .map(|f| FiberCoord { name: f.name.clone(), weight: f.weight.extended(0) })
        .collect()
}

/// Fibers `X (w,0)`, then `dx (0,..,0,1)` per base coordinate, then `dX (w,1)`.
pub fn tangent_frame(frame: &CoordinateFrame) -> Result<CoordinateFrame, FunctorError> {
    let mut fibers = originals(frame);
    let unit = Weight::zero(frame.axes()).extended(1);
    fibers.extend(
        frame.base().iter().map(|b: &BaseCoord| FiberCoord { name: prefixed("d", &b.name), weight: unit.clone() }),
    );
    fibers.extend(
        frame.fibers().iter().map(|f| FiberCoord { name: prefixed("d", &f.name), weight: f.weight.extended(1) }),
    );
    Ok(CoordinateFrame::new(frame.axes() + 1, frame.base().to_vec(), fibers)?)
}

/// Fibers `X (w,0)`, then `dX (w,1)`.
pub fn vertical_frame(frame: &CoordinateFrame) -> Result<CoordinateFrame, FunctorError> {
    let mut fibers = originals(frame);
    fibers.extend(
        frame.fibers().iter().map(|f| FiberCoord { name: prefixed("d", &f.name), weight: f.weight.extended(1) }),
    );
    Ok(CoordinateFrame::new(frame.axes() + 1, frame.base().to_vec(), fibers)?)
}

fn embed(p: &WeightedPolynomial, nfiber_out: usize) -> WeightedPolynomial {
    let map: Vec<Option<usize>> = (0..p.nfiber()).map(Some).collect();
    p.reindex_fibers(nfiber_out, &map).expect("embedding keeps every coordinate")
}

pub fn tangent_map(map: &CoordinateMap) -> Result<CoordinateMap, FunctorError> {
    let nb = map.nbase_src();
    let ns = map.nfiber_src();
    let n = ns + nb + ns;
    let var = |i: usize| WeightedPolynomial::fiber_var(nb, n, i);
    let dx = |b: usize| var(ns + b);
    let dfib = |j: usize| var(ns + nb + j);

    let mut rules: Vec<WeightedPolynomial> = map.fiber_rules().iter().map(|r| embed(r, n)).collect();
    for rule in map.base_rules() {
        let mut acc = WeightedPolynomial::zero(nb, n);
        for b in 0..nb {
            let d = rule.partial(b)?;
            acc = &acc + &dx(b).scale(&d);
        }
        rules.push(acc);
    }
    for rule in map.fiber_rules() {
        let mut acc = WeightedPolynomial::zero(nb, n);
        for j in 0..ns {
            let d = rule.fiber_partial(j)?;
            if !d.is_zero() {
                acc = &acc + &(&embed(&d, n) * &dfib(j));
            }
        }
        for b in 0..nb {
            let d = rule.base_partial(b)?;
            if !d.is_zero() {
                acc = &acc + &(&embed(&d, n) * &dx(b));
            }
        }
        rules.push(acc);
    }
    Ok(CoordinateMap::new(nb, n, map.base_rules().to_vec(), rules)?)
}

pub fn vertical_map(map: &CoordinateMap) -> Result<CoordinateMap, FunctorError> {
    let nb = map.nbase_src();
    let ns = map.nfiber_src();
    let n = 2 * ns;
    let mut rules: Vec<WeightedPolynomial> = map.fiber_rules().iter().map(|r| embed(r, n)).collect();
    for rule in map.fiber_rules() {
        let mut acc = WeightedPolynomial::zero(nb, n);
        for j in 0..ns {
            let d = rule.fiber_partial(j)?;
            if !d.is_zero() {
                acc = &acc + &(&embed(&d, n) * &WeightedPolynomial::fiber_var(nb, n, ns + j));
            }
        }
        rules.push(acc);
    }
    Ok(CoordinateMap::new(nb, n, map.base_rules().to_vec(), rules)?)
}

pub fn tangent_lift(bundle: &FilteredBundleSpec) -> Result<FilteredBundleSpec, FunctorError> {
    let frame = tangent_frame(&bundle.frame)?;
    derived_bundle(format!("T_{}", bundle.name), frame, &bundle.atlas, tangent_map)
}

pub fn vertical_lift(bundle: &FilteredBundleSpec) -> Result<FilteredBundleSpec, FunctorError> {
    let frame = vertical_frame(&bundle.frame)?;
    derived_bundle(format!("V_{}", bundle.name), frame, &bundle.atlas, vertical_map)
}

pub fn tangent_morphism(phi: &FilteredMorphism) -> Result<FilteredMorphism, FunctorError> {
    Ok(FilteredMorphism::between_frames(
        format!("T_{}", phi.name),
        format!("T_{}", phi.source),
        format!("T_{}", phi.target),
        tangent_frame(&phi.source_frame)?,
        tangent_frame(&phi.target_frame)?,
        tangent_map(&phi.map)?,
    )?)
}

pub fn vertical_morphism(phi: &FilteredMorphism) -> Result<FilteredMorphism, FunctorError> {
    Ok(FilteredMorphism::between_frames(
        format!("V_{}", phi.name),
        format!("V_{}", phi.source),
        format!("V_{}", phi.target),
        vertical_frame(&phi.source_frame)?,
        vertical_frame(&phi.target_frame)?,
        vertical_map(&phi.map)?,
    )?)
}
