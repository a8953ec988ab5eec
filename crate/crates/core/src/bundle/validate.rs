//! Structural checks: degree respect, invertible linear parts, inverse pairs, cocycles.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::field::FunctionMatrix;
use crate::frontend::printer;
use crate::weighted::{degree_le, Weight};

use super::atlas::FilteredBundleSpec;
use super::frame::CoordinateFrame;
use super::map::CoordinateMap;
use super::morphism::FilteredMorphism;
use super::report::{Check, ValidationReport};
use super::BundleError;

fn check_rule_counts(map: &CoordinateMap, source: &CoordinateFrame, target: &CoordinateFrame) -> Result<(), BundleError> {
    if map.nbase_src() != source.nbase() || map.nfiber_src() != source.nfiber() {
        return Err(BundleError::FrameMismatch);
    }
    if map.nbase_tgt() != target.nbase() {
        let missing = target.base().get(map.nbase_tgt()).map(|b| b.name.clone()).unwrap_or_default();
        return Err(BundleError::MissingRule(missing));
    }
    if map.nfiber_tgt() != target.nfiber() {
        let missing = target.fibers().get(map.nfiber_tgt()).map(|f| f.name.clone()).unwrap_or_default();
        return Err(BundleError::MissingRule(missing));
    }
    Ok(())
}

/// Degree respect of every fiber rule: `deg(rule) <= weight(target coordinate)`.
fn degree_findings(
    map: &CoordinateMap,
    source: &CoordinateFrame,
    target: &CoordinateFrame,
    location: &str,
    report: &mut ValidationReport,
) {
    let weights = source.weights();
    let axes = source.axes();
    for (rule, coord) in map.fiber_rules().iter().zip(target.fibers()) {
        let degree = rule.degree(&weights, axes);
        let at = format!("{location}: {}", coord.name);
        if degree_le(&degree, &coord.weight) {
            report.push(
                Check::Degree,
                at,
                true,
                format!("degree {} <= {}", crate::weighted::weight::degree_string(&degree), coord.weight),
            );
        } else {
            let offending = rule
                .terms()
                .find(|(m, _)| !m.weight(&weights, axes).leq(&coord.weight))
                .map(|(m, c)| {
                    format!(
                        "{} of weight {}",
                        printer::weighted_term(m, c, source),
                        m.weight(&weights, axes)
                    )
                })
                .unwrap_or_default();
            report.push(
                Check::Degree,
                at,
                false,
                format!("DegreeViolation: term {offending} exceeds {}", coord.weight),
            );
        }
    }
}

/// Fiber indices grouped by weight vector.
pub fn weight_blocks(frame: &CoordinateFrame) -> BTreeMap<Weight, Vec<usize>> {
    let mut blocks: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
    for (i, f) in frame.fibers().iter().enumerate() {
        blocks.entry(f.weight.clone()).or_default().push(i);
    }
    blocks
}

/// The matrix of linear coefficients `T_J^{I'}` of one weight block.
pub fn linear_block(map: &CoordinateMap, indices: &[usize]) -> FunctionMatrix {
    let rows = indices
        .iter()
        .map(|&i| indices.iter().map(|&j| map.linear_coefficient(i, j)).collect())
        .collect();
    FunctionMatrix::from_rows(map.nbase_src(), rows)
}

/// Checks one transition of a bundle against its frame.
pub fn validate_transition(
    map: &CoordinateMap,
    frame: &CoordinateFrame,
    location: &str,
) -> Result<ValidationReport, BundleError> {
    check_rule_counts(map, frame, frame)?;
    let mut report = ValidationReport::new(location);
    degree_findings(map, frame, frame, location, &mut report);
    let names = frame.base_names();
    for (w, indices) in weight_blocks(frame) {
        let det = linear_block(map, &indices).det();
        let at = format!("{location}: block {w}");
        if det.is_zero() {
            report.push(Check::LinearBlock, at, false, "SingularLinearPart: determinant is 0");
        } else {
            report.push(Check::LinearBlock, at, true, format!("det = {}", printer::base_function(&det, &names)));
        }
    }
    if frame.nbase() > 0 {
        let all: Vec<usize> = (0..frame.nbase()).collect();
        let det = map.base_jacobian(&all, &all)?.det();
        let at = format!("{location}: base");
        if det.is_zero() {
            report.push(Check::BaseJacobian, at, false, "SingularJacobian: base Jacobian determinant is 0");
        } else {
            report.push(Check::BaseJacobian, at, true, format!("det = {}", printer::base_function(&det, &names)));
        }
    }
    Ok(report)
}

/// Degree respect of a morphism; invertibility is not required.
pub fn validate_morphism(phi: &FilteredMorphism) -> Result<ValidationReport, BundleError> {
    check_rule_counts(&phi.map, &phi.source_frame, &phi.target_frame)?;
    let mut report = ValidationReport::new(phi.name.clone());
    degree_findings(&phi.map, &phi.source_frame, &phi.target_frame, &phi.name, &mut report);
    Ok(report)
}

/// Lists the coordinates where `got` and `expected` differ, as `name: got vs expected`.
fn differences(got: &CoordinateMap, expected: &CoordinateMap, frame: &CoordinateFrame) -> Vec<(String, String)> {
    let names = frame.base_names();
    let mut out = Vec::new();
    for (a, (g, e)) in got.base_rules().iter().zip(expected.base_rules()).enumerate() {
        if g != e {
            out.push((
                frame.base()[a].name.clone(),
                format!(
                    "{}' = {} but expected {}",
                    frame.base()[a].name,
                    printer::base_function(g, &names),
                    printer::base_function(e, &names)
                ),
            ));
        }
    }
    for (i, (g, e)) in got.fiber_rules().iter().zip(expected.fiber_rules()).enumerate() {
        if g != e {
            let residual = g - e;
            out.push((
                frame.fibers()[i].name.clone(),
                format!(
                    "{}' = {} but expected {}; residual {}",
                    frame.fibers()[i].name,
                    printer::weighted(g, frame),
                    printer::weighted(e, frame),
                    printer::weighted(&residual, frame)
                ),
            ));
        }
    }
    out
}

/// `τ_VU ∘ τ_UV = id` and `τ_UV ∘ τ_VU = id` for every effective pair.
pub fn check_inverse_pairs(spec: &FilteredBundleSpec) -> Result<ValidationReport, BundleError> {
    let atlas = &spec.atlas;
    let frame = &spec.frame;
    let mut jobs = Vec::new();
    for (u, v) in atlas.effective_pairs() {
        let uv = atlas.require(&u, &v)?;
        let vu = atlas.require(&v, &u)?;
        jobs.push((format!("{u}->{v}->{u}"), uv, vu));
        jobs.push((format!("{v}->{u}->{v}"), vu, uv));
    }
    let identity = CoordinateMap::identity(frame.nbase(), frame.nfiber());
    let results: Vec<Result<ValidationReport, BundleError>> = jobs
        .par_iter()
        .map(|(loc, first, second)| {
            let composite = first.then(second)?;
            let mut r = ValidationReport::new("");
            let diffs = differences(&composite, &identity, frame);
            if diffs.is_empty() {
                r.push(Check::Inverse, loc.clone(), true, "composite is the identity");
            }
            for (coord, detail) in diffs {
                r.push(Check::Inverse, format!("{loc}: {coord}"), false, detail);
            }
            Ok(r)
        })
        .collect();
    let mut report = ValidationReport::new(spec.name.clone());
    for r in results {
        report.extend(r?);
    }
    Ok(report)
}

/// `τ_VW ∘ τ_UV = τ_UW` for every effective triple.
pub fn check_cocycle(spec: &FilteredBundleSpec) -> Result<ValidationReport, BundleError> {
    let atlas = &spec.atlas;
    let frame = &spec.frame;
    let mut jobs = Vec::new();
    for (u, v, w) in atlas.effective_triples() {
        let uv = atlas.require(&u, &v)?;
        let vw = atlas.require(&v, &w)?;
        let uw = atlas.require(&u, &w)?;
        jobs.push((format!("{u}->{v}->{w}"), uv, vw, uw));
    }
    let results: Vec<Result<ValidationReport, BundleError>> = jobs
        .par_iter()
        .map(|(loc, uv, vw, uw)| {
            let composite = uv.then(vw)?;
            let mut r = ValidationReport::new("");
            let diffs = differences(&composite, uw, frame);
            if diffs.is_empty() {
                r.push(Check::Cocycle, loc.clone(), true, "composite equals the direct transition");
            }
            for (coord, detail) in diffs {
                r.push(Check::Cocycle, format!("{loc}: {coord}"), false, detail);
            }
            Ok(r)
        })
        .collect();
    let mut report = ValidationReport::new(spec.name.clone());
    for r in results {
        report.extend(r?);
    }
    Ok(report)
}

/// Every transition, every inverse pair and every cocycle of a bundle.
pub fn validate_bundle(spec: &FilteredBundleSpec) -> Result<ValidationReport, BundleError> {
    let transitions: Vec<_> = spec.atlas.transitions().collect();
    let results: Vec<Result<ValidationReport, BundleError>> = transitions
        .par_iter()
        .map(|((u, v), m)| validate_transition(m, &spec.frame, &format!("{u}->{v}")))
        .collect();
    let mut report = ValidationReport::new(spec.name.clone());
    for r in results {
        report.extend(r?);
    }
    report.extend(check_inverse_pairs(spec)?);
    report.extend(check_cocycle(spec)?);
    Ok(report)
}
