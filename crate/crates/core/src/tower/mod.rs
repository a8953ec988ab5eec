//! Affine towers and the atlas-level filterability diagnostic.
//!
//! A tower of height `k` has fiber coordinates split into levels `1..=k`. On every
//! overlap the rule of a level-`i` coordinate is affine in level `i`,
//! `X_i' = L_i X_i + c_i`, with `L_i` and `c_i` depending on the base and on
//! levels `< i` only. The tower comes from a filtered atlas exactly when, level by
//! level, `L_i` depends on the base alone and `c_i` has weighted degree `<= i`
//! once every coordinate is weighted by its level. Only the presented atlas is
//! examined; a failing tower may still become filterable after a change of
//! coordinates.
//!
//! Conversely every filtered bundle of one weight axis is a tower, with level `i`
//! made of the weight-`i` coordinates, and the two directions are mutually inverse
//! up to naming.

use crate::bundle::{
    check_cocycle, check_inverse_pairs, validate_bundle, Atlas, BaseCoord, BundleError, Check, CoordinateFrame,
    CoordinateMap, FiberCoord, FilteredBundleSpec, ValidationReport,
};
use crate::frontend::printer;
use crate::weighted::{degree_le, FiberMonomial, Weight, WeightedPolynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineTowerSpec {
    pub name: String,
    pub base: Vec<BaseCoord>,
    /// `levels[i-1]` names the coordinates of level `i`.
    pub levels: Vec<Vec<String>>,
    /// Transitions act on the fibers listed level by level.
    pub atlas: Atlas,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilterabilityReport {
    pub report: ValidationReport,
    /// The induced filtered bundle, when the atlas is filtered.
    pub bundle: Option<FilteredBundleSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TowerError {
    #[error("towers have a single weight axis, this bundle has {0}")]
    NotSingleAxis(usize),
    #[error(transparent)]
    Bundle(#[from] BundleError),
}

impl AffineTowerSpec {
    pub fn new(
        name: impl Into<String>,
        base: Vec<BaseCoord>,
        levels: Vec<Vec<String>>,
        atlas: Atlas,
    ) -> Result<Self, BundleError> {
        let tower = AffineTowerSpec { name: name.into(), base, levels, atlas };
        let frame = tower.frame()?;
        FilteredBundleSpec::new(tower.name.clone(), frame, tower.atlas.clone())?;
        Ok(tower)
    }

    pub fn height(&self) -> usize {
        self.levels.len()
    }

    /// Level of every fiber coordinate, in atlas order.
    pub fn fiber_levels(&self) -> Vec<u32> {
        self.levels
            .iter()
            .enumerate()
            .flat_map(|(i, l)| std::iter::repeat_n(i as u32 + 1, l.len()))
            .collect()
    }

    /// The frame weighting each coordinate by its level.
    pub fn frame(&self) -> Result<CoordinateFrame, BundleError> {
        let fibers = self
            .levels
            .iter()
            .enumerate()
            .flat_map(|(i, l)| l.iter().map(move |n| FiberCoord { name: n.clone(), weight: Weight::single(i as u32 + 1) }))
            .collect();
        CoordinateFrame::new(1, self.base.clone(), fibers)
    }

    fn as_bundle(&self) -> Result<FilteredBundleSpec, BundleError> {
        FilteredBundleSpec::new(self.name.clone(), self.frame()?, self.atlas.clone())
    }
}

/// The tower of affine fibrations underlying a single-axis filtered bundle.
pub fn tower_of(bundle: &FilteredBundleSpec) -> Result<AffineTowerSpec, TowerError> {
    let frame = &bundle.frame;
    if frame.axes() != 1 {
        return Err(TowerError::NotSingleAxis(frame.axes()));
    }
    let k = frame.degree().0[0] as usize;
    let mut order = Vec::with_capacity(frame.nfiber());
    let mut levels = vec![Vec::new(); k];
    for (level, names) in levels.iter_mut().enumerate() {
        for (i, f) in frame.fibers().iter().enumerate() {
            if f.weight.0[0] as usize == level + 1 {
                order.push(i);
                names.push(f.name.clone());
            }
        }
    }
    let sorted = bundle.with_fiber_order(&order)?;
    Ok(AffineTowerSpec { name: bundle.name.clone(), base: frame.base().to_vec(), levels, atlas: sorted.atlas })
}

/// Fiber indices of each level, in atlas order.
fn level_indices(tower: &AffineTowerSpec) -> Vec<Vec<usize>> {
    let mut next = 0;
    tower
        .levels
        .iter()
        .map(|l| {
            let idx = (next..next + l.len()).collect();
            next += l.len();
            idx
        })
        .collect()
}

/// Determinant by cofactor expansion along the first row.
fn determinant(m: &[Vec<WeightedPolynomial>], nbase: usize, nfiber: usize) -> WeightedPolynomial {
    if m.is_empty() {
        return WeightedPolynomial::one(nbase, nfiber);
    }
    let mut acc = WeightedPolynomial::zero(nbase, nfiber);
    for (j, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<WeightedPolynomial>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, e)| e.clone()).collect())
            .collect();
        let term = entry * &determinant(&minor, nbase, nfiber);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// The linear part `L_i` (rows and columns over level `i`) and the remainder `c_i`
/// of each rule of level `i`.
fn split_level(map: &CoordinateMap, idx: &[usize]) -> Result<(Vec<Vec<WeightedPolynomial>>, Vec<WeightedPolynomial>), BundleError> {
    let mut lin = Vec::with_capacity(idx.len());
    let mut rest = Vec::with_capacity(idx.len());
    for &r in idx {
        let rule = &map.fiber_rules()[r];
        let row = idx.iter().map(|&j| rule.fiber_partial(j)).collect::<Result<Vec<_>, _>>()?;
        let mut c = rule.clone();
        for (&j, l) in idx.iter().zip(&row) {
            let var = WeightedPolynomial::fiber_var(map.nbase_src(), map.nfiber_src(), j);
            c = &c - &(l * &var);
        }
        lin.push(row);
        rest.push(c);
    }
    Ok((lin, rest))
}

fn level_of(levels: &[u32], m: &FiberMonomial) -> Vec<u32> {
    m.0.iter().enumerate().filter(|&(_, &e)| e > 0).map(|(i, _)| levels[i]).collect()
}

/// Structural checks of the tower definition: each rule references only its own and
/// lower levels, is affine in its own level with an invertible linear part, and the
/// transitions satisfy the inverse and cocycle conditions.
pub fn check_tower_shape(tower: &AffineTowerSpec) -> Result<ValidationReport, BundleError> {
    let spec = tower.as_bundle()?;
    let frame = &spec.frame;
    let levels = tower.fiber_levels();
    let idx = level_indices(tower);
    let mut report = ValidationReport::new(tower.name.clone());
    for ((u, v), map) in tower.atlas.transitions() {
        for (i, level) in idx.iter().enumerate() {
            let li = i as u32 + 1;
            let at = format!("{u}->{v}: level {li}");
            let mut ok = true;
            for &r in level {
                let rule = &map.fiber_rules()[r];
                for (m, c) in rule.terms() {
                    let term_levels = level_of(&levels, m);
                    let own: u32 = m.0.iter().enumerate().filter(|&(j, _)| levels[j] == li).map(|(_, &e)| e).sum();
                    if term_levels.iter().any(|&l| l > li) {
                        ok = false;
                        report.push(
                            Check::TowerShape,
                            format!("{at}: {}", frame.fibers()[r].name),
                            false,
                            format!("term {} references a higher level", printer::weighted_term(m, c, frame)),
                        );
                    } else if own > 1 {
                        ok = false;
                        report.push(
                            Check::TowerShape,
                            format!("{at}: {}", frame.fibers()[r].name),
                            false,
                            format!("term {} is not affine in level {li}", printer::weighted_term(m, c, frame)),
                        );
                    }
                }
            }
            if !ok {
                continue;
            }
            let (lin, _) = split_level(map, level)?;
            let det = determinant(&lin, frame.nbase(), frame.nfiber());
            if det.is_zero() {
                report.push(Check::TowerShape, at, false, "SingularLinearPart: det L is 0");
            } else {
                report.push(Check::TowerShape, at, true, format!("affine, det L = {}", printer::weighted(&det, frame)));
            }
        }
    }
    report.extend(check_inverse_pairs(&spec)?);
    report.extend(check_cocycle(&spec)?);
    Ok(report)
}

/// Whether the presented atlas of the tower is a filtered atlas. On success the
/// induced filtered bundle is returned and its full validation is part of the report.
pub fn check_filterable_atlas(tower: &AffineTowerSpec) -> Result<FilterabilityReport, BundleError> {
    let mut report = check_tower_shape(tower)?;
    if !report.passed() {
        return Ok(FilterabilityReport { report, bundle: None });
    }
    let spec = tower.as_bundle()?;
    let frame = &spec.frame;
    let weights = frame.weights();
    let idx = level_indices(tower);
    for ((u, v), map) in tower.atlas.transitions() {
        for (i, level) in idx.iter().enumerate() {
            let li = i as u32 + 1;
            let (lin, rest) = split_level(map, level)?;
            for (ri, &r) in level.iter().enumerate() {
                let name = &frame.fibers()[r].name;
                for (ci, &c) in level.iter().enumerate() {
                    let entry = &lin[ri][ci];
                    let at = format!("{u}->{v}: L{li}[{name}', {}]", frame.fibers()[c].name);
                    let deps = entry.fiber_vars_used();
                    if deps.is_empty() {
                        report.push(Check::FilterableLinear, at, true, "depends on the base only");
                    } else {
                        let names: Vec<&str> = deps.iter().map(|&d| frame.fibers()[d].name.as_str()).collect();
                        report.push(
                            Check::FilterableLinear,
                            at,
                            false,
                            format!("entry {} depends on {}", printer::weighted(entry, frame), names.join(", ")),
                        );
                    }
                }
                let at = format!("{u}->{v}: c{li}[{name}']");
                let c = &rest[ri];
                let degree = c.degree(&weights, 1);
                let bound = Weight::single(li);
                if degree_le(&degree, &bound) {
                    report.push(Check::FilterableDegree, at, true, format!("degree <= {li}"));
                } else {
                    let offending = c
                        .terms()
                        .find(|(m, _)| !m.weight(&weights, 1).leq(&bound))
                        .map(|(m, coeff)| format!("{} of weight {}", printer::weighted_term(m, coeff, frame), m.weight(&weights, 1)))
                        .unwrap_or_default();
                    report.push(Check::FilterableDegree, at, false, format!("DegreeViolation: term {offending} exceeds {li}"));
                }
            }
        }
    }
    if !report.passed() {
        return Ok(FilterabilityReport { report, bundle: None });
    }
    let validation = validate_bundle(&spec)?;
    let ok = validation.passed();
    report.extend(validation);
    Ok(FilterabilityReport { report, bundle: ok.then_some(spec) })
}
