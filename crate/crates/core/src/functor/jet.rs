//! Jet prolongation over the horizontal base coordinates.
//!
//! Jet coordinates are `u;β` for every base-vertical coordinate and every fiber
//! coordinate `u` and every multi-index `1 <= |β| <= k` over the horizontal base
//! coordinates. The name of `u;β` repeats each horizontal name by its
//! multiplicity, joined by `.`, e.g. `y;x.x`. Their weight is `(w(u), |β|)`.

use std::collections::HashMap;

use crate::bundle::{CoordinateFrame, CoordinateMap, FiberCoord, FilteredBundleSpec, FilteredMorphism};
use crate::field::FunctionMatrix;
use crate::weighted::{Weight, WeightedPolynomial};

use super::{derived_bundle, FunctorError};

/// A prolongable coordinate: a base-vertical coordinate or a fiber coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Source {
    Vertical(usize),
    Fiber(usize),
}

/// Multi-indices of order `r` over `h` horizontal directions, as exponent vectors,
/// in lexicographic order of the sorted direction lists.
pub fn multi_indices(h: usize, r: u32) -> Vec<Vec<u32>> {
    fn rec(h: usize, r: u32, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<u32>>) {
        if current.len() as u32 == r {
            let mut e = vec![0; h];
            for &d in current.iter() {
                e[d] += 1;
            }
            out.push(e);
            return;
        }
        for d in start..h {
            current.push(d);
            rec(h, r, d, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(h, r, 0, &mut Vec::new(), &mut out);
    out
}

/// Index layout of `J^k F`.
pub struct JetLayout {
    pub frame: CoordinateFrame,
    pub order: u32,
    horizontal: Vec<usize>,
    vertical: Vec<usize>,
    /// Index of `u;β` among the fibers of `J^k F` (order-zero fibers included).
    index: HashMap<(Source, Vec<u32>), usize>,
    /// `(u, β)` for every fiber of `J^k F`.
    entries: Vec<(Source, Vec<u32>)>,
}

impl JetLayout {
    pub fn new(frame: &CoordinateFrame, k: u32) -> Result<Self, FunctorError> {
        let horizontal = frame.horizontal();
        let vertical = frame.vertical();
        let h = horizontal.len();
        let mut fibers = Vec::new();
        let mut index = HashMap::new();
        let mut entries = Vec::new();
        for (i, f) in frame.fibers().iter().enumerate() {
            index.insert((Source::Fiber(i), vec![0; h]), fibers.len());
            entries.push((Source::Fiber(i), vec![0; h]));
            fibers.push(FiberCoord { name: f.name.clone(), weight: f.weight.extended(0) });
        }
        let sources: Vec<Source> = vertical
            .iter()
            .map(|&a| Source::Vertical(a))
            .chain((0..frame.nfiber()).map(Source::Fiber))
            .collect();
        for r in 1..=k {
            for beta in multi_indices(h, r) {
                let suffix: Vec<String> = beta
                    .iter()
                    .enumerate()
                    .flat_map(|(d, &e)| std::iter::repeat_n(frame.base()[horizontal[d]].name.clone(), e as usize))
                    .collect();
                for &s in &sources {
                    let (name, weight) = match s {
                        Source::Vertical(a) => (frame.base()[a].name.clone(), Weight::zero(frame.axes())),
                        Source::Fiber(i) => (frame.fibers()[i].name.clone(), frame.fibers()[i].weight.clone()),
                    };
                    index.insert((s, beta.clone()), fibers.len());
                    entries.push((s, beta.clone()));
                    fibers.push(FiberCoord { name: format!("{name};{}", suffix.join(".")), weight: weight.extended(r) });
                }
            }
        }
        let frame = CoordinateFrame::new(frame.axes() + 1, frame.base().to_vec(), fibers)?;
        Ok(JetLayout { frame, order: k, horizontal, vertical, index, entries })
    }

    pub fn position(&self, s: Source, beta: &[u32]) -> Option<usize> {
        self.index.get(&(s, beta.to_vec())).copied()
    }

    fn nfiber(&self) -> usize {
        self.entries.len()
    }

    /// The total derivative `D_d` along horizontal direction `d`.
    pub fn total_derivative(&self, p: &WeightedPolynomial, d: usize) -> Result<WeightedPolynomial, FunctorError> {
        let nb = p.nbase();
        let n = self.nfiber();
        let var = |i: usize| WeightedPolynomial::fiber_var(nb, n, i);
        let mut unit = vec![0; self.horizontal.len()];
        unit[d] = 1;
        let mut out = p.base_partial(self.horizontal[d])?;
        for &a in &self.vertical {
            let dp = p.base_partial(a)?;
            if dp.is_zero() {
                continue;
            }
            let target = self.position(Source::Vertical(a), &unit).ok_or_else(|| too_high("vertical"))?;
            out = &out + &(&dp * &var(target));
        }
        for (i, (s, beta)) in self.entries.iter().enumerate() {
            if !p.depends_on_fiber(i) {
                continue;
            }
            let mut raised = beta.clone();
            raised[d] += 1;
            let target = self.position(*s, &raised).ok_or_else(|| too_high("fiber"))?;
            out = &out + &(&p.fiber_partial(i)? * &var(target));
        }
        Ok(out)
    }
}

fn too_high(what: &str) -> FunctorError {
    FunctorError::InternalInvariantBroken(format!("total derivative of a top-order {what} jet coordinate"))
}

/// Horizontal Jacobian `∂f^{a'}/∂x^b` and its inverse; horizontal rules must not
/// depend on vertical coordinates.
fn horizontal_inverse(
    map: &CoordinateMap,
    source: &CoordinateFrame,
    target: &CoordinateFrame,
) -> Result<FunctionMatrix, FunctorError> {
    let rows = target.horizontal();
    let cols = source.horizontal();
    if rows.len() != cols.len() {
        return Err(FunctorError::NotOverDiffeomorphism(format!(
            "{} horizontal coordinates map to {}",
            cols.len(),
            rows.len()
        )));
    }
    for &a in &rows {
        for &v in &source.vertical() {
            if map.base_rules()[a].depends_on(v) {
                return Err(FunctorError::NotOverDiffeomorphism(format!(
                    "rule for `{}` depends on vertical coordinate `{}`",
                    target.base()[a].name,
                    source.base()[v].name
                )));
            }
        }
    }
    let jac = map.base_jacobian(&rows, &cols)?;
    if jac.det().is_zero() {
        return Err(FunctorError::SingularJacobian);
    }
    Ok(jac.inverse()?)
}

/// Prolongs one coordinate map from `source` to `target` frames.
pub fn jet_map(
    map: &CoordinateMap,
    source: &CoordinateFrame,
    target: &CoordinateFrame,
    src: &JetLayout,
    tgt: &JetLayout,
) -> Result<CoordinateMap, FunctorError> {
    let jinv = horizontal_inverse(map, source, target)?;
    let nb = source.nbase();
    let n = src.nfiber();
    let h = src.horizontal.len();
    let embed: Vec<Option<usize>> = (0..source.nfiber()).map(Some).collect();
    let mut rules: Vec<Option<WeightedPolynomial>> = vec![None; tgt.nfiber()];
    let order0 = |s: Source| -> WeightedPolynomial {
        match s {
            Source::Vertical(a) => WeightedPolynomial::base(n, map.base_rules()[a].clone()),
            Source::Fiber(i) => map.fiber_rules()[i].reindex_fibers(n, &embed).expect("embedding keeps every coordinate"),
        }
    };
    // total derivatives of already computed rules, keyed by the rule's jet coordinate
    let mut derivs: HashMap<(Source, Vec<u32>), Vec<WeightedPolynomial>> = HashMap::new();
    for (t, (s, beta)) in tgt.entries.iter().enumerate() {
        let order: u32 = beta.iter().sum();
        if order == 0 {
            rules[t] = Some(order0(*s));
            continue;
        }
        let d = beta.iter().position(|&e| e > 0).expect("positive order");
        let mut parent = beta.clone();
        parent[d] -= 1;
        let parent_rule = if parent.iter().all(|&e| e == 0) {
            order0(*s)
        } else {
            let pi = tgt.position(*s, &parent).expect("parent multi-index is listed");
            rules[pi].clone().expect("lower orders come first")
        };
        let key = (*s, parent);
        if !derivs.contains_key(&key) {
            let ds = (0..h).map(|c| src.total_derivative(&parent_rule, c)).collect::<Result<Vec<_>, _>>()?;
            derivs.insert(key.clone(), ds);
        }
        let ds = &derivs[&key];
        // D'_d = Σ_c (J^{-1})_{c d} D_c
        let mut acc = WeightedPolynomial::zero(nb, n);
        for (c, dc) in ds.iter().enumerate() {
            let coeff = jinv.get(c, d);
            if coeff.is_zero() || dc.is_zero() {
                continue;
            }
            acc = &acc + &dc.scale(coeff);
        }
        rules[t] = Some(acc);
    }
    let rules: Vec<WeightedPolynomial> = rules.into_iter().map(|r| r.expect("all rules computed")).collect();
    Ok(CoordinateMap::new(nb, n, map.base_rules().to_vec(), rules)?)
}

pub fn jet_prolong(bundle: &FilteredBundleSpec, k: u32) -> Result<FilteredBundleSpec, FunctorError> {
    let lay = JetLayout::new(&bundle.frame, k)?;
    let frame = &bundle.frame;
    derived_bundle(format!("J{k}_{}", bundle.name), lay.frame.clone(), &bundle.atlas, |m| {
        jet_map(m, frame, frame, &lay, &lay)
    })
}

pub fn jet_prolong_morphism(phi: &FilteredMorphism, k: u32) -> Result<FilteredMorphism, FunctorError> {
    let src = JetLayout::new(&phi.source_frame, k)?;
    let tgt = JetLayout::new(&phi.target_frame, k)?;
    let map = jet_map(&phi.map, &phi.source_frame, &phi.target_frame, &src, &tgt)?;
    Ok(FilteredMorphism::between_frames(
        format!("J{k}_{}", phi.name),
        format!("J{k}_{}", phi.source),
        format!("J{k}_{}", phi.target),
        src.frame,
        tgt.frame,
        map,
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multi_index_counts() {
        assert_eq!(multi_indices(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(multi_indices(3, 2).len(), 6);
        assert_eq!(multi_indices(1, 3), vec![vec![3]]);
        assert!(multi_indices(0, 1).is_empty());
    }
}
