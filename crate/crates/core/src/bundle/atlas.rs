use std::collections::{BTreeMap, BTreeSet};

use super::frame::CoordinateFrame;
use super::map::CoordinateMap;
use super::BundleError;

/// A declared overlap of two or three charts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Overlap {
    Pair(String, String),
    Triple(String, String, String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atlas {
    charts: Vec<String>,
    transitions: BTreeMap<(String, String), CoordinateMap>,
    overlaps: Vec<Overlap>,
}

impl Atlas {
    pub fn new(charts: Vec<String>) -> Result<Self, BundleError> {
        let unique: BTreeSet<_> = charts.iter().collect();
        if unique.len() != charts.len() {
            return Err(BundleError::InvalidAtlas("chart declared twice".into()));
        }
        Ok(Atlas { charts, transitions: BTreeMap::new(), overlaps: Vec::new() })
    }

    fn known(&self, chart: &str) -> Result<(), BundleError> {
        if self.charts.iter().any(|c| c == chart) {
            Ok(())
        } else {
            Err(BundleError::UnknownChart(chart.to_string()))
        }
    }

    pub fn add_transition(&mut self, source: &str, target: &str, map: CoordinateMap) -> Result<(), BundleError> {
        self.known(source)?;
        self.known(target)?;
        let key = (source.to_string(), target.to_string());
        if self.transitions.contains_key(&key) {
            return Err(BundleError::InvalidAtlas(format!("transition {source} -> {target} declared twice")));
        }
        self.transitions.insert(key, map);
        Ok(())
    }

    pub fn add_overlap(&mut self, overlap: Overlap) -> Result<(), BundleError> {
        match &overlap {
            Overlap::Pair(a, b) => {
                self.known(a)?;
                self.known(b)?;
            }
            Overlap::Triple(a, b, c) => {
                self.known(a)?;
                self.known(b)?;
                self.known(c)?;
            }
        }
        self.overlaps.push(overlap);
        Ok(())
    }

    pub fn charts(&self) -> &[String] {
        &self.charts
    }

    pub fn transitions(&self) -> impl Iterator<Item = (&(String, String), &CoordinateMap)> {
        self.transitions.iter()
    }

    pub fn transition(&self, source: &str, target: &str) -> Option<&CoordinateMap> {
        self.transitions.get(&(source.to_string(), target.to_string()))
    }

    pub fn require(&self, source: &str, target: &str) -> Result<&CoordinateMap, BundleError> {
        self.transition(source, target)
            .ok_or_else(|| BundleError::MissingTransition(source.to_string(), target.to_string()))
    }

    pub fn declared_overlaps(&self) -> &[Overlap] {
        &self.overlaps
    }

    /// Pairs checked for mutual inverses: the declared ones, or, if no overlap is
    /// declared, every unordered pair of distinct charts joined by a transition.
    pub fn effective_pairs(&self) -> Vec<(String, String)> {
        if !self.overlaps.is_empty() {
            return self
                .overlaps
                .iter()
                .filter_map(|o| match o {
                    Overlap::Pair(a, b) => Some((a.clone(), b.clone())),
                    Overlap::Triple(..) => None,
                })
                .collect();
        }
        let mut set = BTreeSet::new();
        for (u, v) in self.transitions.keys() {
            if u != v {
                let (a, b) = if self.position(u) <= self.position(v) { (u, v) } else { (v, u) };
                set.insert((self.position(a), self.position(b)));
            }
        }
        set.into_iter().map(|(a, b)| (self.charts[a].clone(), self.charts[b].clone())).collect()
    }

    /// Triples `(U, V, W)` checked for the cocycle condition: the declared ones, or,
    /// if no overlap is declared, every triple of distinct charts with all three
    /// transitions `U->V`, `V->W`, `U->W` present.
    pub fn effective_triples(&self) -> Vec<(String, String, String)> {
        if !self.overlaps.is_empty() {
            return self
                .overlaps
                .iter()
                .filter_map(|o| match o {
                    Overlap::Triple(a, b, c) => Some((a.clone(), b.clone(), c.clone())),
                    Overlap::Pair(..) => None,
                })
                .collect();
        }
        let mut out = Vec::new();
        for u in &self.charts {
            for v in &self.charts {
                for w in &self.charts {
                    if u == v || v == w || u == w {
                        continue;
                    }
                    if self.transition(u, v).is_some()
                        && self.transition(v, w).is_some()
                        && self.transition(u, w).is_some()
                    {
                        out.push((u.clone(), v.clone(), w.clone()));
                    }
                }
            }
        }
        out
    }

    fn position(&self, chart: &str) -> usize {
        self.charts.iter().position(|c| c == chart).unwrap_or(usize::MAX)
    }

    /// Applies `f` to every transition, keeping charts and overlaps.
    pub fn try_map<F, E>(&self, mut f: F) -> Result<Atlas, E>
    where
        F: FnMut(&str, &str, &CoordinateMap) -> Result<CoordinateMap, E>,
    {
        let mut transitions = BTreeMap::new();
        for ((u, v), m) in &self.transitions {
            transitions.insert((u.clone(), v.clone()), f(u, v, m)?);
        }
        Ok(Atlas { charts: self.charts.clone(), transitions, overlaps: self.overlaps.clone() })
    }

    /// Renames charts through `rename`, which must be injective on the charts.
    pub fn rename_charts<F>(&self, rename: F) -> Atlas
    where
        F: Fn(&str) -> String,
    {
        Atlas {
            charts: self.charts.iter().map(|c| rename(c)).collect(),
            transitions: self
                .transitions
                .iter()
                .map(|((u, v), m)| ((rename(u), rename(v)), m.clone()))
                .collect(),
            overlaps: self
                .overlaps
                .iter()
                .map(|o| match o {
                    Overlap::Pair(a, b) => Overlap::Pair(rename(a), rename(b)),
                    Overlap::Triple(a, b, c) => Overlap::Triple(rename(a), rename(b), rename(c)),
                })
                .collect(),
        }
    }

    /// Replaces one transition, for perturbation experiments.
    pub fn with_transition(&self, source: &str, target: &str, map: CoordinateMap) -> Atlas {
        let mut out = self.clone();
        out.transitions.insert((source.to_string(), target.to_string()), map);
        out
    }

    pub fn with_overlaps(&self, overlaps: Vec<Overlap>) -> Atlas {
        let mut out = self.clone();
        out.overlaps = overlaps;
        out
    }
}

/// A filtered bundle given by a coordinate frame and an atlas of transitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredBundleSpec {
    pub name: String,
    pub frame: CoordinateFrame,
    pub atlas: Atlas,
}

impl FilteredBundleSpec {
    pub fn new(name: impl Into<String>, frame: CoordinateFrame, atlas: Atlas) -> Result<Self, BundleError> {
        for m in atlas.transitions.values() {
            if m.nbase_src() != frame.nbase()
                || m.nfiber_src() != frame.nfiber()
                || m.nbase_tgt() != frame.nbase()
                || m.nfiber_tgt() != frame.nfiber()
            {
                return Err(BundleError::FrameMismatch);
            }
        }
        Ok(FilteredBundleSpec { name: name.into(), frame, atlas })
    }

    /// The same bundle with its fiber coordinates listed in `order` (old indices).
    pub fn with_fiber_order(&self, order: &[usize]) -> Result<FilteredBundleSpec, BundleError> {
        let n = self.frame.nfiber();
        let mut inverse = vec![None; n];
        for (new, &old) in order.iter().enumerate() {
            if old >= n || inverse[old].is_some() {
                return Err(BundleError::InvalidFrame("fiber order is not a permutation".into()));
            }
            inverse[old] = Some(new);
        }
        if order.len() != n {
            return Err(BundleError::InvalidFrame("fiber order is not a permutation".into()));
        }
        let fibers = order.iter().map(|&i| self.frame.fibers()[i].clone()).collect();
        let frame = CoordinateFrame::with_degree(
            self.frame.axes(),
            self.frame.degree().clone(),
            self.frame.base().to_vec(),
            fibers,
        )?;
        let atlas = self
            .atlas
            .try_map::<_, BundleError>(|_, _, m| {
                m.restrict(n, &inverse, order)
                    .map_err(|_| BundleError::InvalidFrame("fiber order is not a permutation".into()))
            })?;
        Ok(FilteredBundleSpec { name: self.name.clone(), frame, atlas })
    }

    /// Positional renaming of everything (bundle, coordinates, charts), with fiber
    /// coordinates stably sorted by weight, so that bundles equal up to naming
    /// compare equal.
    pub fn canonicalized(&self) -> FilteredBundleSpec {
        let mut order: Vec<usize> = (0..self.frame.nfiber()).collect();
        let weights = self.frame.weights();
        order.sort_by_key(|&i| (weights[i].total(), weights[i].clone()));
        let sorted = self.with_fiber_order(&order).expect("a sort is a permutation");
        let frame = sorted.frame.renamed(
            (0..self.frame.nbase()).map(|a| format!("b{a}")).collect(),
            (0..self.frame.nfiber()).map(|i| format!("f{i}")).collect(),
        );
        let charts = self.atlas.charts().to_vec();
        let atlas = sorted.atlas.rename_charts(|c| {
            let i = charts.iter().position(|x| x == c).unwrap_or(usize::MAX);
            format!("c{i}")
        });
        FilteredBundleSpec { name: "_".into(), frame, atlas }
    }

    pub fn equal_up_to_naming(&self, other: &FilteredBundleSpec) -> bool {
        self.canonicalized() == other.canonicalized()
    }
}
