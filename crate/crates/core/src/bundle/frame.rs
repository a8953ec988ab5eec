use std::collections::BTreeSet;

use crate::weighted::Weight;

use super::BundleError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BaseCoord {
    pub name: String,
    /// Fiber coordinate of a fibred base; jets do not differentiate along it.
    pub vertical: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiberCoord {
    pub name: String,
    pub weight: Weight,
}

/// Names and weights of the coordinates of one chart.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoordinateFrame {
    axes: usize,
    degree: Weight,
    base: Vec<BaseCoord>,
    fibers: Vec<FiberCoord>,
}

impl CoordinateFrame {
    /// Builds a frame whose degree is the componentwise maximum of the fiber weights.
    pub fn new(axes: usize, base: Vec<BaseCoord>, fibers: Vec<FiberCoord>) -> Result<Self, BundleError> {
        let degree = fibers.iter().fold(Weight::zero(axes), |acc, f| {
            if f.weight.axes() == axes { acc.join(&f.weight) } else { acc }
        });
        Self::with_degree(axes, degree, base, fibers)
    }

    /// Builds a frame with a declared degree, which must equal the maximum fiber weight.
    pub fn with_degree(
        axes: usize,
        degree: Weight,
        base: Vec<BaseCoord>,
        fibers: Vec<FiberCoord>,
    ) -> Result<Self, BundleError> {
        if axes == 0 {
            return Err(BundleError::InvalidFrame("at least one weight axis is required".into()));
        }
        if degree.axes() != axes {
            return Err(BundleError::InvalidFrame(format!("degree {degree} does not have {axes} axes")));
        }
        let mut seen = BTreeSet::new();
        for name in base.iter().map(|b| &b.name).chain(fibers.iter().map(|f| &f.name)) {
            if !seen.insert(name.clone()) {
                return Err(BundleError::InvalidFrame(format!("coordinate `{name}` declared twice")));
            }
        }
        let mut max = Weight::zero(axes);
        for f in &fibers {
            if f.weight.axes() != axes {
                return Err(BundleError::InvalidFrame(format!(
                    "weight {} of `{}` does not have {axes} axes",
                    f.weight, f.name
                )));
            }
            if f.weight.is_zero() {
                return Err(BundleError::InvalidFrame(format!("fiber coordinate `{}` has weight zero", f.name)));
            }
            if !f.weight.leq(&degree) {
                return Err(BundleError::InvalidFrame(format!(
                    "weight {} of `{}` exceeds the degree {degree}",
                    f.weight, f.name
                )));
            }
            max = max.join(&f.weight);
        }
        if max != degree {
            return Err(BundleError::InvalidFrame(format!(
                "declared degree {degree} differs from the maximal fiber weight {max}"
            )));
        }
        Ok(CoordinateFrame { axes, degree, base, fibers })
    }

    pub fn axes(&self) -> usize {
        self.axes
    }

    pub fn degree(&self) -> &Weight {
        &self.degree
    }

    pub fn base(&self) -> &[BaseCoord] {
        &self.base
    }

    pub fn fibers(&self) -> &[FiberCoord] {
        &self.fibers
    }

    pub fn nbase(&self) -> usize {
        self.base.len()
    }

    pub fn nfiber(&self) -> usize {
        self.fibers.len()
    }

    pub fn weights(&self) -> Vec<Weight> {
        self.fibers.iter().map(|f| f.weight.clone()).collect()
    }

    pub fn base_names(&self) -> Vec<String> {
        self.base.iter().map(|b| b.name.clone()).collect()
    }

    pub fn fiber_names(&self) -> Vec<String> {
        self.fibers.iter().map(|f| f.name.clone()).collect()
    }

    pub fn base_index(&self, name: &str) -> Option<usize> {
        self.base.iter().position(|b| b.name == name)
    }

    pub fn fiber_index(&self, name: &str) -> Option<usize> {
        self.fibers.iter().position(|f| f.name == name)
    }

    pub fn horizontal(&self) -> Vec<usize> {
        (0..self.base.len()).filter(|&a| !self.base[a].vertical).collect()
    }

    pub fn vertical(&self) -> Vec<usize> {
        (0..self.base.len()).filter(|&a| self.base[a].vertical).collect()
    }

    /// Number of fiber coordinates of each total weight `1..=max`.
    pub fn rank(&self) -> Vec<usize> {
        let top = self.fibers.iter().map(|f| f.weight.total()).max().unwrap_or(0) as usize;
        let mut d = vec![0; top];
        for f in &self.fibers {
            d[f.weight.total() as usize - 1] += 1;
        }
        d
    }

    /// Same number of coordinates and same weights; names may differ.
    pub fn same_shape(&self, other: &CoordinateFrame) -> bool {
        self.axes == other.axes
            && self.nbase() == other.nbase()
            && self.weights() == other.weights()
            && self.base.iter().zip(&other.base).all(|(a, b)| a.vertical == b.vertical)
    }

    pub fn renamed(&self, base_names: Vec<String>, fiber_names: Vec<String>) -> CoordinateFrame {
        CoordinateFrame {
            axes: self.axes,
            degree: self.degree.clone(),
            base: self
                .base
                .iter()
                .zip(base_names)
                .map(|(b, name)| BaseCoord { name, vertical: b.vertical })
                .collect(),
            fibers: self
                .fibers
                .iter()
                .zip(fiber_names)
                .map(|(f, name)| FiberCoord { name, weight: f.weight.clone() })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fc(name: &str, w: u32) -> FiberCoord {
        FiberCoord { name: name.into(), weight: Weight::single(w) }
    }

    fn bc(name: &str) -> BaseCoord {
        BaseCoord { name: name.into(), vertical: false }
    }

    #[test]
    fn rank_counts_per_weight() {
        let f = CoordinateFrame::new(1, vec![bc("x")], vec![fc("Y1", 1), fc("Y2", 1), fc("Z", 3)]).unwrap();
        assert_eq!(f.rank(), vec![2, 0, 1]);
        assert_eq!(f.degree(), &Weight::single(3));
    }

    #[test]
    fn duplicate_names_rejected() {
        assert!(CoordinateFrame::new(1, vec![bc("x")], vec![fc("x", 1)]).is_err());
    }

    #[test]
    fn declared_degree_must_match() {
        assert!(CoordinateFrame::with_degree(1, Weight::single(3), vec![], vec![fc("Y", 1)]).is_err());
        assert!(CoordinateFrame::with_degree(1, Weight::single(0), vec![bc("x")], vec![]).is_ok());
    }
}
