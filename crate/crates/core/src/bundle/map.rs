use crate::field::{BaseFunction, FunctionMatrix};
use crate::weighted::{FiberMonomial, WeightedPolynomial};

use super::BundleError;

/// A local coordinate expression: one rule per target coordinate, written in the
/// source coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoordinateMap {
    nbase_src: usize,
    nfiber_src: usize,
    base_rules: Vec<BaseFunction>,
    fiber_rules: Vec<WeightedPolynomial>,
}

impl CoordinateMap {
    pub fn new(
        nbase_src: usize,
        nfiber_src: usize,
        base_rules: Vec<BaseFunction>,
        fiber_rules: Vec<WeightedPolynomial>,
    ) -> Result<Self, BundleError> {
        if base_rules.iter().any(|b| b.nvars() != nbase_src)
            || fiber_rules.iter().any(|p| p.nbase() != nbase_src || p.nfiber() != nfiber_src)
        {
            return Err(BundleError::FrameMismatch);
        }
        Ok(CoordinateMap { nbase_src, nfiber_src, base_rules, fiber_rules })
    }

    pub fn identity(nbase: usize, nfiber: usize) -> Self {
        CoordinateMap {
            nbase_src: nbase,
            nfiber_src: nfiber,
            base_rules: (0..nbase).map(|a| BaseFunction::var(nbase, a)).collect(),
            fiber_rules: (0..nfiber).map(|i| WeightedPolynomial::fiber_var(nbase, nfiber, i)).collect(),
        }
    }

    pub fn nbase_src(&self) -> usize {
        self.nbase_src
    }

    pub fn nfiber_src(&self) -> usize {
        self.nfiber_src
    }

    pub fn nbase_tgt(&self) -> usize {
        self.base_rules.len()
    }

    pub fn nfiber_tgt(&self) -> usize {
        self.fiber_rules.len()
    }

    pub fn base_rules(&self) -> &[BaseFunction] {
        &self.base_rules
    }

    pub fn fiber_rules(&self) -> &[WeightedPolynomial] {
        &self.fiber_rules
    }

    pub fn is_identity(&self) -> bool {
        self.nbase_src == self.nbase_tgt()
            && self.nfiber_src == self.nfiber_tgt()
            && *self == Self::identity(self.nbase_src, self.nfiber_src)
    }

    /// `then ∘ self`: first apply `self`, then `then`.
    pub fn then(&self, then: &CoordinateMap) -> Result<CoordinateMap, BundleError> {
        if then.nbase_src != self.nbase_tgt() || then.nfiber_src != self.nfiber_tgt() {
            return Err(BundleError::FrameMismatch);
        }
        let base_rules = then
            .base_rules
            .iter()
            .map(|b| b.substitute(self.nbase_src, &self.base_rules))
            .collect::<Result<Vec<_>, _>>()?;
        let fiber_rules = then
            .fiber_rules
            .iter()
            .map(|p| p.substitute_into(self.nbase_src, self.nfiber_src, &self.base_rules, &self.fiber_rules))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CoordinateMap { nbase_src: self.nbase_src, nfiber_src: self.nfiber_src, base_rules, fiber_rules })
    }

    /// Jacobian `∂x'^a/∂x^b` of the base rules restricted to the given index sets.
    pub fn base_jacobian(&self, rows: &[usize], cols: &[usize]) -> Result<FunctionMatrix, BundleError> {
        if rows.len() != cols.len() {
            return Err(BundleError::FrameMismatch);
        }
        let mut entries = Vec::with_capacity(rows.len());
        for &a in rows {
            let mut row = Vec::with_capacity(cols.len());
            for &b in cols {
                row.push(self.base_rules[a].partial(b)?);
            }
            entries.push(row);
        }
        Ok(FunctionMatrix::from_rows(self.nbase_src, entries))
    }

    /// Coefficient of the linear monomial `X^j` in the rule for target fiber `i`.
    pub fn linear_coefficient(&self, i: usize, j: usize) -> BaseFunction {
        self.fiber_rules[i].coefficient(&FiberMonomial::var(self.nfiber_src, j))
    }

    /// Rewrites the source fiber variables through `map` (see
    /// [`WeightedPolynomial::reindex_fibers`]) and keeps the target rules listed in `keep`.
    pub fn restrict(
        &self,
        nfiber_src_out: usize,
        map: &[Option<usize>],
        keep: &[usize],
    ) -> Result<CoordinateMap, (usize, usize)> {
        let mut fiber_rules = Vec::with_capacity(keep.len());
        for &i in keep {
            let p = self.fiber_rules[i].reindex_fibers(nfiber_src_out, map).map_err(|v| (i, v))?;
            fiber_rules.push(p);
        }
        Ok(CoordinateMap {
            nbase_src: self.nbase_src,
            nfiber_src: nfiber_src_out,
            base_rules: self.base_rules.clone(),
            fiber_rules,
        })
    }

    pub fn map_fiber_rules<F>(&self, f: F) -> CoordinateMap
    where
        F: FnMut(&WeightedPolynomial) -> WeightedPolynomial,
    {
        CoordinateMap {
            nbase_src: self.nbase_src,
            nfiber_src: self.nfiber_src,
            base_rules: self.base_rules.clone(),
            fiber_rules: self.fiber_rules.iter().map(f).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rational;

    #[test]
    fn compose_affine_then_scale() {
        // (Y -> Y + x) then (Y -> 2Y) gives Y -> 2Y + 2x
        let y = WeightedPolynomial::fiber_var(1, 1, 0);
        let x = WeightedPolynomial::base_var(1, 1, 0);
        let two = Rational::from_integer(2.into());
        let shift = CoordinateMap::new(1, 1, vec![BaseFunction::var(1, 0)], vec![&y + &x]).unwrap();
        let scale = CoordinateMap::new(1, 1, vec![BaseFunction::var(1, 0)], vec![y.scale(&BaseFunction::constant(1, two.clone()))])
            .unwrap();
        let got = shift.then(&scale).unwrap();
        let expected = (&y + &x).scale(&BaseFunction::constant(1, two));
        assert_eq!(got.fiber_rules()[0], expected);
    }

    #[test]
    fn identity_is_neutral() {
        let y = WeightedPolynomial::fiber_var(1, 1, 0);
        let m = CoordinateMap::new(1, 1, vec![BaseFunction::var(1, 0)], vec![&y * &y]).unwrap();
        let id = CoordinateMap::identity(1, 1);
        assert_eq!(m.then(&id).unwrap(), m);
        assert_eq!(id.then(&m).unwrap(), m);
        assert!(id.is_identity());
    }
}
