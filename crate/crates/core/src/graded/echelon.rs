use std::collections::BTreeMap;

use crate::field::{BaseMonomial, BasePolynomial};

/// A reduced row echelon basis of a space of polynomials, with rows keyed by their
/// leading monomial under the graded lexicographic order.
#[derive(Clone, Debug)]
pub struct Echelon {
    nvars: usize,
    rows: BTreeMap<BaseMonomial, BasePolynomial>,
}

impl Echelon {
    pub fn new(nvars: usize) -> Self {
        Echelon { nvars, rows: BTreeMap::new() }
    }

    pub fn from_polys<'a, I: IntoIterator<Item = &'a BasePolynomial>>(nvars: usize, polys: I) -> Self {
        let mut e = Self::new(nvars);
        for p in polys {
            e.insert(p);
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Normal form modulo the span: no remaining term sits on a pivot.
    pub fn reduce(&self, p: &BasePolynomial) -> BasePolynomial {
        let mut r = p.clone();
        loop {
            let hit = r
                .terms()
                .rev()
                .find(|(m, _)| self.rows.contains_key(*m))
                .map(|(m, c)| (m.clone(), c.clone()));
            match hit {
                None => return r,
                Some((m, c)) => r = &r - &self.rows[&m].scale(&c),
            }
        }
    }

    pub fn contains(&self, p: &BasePolynomial) -> bool {
        self.reduce(p).is_zero()
    }

    /// Adds `p` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, p: &BasePolynomial) -> bool {
        debug_assert_eq!(p.nvars(), self.nvars);
        let r = self.reduce(p);
        let Some((lead, _)) = r.leading_term() else {
            return false;
        };
        let lead = lead.clone();
        let r = r.monic();
        for row in self.rows.values_mut() {
            let c = row.terms().find(|(m, _)| **m == lead).map(|(_, c)| c.clone());
            if let Some(c) = c {
                *row = &*row - &r.scale(&c);
            }
        }
        self.rows.insert(lead, r);
        true
    }

    /// Basis rows, leading monomial descending.
    pub fn basis(&self) -> Vec<BasePolynomial> {
        self.rows.values().rev().cloned().collect()
    }

    pub fn same_span(&self, other: &Echelon) -> bool {
        self.rows == other.rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_is_canonical() {
        let x = BasePolynomial::var(2, 0);
        let y = BasePolynomial::var(2, 1);
        let a = Echelon::from_polys(2, [&(&x + &y), &(&x - &y)]);
        let b = Echelon::from_polys(2, [&x, &y]);
        assert!(a.same_span(&b));
        assert_eq!(a.dim(), 2);
        assert!(a.contains(&(&x + &x)));
    }
}
