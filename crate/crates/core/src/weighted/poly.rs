//! Polynomials in weighted fiber indeterminates with rational-function coefficients.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::field::{BaseFunction, FieldError, Rational};

use super::weight::{Degree, Weight};
use super::WeightedError;

/// Exponent vector over the fiber indeterminates of a frame.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiberMonomial(pub Vec<u32>);

impl FiberMonomial {
    pub fn one(nfiber: usize) -> Self {
        FiberMonomial(vec![0; nfiber])
    }

    pub fn var(nfiber: usize, i: usize) -> Self {
        let mut e = vec![0; nfiber];
        e[i] = 1;
        FiberMonomial(e)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        FiberMonomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// The single variable index if this monomial is exactly one indeterminate.
    pub fn as_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 if found.is_none() => found = Some(i),
                _ => return None,
            }
        }
        found
    }

    pub fn weight(&self, weights: &[Weight], axes: usize) -> Weight {
        let mut w = Weight::zero(axes);
        for (e, wi) in self.0.iter().zip(weights) {
            if *e > 0 {
                w = w.add(&wi.scale(*e));
            }
        }
        w
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedPolynomial {
    nbase: usize,
    nfiber: usize,
    terms: BTreeMap<FiberMonomial, BaseFunction>,
}

impl WeightedPolynomial {
    pub fn zero(nbase: usize, nfiber: usize) -> Self {
        WeightedPolynomial { nbase, nfiber, terms: BTreeMap::new() }
    }

    pub fn one(nbase: usize, nfiber: usize) -> Self {
        Self::base(nfiber, BaseFunction::one(nbase))
    }

    /// A fiber-constant polynomial.
    pub fn base(nfiber: usize, f: BaseFunction) -> Self {
        let mut p = Self::zero(f.nvars(), nfiber);
        p.add_term(FiberMonomial::one(nfiber), f);
        p
    }

    pub fn rational(nbase: usize, nfiber: usize, c: Rational) -> Self {
        Self::base(nfiber, BaseFunction::constant(nbase, c))
    }

    pub fn base_var(nbase: usize, nfiber: usize, a: usize) -> Self {
        Self::base(nfiber, BaseFunction::var(nbase, a))
    }

    pub fn fiber_var(nbase: usize, nfiber: usize, i: usize) -> Self {
        Self::term(FiberMonomial::var(nfiber, i), BaseFunction::one(nbase))
    }

    pub fn term(m: FiberMonomial, c: BaseFunction) -> Self {
        let mut p = Self::zero(c.nvars(), m.0.len());
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I>(nbase: usize, nfiber: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (FiberMonomial, BaseFunction)>,
    {
        let mut p = Self::zero(nbase, nfiber);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nbase(&self) -> usize {
        self.nbase
    }

    pub fn nfiber(&self) -> usize {
        self.nfiber
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&FiberMonomial, &BaseFunction)> {
        self.terms.iter()
    }

    /// Number of terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &FiberMonomial) -> BaseFunction {
        self.terms.get(m).cloned().unwrap_or_else(|| BaseFunction::zero(self.nbase))
    }

    /// The fiber-constant term.
    pub fn constant_term(&self) -> BaseFunction {
        self.coefficient(&FiberMonomial::one(self.nfiber))
    }

    /// `Some(f)` when the polynomial does not involve any fiber indeterminate.
    pub fn as_base(&self) -> Option<BaseFunction> {
        match self.terms.len() {
            0 => Some(BaseFunction::zero(self.nbase)),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn depends_on_fiber(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i] > 0)
    }

    pub fn fiber_vars_used(&self) -> Vec<usize> {
        (0..self.nfiber).filter(|&i| self.depends_on_fiber(i)).collect()
    }

    pub fn depends_on_base(&self, a: usize) -> bool {
        self.terms.values().any(|c| c.depends_on(a))
    }

    pub(crate) fn add_term(&mut self, m: FiberMonomial, c: BaseFunction) {
        debug_assert_eq!(m.0.len(), self.nfiber);
        debug_assert_eq!(c.nvars(), self.nbase);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn same_frame(&self, other: &Self) -> Result<(), WeightedError> {
        if self.nbase != other.nbase || self.nfiber != other.nfiber {
            return Err(WeightedError::FrameMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, WeightedError> {
        self.same_frame(other)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, WeightedError> {
        self.same_frame(other)?;
        Ok(self - other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, WeightedError> {
        self.same_frame(other)?;
        Ok(self * other)
    }

    pub fn scale(&self, c: &BaseFunction) -> Self {
        if c.is_zero() {
            return Self::zero(self.nbase, self.nfiber);
        }
        if c.is_one() {
            return self.clone();
        }
        let mut out = Self::zero(self.nbase, self.nfiber);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nbase, self.nfiber);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Componentwise maximum of the term weights; bottom for zero.
    pub fn degree(&self, weights: &[Weight], axes: usize) -> Degree {
        self.terms.keys().map(|m| m.weight(weights, axes)).reduce(|a, b| a.join(&b))
    }

    pub fn homogeneous_component(&self, w: &Weight, weights: &[Weight]) -> Self {
        let axes = w.axes();
        let mut out = Self::zero(self.nbase, self.nfiber);
        for (m, c) in &self.terms {
            if &m.weight(weights, axes) == w {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// All nonzero homogeneous components keyed by weight.
    pub fn components(&self, weights: &[Weight], axes: usize) -> BTreeMap<Weight, Self> {
        let mut out: BTreeMap<Weight, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.weight(weights, axes))
                .or_insert_with(|| Self::zero(self.nbase, self.nfiber))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    pub fn fiber_partial(&self, i: usize) -> Result<Self, WeightedError> {
        if i >= self.nfiber {
            return Err(WeightedError::UnknownCoordinate(i));
        }
        let mut out = Self::zero(self.nbase, self.nfiber);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut mm = m.clone();
            mm.0[i] -= 1;
            out.add_term(mm, c.scale(&Rational::from_integer(e.into())));
        }
        Ok(out)
    }

    /// Partial derivative in a base coordinate, acting on the coefficients.
    pub fn base_partial(&self, a: usize) -> Result<Self, WeightedError> {
        let mut out = Self::zero(self.nbase, self.nfiber);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.partial(a)?);
        }
        Ok(out)
    }

    /// Simultaneous substitution of base coordinates and fiber indeterminates.
    ///
    /// Every image lives over the output frame `(nbase_out, nfiber_out)`.
    pub fn substitute(
        &self,
        base_images: &[BaseFunction],
        fiber_images: &[WeightedPolynomial],
    ) -> Result<Self, WeightedError> {
        if base_images.len() != self.nbase || fiber_images.len() != self.nfiber {
            return Err(WeightedError::FrameMismatch);
        }
        let (nbase_out, nfiber_out) = match (base_images.first(), fiber_images.first()) {
            (_, Some(p)) => (p.nbase, p.nfiber),
            (Some(b), None) => (b.nvars(), 0),
            (None, None) => (0, 0),
        };
        if base_images.iter().any(|b| b.nvars() != nbase_out)
            || fiber_images.iter().any(|p| p.nbase != nbase_out || p.nfiber != nfiber_out)
        {
            return Err(WeightedError::FrameMismatch);
        }
        self.substitute_into(nbase_out, nfiber_out, base_images, fiber_images)
    }

    /// As [`substitute`](Self::substitute) with the output frame given explicitly,
    /// for the case where there are no images to read it from.
    pub fn substitute_into(
        &self,
        nbase_out: usize,
        nfiber_out: usize,
        base_images: &[BaseFunction],
        fiber_images: &[WeightedPolynomial],
    ) -> Result<Self, WeightedError> {
        let identity_base = base_images.len() == nbase_out
            && base_images.iter().enumerate().all(|(a, b)| *b == BaseFunction::var(nbase_out, a));
        let mut powers: Vec<Vec<WeightedPolynomial>> = vec![Vec::new(); self.nfiber];
        let mut out = Self::zero(nbase_out, nfiber_out);
        for (m, c) in &self.terms {
            let coeff = if identity_base { c.clone() } else { c.substitute(nbase_out, base_images)? };
            let mut term = Self::base(nfiber_out, coeff);
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() < e as usize {
                    let next = match cache.last() {
                        None => fiber_images[i].clone(),
                        Some(prev) => prev * &fiber_images[i],
                    };
                    cache.push(next);
                }
                term = &term * &cache[e as usize - 1];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Moves the polynomial into a frame with `nfiber_out` indeterminates; `map[i]`
    /// is the new index of indeterminate `i`, or `None` if it is dropped.
    ///
    /// Fails with the old index of the first dropped indeterminate that occurs.
    pub fn reindex_fibers(&self, nfiber_out: usize, map: &[Option<usize>]) -> Result<Self, usize> {
        let mut out = Self::zero(self.nbase, nfiber_out);
        for (m, c) in &self.terms {
            let mut e = vec![0; nfiber_out];
            for (i, &k) in m.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => e[j] += k,
                    None => return Err(i),
                }
            }
            out.add_term(FiberMonomial(e), c.clone());
        }
        Ok(out)
    }

    /// Coefficientwise map, keeping the fiber structure.
    pub fn map_coefficients<F>(&self, nbase_out: usize, mut f: F) -> Self
    where
        F: FnMut(&BaseFunction) -> BaseFunction,
    {
        let mut out = Self::zero(nbase_out, self.nfiber);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }
}

impl Add for &WeightedPolynomial {
    type Output = WeightedPolynomial;
    fn add(self, rhs: &WeightedPolynomial) -> WeightedPolynomial {
        assert!(self.nbase == rhs.nbase && self.nfiber == rhs.nfiber, "frame mismatch");
        let (mut big, small) =
            if self.terms.len() >= rhs.terms.len() { (self.clone(), rhs) } else { (rhs.clone(), self) };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big
    }
}

impl Sub for &WeightedPolynomial {
    type Output = WeightedPolynomial;
    fn sub(self, rhs: &WeightedPolynomial) -> WeightedPolynomial {
        assert!(self.nbase == rhs.nbase && self.nfiber == rhs.nfiber, "frame mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &WeightedPolynomial {
    type Output = WeightedPolynomial;
    fn mul(self, rhs: &WeightedPolynomial) -> WeightedPolynomial {
        assert!(self.nbase == rhs.nbase && self.nfiber == rhs.nfiber, "frame mismatch");
        if let Some(c) = self.as_base() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_base() {
            return self.scale(&c);
        }
        let mut out = WeightedPolynomial::zero(self.nbase, self.nfiber);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &WeightedPolynomial {
    type Output = WeightedPolynomial;
    fn neg(self) -> WeightedPolynomial {
        WeightedPolynomial {
            nbase: self.nbase,
            nfiber: self.nfiber,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl From<FieldError> for WeightedError {
    fn from(e: FieldError) -> Self {
        WeightedError::Field(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // frame: base x; fibers X1 (1), X2 (2)
    fn w() -> Vec<Weight> {
        vec![Weight::single(1), Weight::single(2)]
    }

    fn fv(i: usize) -> WeightedPolynomial {
        WeightedPolynomial::fiber_var(1, 2, i)
    }

    #[test]
    fn product_weight_is_sum() {
        let p = &fv(0) * &fv(1);
        assert_eq!(p.degree(&w(), 1), Some(Weight::single(3)));
    }

    #[test]
    fn degree_of_sum_is_max() {
        let p = &(&(&fv(0) * &fv(0)) * &fv(1)) + &(&fv(0) * &fv(1));
        assert_eq!(p.degree(&w(), 1), Some(Weight::single(4)));
    }

    #[test]
    fn additive_inverse_has_bottom_degree() {
        let p = &fv(0) + &fv(1);
        let z = &p - &p;
        assert!(z.is_zero());
        assert_eq!(z.degree(&w(), 1), None);
    }

    #[test]
    fn base_coefficient_has_weight_zero() {
        let p = &WeightedPolynomial::base_var(1, 2, 0) * &fv(0);
        assert_eq!(p.degree(&w(), 1), Some(Weight::single(1)));
    }

    #[test]
    fn homogeneous_components() {
        // fibers Y (1), Z (2)
        let y = fv(0);
        let z = fv(1);
        let p = &(&z + &y) + &(&y * &y);
        assert_eq!(p.homogeneous_component(&Weight::single(2), &w()), &z + &(&y * &y));
        assert_eq!(p.homogeneous_component(&Weight::single(1), &w()), y);
        assert!(p.homogeneous_component(&Weight::single(3), &w()).is_zero());
    }

    #[test]
    fn substitute_shear() {
        let y = fv(0);
        let z = fv(1);
        let p = &z + &(&y * &y);
        let got = p.substitute(&[BaseFunction::var(1, 0)], &[y.clone(), &z + &y]).unwrap();
        assert_eq!(got, &(&z + &y) + &(&y * &y));
    }

    #[test]
    fn substitute_affine_shift() {
        let y = fv(0);
        let one = WeightedPolynomial::one(1, 2);
        let got = y.substitute(&[BaseFunction::var(1, 0)], &[&y + &one, fv(1)]).unwrap();
        assert_eq!(got, &y + &one);
    }

    #[test]
    fn fiber_partials() {
        let y = fv(0);
        let z = fv(1);
        let p = &(&y * &y) * &z;
        let two = WeightedPolynomial::rational(1, 2, Rational::from_integer(2.into()));
        assert_eq!(p.fiber_partial(0).unwrap(), &(&two * &y) * &z);
        assert!(z.fiber_partial(0).unwrap().is_zero());
        let xy = &WeightedPolynomial::base_var(1, 2, 0) * &y;
        assert_eq!(xy.fiber_partial(0).unwrap(), WeightedPolynomial::base_var(1, 2, 0));
        assert_eq!(xy.fiber_partial(5), Err(WeightedError::UnknownCoordinate(5)));
    }

    #[test]
    fn frame_mismatch_is_reported() {
        let a = WeightedPolynomial::fiber_var(1, 2, 0);
        let b = WeightedPolynomial::fiber_var(1, 3, 0);
        assert_eq!(a.try_add(&b), Err(WeightedError::FrameMismatch));
    }
}
