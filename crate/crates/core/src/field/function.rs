//! Rational functions in the base coordinates.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::gcd;
use super::poly::BasePolynomial;
use super::{FieldError, Rational};

/// An element of `Q(x^1, ..., x^n)` in canonical form.
///
/// Numerator and denominator are coprime and the denominator is monic under
/// the graded lexicographic order, so structural equality is value equality.
/// Zero is `0/1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BaseFunction {
    num: BasePolynomial,
    den: BasePolynomial,
}

impl BaseFunction {
    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(BasePolynomial::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(BasePolynomial::one(nvars))
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_poly(BasePolynomial::constant(nvars, c))
    }

    pub fn integer(nvars: usize, n: i64) -> Self {
        Self::from_poly(BasePolynomial::integer(nvars, n))
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        Self::from_poly(BasePolynomial::var(nvars, index))
    }

    pub fn from_poly(p: BasePolynomial) -> Self {
        let nvars = p.nvars();
        BaseFunction { num: p, den: BasePolynomial::one(nvars) }
    }

    /// Builds `num / den` and reduces it to canonical form.
    pub fn new(num: BasePolynomial, den: BasePolynomial) -> Result<Self, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: BasePolynomial, den: BasePolynomial) -> Self {
        let nvars = num.nvars();
        if num.is_zero() {
            return Self::zero(nvars);
        }
        if let Some(c) = den.constant_value() {
            return Self::from_poly(num.scale(&c.recip()));
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coefficient();
        if lc.is_one() {
            BaseFunction { num, den }
        } else {
            let inv = lc.recip();
            BaseFunction { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn numerator(&self) -> &BasePolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &BasePolynomial {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.num.depends_on(var) || self.den.depends_on(var)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        BaseFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn recip(&self) -> Result<Self, FieldError> {
        BaseFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, FieldError> {
        if rhs.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self * &rhs.recip()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        BaseFunction { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Partial derivative with respect to base coordinate `var` (quotient rule).
    pub fn partial(&self, var: usize) -> Result<Self, FieldError> {
        if var >= self.nvars() {
            return Err(FieldError::UnknownCoordinate(var));
        }
        if self.den.is_one() {
            return Ok(Self::from_poly(self.num.partial(var)));
        }
        let dn = self.num.partial(var);
        let dd = self.den.partial(var);
        if dd.is_zero() {
            return Ok(Self::reduce(dn, self.den.clone()));
        }
        let top = &(&dn * &self.den) - &(&self.num * &dd);
        Ok(Self::reduce(top, &self.den * &self.den))
    }

    /// Simultaneous substitution of every base coordinate by a function over
    /// `nvars_out` coordinates.
    ///
    /// Both numerator and denominator are evaluated over a common denominator
    /// so that only a single gcd is taken at the end.
    pub fn substitute(&self, nvars_out: usize, images: &[BaseFunction]) -> Result<Self, FieldError> {
        assert_eq!(images.len(), self.nvars(), "one image per base coordinate required");
        let (n_top, n_deg) = homogenized(&self.num, nvars_out, images);
        let (d_top, d_deg) = homogenized(&self.den, nvars_out, images);
        if d_top.is_zero() {
            return Err(FieldError::DenominatorVanishesIdentically);
        }
        // num(σ) = n_top / Π q_i^{n_deg_i}, den(σ) = d_top / Π q_i^{d_deg_i}
        let mut top = n_top;
        let mut bottom = d_top;
        for (i, img) in images.iter().enumerate() {
            if img.den.is_one() {
                continue;
            }
            let (nd, dd) = (n_deg[i], d_deg[i]);
            if dd > nd {
                top = &top * &img.den.pow(dd - nd);
            } else if nd > dd {
                bottom = &bottom * &img.den.pow(nd - dd);
            }
        }
        Ok(Self::reduce(top, bottom))
    }

    /// Unit-preserving re-embedding into a different coordinate count via an index map.
    pub fn reindex(&self, nvars_out: usize, map: &[usize]) -> Self {
        let images: Vec<BasePolynomial> =
            map.iter().map(|&j| BasePolynomial::var(nvars_out, j)).collect();
        BaseFunction {
            num: self.num.compose(nvars_out, &images),
            den: self.den.compose(nvars_out, &images),
        }
    }
}

/// Evaluates `p` at `p_i / q_i`, returning `Σ c Π p_i^{e_i} q_i^{d_i - e_i}` and the
/// per-variable degrees `d_i` used for the homogenization.
fn homogenized(
    p: &BasePolynomial,
    nvars_out: usize,
    images: &[BaseFunction],
) -> (BasePolynomial, Vec<u32>) {
    let degs: Vec<u32> = (0..p.nvars()).map(|i| p.degree_in(i).unwrap_or(0)).collect();
    if images.iter().all(BaseFunction::is_polynomial) {
        let polys: Vec<BasePolynomial> = images.iter().map(|f| f.num.clone()).collect();
        return (p.compose(nvars_out, &polys), degs);
    }
    let mut num_pows: Vec<Vec<BasePolynomial>> = Vec::with_capacity(p.nvars());
    let mut den_pows: Vec<Vec<BasePolynomial>> = Vec::with_capacity(p.nvars());
    for (i, img) in images.iter().enumerate() {
        let mut np = vec![BasePolynomial::one(nvars_out)];
        let mut dp = vec![BasePolynomial::one(nvars_out)];
        for e in 1..=degs[i] as usize {
            np.push(&np[e - 1] * &img.num);
            dp.push(&dp[e - 1] * &img.den);
        }
        num_pows.push(np);
        den_pows.push(dp);
    }
    let mut out = BasePolynomial::zero(nvars_out);
    for (m, c) in p.terms() {
        let mut term = BasePolynomial::constant(nvars_out, c.clone());
        for (i, &e) in m.0.iter().enumerate() {
            let d = degs[i];
            if d == 0 {
                continue;
            }
            term = &term * &num_pows[i][e as usize];
            term = &term * &den_pows[i][(d - e) as usize];
        }
        out = &out + &term;
    }
    (out, degs)
}

impl Add for &BaseFunction {
    type Output = BaseFunction;
    fn add(self, rhs: &BaseFunction) -> BaseFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return BaseFunction::from_poly(&self.num + &rhs.num);
            }
            return BaseFunction::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let top = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        BaseFunction::reduce(top, &self.den * &rhs.den)
    }
}

impl Sub for &BaseFunction {
    type Output = BaseFunction;
    fn sub(self, rhs: &BaseFunction) -> BaseFunction {
        self + &(-rhs)
    }
}

impl Mul for &BaseFunction {
    type Output = BaseFunction;
    fn mul(self, rhs: &BaseFunction) -> BaseFunction {
        if self.is_zero() || rhs.is_zero() {
            return BaseFunction::zero(self.nvars());
        }
        if self.den.is_one() && rhs.den.is_one() {
            return BaseFunction::from_poly(&self.num * &rhs.num);
        }
        // cross-cancel before multiplying
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g1).expect("gcd divides");
        let n2 = rhs.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let lc = den.leading_coefficient();
        let inv = lc.recip();
        BaseFunction { num: num.scale(&inv), den: den.scale(&inv) }
    }
}

/// Panics on division by zero; use [`BaseFunction::checked_div`] for a fallible form.
impl Div for &BaseFunction {
    type Output = BaseFunction;
    fn div(self, rhs: &BaseFunction) -> BaseFunction {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

impl Neg for &BaseFunction {
    type Output = BaseFunction;
    fn neg(self) -> BaseFunction {
        BaseFunction { num: -&self.num, den: self.den.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> BaseFunction {
        BaseFunction::var(n, i)
    }

    fn k(n: usize, c: i64) -> BaseFunction {
        BaseFunction::integer(n, c)
    }

    #[test]
    fn add_free_generators() {
        let s = &x(2, 0) + &x(2, 1);
        assert_eq!(s.numerator(), &(&BasePolynomial::var(2, 0) + &BasePolynomial::var(2, 1)));
        assert!(s.is_polynomial());
    }

    #[test]
    fn div_cancels_common_factor() {
        let num = &(&x(1, 0) * &x(1, 0)) - &k(1, 1);
        let den = &x(1, 0) - &k(1, 1);
        assert_eq!(num.checked_div(&den).unwrap(), &x(1, 0) + &k(1, 1));
    }

    #[test]
    fn inverse_pair_multiplies_to_one() {
        let inv = k(1, 1).checked_div(&x(1, 0)).unwrap();
        assert!((&inv * &x(1, 0)).is_one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(x(1, 0).checked_div(&k(1, 0)), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn partial_of_product() {
        let f = &x(2, 0) * &x(2, 1);
        assert_eq!(f.partial(0).unwrap(), x(2, 1));
    }

    #[test]
    fn partial_of_reciprocal() {
        let f = k(1, 1).checked_div(&x(1, 0)).unwrap();
        let expected = k(1, -1).checked_div(&(&x(1, 0) * &x(1, 0))).unwrap();
        assert_eq!(f.partial(0).unwrap(), expected);
    }

    #[test]
    fn partial_of_constant() {
        let f = BaseFunction::constant(1, Rational::new(7.into(), 2.into()));
        assert!(f.partial(0).unwrap().is_zero());
        assert_eq!(f.partial(3), Err(FieldError::UnknownCoordinate(3)));
    }

    #[test]
    fn substitute_binomial() {
        let f = &x(1, 0) * &x(1, 0);
        let shifted = &x(1, 0) + &k(1, 1);
        let got = f.substitute(1, &[shifted]).unwrap();
        let expected = &(&(&x(1, 0) * &x(1, 0)) + &(&k(1, 2) * &x(1, 0))) + &k(1, 1);
        assert_eq!(got, expected);
    }

    #[test]
    fn substitute_identity() {
        let f = &x(1, 0) + &k(1, 3);
        assert_eq!(f.substitute(1, &[x(1, 0)]).unwrap(), f);
    }

    #[test]
    fn substitute_into_vanishing_denominator() {
        let f = k(1, 1).checked_div(&x(1, 0)).unwrap();
        assert_eq!(
            f.substitute(1, &[k(1, 0)]),
            Err(FieldError::DenominatorVanishesIdentically)
        );
    }

    #[test]
    fn substitute_rational_images() {
        // f = (x + y) / x with x -> 1/t, y -> t  gives (1/t + t) * t = 1 + t^2
        let f = (&x(2, 0) + &x(2, 1)).checked_div(&x(2, 0)).unwrap();
        let t = x(1, 0);
        let inv_t = k(1, 1).checked_div(&t).unwrap();
        let got = f.substitute(1, &[inv_t, t.clone()]).unwrap();
        assert_eq!(got, &k(1, 1) + &(&t * &t));
    }

    #[test]
    fn canonical_denominator_is_monic() {
        let f = BaseFunction::new(BasePolynomial::integer(1, 3), BasePolynomial::var(1, 0).scale(&Rational::from_integer(6.into())))
            .unwrap();
        assert!(f.denominator().leading_coefficient().is_one());
        assert_eq!(f.numerator().constant_value(), Some(Rational::new(1.into(), 2.into())));
    }
}
