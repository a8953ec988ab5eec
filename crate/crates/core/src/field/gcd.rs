//! Multivariate polynomial gcd over the rationals.
//!
//! The inputs are scaled to integer polynomials and first tried with the
//! heuristic gcd: evaluate the main variable at a large integer, recurse,
//! recover the candidate from its balanced digits and accept it if it divides
//! both inputs. When that gives up, a recursive subresultant PRS is used: a
//! polynomial is viewed as univariate in its highest occurring variable, the
//! contents are split off recursively and the primitive parts run through a
//! subresultant pseudo-remainder sequence. Results are monic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{BaseMonomial, BasePolynomial};
use super::Rational;

pub fn gcd(a: &BasePolynomial, b: &BasePolynomial) -> BasePolynomial {
    let nvars = a.nvars();
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return BasePolynomial::one(nvars);
    }
    if a == b {
        return a.monic();
    }
    if a.is_monomial() {
        return monomial_gcd(a, b);
    }
    if b.is_monomial() {
        return monomial_gcd(b, a);
    }

    if let Some(g) = heuristic_gcd(&integer_primitive(a), &integer_primitive(b)) {
        return g.monic();
    }
    prs_gcd(a, b)
}

fn prs_gcd(a: &BasePolynomial, b: &BasePolynomial) -> BasePolynomial {
    let nvars = a.nvars();
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return BasePolynomial::one(nvars);
    }
    let va = a.max_var();
    let vb = b.max_var();
    let v = va.max(vb).expect("non-constant polynomials have a variable");
    if !a.depends_on(v) {
        return gcd(a, &content_in(b, v));
    }
    if !b.depends_on(v) {
        return gcd(&content_in(a, v), b);
    }

    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let c = gcd(&ca, &cb);
    let g = primitive_prs(pa, pb, v);
    (&c * &g).monic()
}

/// `p` scaled to integer coefficients with no common integer factor.
fn integer_primitive(p: &BasePolynomial) -> BasePolynomial {
    let lcm = p.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let scaled = p.scale(&Rational::from_integer(lcm));
    let content = integer_content(&scaled);
    if content.is_one() {
        scaled
    } else {
        scaled.scale(&Rational::new(BigInt::one(), content))
    }
}

/// gcd of the (integer) coefficients.
fn integer_content(p: &BasePolynomial) -> BigInt {
    p.terms().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c.numer()))
}

fn max_norm(p: &BasePolynomial) -> BigInt {
    p.terms().map(|(_, c)| c.numer().abs()).max().unwrap_or_else(BigInt::zero)
}

/// `p` with the variable `var` set to the integer `x`.
fn evaluate(p: &BasePolynomial, var: usize, x: &BigInt) -> BasePolynomial {
    let mut powers: Vec<BigInt> = vec![BigInt::one()];
    let terms = p.terms().map(|(m, c)| {
        let e = m.0[var] as usize;
        while powers.len() <= e {
            let next = powers.last().unwrap() * x;
            powers.push(next);
        }
        let mut stripped = m.clone();
        stripped.0[var] = 0;
        (stripped, c * Rational::from_integer(powers[e].clone()))
    });
    BasePolynomial::from_terms(p.nvars(), terms.collect::<Vec<_>>())
}

/// The polynomial in `var` whose balanced base-`x` digits are the coefficients of `h`.
fn interpolate(h: &BasePolynomial, var: usize, x: &BigInt) -> BasePolynomial {
    let nvars = h.nvars();
    let half = x / 2;
    let mut rest = h.clone();
    let mut digits = Vec::new();
    while !rest.is_zero() {
        let mut digit = BasePolynomial::zero(nvars);
        let mut next = BasePolynomial::zero(nvars);
        for (m, c) in rest.terms() {
            let n = c.numer();
            let mut d = n.mod_floor(x);
            if d > half {
                d -= x;
            }
            if !d.is_zero() {
                digit = &digit + &BasePolynomial::monomial(m.clone(), Rational::from_integer(d.clone()));
            }
            let q = (n - &d) / x;
            if !q.is_zero() {
                next = &next + &BasePolynomial::monomial(m.clone(), Rational::from_integer(q));
            }
        }
        digits.push(digit);
        rest = next;
    }
    BasePolynomial::from_coefficients_in(nvars, var, &digits)
}

fn divides(d: &BasePolynomial, p: &BasePolynomial) -> bool {
    p.div_exact(d).is_some()
}

/// Heuristic gcd of integer polynomials, with its integer content; `None` when
/// the evaluation points keep failing.
fn heuristic_gcd(f: &BasePolynomial, g: &BasePolynomial) -> Option<BasePolynomial> {
    let nvars = f.nvars();
    let cf = integer_content(f);
    let cg = integer_content(g);
    let c = cf.gcd(&cg);
    let content = BasePolynomial::constant(nvars, Rational::from_integer(c.clone()));
    if f.is_constant() || g.is_constant() {
        return Some(content);
    }
    let f = f.scale(&Rational::new(BigInt::one(), cf));
    let g = g.scale(&Rational::new(BigInt::one(), cg));
    let var = f.max_var().max(g.max_var()).expect("non-constant");
    let nf = max_norm(&f);
    let ng = max_norm(&g);
    let b: BigInt = 2 * nf.clone().min(ng.clone()) + 29;
    let lf = f.leading_coefficient().numer().abs();
    let lg = g.leading_coefficient().numer().abs();
    let mut x = std::cmp::max(
        std::cmp::min(b.clone(), 99 * b.sqrt()),
        2 * std::cmp::min(nf / lf, ng / lg) + 2,
    );
    for _ in 0..6 {
        let ff = evaluate(&f, var, &x);
        let gg = evaluate(&g, var, &x);
        if !ff.is_zero() && !gg.is_zero() {
            let h0 = heuristic_gcd(&ff, &gg)?;
            let h = integer_primitive(&interpolate(&h0, var, &x));
            if !h.is_zero() && divides(&h, &f) && divides(&h, &g) {
                return Some(&h * &content);
            }
            for (p, q, pp) in [(&f, &g, &ff), (&g, &f, &gg)] {
                if let Some(cofactor) = pp.div_exact(&h0) {
                    let cof = interpolate(&cofactor, var, &x);
                    if cof.is_zero() {
                        continue;
                    }
                    if let Some(h) = p.div_exact(&cof) {
                        let h = integer_primitive(&h);
                        if divides(&h, q) {
                            return Some(&h * &content);
                        }
                    }
                }
            }
        }
        x = 73794 * &x * x.sqrt().sqrt() / 27011;
    }
    None
}

/// gcd of a monomial with an arbitrary polynomial: the common power product.
fn monomial_gcd(m: &BasePolynomial, p: &BasePolynomial) -> BasePolynomial {
    let (mono, _) = m.leading_term().expect("nonzero monomial");
    let mut exps = mono.0.clone();
    for (t, _) in p.terms() {
        for (e, te) in exps.iter_mut().zip(&t.0) {
            *e = (*e).min(*te);
        }
    }
    BasePolynomial::monomial(BaseMonomial(exps), Rational::one())
}

/// gcd of the coefficients of `p` viewed as a polynomial in `var`.
pub fn content_in(p: &BasePolynomial, var: usize) -> BasePolynomial {
    let mut acc = BasePolynomial::zero(p.nvars());
    for c in p.coefficients_in(var).into_iter().rev() {
        if c.is_zero() {
            continue;
        }
        acc = gcd(&acc, &c);
        if acc.is_constant() {
            return BasePolynomial::one(p.nvars());
        }
    }
    acc
}

pub fn primitive_part(p: &BasePolynomial, var: usize) -> BasePolynomial {
    if p.is_zero() {
        return p.clone();
    }
    let c = content_in(p, var);
    p.div_exact(&c).expect("content divides").monic()
}

fn primitive_prs(mut a: BasePolynomial, mut b: BasePolynomial, var: usize) -> BasePolynomial {
    if a.degree_in(var) < b.degree_in(var) {
        std::mem::swap(&mut a, &mut b);
    }
    let nvars = a.nvars();
    let mut g = BasePolynomial::one(nvars);
    let mut h = BasePolynomial::one(nvars);
    loop {
        let delta = a.degree_in(var).expect("nonzero") - b.degree_in(var).expect("nonzero");
        let r = pseudo_remainder(&a, &b, var);
        if r.is_zero() {
            return primitive_part(&b, var);
        }
        if !r.depends_on(var) {
            return BasePolynomial::one(nvars);
        }
        let divisor = &g * &h.pow(delta);
        a = b;
        b = r.div_exact(&divisor).expect("subresultant division is exact");
        g = leading_coefficient_in(&a, var);
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g.pow(delta).div_exact(&h.pow(delta - 1)).expect("subresultant division is exact"),
        };
    }
}

fn leading_coefficient_in(p: &BasePolynomial, var: usize) -> BasePolynomial {
    p.coefficients_in(var).pop().expect("nonzero polynomial")
}

/// `lc(b)^(deg a - deg b + 1) * a mod b` in the variable `var`.
pub fn pseudo_remainder(a: &BasePolynomial, b: &BasePolynomial, var: usize) -> BasePolynomial {
    let nvars = a.nvars();
    let db = b.degree_in(var).expect("nonzero divisor");
    let lcb = leading_coefficient_in(b, var);
    let mut steps = (a.degree_in(var).unwrap_or(0) + 1).saturating_sub(db);
    let mut r = a.clone();
    while let Some(dr) = r.degree_in(var) {
        if r.is_zero() || dr < db {
            break;
        }
        let lcr = leading_coefficient_in(&r, var);
        let shift = BaseMonomial::var(nvars, var);
        let mut shifted = b.clone();
        for _ in 0..(dr - db) {
            shifted = shifted.mul_monomial(&shift, &Rational::one());
        }
        r = &(&lcb * &r) - &(&lcr * &shifted);
        steps = steps.saturating_sub(1);
    }
    if r.is_zero() {
        r
    } else {
        &lcb.pow(steps) * &r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> BasePolynomial {
        BasePolynomial::var(n, i)
    }

    fn k(n: usize, c: i64) -> BasePolynomial {
        BasePolynomial::integer(n, c)
    }

    #[test]
    fn univariate_difference_of_squares() {
        let a = &(&x(1, 0) * &x(1, 0)) - &k(1, 1);
        let b = &x(1, 0) - &k(1, 1);
        assert_eq!(gcd(&a, &b), b);
    }

    #[test]
    fn bivariate_common_factor() {
        // (x + y)(x - 2y) and (x + y)(y + 3)
        let s = &x(2, 0) + &x(2, 1);
        let a = &s * &(&x(2, 0) - &(&k(2, 2) * &x(2, 1)));
        let b = &s * &(&x(2, 1) + &k(2, 3));
        assert_eq!(gcd(&a, &b), s.monic());
    }

    #[test]
    fn coprime_inputs() {
        let a = &(&x(2, 0) * &x(2, 1)) + &k(2, 1);
        let b = &x(2, 0) + &x(2, 1);
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn monomial_against_polynomial() {
        let m = &(&x(2, 0) * &x(2, 0)) * &x(2, 1);
        let p = &(&x(2, 0) * &x(2, 1)) + &(&x(2, 0) * &x(2, 0));
        assert_eq!(gcd(&m, &p), x(2, 0));
    }

    #[test]
    fn trivariate_content_and_primitive_parts() {
        // z*(x+1)*(y-x) and z^2*(x+1)
        let z = x(3, 2);
        let f = &(&x(3, 0) + &k(3, 1)) * &(&x(3, 1) - &x(3, 0));
        let a = &z * &f;
        let b = &(&z * &z) * &(&x(3, 0) + &k(3, 1));
        let expected = (&z * &(&x(3, 0) + &k(3, 1))).monic();
        assert_eq!(gcd(&a, &b), expected);
    }

    fn trivariate(terms: &[([u32; 3], i64, i64)]) -> BasePolynomial {
        BasePolynomial::from_terms(
            3,
            terms.iter().map(|(e, n, d)| (BaseMonomial(e.to_vec()), Rational::new((*n).into(), (*d).into()))),
        )
    }

    #[test]
    fn coprime_trivariate_denominators() {
        // once slow: the primitive PRS blew coefficients up to degree 60
        let a = trivariate(&[([1, 1, 0], 1, 1), ([0, 1, 1], 9, 2), ([0, 0, 1], -3, 2)]);
        let b = trivariate(&[([0, 2, 1], 1, 1), ([0, 0, 0], -1, 1)]);
        assert!(gcd(&a, &b).is_one());
        let f = trivariate(&[([2, 0, 1], 1, 3), ([0, 1, 0], -2, 1), ([0, 0, 0], 5, 1)]);
        assert_eq!(gcd(&(&a * &f), &(&b * &f)), f.monic());
    }

    #[test]
    fn heuristic_and_prs_agree() {
        let a = trivariate(&[([1, 1, 0], 1, 1), ([0, 1, 1], 9, 2), ([0, 0, 1], -3, 2)]);
        let b = trivariate(&[([0, 2, 1], 1, 1), ([0, 0, 0], -1, 1)]);
        let f = trivariate(&[([1, 0, 1], 2, 1), ([0, 1, 0], -1, 1)]);
        let p = &(&a * &f) * &f;
        let q = &(&b * &f) * &a;
        assert_eq!(gcd(&p, &q), prs_gcd(&p, &q));
        assert_eq!(gcd(&p, &q), (&a * &f).monic());
    }
}
