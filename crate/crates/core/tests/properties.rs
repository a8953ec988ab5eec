mod common;

use filtra::field::{BaseFunction, BasePolynomial};
use filtra::weighted::{degree_le, Weight, WeightedPolynomial};
use num_traits::One;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use common::*;

const NB: usize = 3;

fn poly(r: &mut ChaCha8Rng) -> BasePolynomial {
    base_poly(r, NB, 3, 3, None)
}

fn nonzero_poly(r: &mut ChaCha8Rng) -> BasePolynomial {
    loop {
        let p = poly(r);
        if !p.is_zero() {
            return p;
        }
    }
}

fn function(r: &mut ChaCha8Rng) -> BaseFunction {
    BaseFunction::new(poly(r), nonzero_poly(r)).unwrap()
}

fn nonzero_function(r: &mut ChaCha8Rng) -> BaseFunction {
    BaseFunction::new(nonzero_poly(r), nonzero_poly(r)).unwrap()
}

/// A weighted polynomial in fibers of weights 1, 1, 2 with terms of weight `<= w`.
fn weighted(r: &mut ChaCha8Rng, w: u32) -> WeightedPolynomial {
    let weights = fiber_weights();
    let mut p = WeightedPolynomial::base(3, function(r));
    for m in monomials_up_to(&weights, &Weight::single(w), usize::MAX) {
        if r.gen_bool(0.3) {
            p = &p + &WeightedPolynomial::term(m, function(r));
        }
    }
    p
}

/// As [`weighted`] with small polynomial coefficients.
fn weighted_poly(r: &mut ChaCha8Rng, w: u32) -> WeightedPolynomial {
    let weights = fiber_weights();
    let mut p = WeightedPolynomial::base(3, BaseFunction::from_poly(base_poly(r, NB, 1, 2, None)));
    for m in monomials_up_to(&weights, &Weight::single(w), usize::MAX) {
        if r.gen_bool(0.3) {
            p = &p + &WeightedPolynomial::term(m, BaseFunction::from_poly(base_poly(r, NB, 1, 2, None)));
        }
    }
    p
}

fn fiber_weights() -> Vec<Weight> {
    vec![Weight::single(1), Weight::single(1), Weight::single(2)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b, c) = (function(&mut r), function(&mut r), function(&mut r));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        let n = nonzero_function(&mut r);
        prop_assert!((&n * &n.recip().unwrap()).is_one());
        prop_assert_eq!(&(&a / &n) * &n, a);
    }

    #[test]
    fn canonical_form_is_unique(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (p, q, s) = (poly(&mut r), nonzero_poly(&mut r), nonzero_poly(&mut r));
        let f = BaseFunction::new(p.clone(), q.clone()).unwrap();
        let g = BaseFunction::new(&p * &s, &q * &s).unwrap();
        prop_assert_eq!(&f, &g);
        prop_assert!(f.denominator().leading_coefficient().is_one());
    }

    #[test]
    fn leibniz_and_commuting_partials(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (f, g) = (function(&mut r), function(&mut r));
        for a in 0..NB {
            let lhs = (&f * &g).partial(a).unwrap();
            let rhs = &(&f.partial(a).unwrap() * &g) + &(&f * &g.partial(a).unwrap());
            prop_assert_eq!(lhs, rhs);
            for b in 0..NB {
                prop_assert_eq!(f.partial(a).unwrap().partial(b).unwrap(), f.partial(b).unwrap().partial(a).unwrap());
            }
        }
    }

    #[test]
    fn filtration_law(seed in any::<u64>(), i in 0u32..3, j in 0u32..3) {
        let mut r = rng(seed);
        let weights = fiber_weights();
        let (p, q) = (weighted(&mut r, i), weighted(&mut r, j));
        prop_assert!(degree_le(&p.degree(&weights, 1), &Weight::single(i)));
        prop_assert!(degree_le(&(&p * &q).degree(&weights, 1), &Weight::single(i + j)));
        prop_assert!(degree_le(&(&p + &q).degree(&weights, 1), &Weight::single(i.max(j))));
    }

    #[test]
    fn substitution_is_a_homomorphism(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (p, q) = (weighted(&mut r, 1), weighted(&mut r, 2));
        let base: Vec<BaseFunction> = (0..NB)
            .map(|a| &BaseFunction::var(NB, a) + &BaseFunction::from_poly(base_poly(&mut r, NB, 2, 2, Some(a))))
            .collect();
        let fibers: Vec<WeightedPolynomial> = (0..3).map(|_| weighted_poly(&mut r, 2)).collect();
        let s = |x: &WeightedPolynomial| x.substitute(&base, &fibers).unwrap();
        prop_assert_eq!(s(&(&p * &q)), &s(&p) * &s(&q));
        prop_assert_eq!(s(&(&p + &q)), &s(&p) + &s(&q));
    }

    #[test]
    fn random_bundles_validate(seed in any::<u64>()) {
        let bundle = corpus(seed, 3);
        for b in bundle {
            prop_assert!(filtra::bundle::validate_bundle(&b).unwrap().passed());
        }
    }
}
