//! Seeded random corpus of filtered bundles and morphisms, and golden-document helpers.
#![allow(dead_code)]

use std::path::PathBuf;

use filtra::bundle::{
    Atlas, BaseCoord, CoordinateFrame, CoordinateMap, FiberCoord, FilteredBundleSpec, FilteredMorphism,
};
use filtra::field::{BaseFunction, BaseMonomial, BasePolynomial, Rational};
use filtra::frontend::{parse, Document};
use filtra::weighted::{FiberMonomial, Weight, WeightedPolynomial};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

pub fn golden_text(name: &str) -> String {
    std::fs::read_to_string(golden_dir().join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn golden(name: &str) -> Document {
    parse(&golden_text(name)).unwrap_or_else(|e| panic!("{name}:{e}"))
}

pub fn golden_bundle(file: &str, name: &str) -> FilteredBundleSpec {
    golden(file).bundle(name).unwrap_or_else(|| panic!("{file} has no bundle {name}")).clone()
}

/// Every `.flt` document of the golden corpus, sorted by file name.
pub fn golden_corpus() -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = std::fs::read_dir(golden_dir())
        .expect("golden directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "flt"))
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read_to_string(&p).unwrap()))
        .collect();
    out.sort();
    out
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num = rng.gen_range(-3i64..=3);
    let den = *[1i64, 1, 1, 2, 3].choose(rng).unwrap();
    Rational::new(num.into(), den.into())
}

fn nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let c = small_rational(rng);
        if c != Rational::from_integer(0.into()) {
            return c;
        }
    }
}

/// A polynomial of total degree `<= max_degree` with at most `max_terms` terms,
/// avoiding the base variable `exclude`.
pub fn base_poly(
    rng: &mut ChaCha8Rng,
    nbase: usize,
    max_degree: u32,
    max_terms: usize,
    exclude: Option<usize>,
) -> BasePolynomial {
    let vars: Vec<usize> = (0..nbase).filter(|&a| Some(a) != exclude).collect();
    let nterms = rng.gen_range(0..=max_terms);
    let mut p = BasePolynomial::zero(nbase);
    for _ in 0..nterms {
        let mut exps = vec![0u32; nbase];
        let degree = rng.gen_range(0..=max_degree);
        for _ in 0..degree {
            if let Some(&a) = vars.choose(rng) {
                exps[a] += 1;
            }
        }
        p = &p + &BasePolynomial::monomial(BaseMonomial(exps), small_rational(rng));
    }
    p
}

/// Fiber monomials of weight `<= bound` (componentwise), other than the constant,
/// avoiding fiber `exclude`.
pub fn monomials_up_to(weights: &[Weight], bound: &Weight, exclude: usize) -> Vec<FiberMonomial> {
    fn rec(weights: &[Weight], budget: &Weight, from: usize, exclude: usize, exps: &mut Vec<u32>, out: &mut Vec<FiberMonomial>) {
        for j in from..weights.len() {
            if j == exclude || !weights[j].leq(budget) {
                continue;
            }
            let rest = Weight(budget.0.iter().zip(&weights[j].0).map(|(b, w)| b - w).collect());
            exps[j] += 1;
            out.push(FiberMonomial(exps.clone()));
            rec(weights, &rest, j, exclude, exps, out);
            exps[j] -= 1;
        }
    }
    let mut out = Vec::new();
    rec(weights, bound, 0, exclude, &mut vec![0; weights.len()], &mut out);
    out
}

#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub axes: usize,
    pub max_base: usize,
    pub max_fiber: usize,
    pub max_degree: u32,
}

impl Shape {
    pub const SMALL: Shape = Shape { axes: 1, max_base: 3, max_fiber: 4, max_degree: 3 };
}

pub fn random_frame(rng: &mut ChaCha8Rng, shape: Shape) -> CoordinateFrame {
    let nbase = rng.gen_range(1..=shape.max_base);
    let nfiber = rng.gen_range(1..=shape.max_fiber);
    let base = (0..nbase).map(|a| BaseCoord { name: format!("x{a}"), vertical: false }).collect();
    let fibers = (0..nfiber)
        .map(|i| {
            let weight = if shape.axes == 1 {
                Weight::single(rng.gen_range(1..=shape.max_degree))
            } else {
                loop {
                    let w: Vec<u32> = (0..shape.axes).map(|_| rng.gen_range(0..=shape.max_degree)).collect();
                    let total: u32 = w.iter().sum();
                    if total > 0 && total <= shape.max_degree {
                        break Weight(w);
                    }
                }
            };
            FiberCoord { name: format!("X{i}"), weight }
        })
        .collect();
    CoordinateFrame::new(shape.axes, base, fibers).expect("random frame")
}

/// One invertible elementary change of coordinates and its inverse.
pub fn elementary(rng: &mut ChaCha8Rng, frame: &CoordinateFrame) -> (CoordinateMap, CoordinateMap) {
    let nb = frame.nbase();
    let nf = frame.nfiber();
    let id_base: Vec<BaseFunction> = (0..nb).map(|a| BaseFunction::var(nb, a)).collect();
    let id_fiber: Vec<WeightedPolynomial> = (0..nf).map(|i| WeightedPolynomial::fiber_var(nb, nf, i)).collect();
    let map = |b: Vec<BaseFunction>, f: Vec<WeightedPolynomial>| CoordinateMap::new(nb, nf, b, f).expect("shapes agree");
    match rng.gen_range(0..10) {
        // base shear x_a' = x_a + p(others)
        0 | 1 => {
            let a = rng.gen_range(0..nb);
            let p = BaseFunction::from_poly(base_poly(rng, nb, 2, 2, Some(a)));
            let (mut fwd, mut bwd) = (id_base.clone(), id_base);
            fwd[a] = &fwd[a] + &p;
            bwd[a] = &bwd[a] - &p;
            (map(fwd, id_fiber.clone()), map(bwd, id_fiber))
        }
        // base scaling
        2 => {
            let a = rng.gen_range(0..nb);
            let c = nonzero_rational(rng);
            let (mut fwd, mut bwd) = (id_base.clone(), id_base);
            fwd[a] = fwd[a].scale(&c);
            bwd[a] = bwd[a].scale(&(Rational::from_integer(1.into()) / c));
            (map(fwd, id_fiber.clone()), map(bwd, id_fiber))
        }
        // fiber scaling by a constant or a base variable
        3 | 4 => {
            let i = rng.gen_range(0..nf);
            let c = BaseFunction::constant(nb, nonzero_rational(rng));
            let f = if rng.gen_bool(0.4) { &c * &BaseFunction::var(nb, rng.gen_range(0..nb)) } else { c };
            let (mut fwd, mut bwd) = (id_fiber.clone(), id_fiber);
            fwd[i] = fwd[i].scale(&f);
            bwd[i] = bwd[i].scale(&f.recip().expect("nonzero"));
            (map(id_base.clone(), fwd), map(id_base, bwd))
        }
        // fiber shear X_i' = X_i + q(x, X_others), q of weight <= w_i
        _ => {
            let i = rng.gen_range(0..nf);
            let weights = frame.weights();
            let monos = monomials_up_to(&weights, &weights[i], i);
            let mut q = WeightedPolynomial::base(nf, BaseFunction::from_poly(base_poly(rng, nb, 2, 2, None)));
            for m in monos.choose_multiple(rng, 2) {
                let c = BaseFunction::from_poly(base_poly(rng, nb, 1, 2, None));
                q = &q + &WeightedPolynomial::term(m.clone(), c);
            }
            let (mut fwd, mut bwd) = (id_fiber.clone(), id_fiber);
            fwd[i] = &fwd[i] + &q;
            bwd[i] = &bwd[i] - &q;
            (map(id_base.clone(), fwd), map(id_base, bwd))
        }
    }
}

/// A random composition of `steps` elementary changes, with its inverse.
pub fn automorphism(rng: &mut ChaCha8Rng, frame: &CoordinateFrame, steps: usize) -> (CoordinateMap, CoordinateMap) {
    let id = CoordinateMap::identity(frame.nbase(), frame.nfiber());
    let (mut fwd, mut bwd) = (id.clone(), id);
    for _ in 0..steps {
        let (e, inv) = elementary(rng, frame);
        fwd = fwd.then(&e).expect("same frame");
        bwd = inv.then(&bwd).expect("same frame");
    }
    (fwd, bwd)
}

/// Charts `U`, `V` with `τ_UV` random and `τ_VU` its inverse.
pub fn two_chart_bundle(rng: &mut ChaCha8Rng, name: &str, frame: CoordinateFrame, steps: usize) -> FilteredBundleSpec {
    let (g, ginv) = automorphism(rng, &frame, steps);
    let mut atlas = Atlas::new(vec!["U".into(), "V".into()]).unwrap();
    atlas.add_transition("U", "V", g).unwrap();
    atlas.add_transition("V", "U", ginv).unwrap();
    FilteredBundleSpec::new(name, frame, atlas).unwrap()
}

/// Charts `A`, `B`, `C` with independent `τ_AB`, `τ_BC`, their composite `τ_AC`
/// and all inverses.
pub fn three_chart_bundle(rng: &mut ChaCha8Rng, name: &str, frame: CoordinateFrame, steps: usize) -> FilteredBundleSpec {
    let (ab, ba) = automorphism(rng, &frame, steps);
    let (bc, cb) = automorphism(rng, &frame, steps);
    let ac = ab.then(&bc).unwrap();
    let ca = cb.then(&ba).unwrap();
    let mut atlas = Atlas::new(vec!["A".into(), "B".into(), "C".into()]).unwrap();
    for (u, v, m) in [("A", "B", ab), ("B", "A", ba), ("B", "C", bc), ("C", "B", cb), ("A", "C", ac), ("C", "A", ca)] {
        atlas.add_transition(u, v, m).unwrap();
    }
    FilteredBundleSpec::new(name, frame, atlas).unwrap()
}

/// A weight-respecting map `E -> E` over a base automorphism; the fiber part need
/// not be invertible.
pub fn general_morphism(rng: &mut ChaCha8Rng, name: &str, bundle: &FilteredBundleSpec) -> FilteredMorphism {
    let frame = &bundle.frame;
    let (nb, nf) = (frame.nbase(), frame.nfiber());
    let weights = frame.weights();
    // triangular base map, so that the base Jacobian is invertible
    let base_rules = (0..nb)
        .map(|a| {
            let p = base_poly(rng, a, 2, 2, None).compose(nb, &(0..a).map(|b| BasePolynomial::var(nb, b)).collect::<Vec<_>>());
            BaseFunction::from_poly(&p + &BasePolynomial::var(nb, a).scale(&nonzero_rational(rng)))
        })
        .collect();
    let fiber_rules = (0..nf)
        .map(|i| {
            let mut monos = monomials_up_to(&weights, &weights[i], usize::MAX);
            monos.shuffle(rng);
            let mut p = WeightedPolynomial::base(nf, BaseFunction::from_poly(base_poly(rng, nb, 1, 1, None)));
            for m in monos.into_iter().take(3) {
                p = &p + &WeightedPolynomial::term(m, BaseFunction::from_poly(base_poly(rng, nb, 1, 2, None)));
            }
            p
        })
        .collect();
    let map = CoordinateMap::new(nb, nf, base_rules, fiber_rules).unwrap();
    FilteredMorphism::new(name, bundle, bundle, map).unwrap()
}

/// An automorphism `E -> E` in one chart.
pub fn invertible_morphism(rng: &mut ChaCha8Rng, name: &str, bundle: &FilteredBundleSpec, steps: usize) -> FilteredMorphism {
    let (map, _) = automorphism(rng, &bundle.frame, steps);
    FilteredMorphism::new(name, bundle, bundle, map).unwrap()
}

/// The seeded corpus used by the law and round-trip suites: single-axis bundles
/// with two or three charts, and a share of two-axis bundles.
pub fn corpus(seed: u64, n: usize) -> Vec<FilteredBundleSpec> {
    let mut r = rng(seed);
    (0..n)
        .map(|k| {
            let axes = if k % 5 == 4 { 2 } else { 1 };
            let frame = random_frame(&mut r, Shape { axes, ..Shape::SMALL });
            let steps = r.gen_range(1..=3);
            if k % 3 == 2 {
                three_chart_bundle(&mut r, &format!("R{k}"), frame, steps)
            } else {
                two_chart_bundle(&mut r, &format!("R{k}"), frame, steps)
            }
        })
        .collect()
}
