mod common;

use filtra::bundle::{validate_bundle, FilteredMorphism};
use filtra::functor::{
    dual_vertical_lift, gr_bundle, gr_morphism, jet_prolong, linearise, tangent_lift, total_weight, vertical_lift,
    FunctorError,
};
use filtra::weighted::Weight;

use common::*;

#[test]
fn gr_fixes_graded_bundles() {
    let g = golden_bundle("deg2_gr.flt", "GrE");
    assert!(gr_bundle(&g).unwrap().equal_up_to_naming(&g));
    let e = golden_bundle("deg2.flt", "E");
    assert!(!gr_bundle(&e).unwrap().equal_up_to_naming(&e));
}

#[test]
fn output_names() {
    let e = golden_bundle("deg2.flt", "E");
    assert_eq!(tangent_lift(&e).unwrap().frame.fiber_names(), ["Y", "Z", "dx", "dY", "dZ"]);
    assert_eq!(vertical_lift(&e).unwrap().frame.fiber_names(), ["Y", "Z", "dY", "dZ"]);
    assert_eq!(dual_vertical_lift(&e).unwrap().frame.fiber_names(), ["Y", "Z", "pY", "pZ"]);
    assert_eq!(linearise(&e).unwrap().frame.fiber_names(), ["Y", "dY", "dZ"]);
    let j = jet_prolong(&golden_bundle("jet_scalar.flt", "E"), 2).unwrap();
    assert_eq!(j.frame.fiber_names(), ["y;x", "y;x.x"]);
    assert_eq!(j.name, "J2_E");
}

#[test]
fn lin_lowers_the_degree() {
    let e = golden_bundle("deg2.flt", "E");
    let lin = linearise(&e).unwrap();
    assert_eq!(lin.frame.degree(), &Weight(vec![1, 1]));
    assert_eq!(total_weight(&lin).unwrap().frame.degree(), &Weight(vec![2]));
}

#[test]
fn single_axis_constructions_reject_two_axes() {
    let j = jet_prolong(&golden_bundle("jet_scalar.flt", "E"), 1).unwrap();
    assert_eq!(dual_vertical_lift(&j).unwrap_err(), FunctorError::NotSingleAxis(2));
    assert_eq!(linearise(&j).unwrap_err(), FunctorError::NotSingleAxis(2));
}

#[test]
fn totw_is_identity_on_one_axis() {
    for b in corpus(11, 20).into_iter().filter(|b| b.frame.axes() == 1) {
        assert!(total_weight(&b).unwrap().equal_up_to_naming(&b), "{}", b.name);
    }
}

#[test]
fn two_axis_outputs_validate() {
    for b in corpus(12, 25).into_iter().filter(|b| b.frame.axes() == 2) {
        for out in [gr_bundle(&b), tangent_lift(&b), jet_prolong(&b, 1), total_weight(&b)] {
            let out = out.unwrap();
            assert!(validate_bundle(&out).unwrap().passed(), "{}", out.name);
        }
    }
}

#[test]
fn gr_of_automorphism_is_invertible() {
    let mut r = rng(5);
    for b in corpus(13, 10) {
        let (fwd, bwd) = automorphism(&mut r, &b.frame, 3);
        let f = FilteredMorphism::new("f", &b, &b, fwd).unwrap();
        let g = FilteredMorphism::new("g", &b, &b, bwd).unwrap();
        assert!(f.then(&g).unwrap().is_identity());
        let round = gr_morphism(&f).unwrap().then(&gr_morphism(&g).unwrap()).unwrap();
        assert!(round.is_identity(), "{}", b.name);
    }
}
