mod common;

use filtra::graded::{FiltrationPresentation, GradedError};

use common::*;

fn filtration(name: &str) -> FiltrationPresentation {
    match golden("filtrations.flt").get(name) {
        Some(filtra::frontend::Item::Filtration(p)) => p.clone(),
        other => panic!("{other:?}"),
    }
}

#[test]
fn ranks_of_examples() {
    assert_eq!(filtration("P").compute_rank().unwrap(), vec![1, 1]);
    assert_eq!(filtration("Q").compute_rank().unwrap(), vec![1, 1]);
    assert_eq!(filtration("Triv").compute_rank().unwrap(), vec![0, 0, 0]);
}

#[test]
fn generators_reconstruct_every_level() {
    for name in ["P", "Q", "Triv"] {
        let p = filtration(name);
        let gens = p.extract_homogeneous_generators().unwrap();
        assert!(p.reconstructs(&gens).unwrap(), "{name}");
        let rank = p.compute_rank().unwrap();
        assert_eq!(gens.len(), rank.iter().sum::<usize>());
    }
}

#[test]
fn dropping_a_generator_breaks_reconstruction() {
    let p = filtration("Q");
    let mut gens = p.extract_homogeneous_generators().unwrap();
    gens.pop();
    assert!(!p.reconstructs(&gens).unwrap());
}

#[test]
fn standard_presentations() {
    for rank in [vec![1], vec![2, 1], vec![0, 2], vec![1, 0, 1], vec![3, 3, 3]] {
        let p = FiltrationPresentation::standard(&rank);
        assert_eq!(p.compute_rank().unwrap(), rank);
        let gens = p.extract_homogeneous_generators().unwrap();
        assert!(p.reconstructs(&gens).unwrap());
    }
}

#[test]
fn bound_is_enforced() {
    let mut p = filtration("P");
    p.bound = 1;
    assert!(matches!(p.compute_rank(), Err(GradedError::DegreeBoundExceeded { .. })));
}

#[test]
fn malformed_presentations() {
    let mut p = filtration("P");
    p.levels.clear();
    assert_eq!(p.compute_rank(), Err(GradedError::NoLevels));
    let mut p = filtration("P");
    let z1 = p.levels[1][1].clone();
    p.levels[0].push(z1);
    assert_eq!(p.compute_rank(), Err(GradedError::NotConnected));
    let mut p = filtration("P");
    p.levels.swap(1, 2);
    assert_eq!(p.compute_rank(), Err(GradedError::NotNested(1)));
}
