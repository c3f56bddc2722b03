use pebbling_core::class0::*;
use pebbling_core::generators::*;
use pebbling_core::solver::{is_solvable, Solvability};
use pebbling_core::SolverBudget;

#[test]
fn generalized_petersen_refuted() {
    let g = petersen_generalized(8, 2).unwrap();
    let hits = scan_snl(&g);
    assert!(!hits.is_empty());
    let h = hits[0];
    let SnlWitness::Witness { configuration, .. } = snl_witness(&g, h.u, h.v).unwrap() else { panic!() };
    assert!(configuration.size() >= 16);
    assert_eq!(is_solvable(&g, h.u, &configuration, &SolverBudget::default()).unwrap(), Solvability::Unsolvable);
}
