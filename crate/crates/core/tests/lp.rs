//! The strategy LP and its integer program bracket the pebbling number.

use pebbling_core::generators::standard_graphs;
use pebbling_core::lp::*;
use pebbling_core::rational::floor_u64;
use pebbling_core::search::pebbling_number_rooted;
use pebbling_core::SolverBudget;

#[test]
fn sandwich_on_small_generator_graphs() {
    let budget = SolverBudget::states(200_000_000);
    for (name, g) in standard_graphs(8) {
        for root in 0..g.n() {
            let set = enumerate_tree_strategies(&g, root, Limits::default()).unwrap();
            let LpBound::Bound(lp) = lp_relaxation_bound(&g, root, &set).unwrap() else {
                panic!("{name} root {root}: no bound");
            };
            assert!(lp.certifies().unwrap(), "{name} root {root}");
            let IlpOutcome::Exact { z, .. } = ilp_bound(&g, root, &set, &budget).unwrap() else {
                panic!("{name} root {root}: integer program unfinished");
            };
            let pi = pebbling_number_rooted(&g, root, &budget).unwrap().value().unwrap();
            let zhat = floor_u64(&lp.optimum).unwrap();
            assert!(pi <= z + 1 && z <= zhat, "{name} root {root}: {pi} {z} {zhat}");
        }
    }
}
