//! The optimised solver against plain exhaustive search.

use pebbling_core::naive::{for_each_composition, NaiveSolver};
use pebbling_core::search::pebbling_number_rooted;
use pebbling_core::solver::{is_solvable, Solvability};
use pebbling_core::{replay, Configuration, Graph, SolverBudget};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn connected_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u32..1 << pairs.len())
        .filter_map(|mask| {
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| *e).collect();
            Graph::from_edges(n, &edges).ok()
        })
        .collect()
}

fn random_connected(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    loop {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(0.45) {
                    edges.push((u, v));
                }
            }
        }
        if let Ok(g) = Graph::from_edges(n, &edges) {
            return g;
        }
    }
}

/// Returns the number of disagreements on rooted pebbling numbers.
fn compare(g: &Graph) -> usize {
    (0..g.n())
        .filter(|&r| {
            let fast = pebbling_number_rooted(g, r, &SolverBudget::default()).unwrap().value().unwrap();
            fast != NaiveSolver::new(g, r).pebbling_number()
        })
        .count()
}

#[test]
fn all_graphs_up_to_five_vertices() {
    let mut checked = 0;
    for n in 1..=5 {
        for g in connected_graphs(n) {
            assert_eq!(compare(&g), 0, "{:?}", g.edges().collect::<Vec<_>>());
            checked += 1;
        }
    }
    // Labelled connected graphs on 1..=5 vertices.
    assert_eq!(checked, 1 + 1 + 4 + 38 + 728);
}

#[test]
fn random_six_vertex_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..200 {
        let g = random_connected(&mut rng, 6);
        assert_eq!(compare(&g), 0, "{:?}", g.edges().collect::<Vec<_>>());
    }
}

#[test]
fn configuration_level_agreement() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let g = random_connected(&mut rng, 5);
        let root = rng.gen_range(0..5);
        let mut naive = NaiveSolver::new(&g, root);
        for size in 0..=9 {
            for_each_composition(size, 5, &mut |c| {
                let p = Configuration::new(c.to_vec());
                let fast = is_solvable(&g, root, &p, &SolverBudget::default()).unwrap();
                assert_eq!(fast.is_solvable(), naive.is_solvable(c), "{c:?}");
                if let Solvability::Solvable(moves) = fast {
                    assert!(replay(&g, &p, &moves).unwrap().get(root) >= 1);
                }
            });
        }
    }
}
