//! Invariants of moves, solvability, generators and weight functions.

use pebbling_core::generators::*;
use pebbling_core::rational::{int, ratio};
use pebbling_core::solver::{is_solvable, Solvability};
use pebbling_core::strategy::{combine, cycle_tail_weights, WeightFunction};
use pebbling_core::validity::{verify_validity_bruteforce, Validity};
use pebbling_core::{apply_move, Configuration, Graph, PebblingMove, SolverBudget};
use proptest::prelude::*;

fn graph_strategy() -> impl Strategy<Value = Graph> {
    (2usize..=6)
        .prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (Just(n), proptest::collection::vec(any::<bool>(), pairs))
        })
        .prop_filter_map("connected", |(n, bits)| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges: Vec<_> = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
            Graph::from_edges(n, &edges).ok()
        })
}

fn with_config() -> impl Strategy<Value = (Graph, usize, Vec<u32>)> {
    graph_strategy().prop_flat_map(|g| {
        let n = g.n();
        (Just(g), 0..n, proptest::collection::vec(0u32..5, n))
    })
}

fn solvable(g: &Graph, r: usize, c: &[u32]) -> bool {
    is_solvable(g, r, &Configuration::new(c.to_vec()), &SolverBudget::default()).unwrap().is_solvable()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn adding_a_pebble_keeps_solvable((g, r, c) in with_config(), v in 0usize..6) {
        let v = v % g.n();
        let mut more = c.clone();
        more[v] += 1;
        prop_assert!(!solvable(&g, r, &c) || solvable(&g, r, &more));
    }

    #[test]
    fn moves_lose_one_pebble((g, _r, c) in with_config(), pick in 0usize..64) {
        let legal: Vec<PebblingMove> = g
            .edges()
            .flat_map(|(u, v)| [PebblingMove::new(u, v), PebblingMove::new(v, u)])
            .filter(|m| c[m.from] >= 2)
            .collect();
        let p = Configuration::new(c.clone());
        if legal.is_empty() {
            return Ok(());
        }
        let m = legal[pick % legal.len()];
        let q = apply_move(&g, &p, m).unwrap();
        prop_assert_eq!(q.size() + 1, p.size());
        prop_assert_eq!(q.get(m.to), p.get(m.to) + 1);
        // A move never helps an unsolvable configuration.
        prop_assert!(solvable(&g, 0, p.counts()) || !solvable(&g, 0, q.counts()));
    }

    #[test]
    fn witnesses_replay((g, r, c) in with_config()) {
        let p = Configuration::new(c);
        if let Solvability::Solvable(moves) = is_solvable(&g, r, &p, &SolverBudget::default()).unwrap() {
            let end = pebbling_core::replay(&g, &p, &moves).unwrap();
            prop_assert!(end.get(r) >= 1);
        }
    }

    #[test]
    fn clone_preserves_distances(g in graph_strategy(), v in 0usize..6) {
        let v = v % g.n();
        let h = clone_vertex(&g, v).unwrap();
        let n = g.n();
        let before = g.distance_matrix();
        let after = h.distance_matrix();
        for a in 0..n {
            for b in 0..n {
                prop_assert_eq!(before[a][b], after[a][b]);
            }
            if a != v {
                prop_assert_eq!(after[n][a], before[v][a]);
            }
        }
        prop_assert_eq!(after[n][v], if g.degree(v) > 0 { 2 } else { usize::MAX });
    }

    #[test]
    fn scaled_valid_weights_stay_valid(k in 1i64..6, d in 1i64..4) {
        let (g, s) = cycle_tail_weights(2, 1).unwrap();
        let w = s.weight.scale(&ratio(k, d)).unwrap();
        prop_assert_eq!(verify_validity_bruteforce(&g, &w, &SolverBudget::default()).unwrap(), Validity::Valid);
    }

    #[test]
    fn conic_combinations_stay_valid(a in 0i64..4, b in 1i64..4) {
        let g = cycle(5).unwrap();
        let x = WeightFunction::new(0, vec![int(0), int(4), int(2), int(1), int(0)]).unwrap();
        let y = WeightFunction::new(0, vec![int(0), int(0), int(1), int(2), int(4)]).unwrap();
        let w = combine(&[(&x, int(a)), (&y, int(b))]).unwrap();
        prop_assert_eq!(verify_validity_bruteforce(&g, &w, &SolverBudget::default()).unwrap(), Validity::Valid);
    }
}

#[test]
fn family_edge_counts() {
    for p in 1..=6 {
        for q in 1..=6 {
            let f = family_f(p, q).unwrap();
            assert_eq!(f.edge_count(), 2 * f.n() - 5);
            assert_eq!(f.diameter(), 2);
            for r in 1..=6 {
                let g = family_g(p, q, r).unwrap();
                assert_eq!(g.edge_count(), 2 * g.n() - 5);
            }
        }
    }
}

#[test]
fn generalized_petersen_is_cubic() {
    for n in 5..=12 {
        for k in 1..n / 2 + usize::from(n % 2 == 1) {
            let Ok(g) = petersen_generalized(n, k) else { continue };
            assert!((0..g.n()).all(|v| g.degree(v) == 3), "P({n},{k})");
        }
    }
}

#[test]
fn every_small_cycle_tail_is_valid() {
    for t in 2..=4 {
        for tail in 0.. {
            if 2 * t + 1 + tail > 9 {
                break;
            }
            let (g, s) = cycle_tail_weights(t, tail).unwrap();
            let r = verify_validity_bruteforce(&g, &s.weight, &SolverBudget::states(2_000_000_000)).unwrap();
            assert_eq!(r, Validity::Valid, "t = {t}, tail = {tail}");
        }
    }
}

#[test]
fn perturbed_cycle_tail_is_invalid() {
    let (g, s) = cycle_tail_weights(2, 0).unwrap();
    let mut w = s.weight.weights().to_vec();
    w[1] = w[1].clone() * int(4);
    let w = WeightFunction::new(0, w).unwrap();
    assert!(matches!(verify_validity_bruteforce(&g, &w, &SolverBudget::default()).unwrap(), Validity::Invalid(_)));
}
