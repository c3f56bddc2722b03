//! Class 0 families built by cloning, and the edge bounds they meet.

use pebbling_core::class0::*;
use pebbling_core::generators::*;
use pebbling_core::search::{is_class0, Class0};
use pebbling_core::{Graph, SolverBudget};

fn budget() -> SolverBudget {
    SolverBudget::states(500_000_000)
}

fn members() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for p in 1..=6 {
        for q in p..=6 {
            let g = family_f(p, q).unwrap();
            if g.n() <= 10 {
                out.push((format!("F({p},{q})"), g));
            }
            for r in q..=6 {
                let g = family_g(p, q, r).unwrap();
                if g.n() <= 10 {
                    out.push((format!("G({p},{q},{r})"), g));
                }
            }
        }
    }
    out
}

#[test]
fn families_arise_by_cloning() {
    // Cloning a subdivision vertex lengthens one parameter.
    let c5 = family_f(1, 1).unwrap();
    assert!(isomorphism(&c5, &cycle(5).unwrap()).is_some());
    let f21 = clone_vertex(&c5, 3).unwrap();
    assert!(isomorphism(&f21, &family_f(2, 1).unwrap()).is_some());
    let g111 = family_g(1, 1, 1).unwrap();
    let g211 = clone_vertex(&g111, 4).unwrap();
    assert!(isomorphism(&g211, &family_g(2, 1, 1).unwrap()).is_some());
}

#[test]
fn small_family_members_are_class0() {
    for (name, g) in members() {
        assert_eq!(is_class0(&g, &budget()).unwrap(), Class0::Yes, "{name}");
    }
}

#[test]
fn family_members_meet_the_edge_bound_with_equality() {
    for (name, g) in members() {
        assert_eq!(g.diameter(), 2, "{name}");
        assert!(g.cut_vertices().is_empty(), "{name}");
        assert_eq!(g.edge_count(), 2 * g.n() - 5, "{name}");
        let verdicts = audit_edge_bounds(&g);
        assert!(verdicts.iter().all(|v| v.status != Status::Fail), "{name}");
        assert!(classify_equality_diam2(&g).is_some(), "{name}");
    }
}

#[test]
fn petersen_is_an_equality_case() {
    let g = petersen_generalized(5, 2).unwrap();
    assert_eq!(g.edge_count(), 2 * g.n() - 5);
    assert_eq!(g.diameter(), 2);
    assert!(g.cut_vertices().is_empty());
    assert_eq!(classify_equality_diam2(&g), Some(EqualityClass::Petersen));
}

#[test]
fn sparse_graphs_are_refuted() {
    // Below the edge bound the audit must not report Class 0.
    for g in [path(5).unwrap(), cycle(6).unwrap(), family_f(1, 1).unwrap()] {
        let report = refute_class0(&g, &budget()).unwrap();
        let class0 = is_class0(&g, &budget()).unwrap() == Class0::Yes;
        assert_eq!(class0, !matches!(report.conclusion, Conclusion::NotClass0 { .. }));
    }
}

#[test]
fn larger_generalized_petersen_graphs_have_snl_hits() {
    for n in 8..=12 {
        let g = petersen_generalized(n, 2).unwrap();
        assert!(!scan_snl(&g).is_empty(), "P({n},2)");
    }
}
