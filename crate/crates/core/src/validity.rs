//! Exhaustive validity checks for weight functions on small graphs.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::config::Configuration;
use crate::graph::{Graph, Vertex};
use crate::rational::scale_to_integers;
use crate::search::{max_weighted_unsolvable, Goal, Search};
use crate::strategy::{Strategy, Support, WeightFunction};
use crate::{Error, SolverBudget};

/// Default vertex limit for exhaustive checks.
pub const BRUTEFORCE_MAX_VERTICES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validity {
    Valid,
    /// An unsolvable configuration with `w.p > w.1`.
    Invalid(Configuration),
    BudgetExceeded,
}

/// Searches the unsolvable configurations of `g` for one with `w.p > w.1`.
pub fn verify_validity_bruteforce(g: &Graph, w: &WeightFunction, budget: &SolverBudget) -> Result<Validity, Error> {
    verify_validity_bruteforce_limited(g, w, budget, BRUTEFORCE_MAX_VERTICES)
}

pub fn verify_validity_bruteforce_limited(
    g: &Graph,
    w: &WeightFunction,
    budget: &SolverBudget,
    max_vertices: usize,
) -> Result<Validity, Error> {
    if g.n() > max_vertices {
        return Err(Error::TooLarge(format!(
            "exhaustive validity check limited to {max_vertices} vertices, graph has {}",
            g.n()
        )));
    }
    if w.n() != g.n() {
        return Err(Error::ConfigurationLength { expected: g.n(), got: w.n() });
    }
    let (_, scaled) = scale_to_integers(w.weights())?;
    let limit: u128 = scaled.iter().try_fold(0u128, |a, &x| a.checked_add(x)).ok_or(Error::Overflow)?;
    Ok(match max_weighted_unsolvable(g, w.root(), &scaled, Goal::Exceed(limit), budget)? {
        Search::Done { value, witness } if value > limit => Validity::Invalid(witness),
        Search::Done { .. } => Validity::Valid,
        Search::BudgetExceeded { .. } => Validity::BudgetExceeded,
    })
}

/// Brute-forces the part of a strategy that has no structural argument.
///
/// With a template the base weights are checked on the template subgraph
/// (vertices renumbered, root first), which is enough for the whole graph.
/// Attachments are then checked structurally by the caller.
pub fn verify_strategy_bruteforce(g: &Graph, s: &Strategy, budget: &SolverBudget) -> Result<Validity, Error> {
    let base = s.base_weight();
    match &s.support {
        Support::Explicit { template: Some(edges) } => {
            let (sub, map) = subgraph(g, s.root(), edges)?;
            for v in 0..g.n() {
                if !map.contains_key(&v) && !num_traits::Zero::is_zero(base.get(v)) {
                    return Err(Error::InvalidWeights(format!("vertex {v} has weight but is not in the template")));
                }
            }
            let mut weights = alloc::vec![num_traits::Zero::zero(); sub.n()];
            for (&v, &i) in &map {
                weights[i] = base.get(v).clone();
            }
            let local = WeightFunction::new(0, weights)?;
            Ok(match verify_validity_bruteforce(&sub, &local, budget)? {
                Validity::Invalid(p) => {
                    let mut counts = alloc::vec![0; g.n()];
                    for (&v, &i) in &map {
                        counts[v] = p.get(i);
                    }
                    Validity::Invalid(Configuration::new(counts))
                }
                other => other,
            })
        }
        _ => verify_validity_bruteforce(g, &base, budget),
    }
}

/// Subgraph on the given edges, renumbered with `root` as vertex 0 and the
/// rest in increasing order. Every edge must exist in `g`.
pub fn subgraph(
    g: &Graph,
    root: Vertex,
    edges: &[(Vertex, Vertex)],
) -> Result<(Graph, BTreeMap<Vertex, usize>), Error> {
    let mut vertices: Vec<Vertex> = edges.iter().flat_map(|&(u, v)| [u, v]).filter(|&v| v != root).collect();
    vertices.sort_unstable();
    vertices.dedup();
    let map: BTreeMap<Vertex, usize> =
        core::iter::once(root).chain(vertices).enumerate().map(|(i, v)| (v, i)).collect();
    let mut local = Vec::with_capacity(edges.len());
    for &(u, v) in edges {
        if !g.has_edge(u, v) {
            return Err(Error::InvalidWeights(format!("template edge {u}-{v} is not in the graph")));
        }
        local.push((map[&u], map[&v]));
    }
    Ok((Graph::from_edges(map.len(), &local)?, map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;
    use crate::rational::int;
    use crate::strategy::cycle_tail_weights;

    fn wf(root: Vertex, xs: &[i64]) -> WeightFunction {
        WeightFunction::new(root, xs.iter().map(|&x| int(x)).collect()).unwrap()
    }

    #[test]
    fn path_counterexample() {
        let g = path(3).unwrap();
        let r = verify_validity_bruteforce(&g, &wf(0, &[0, 1, 3]), &SolverBudget::default()).unwrap();
        assert_eq!(r, Validity::Invalid(Configuration::new(alloc::vec![0, 0, 3])));
        let r = verify_validity_bruteforce(&g, &wf(0, &[0, 2, 1]), &SolverBudget::default()).unwrap();
        assert_eq!(r, Validity::Valid);
    }

    #[test]
    fn square_weights() {
        let (g, s) = cycle_tail_weights(2, 0).unwrap();
        let r = verify_validity_bruteforce(&g, &s.weight, &SolverBudget::default()).unwrap();
        assert_eq!(r, Validity::Valid);
        let c4 = cycle(4).unwrap();
        let r = verify_validity_bruteforce(&c4, &wf(0, &[0, 6, 4, 6]), &SolverBudget::default()).unwrap();
        assert_eq!(r, Validity::Valid);
    }

    #[test]
    fn guard() {
        let g = hypercube(4).unwrap();
        let w = WeightFunction::zero(16, 0).unwrap();
        assert!(matches!(verify_validity_bruteforce(&g, &w, &SolverBudget::default()), Err(Error::TooLarge(_))));
    }

    #[test]
    fn template_subgraph() {
        let g = cycle(5).unwrap();
        let (sub, map) = subgraph(&g, 2, &[(2, 3), (3, 4)]).unwrap();
        assert_eq!(sub.n(), 3);
        assert_eq!(map[&2], 0);
        assert!(subgraph(&g, 0, &[(0, 2)]).is_err());
    }
}
