//! Tree-strategy linear programs.
//!
//! Every valid strategy `w` gives the constraint `w.p <= w.1` on unsolvable
//! configurations, so maximising `sum p(v)` under a family of them bounds
//! `pi(G, r) - 1`. The dual multipliers combine the strategies into one
//! weight function whose covering bound reproduces the LP bound.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::budget::Exhausted;
use crate::certificate::{Certificate, CertificateEntry};
use crate::config::Configuration;
use crate::graph::{Graph, Vertex};
use crate::rational::Rational;
use crate::simplex::{Lp, LpOutcome, LpSolution};
use crate::strategy::{combine, covering_bound, validate_tree_strategy, Strategy, StrategyKind, WeightFunction};
use crate::{Error, SolverBudget};

/// Default vertex limit for the integer program.
pub const ILP_MAX_VERTICES: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_trees: usize,
    pub max_depth: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_trees: 400, max_depth: 64 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategySet {
    pub root: Vertex,
    pub strategies: Vec<Strategy>,
    /// Some candidates were dropped to respect `max_trees`.
    pub truncated: bool,
}

impl StrategySet {
    /// Checks every member is a valid tree strategy for `root`.
    pub fn new(g: &Graph, root: Vertex, strategies: Vec<Strategy>) -> Result<Self, Error> {
        g.check_vertex(root)?;
        for (i, s) in strategies.iter().enumerate() {
            if s.root() != root {
                return Err(Error::RootMismatch(root, s.root()));
            }
            validate_tree_strategy(g, s).map_err(|v| Error::InvalidWeights(format!("strategy {i}: {v}")))?;
        }
        Ok(StrategySet { root, strategies, truncated: false })
    }
}

/// Deterministic, de-duplicated basic tree strategies: each branch of every
/// shortest-path tree and the whole tree, then every simple path from the
/// root (up to `max_depth` edges) in order of length. Each branch is scaled
/// so its deepest vertex has weight 1. Trees may take at most half of
/// `max_trees` before paths are added, so neither kind crowds out the other.
pub fn enumerate_tree_strategies(g: &Graph, root: Vertex, limits: Limits) -> Result<StrategySet, Error> {
    g.check_vertex(root)?;
    let limit = limits.max_trees.max(1);
    let mut out = Collector { n: g.n(), root, limit, seen: BTreeSet::new(), list: Vec::new(), truncated: false };
    let mut trees = ShortestTrees::new(g, root, limits.max_depth);
    trees.fill(&mut out, limit.div_ceil(2));

    // Simple paths, breadth first in vertex order.
    let mut layer: Vec<Vec<Vertex>> = vec![vec![root]];
    while !layer.is_empty() && !out.truncated {
        let mut next = Vec::new();
        for path in &layer {
            if path.len() > limits.max_depth {
                continue;
            }
            for &u in g.neighbors(*path.last().unwrap()) {
                if path.contains(&u) {
                    continue;
                }
                let mut longer = path.clone();
                longer.push(u);
                out.add_tree(&longer.windows(2).map(|w| (w[1], w[0])).collect());
                if out.truncated {
                    break;
                }
                next.push(longer);
            }
        }
        layer = next;
    }

    trees.fill(&mut out, limit);
    Ok(StrategySet { root, strategies: out.list, truncated: out.truncated || !trees.done })
}

/// Shortest-path trees, each vertex picking a parent one step closer, in
/// mixed-radix order over the parent choices.
struct ShortestTrees<'g> {
    g: &'g Graph,
    root: Vertex,
    choices: Vec<(Vertex, Vec<Vertex>)>,
    digits: Vec<usize>,
    done: bool,
}

impl<'g> ShortestTrees<'g> {
    fn new(g: &'g Graph, root: Vertex, max_depth: usize) -> Self {
        let dist = g.bfs(root);
        let choices: Vec<(Vertex, Vec<Vertex>)> = (0..g.n())
            .filter(|&v| v != root && dist[v] <= max_depth)
            .map(|v| (v, g.neighbors(v).iter().copied().filter(|&u| dist[u] + 1 == dist[v]).collect()))
            .collect();
        let digits = vec![0; choices.len()];
        ShortestTrees { g, root, choices, digits, done: false }
    }

    /// Adds trees until `out` holds `upto` strategies or the trees run out.
    fn fill(&mut self, out: &mut Collector, upto: usize) {
        while !self.done && out.list.len() < upto && !out.truncated {
            let parent: BTreeMap<Vertex, Vertex> =
                self.choices.iter().zip(&self.digits).map(|((v, ps), &d)| (*v, ps[d])).collect();
            for &child in self.g.neighbors(self.root) {
                if !parent.contains_key(&child) {
                    continue;
                }
                let branch: BTreeMap<Vertex, Vertex> = parent
                    .iter()
                    .filter(|(&v, _)| branch_of(&parent, self.root, v) == child)
                    .map(|(&v, &p)| (v, p))
                    .collect();
                out.add_tree(&branch);
            }
            out.add_tree(&parent);
            if out.truncated {
                return;
            }
            self.done = !self.advance();
        }
    }

    fn advance(&mut self) -> bool {
        for (i, (_, ps)) in self.choices.iter().enumerate() {
            self.digits[i] += 1;
            if self.digits[i] < ps.len() {
                return true;
            }
            self.digits[i] = 0;
        }
        false
    }
}

fn branch_of(parent: &BTreeMap<Vertex, Vertex>, root: Vertex, mut v: Vertex) -> Vertex {
    while parent[&v] != root {
        v = parent[&v];
    }
    v
}

struct Collector {
    n: usize,
    root: Vertex,
    limit: usize,
    seen: BTreeSet<Vec<Rational>>,
    list: Vec<Strategy>,
    truncated: bool,
}

impl Collector {
    /// Basic weights on a tree given as child -> parent: each root branch
    /// gets `2^(h - depth)` with `h` its largest depth.
    fn add_tree(&mut self, parent: &BTreeMap<Vertex, Vertex>) {
        if parent.is_empty() {
            return;
        }
        let depth = |mut v: Vertex| {
            let mut d = 0u32;
            while v != self.root {
                v = parent[&v];
                d += 1;
            }
            d
        };
        let mut height: BTreeMap<Vertex, u32> = BTreeMap::new();
        for &v in parent.keys() {
            let b = branch_of(parent, self.root, v);
            let h = height.entry(b).or_insert(0);
            *h = (*h).max(depth(v));
        }
        let mut weights = vec![Rational::zero(); self.n];
        for &v in parent.keys() {
            let h = height[&branch_of(parent, self.root, v)];
            weights[v] = Rational::from_integer(BigInt::one() << (h - depth(v)));
        }
        if self.seen.contains(&weights) {
            return;
        }
        if self.list.len() >= self.limit {
            self.truncated = true;
            return;
        }
        self.seen.insert(weights.clone());
        let w = WeightFunction::new(self.root, weights).expect("root weight is zero");
        self.list.push(Strategy::tree(StrategyKind::TreeBasic, w, parent.clone()));
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpResult {
    pub root: Vertex,
    /// The relaxation optimum.
    pub optimum: Rational,
    /// `floor(optimum) + 1`.
    pub bound: u64,
    /// Optimal fractional configuration, zero on the root.
    pub primal: Vec<Rational>,
    /// One multiplier per strategy.
    pub dual_weights: Vec<Rational>,
    pub strategies: Vec<Strategy>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpBound {
    Bound(LpResult),
    /// No strategy puts weight on `uncovered`, so the LP is unbounded.
    NoBound {
        uncovered: Vertex,
    },
}

fn columns(n: usize, root: Vertex) -> Vec<Vertex> {
    (0..n).filter(|&v| v != root).collect()
}

fn build_lp(n: usize, root: Vertex, strategies: &[Strategy]) -> Result<Lp, Error> {
    let cols = columns(n, root);
    let a: Vec<Vec<Rational>> =
        strategies.iter().map(|s| cols.iter().map(|&v| s.weight.get(v).clone()).collect()).collect();
    let b: Vec<Rational> = strategies.iter().map(|s| s.weight.total()).collect();
    Lp::new(a, b, vec![Rational::one(); cols.len()])
}

fn uncovered(n: usize, root: Vertex, strategies: &[Strategy]) -> Option<Vertex> {
    columns(n, root).into_iter().find(|&v| strategies.iter().all(|s| s.weight.get(v).is_zero()))
}

pub fn lp_relaxation_bound(g: &Graph, root: Vertex, set: &StrategySet) -> Result<LpBound, Error> {
    g.check_vertex(root)?;
    if set.root != root {
        return Err(Error::RootMismatch(root, set.root));
    }
    if let Some(v) = uncovered(g.n(), root, &set.strategies) {
        return Ok(LpBound::NoBound { uncovered: v });
    }
    let cols = columns(g.n(), root);
    let lp = build_lp(g.n(), root, &set.strategies)?;
    match lp.solve() {
        LpOutcome::Unbounded { column } => Ok(LpBound::NoBound { uncovered: cols[column] }),
        LpOutcome::Optimal(sol) => {
            let bound = floor_plus_one(&sol.value)?;
            let mut primal = vec![Rational::zero(); g.n()];
            for (j, &v) in cols.iter().enumerate() {
                primal[v] = sol.primal[j].clone();
            }
            Ok(LpBound::Bound(LpResult {
                root,
                optimum: sol.value,
                bound,
                primal,
                dual_weights: sol.dual,
                strategies: set.strategies.clone(),
            }))
        }
    }
}

fn floor_plus_one(x: &Rational) -> Result<u64, Error> {
    (x.floor().to_integer() + BigInt::one()).to_u64().ok_or(Error::Overflow)
}

impl LpResult {
    /// `sum y_i w_i` over strategies with positive multiplier.
    pub fn combined(&self) -> Result<WeightFunction, Error> {
        let pairs: Vec<(&WeightFunction, Rational)> = self
            .strategies
            .iter()
            .zip(&self.dual_weights)
            .filter(|(_, y)| y.is_positive())
            .map(|(s, y)| (&s.weight, y.clone()))
            .collect();
        combine(&pairs)
    }

    /// Zero duality gap, and the dual combination's covering bound equals
    /// `bound`.
    pub fn certifies(&self) -> Result<bool, Error> {
        let n = self.primal.len();
        let lp = build_lp(n, self.root, &self.strategies)?;
        let cols = columns(n, self.root);
        let sol = LpSolution {
            value: self.optimum.clone(),
            primal: cols.iter().map(|&v| self.primal[v].clone()).collect(),
            dual: self.dual_weights.clone(),
        };
        if !lp.certifies(&sol) {
            return Ok(false);
        }
        Ok(covering_bound(&self.combined()?)?.bound == self.bound)
    }

    /// The dual combination as a certificate for `g`.
    pub fn to_certificate(&self, g: &Graph) -> Certificate {
        let entries = self
            .strategies
            .iter()
            .zip(&self.dual_weights)
            .filter(|(_, y)| y.is_positive())
            .map(|(s, y)| CertificateEntry { strategy: s.clone(), coefficient: y.clone() })
            .collect();
        Certificate { graph: g.clone(), root: self.root, entries, claimed_bound: self.bound }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IlpOutcome {
    /// Exact integer optimum `z` with a configuration attaining it.
    Exact {
        z: u64,
        witness: Configuration,
    },
    /// The optimum lies in `lower..=upper`.
    BudgetExceeded {
        lower: u64,
        upper: u64,
        witness: Configuration,
    },
    NoBound {
        uncovered: Vertex,
    },
}

/// Integer optimum of the strategy program by branch and bound on the LP.
pub fn ilp_bound(g: &Graph, root: Vertex, set: &StrategySet, budget: &SolverBudget) -> Result<IlpOutcome, Error> {
    ilp_bound_limited(g, root, set, budget, ILP_MAX_VERTICES)
}

pub fn ilp_bound_limited(
    g: &Graph,
    root: Vertex,
    set: &StrategySet,
    budget: &SolverBudget,
    max_vertices: usize,
) -> Result<IlpOutcome, Error> {
    g.check_vertex(root)?;
    if g.n() > max_vertices {
        return Err(Error::TooLarge(format!("integer program limited to {max_vertices} vertices")));
    }
    if let Some(v) = uncovered(g.n(), root, &set.strategies) {
        return Ok(IlpOutcome::NoBound { uncovered: v });
    }
    let base = build_lp(g.n(), root, &set.strategies)?;
    let cols = columns(g.n(), root);
    let mut bb = IlpSearch {
        base,
        best: BigInt::zero(),
        best_x: vec![BigInt::zero(); cols.len()],
        meter: budget.meter(),
        root_upper: None,
    };
    let lo = vec![BigInt::zero(); cols.len()];
    let hi = vec![None; cols.len()];
    let finished = bb.branch(&lo, &hi);
    let witness = {
        let mut counts = vec![0u32; g.n()];
        for (j, &v) in cols.iter().enumerate() {
            counts[v] = bb.best_x[j].to_u32().ok_or(Error::Overflow)?;
        }
        Configuration::new(counts)
    };
    let z = bb.best.to_u64().ok_or(Error::Overflow)?;
    Ok(match finished {
        Ok(()) => IlpOutcome::Exact { z, witness },
        Err(Exhausted) => {
            let upper = bb.root_upper.as_ref().and_then(|u| u.to_u64()).unwrap_or(u64::MAX).max(z);
            IlpOutcome::BudgetExceeded { lower: z, upper, witness }
        }
    })
}

struct IlpSearch {
    base: Lp,
    best: BigInt,
    best_x: Vec<BigInt>,
    meter: crate::budget::Meter,
    root_upper: Option<BigInt>,
}

impl IlpSearch {
    /// Variables are boxed into `lo[j] <= x_j <= hi[j]`. Shifting by `lo`
    /// keeps the right-hand side nonnegative unless the box is infeasible,
    /// since every constraint coefficient is nonnegative.
    fn branch(&mut self, lo: &[BigInt], hi: &[Option<BigInt>]) -> Result<(), Exhausted> {
        if self.root_upper.as_ref() == Some(&self.best) {
            // The root relaxation's floor is attained.
            return Ok(());
        }
        self.meter.tick()?;
        let cols = lo.len();
        let mut a = self.base.a.clone();
        let mut b = Vec::with_capacity(a.len() + cols);
        for (row, rhs) in a.iter().zip(&self.base.b) {
            let used: Rational = row.iter().zip(lo).map(|(x, l)| x * Rational::from_integer(l.clone())).sum();
            let rest = rhs - used;
            if rest.is_negative() {
                return Ok(());
            }
            b.push(rest);
        }
        for j in 0..cols {
            if let Some(h) = &hi[j] {
                if h < &lo[j] {
                    return Ok(());
                }
                let mut row = vec![Rational::zero(); cols];
                row[j] = Rational::one();
                a.push(row);
                b.push(Rational::from_integer(h - &lo[j]));
            }
        }
        let shift: BigInt = lo.iter().sum();
        let lp = Lp::new(a, b, self.base.c.clone()).expect("shape and sign checked");
        let sol = match lp.solve() {
            LpOutcome::Optimal(s) => s,
            LpOutcome::Unbounded { .. } => return Ok(()),
        };
        let upper = sol.value.floor().to_integer() + &shift;
        if self.root_upper.is_none() {
            self.root_upper = Some(upper.clone());
        }
        if upper <= self.best {
            return Ok(());
        }
        let x: Vec<Rational> = sol.primal.iter().zip(lo).map(|(x, l)| x + Rational::from_integer(l.clone())).collect();
        match x.iter().position(|v| !v.is_integer()) {
            None => {
                let value: BigInt = x.iter().map(|v| v.to_integer()).sum();
                if value > self.best {
                    self.best = value;
                    self.best_x = x.iter().map(|v| v.to_integer()).collect();
                }
                Ok(())
            }
            Some(j) => {
                let f = x[j].floor().to_integer();
                let mut up = lo.to_vec();
                up[j] = &f + BigInt::one();
                self.branch(&up, hi)?;
                let mut down = hi.to_vec();
                down[j] = Some(f);
                self.branch(lo, &down)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;
    use crate::rational::int;

    fn set(g: &Graph, root: Vertex) -> StrategySet {
        enumerate_tree_strategies(g, root, Limits::default()).unwrap()
    }

    #[test]
    fn path_full_strategy() {
        let g = path(4).unwrap();
        let s = set(&g, 0);
        assert!(s.strategies.iter().any(|t| t.weight.weights() == [int(0), int(4), int(2), int(1)]));
        for n in 2..=5 {
            let g = path(n).unwrap();
            let LpBound::Bound(r) = lp_relaxation_bound(&g, 0, &set(&g, 0)).unwrap() else { panic!() };
            assert_eq!(r.optimum, int((1 << (n - 1)) - 1));
            assert_eq!(r.bound, 1 << (n - 1));
            assert!(r.certifies().unwrap());
        }
    }

    #[test]
    fn five_cycle_bound() {
        let g = cycle(5).unwrap();
        let s = set(&g, 0);
        let long_paths = s.strategies.iter().filter(|t| t.weight.support().len() == 3).count();
        assert!(long_paths >= 2);
        let LpBound::Bound(r) = lp_relaxation_bound(&g, 0, &s).unwrap() else { panic!() };
        assert_eq!(r.bound, 5);
        assert!(r.certifies().unwrap());
        match ilp_bound(&g, 0, &s, &SolverBudget::default()).unwrap() {
            IlpOutcome::Exact { z, witness } => {
                assert_eq!(z, 4);
                assert_eq!(witness.size(), 4);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn uncovered_vertex() {
        let g = path(3).unwrap();
        let only = StrategySet::new(
            &g,
            0,
            vec![Strategy::tree(
                StrategyKind::TreeBasic,
                WeightFunction::new(0, vec![int(0), int(1), int(0)]).unwrap(),
                BTreeMap::from([(1, 0)]),
            )],
        )
        .unwrap();
        assert_eq!(lp_relaxation_bound(&g, 0, &only).unwrap(), LpBound::NoBound { uncovered: 2 });
    }

    #[test]
    fn small_ilp() {
        let g = path(3).unwrap();
        let s = set(&g, 0);
        match ilp_bound(&g, 0, &s, &SolverBudget::default()).unwrap() {
            IlpOutcome::Exact { z, witness } => {
                assert_eq!(z, 3);
                assert_eq!(witness.counts(), [0, 0, 3]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn triangle_normalised() {
        let g = complete(3).unwrap();
        let s = set(&g, 0);
        for t in &s.strategies {
            let min = t.weight.support().into_iter().map(|v| t.weight.get(v).clone()).min().unwrap();
            assert_eq!(min, int(1));
        }
    }
}
