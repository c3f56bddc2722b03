//! Branch and bound over unsolvable configurations.
//!
//! Maximises `sum W(v) p(v)` over root-unsolvable configurations `p`. Two
//! facts bound the space:
//!
//! * a vertex at distance `d` holding `2^d` pebbles solves alone by walking
//!   them down a shortest path, so `p(v) <= 2^d - 1`;
//! * the breadth-first tree with weights `2^(D - d(v))` is a tree strategy,
//!   so every unsolvable `p` satisfies `sum w(v) p(v) <= sum w(v)`.
//!
//! The second is a knapsack constraint; a few root paths, which are also tree
//! strategies, add more. The tightest fractional relaxation gives the
//! pruning bound. Vertices are branched nearest the root first. Unsolvability
//! is downward closed, so at each level a binary search shrinks every
//! remaining cap to the largest count still unsolvable beside the fixed
//! prefix, and counts at the branching vertex are tried in decreasing order
//! until the bound cuts them off.

use alloc::vec;
use alloc::vec::Vec;

use crate::budget::{Exhausted, Meter};
use crate::config::Configuration;
use crate::graph::{Graph, Vertex};
use crate::solver::Solver;
use crate::{Error, SolverBudget};

/// Result of a bounded search for a heavy unsolvable configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Search {
    /// `value` is the exact optimum (or, in threshold mode, a value above
    /// the threshold) and `witness` attains it.
    Done { value: u128, witness: Configuration },
    /// Budget ran out. `witness` is the best unsolvable configuration found
    /// and `upper` bounds the optimum from above.
    BudgetExceeded { value: u128, witness: Configuration, upper: u128 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Goal {
    /// Find the true maximum.
    Maximize,
    /// Stop at the first unsolvable configuration with value above the
    /// threshold. `Done` with a value at most the threshold proves none exists.
    Exceed(u128),
}

/// Maximum of `sum weights[v] p(v)` over `root`-unsolvable `p`.
pub fn max_weighted_unsolvable(
    g: &Graph,
    root: Vertex,
    weights: &[u128],
    goal: Goal,
    budget: &SolverBudget,
) -> Result<Search, Error> {
    let mut meter = budget.meter();
    let mut engine = Engine::new(g, root, weights)?;
    engine.run(goal, &mut meter)
}

/// Extra path constraints per vertex of the graph.
const PATHS_PER_VERTEX: usize = 4;

/// A valid tree-strategy inequality `sum omega(v) p(v) <= total` and the
/// weighted vertices sorted by value per unit of `omega` (free ones first).
struct Knapsack {
    omega: Vec<u128>,
    total: u128,
    order: Vec<Vertex>,
}

impl Knapsack {
    fn new(omega: Vec<u128>, weights: &[u128]) -> Self {
        let total = omega.iter().sum();
        let mut order: Vec<Vertex> = (0..omega.len()).filter(|&v| weights[v] > 0).collect();
        order.sort_by(|&a, &b| {
            let lhs = weights[a].saturating_mul(omega[b]);
            let rhs = weights[b].saturating_mul(omega[a]);
            rhs.cmp(&lhs).then(a.cmp(&b))
        });
        Knapsack { omega, total, order }
    }
}

pub(crate) struct Engine<'g> {
    root: Vertex,
    solver: Solver<'g>,
    order: Vec<Vertex>,
    /// Position of each vertex in `order`, `usize::MAX` if absent.
    pos: Vec<usize>,
    /// Count limits per search depth: row `i` holds the limits valid below
    /// depth `i`; row 0 is the distance cap `2^d - 1`.
    caps: Vec<u32>,
    weight: Vec<u128>,
    /// The breadth-first tree comes first; its order matches `order`.
    knapsacks: Vec<Knapsack>,
    room: Vec<u128>,
    p: Vec<u32>,
    best: u128,
    best_p: Vec<u32>,
    threshold: Option<u128>,
    done: bool,
}

impl<'g> Engine<'g> {
    pub(crate) fn new(g: &'g Graph, root: Vertex, weights: &[u128]) -> Result<Self, Error> {
        g.check_vertex(root)?;
        if weights.len() != g.n() {
            return Err(Error::ConfigurationLength { expected: g.n(), got: weights.len() });
        }
        let solver = Solver::new(g, root, 1)?;
        let dist = g.bfs(root);
        let depth = dist.iter().copied().max().unwrap_or(0);
        if depth >= 32 {
            return Err(Error::TooLarge(alloc::format!("eccentricity {depth} of the root")));
        }
        let n = g.n();
        let mut cap = vec![0u32; n];
        let mut omega = vec![0u128; n];
        for v in 0..n {
            if v != root {
                cap[v] = ((1u64 << dist[v]) - 1) as u32;
                omega[v] = 1u128 << (depth - dist[v]);
            }
        }
        let mut order: Vec<Vertex> = (0..n).filter(|&v| v != root && weights[v] > 0).collect();
        // Best value per unit of knapsack capacity first.
        order.sort_by(|&a, &b| {
            let lhs = weights[a].saturating_mul(omega[b]);
            let rhs = weights[b].saturating_mul(omega[a]);
            rhs.cmp(&lhs).then(dist[b].cmp(&dist[a])).then(a.cmp(&b))
        });
        let mut knapsacks = vec![Knapsack::new(omega, weights)];
        knapsacks[0].order = order.clone();
        // Branch nearest the root first.
        order.sort_by_key(|&v| (dist[v], v));
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        for path in root_paths(g, root, PATHS_PER_VERTEX * n) {
            let mut omega = vec![0u128; n];
            for (i, &v) in path.iter().enumerate() {
                omega[v] = 1u128 << (path.len() - 1 - i);
            }
            knapsacks.push(Knapsack::new(omega, weights));
        }
        let room = knapsacks.iter().map(|k| k.total).collect();
        let mut caps = vec![0u32; n * (order.len() + 1)];
        caps[..n].copy_from_slice(&cap);
        Ok(Engine {
            root,
            solver,
            order,
            pos,
            caps,
            weight: weights.to_vec(),
            knapsacks,
            room,
            p: vec![0; n],
            best: 0,
            best_p: vec![0; n],
            threshold: None,
            done: false,
        })
    }

    pub(crate) fn run(&mut self, goal: Goal, meter: &mut Meter) -> Result<Search, Error> {
        self.threshold = match goal {
            Goal::Maximize => None,
            Goal::Exceed(t) => Some(t),
        };
        self.best = 0;
        self.best_p.fill(0);
        self.p.fill(0);
        self.done = false;
        for (r, k) in self.room.iter_mut().zip(&self.knapsacks) {
            *r = k.total;
        }
        let upper = self.bound(0, 0);
        let result = self.node(0, 0, meter);
        for (r, k) in self.room.iter_mut().zip(&self.knapsacks) {
            *r = k.total;
        }
        match result {
            Ok(()) => Ok(Search::Done { value: self.best, witness: Configuration::new(self.best_p.clone()) }),
            Err(Exhausted) => Ok(Search::BudgetExceeded {
                value: self.best,
                witness: Configuration::new(self.best_p.clone()),
                upper: upper.max(self.best),
            }),
        }
    }

    /// Fractional knapsack of constraint `k` over `order[i..]` with the
    /// limits of row `level`, floored.
    fn knapsack_bound(&self, k: usize, i: usize, level: usize) -> u128 {
        let ks = &self.knapsacks[k];
        let cap = &self.caps[level * self.pos.len()..][..self.pos.len()];
        let mut room = self.room[k];
        let mut total: u128 = 0;
        for &v in &ks.order {
            if self.pos[v] < i {
                continue;
            }
            let full = ks.omega[v] * u128::from(cap[v]);
            if full <= room {
                room -= full;
                total = total.saturating_add(self.weight[v].saturating_mul(u128::from(cap[v])));
            } else {
                let part = match self.weight[v].checked_mul(room) {
                    Some(x) => x / ks.omega[v],
                    None => u128::MAX,
                };
                return total.saturating_add(part);
            }
        }
        total
    }

    /// Least of the knapsack bounds for `order[i..]`.
    fn bound(&self, i: usize, level: usize) -> u128 {
        (0..self.knapsacks.len()).map(|k| self.knapsack_bound(k, i, level)).min().unwrap_or(0)
    }

    /// Value that must be beaten for a branch to be worth exploring.
    fn bar(&self) -> u128 {
        match self.threshold {
            Some(t) => self.best.max(t),
            None => self.best,
        }
    }

    fn take(&mut self, v: Vertex, m: u32) {
        for (r, k) in self.room.iter_mut().zip(&self.knapsacks) {
            *r -= k.omega[v] * u128::from(m);
        }
    }

    fn give_back(&mut self, v: Vertex, m: u32) {
        for (r, k) in self.room.iter_mut().zip(&self.knapsacks) {
            *r += k.omega[v] * u128::from(m);
        }
    }

    fn node(&mut self, i: usize, value: u128, meter: &mut Meter) -> Result<(), Exhausted> {
        meter.tick()?;
        if value > self.best || (value == self.best && self.best_p.iter().all(|&c| c == 0)) {
            self.best = value;
            self.best_p.copy_from_slice(&self.p);
        }
        if let Some(t) = self.threshold {
            if self.best > t {
                self.done = true;
            }
        }
        if self.done || i == self.order.len() {
            return Ok(());
        }
        if value.saturating_add(self.bound(i, i)) <= self.bar() {
            return Ok(());
        }
        // Tighten the limits of every vertex still to be placed against the
        // pebbles placed so far; they stay valid for the whole subtree.
        let n = self.pos.len();
        for j in i..self.order.len() {
            let u = self.order[j];
            let c = self.largest_unsolvable(u, self.caps[i * n + u], meter)?;
            self.caps[(i + 1) * n + u] = c;
        }
        if value.saturating_add(self.bound(i, i + 1)) <= self.bar() {
            return Ok(());
        }
        let v = self.order[i];
        let top = self.caps[(i + 1) * n + v];
        // When `v` has the best ratio left in the first constraint, that
        // constraint's bound only shrinks as `m` drops, so one cut ends the
        // loop.
        let monotone = self.knapsacks[0].order.iter().find(|&&u| self.pos[u] >= i) == Some(&v);
        for m in (0..=top).rev() {
            let w = self.weight[v] * u128::from(m);
            self.take(v, m);
            if (value + w).saturating_add(self.knapsack_bound(0, i + 1, i + 1)) <= self.bar() {
                self.give_back(v, m);
                if monotone {
                    break;
                }
                continue;
            }
            if (value + w).saturating_add(self.bound(i + 1, i + 1)) <= self.bar() {
                self.give_back(v, m);
                continue;
            }
            self.p[v] = m;
            let r = self.node(i + 1, value + w, meter);
            self.p[v] = 0;
            self.give_back(v, m);
            r?;
            if self.done {
                break;
            }
        }
        Ok(())
    }

    /// Largest `m <= hi` keeping the current configuration unsolvable with
    /// `m` pebbles on `v`. The current configuration (with `p(v) = 0`) is
    /// unsolvable, so the answer is at least 0.
    fn largest_unsolvable(&mut self, v: Vertex, hi: u32, meter: &mut Meter) -> Result<u32, Exhausted> {
        if hi == 0 {
            return Ok(0);
        }
        // Limits rarely drop from parent to child, so try `hi` itself first.
        self.p[v] = hi;
        let solvable = self.solver.solve(&self.p, meter);
        self.p[v] = 0;
        if solvable?.is_none() {
            return Ok(hi);
        }
        let (mut lo, mut hi) = (0u32, hi - 1);
        while lo < hi {
            let mid = lo + (hi - lo).div_ceil(2);
            self.p[v] = mid;
            let solvable = self.solver.solve(&self.p, meter);
            self.p[v] = 0;
            if solvable?.is_some() {
                hi = mid - 1;
            } else {
                lo = mid;
            }
        }
        Ok(lo)
    }

    pub(crate) fn root(&self) -> Vertex {
        self.root
    }
}

/// Up to `limit` maximal simple paths from `root`, root excluded, in
/// depth-first order.
fn root_paths(g: &Graph, root: Vertex, limit: usize) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    let mut on_path = vec![false; g.n()];
    on_path[root] = true;
    let mut path = Vec::new();
    extend_paths(g, root, &mut path, &mut on_path, &mut out, limit);
    out
}

fn extend_paths(
    g: &Graph,
    at: Vertex,
    path: &mut Vec<Vertex>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<Vertex>>,
    limit: usize,
) {
    let mut extended = false;
    for &y in g.neighbors(at) {
        if out.len() >= limit {
            return;
        }
        if !on_path[y] {
            extended = true;
            on_path[y] = true;
            path.push(y);
            extend_paths(g, y, path, on_path, out, limit);
            path.pop();
            on_path[y] = false;
        }
    }
    if !extended && !path.is_empty() && out.len() < limit {
        out.push(path.clone());
    }
}

/// Outcome of a pebbling-number computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PebblingNumber {
    /// Exact value; `witness` is unsolvable of size `value - 1` at `root`.
    Value { value: u64, root: Vertex, witness: Configuration },
    /// The true value lies in `lower..=upper`; `witness` backs the lower end.
    BudgetExceeded { lower: u64, upper: u64, root: Vertex, witness: Configuration },
}

impl PebblingNumber {
    pub fn value(&self) -> Option<u64> {
        match self {
            PebblingNumber::Value { value, .. } => Some(*value),
            PebblingNumber::BudgetExceeded { .. } => None,
        }
    }
}

/// Largest unsolvable configuration for `root`. Its size is `pi(G, root) - 1`.
pub fn max_unsolvable(g: &Graph, root: Vertex, budget: &SolverBudget) -> Result<Search, Error> {
    max_weighted_unsolvable(g, root, &vec![1; g.n()], Goal::Maximize, budget)
}

pub fn pebbling_number_rooted(g: &Graph, root: Vertex, budget: &SolverBudget) -> Result<PebblingNumber, Error> {
    let mut meter = budget.meter();
    rooted_with_meter(g, root, &mut meter)
}

fn rooted_with_meter(g: &Graph, root: Vertex, meter: &mut Meter) -> Result<PebblingNumber, Error> {
    let mut engine = Engine::new(g, root, &vec![1; g.n()])?;
    Ok(match engine.run(Goal::Maximize, meter)? {
        Search::Done { value, witness } => PebblingNumber::Value { value: value as u64 + 1, root, witness },
        Search::BudgetExceeded { value, witness, upper } => {
            PebblingNumber::BudgetExceeded { lower: value as u64 + 1, upper: upper as u64 + 1, root, witness }
        }
    })
}

/// Maximum of the rooted numbers over `roots`, sharing one budget. When the
/// budget runs out the interval covers every root.
pub fn pebbling_number_over(g: &Graph, roots: &[Vertex], budget: &SolverBudget) -> Result<PebblingNumber, Error> {
    let mut meter = budget.meter();
    let mut best: Option<PebblingNumber> = None;
    let mut exceeded = false;
    let mut upper = 0;
    for &r in roots {
        let res = rooted_with_meter(g, r, &mut meter)?;
        let (lo, hi) = match &res {
            PebblingNumber::Value { value, .. } => (*value, *value),
            PebblingNumber::BudgetExceeded { lower, upper, .. } => {
                exceeded = true;
                (*lower, *upper)
            }
        };
        upper = upper.max(hi);
        let better = match &best {
            None => true,
            Some(b) => lo > lower_of(b),
        };
        if better {
            best = Some(res);
        }
        if exceeded {
            // Remaining roots are only bounded by their eccentricity cap.
            for &s in roots.iter().skip_while(|&&s| s != r).skip(1) {
                let dist = g.bfs(s);
                let cap: u64 = dist.iter().map(|&d| (1u64 << d) - 1).sum();
                upper = upper.max(cap + 1);
            }
            break;
        }
    }
    let best = best.ok_or(Error::EmptyGraph)?;
    Ok(if exceeded {
        let (lower, root, witness) = match best {
            PebblingNumber::Value { value, root, witness } => (value, root, witness),
            PebblingNumber::BudgetExceeded { lower, root, witness, .. } => (lower, root, witness),
        };
        PebblingNumber::BudgetExceeded { lower, upper, root, witness }
    } else {
        best
    })
}

fn lower_of(p: &PebblingNumber) -> u64 {
    match p {
        PebblingNumber::Value { value, .. } => *value,
        PebblingNumber::BudgetExceeded { lower, .. } => *lower,
    }
}

/// `pi(G)`. With `vertex_transitive` the caller asserts all roots are
/// equivalent and only vertex 0 is searched.
pub fn pebbling_number(g: &Graph, budget: &SolverBudget, vertex_transitive: bool) -> Result<PebblingNumber, Error> {
    let roots: Vec<Vertex> = if vertex_transitive { vec![0] } else { (0..g.n()).collect() };
    pebbling_number_over(g, &roots, budget)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Class0 {
    Yes,
    /// `witness` is unsolvable for `root` and has at least `n` pebbles.
    No {
        root: Vertex,
        witness: Configuration,
    },
    BudgetExceeded,
}

pub fn is_class0(g: &Graph, budget: &SolverBudget) -> Result<Class0, Error> {
    let mut meter = budget.meter();
    class0_over(g, &(0..g.n()).collect::<Vec<_>>(), &mut meter)
}

pub(crate) fn class0_over(g: &Graph, roots: &[Vertex], meter: &mut Meter) -> Result<Class0, Error> {
    let n = g.n() as u128;
    for &r in roots {
        let mut engine = Engine::new(g, r, &vec![1; g.n()])?;
        match engine.run(Goal::Exceed(n - 1), meter)? {
            Search::Done { value, witness } if value > n - 1 => return Ok(Class0::No { root: engine.root(), witness }),
            Search::Done { .. } => {}
            Search::BudgetExceeded { .. } => return Ok(Class0::BudgetExceeded),
        }
    }
    Ok(Class0::Yes)
}
