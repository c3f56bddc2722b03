//! Exact rooted solvability.
//!
//! A configuration is solvable exactly when some acyclic multiset of moves
//! leaves every vertex with a nonnegative balance and puts a pebble on the
//! root. Any such multiset can be played in a topological order of its
//! support, so the search "fires" vertices one at a time: a fired vertex
//! spends all of its pebbles at once on moves to not-yet-fired neighbours
//! and is frozen afterwards. Sending the maximum number of moves is never
//! worse than sending fewer, so only the split between neighbours branches.
//!
//! States are `(fired set, counts)`. Failed states are memoised, and a
//! per-fired-set store rejects states dominated by a known failure. A state
//! is abandoned as soon as its potential `sum a(v) / 2^d(v)`, with `d`
//! measured through unfired vertices only, drops below the target; no move
//! can raise that potential.

use alloc::boxed::Box;
use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::{HashMap, HashSet};

use crate::budget::{Exhausted, Meter};
use crate::config::{Configuration, PebblingMove};
use crate::graph::{Graph, Vertex};
use crate::{Error, SolverBudget};

/// Largest graph the solver accepts (fired sets are 64-bit masks).
pub const MAX_VERTICES: usize = 64;

const MEMO_LIMIT: usize = 1 << 22;
const DOMINANCE_SLOTS: usize = 48;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solvability {
    /// Replaying the moves from the input ends with a pebble on the root.
    Solvable(Vec<PebblingMove>),
    /// The search space was exhausted.
    Unsolvable,
    BudgetExceeded,
}

impl Solvability {
    pub fn is_solvable(&self) -> bool {
        matches!(self, Solvability::Solvable(_))
    }
}

pub fn is_solvable(g: &Graph, root: Vertex, p: &Configuration, budget: &SolverBudget) -> Result<Solvability, Error> {
    can_reach(g, root, p, 1, budget)
}

/// Whether `target` pebbles can be gathered on `root` at the same time.
pub fn can_reach(
    g: &Graph,
    root: Vertex,
    p: &Configuration,
    target: u32,
    budget: &SolverBudget,
) -> Result<Solvability, Error> {
    let mut solver = Solver::new(g, root, target)?;
    let mut meter = budget.meter();
    p.check_for(g)?;
    Ok(match solver.solve(p.counts(), &mut meter) {
        Ok(Some(moves)) => Solvability::Solvable(moves),
        Ok(None) => Solvability::Unsolvable,
        Err(Exhausted) => Solvability::BudgetExceeded,
    })
}

/// Reusable solver for one `(graph, root, target)`. Memoised failures stay
/// valid across queries, which is what the maximisation search relies on.
pub(crate) struct Solver<'g> {
    g: &'g Graph,
    root: Vertex,
    target: u32,
    failed: HashSet<(u64, Box<[u32]>)>,
    dominance: HashMap<u64, Vec<Box<[u32]>>>,
    // Scratch buffers.
    dist: Vec<u32>,
    parent: Vec<Vertex>,
    order: Vec<Vertex>,
}

impl<'g> Solver<'g> {
    pub(crate) fn new(g: &'g Graph, root: Vertex, target: u32) -> Result<Self, Error> {
        g.check_vertex(root)?;
        if g.n() > MAX_VERTICES {
            return Err(Error::TooLarge(alloc::format!("solver handles at most {MAX_VERTICES} vertices")));
        }
        Ok(Solver {
            g,
            root,
            target,
            failed: HashSet::new(),
            dominance: HashMap::new(),
            dist: vec![0; g.n()],
            parent: vec![0; g.n()],
            order: Vec::with_capacity(g.n()),
        })
    }

    /// `Some(witness)` when solvable, `None` when the search is exhausted.
    pub(crate) fn solve(&mut self, counts: &[u32], meter: &mut Meter) -> Result<Option<Vec<PebblingMove>>, Exhausted> {
        if counts[self.root] >= self.target {
            return Ok(Some(Vec::new()));
        }
        let mut state = counts.to_vec();
        let mut trail = Vec::new();
        if self.dfs(&mut state, 0, &mut trail, meter)? {
            Ok(Some(trail))
        } else {
            Ok(None)
        }
    }

    /// Distances to the root through unfired vertices. Unreachable vertices
    /// get `u32::MAX`. Fills `order` with reachable non-root vertices,
    /// farthest first.
    fn layer(&mut self, mask: u64) {
        let g = self.g;
        self.dist.fill(u32::MAX);
        self.dist[self.root] = 0;
        self.order.clear();
        let mut queue = VecDeque::from([self.root]);
        while let Some(x) = queue.pop_front() {
            for &y in g.neighbors(x) {
                if mask >> y & 1 == 0 && self.dist[y] == u32::MAX {
                    self.dist[y] = self.dist[x] + 1;
                    self.parent[y] = x;
                    self.order.push(y);
                    queue.push_back(y);
                }
            }
        }
        self.order.reverse();
    }

    fn dfs(
        &mut self,
        counts: &mut Vec<u32>,
        mask: u64,
        trail: &mut Vec<PebblingMove>,
        meter: &mut Meter,
    ) -> Result<bool, Exhausted> {
        meter.tick()?;
        if counts[self.root] >= self.target {
            return Ok(true);
        }
        self.layer(mask);

        // Potential test in integers: sum a(v) 2^(D - d(v)) against target 2^D.
        let depth = self.order.first().map_or(0, |&v| self.dist[v]);
        let mut potential = u128::from(counts[self.root]) << depth;
        for &v in &self.order {
            potential += u128::from(counts[v]) << (depth - self.dist[v]);
        }
        if potential < u128::from(self.target) << depth {
            return Ok(false);
        }

        if self.greedy(counts, trail) {
            return Ok(true);
        }

        // Vertices cut off from the root are as good as fired.
        let mut live = 1u64 << self.root;
        for &v in &self.order {
            live |= 1 << v;
        }
        let full = if self.g.n() == 64 { u64::MAX } else { (1u64 << self.g.n()) - 1 };
        let mask = full & !live;
        let key: Box<[u32]> = counts.iter().enumerate().map(|(v, &c)| if mask >> v & 1 == 1 { 0 } else { c }).collect();
        let memo_key = (mask, key);
        if self.failed.contains(&memo_key) || self.dominated(mask, &memo_key.1) {
            return Ok(false);
        }

        let candidates: Vec<Vertex> = self.order.iter().copied().filter(|&v| counts[v] >= 2).collect();
        let dist = self.dist.clone();
        for v in candidates {
            let k = counts[v] / 2;
            let mut targets: Vec<Vertex> =
                self.g.neighbors(v).iter().copied().filter(|&u| mask >> u & 1 == 0 && dist[u] != u32::MAX).collect();
            targets.sort_by_key(|&u| (dist[u], u));
            if targets.is_empty() {
                continue;
            }
            let spent = 2 * k;
            counts[v] -= spent;
            let mut split = vec![0u32; targets.len()];
            split[0] = k;
            loop {
                for (i, &u) in targets.iter().enumerate() {
                    counts[u] += split[i];
                }
                let mark = trail.len();
                for (i, &u) in targets.iter().enumerate() {
                    trail.extend((0..split[i]).map(|_| PebblingMove::new(v, u)));
                }
                let found = self.dfs(counts, mask | 1 << v, trail, meter);
                for (i, &u) in targets.iter().enumerate() {
                    counts[u] -= split[i];
                }
                match found {
                    Ok(true) => {
                        counts[v] += spent;
                        return Ok(true);
                    }
                    Ok(false) => trail.truncate(mark),
                    Err(e) => {
                        counts[v] += spent;
                        trail.truncate(mark);
                        return Err(e);
                    }
                }
                if !next_split(&mut split) {
                    break;
                }
            }
            counts[v] += spent;
        }

        self.remember(memo_key);
        Ok(false)
    }

    /// Every vertex sends all it can to its parent in the breadth-first
    /// tree of unfired vertices, deepest first.
    fn greedy(&mut self, counts: &[u32], trail: &mut Vec<PebblingMove>) -> bool {
        let mut c = counts.to_vec();
        for &v in &self.order {
            let k = c[v] / 2;
            c[self.parent[v]] += k;
            c[v] -= 2 * k;
        }
        if c[self.root] < self.target {
            return false;
        }
        let mut c = counts.to_vec();
        for &v in &self.order {
            let k = c[v] / 2;
            let p = self.parent[v];
            c[p] += k;
            c[v] -= 2 * k;
            trail.extend((0..k).map(|_| PebblingMove::new(v, p)));
        }
        true
    }

    fn dominated(&self, mask: u64, counts: &[u32]) -> bool {
        self.dominance
            .get(&mask)
            .is_some_and(|list| list.iter().any(|f| counts.iter().zip(f.iter()).all(|(a, b)| a <= b)))
    }

    fn remember(&mut self, key: (u64, Box<[u32]>)) {
        if self.failed.len() >= MEMO_LIMIT {
            self.failed.clear();
            self.dominance.clear();
        }
        let list = self.dominance.entry(key.0).or_default();
        list.retain(|f| !f.iter().zip(key.1.iter()).all(|(a, b)| a <= b));
        if list.len() >= DOMINANCE_SLOTS {
            list.remove(0);
        }
        list.push(key.1.clone());
        self.failed.insert(key);
    }
}

/// Next composition of the same total, moving mass away from the first
/// (closest) slots. Returns `false` after the last one.
fn next_split(split: &mut [u32]) -> bool {
    let len = split.len();
    if len < 2 {
        return false;
    }
    // Find the rightmost nonzero slot before the last one.
    let Some(i) = (0..len - 1).rev().find(|&i| split[i] > 0) else {
        return false;
    };
    let tail = split[len - 1];
    split[len - 1] = 0;
    split[i] -= 1;
    split[i + 1] = tail + 1;
    true
}
