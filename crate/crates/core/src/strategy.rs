//! Weight functions, the strategies that carry them, and their structural
//! checks.
//!
//! A weight function `w` for root `r` is valid when every `r`-unsolvable
//! configuration `p` has `w.p <= w.1`. Three shapes are known valid by
//! construction and are checked here structurally:
//!
//! * tree strategies, where weights double (or at least double, for the
//!   nonbasic kind) towards the root along a subtree;
//! * the cycle-with-tail family, an even cycle hanging off a path to the
//!   root with a rational weight on the far cycle vertex;
//! * any valid function extended by hanging vertices off its support with at
//!   most half the weight of their parent.
//!
//! Validity on a subgraph carries over to the whole graph, because removing
//! edges or vertices can only make a configuration harder to solve. This is
//! why embedded templates and explicit functions on a template subgraph are
//! enough.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::config::Configuration;
use crate::graph::{Graph, Vertex};
use crate::rational::{int, Rational};
use crate::Error;

/// Nonnegative rational weights on every vertex, zero on the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightFunction {
    root: Vertex,
    weights: Vec<Rational>,
}

impl WeightFunction {
    pub fn new(root: Vertex, weights: Vec<Rational>) -> Result<Self, Error> {
        if root >= weights.len() {
            return Err(Error::UnknownVertex { vertex: root, n: weights.len() });
        }
        if !weights[root].is_zero() {
            return Err(Error::InvalidWeights(format!("root {root} has nonzero weight")));
        }
        if let Some(v) = weights.iter().position(Signed::is_negative) {
            return Err(Error::InvalidWeights(format!("vertex {v} has negative weight")));
        }
        Ok(WeightFunction { root, weights })
    }

    pub fn zero(n: usize, root: Vertex) -> Result<Self, Error> {
        Self::new(root, vec![Rational::zero(); n])
    }

    /// Weights given sparsely; absent vertices get zero.
    pub fn from_pairs(n: usize, root: Vertex, pairs: &[(Vertex, Rational)]) -> Result<Self, Error> {
        let mut weights = vec![Rational::zero(); n];
        for (v, w) in pairs {
            if *v >= n {
                return Err(Error::UnknownVertex { vertex: *v, n });
            }
            weights[*v] = w.clone();
        }
        Self::new(root, weights)
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn get(&self, v: Vertex) -> &Rational {
        &self.weights[v]
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// `w.1`, the sum over all vertices.
    pub fn total(&self) -> Rational {
        self.weights.iter().sum()
    }

    pub fn dot(&self, p: &Configuration) -> Rational {
        self.weights.iter().zip(p.counts()).map(|(w, &c)| w * Rational::from_integer(BigInt::from(c))).sum()
    }

    /// Smallest weight off the root, with the first vertex attaining it.
    pub fn min_nonroot(&self) -> Option<(Vertex, Rational)> {
        (0..self.n())
            .filter(|&v| v != self.root)
            .map(|v| (v, self.weights[v].clone()))
            .min_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)))
    }

    pub fn scale(&self, c: &Rational) -> Result<Self, Error> {
        if c.is_negative() {
            return Err(Error::InvalidWeights("negative scale".into()));
        }
        Ok(WeightFunction { root: self.root, weights: self.weights.iter().map(|w| w * c).collect() })
    }

    /// Vertices with positive weight.
    pub fn support(&self) -> Vec<Vertex> {
        (0..self.n()).filter(|&v| self.weights[v].is_positive()).collect()
    }

    fn with_zeroed(&self, vertices: impl IntoIterator<Item = Vertex>) -> Self {
        let mut w = self.clone();
        for v in vertices {
            w.weights[v] = Rational::zero();
        }
        w
    }
}

/// Nonnegative combination `sum c_i w_i`.
pub fn combine(entries: &[(&WeightFunction, Rational)]) -> Result<WeightFunction, Error> {
    let Some((first, _)) = entries.first() else {
        return Err(Error::InvalidWeights("nothing to combine".into()));
    };
    let (root, n) = (first.root, first.n());
    let mut acc = vec![Rational::zero(); n];
    let mut any_positive = false;
    for (w, c) in entries {
        if w.root != root {
            return Err(Error::RootMismatch(root, w.root));
        }
        if w.n() != n {
            return Err(Error::ConfigurationLength { expected: n, got: w.n() });
        }
        if c.is_negative() {
            return Err(Error::InvalidWeights("negative coefficient".into()));
        }
        any_positive |= c.is_positive();
        for (a, x) in acc.iter_mut().zip(&w.weights) {
            *a += x * c;
        }
    }
    if !any_positive {
        return Err(Error::InvalidWeights("all coefficients are zero".into()));
    }
    WeightFunction::new(root, acc)
}

/// Sum `S`, minimum `C` and the resulting bound `floor(S / C) + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringBound {
    pub total: Rational,
    pub min: Rational,
    pub min_vertex: Vertex,
    pub bound: u64,
}

pub fn covering_bound(w: &WeightFunction) -> Result<CoveringBound, Error> {
    let (min_vertex, min) =
        w.min_nonroot().ok_or_else(|| Error::InvalidWeights("no vertex besides the root".into()))?;
    if min.is_zero() {
        return Err(Error::ZeroWeight(min_vertex));
    }
    let total = w.total();
    let q = (&total / &min).floor().to_integer();
    let bound = u64::try_from(q + BigInt::one()).map_err(|_| Error::Overflow)?;
    Ok(CoveringBound { total, min, min_vertex, bound })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StrategyKind {
    TreeBasic,
    TreeNonbasic,
    CycleTail,
    Explicit,
}

impl StrategyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            StrategyKind::TreeBasic => "tree_basic",
            StrategyKind::TreeNonbasic => "tree_nonbasic",
            StrategyKind::CycleTail => "cycle_tail",
            StrategyKind::Explicit => "explicit",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "tree_basic" => StrategyKind::TreeBasic,
            "tree_nonbasic" => StrategyKind::TreeNonbasic,
            "cycle_tail" => StrategyKind::CycleTail,
            "explicit" => StrategyKind::Explicit,
            _ => return None,
        })
    }

    pub fn is_tree(self) -> bool {
        matches!(self, StrategyKind::TreeBasic | StrategyKind::TreeNonbasic)
    }
}

/// Vertex roles of an embedded cycle-with-tail template.
///
/// `upper` and `lower` are the two cycle paths from `x0` to `spine[0]`,
/// listed from the `x0` end; `spine` runs from the cycle vertex of degree
/// three down to the root's neighbour.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleRoles {
    pub x0: Vertex,
    pub upper: Vec<Vertex>,
    pub lower: Vec<Vertex>,
    pub spine: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Support {
    /// Child to parent, for every non-root tree vertex.
    Tree {
        parent: BTreeMap<Vertex, Vertex>,
    },
    CycleTail {
        t: usize,
        tail: usize,
        roles: CycleRoles,
    },
    /// Optional subgraph the function is claimed valid on. Without one the
    /// whole graph is used.
    Explicit {
        template: Option<Vec<(Vertex, Vertex)>>,
    },
}

/// A vertex hung off `parent` with at most half its weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Attachment {
    pub vertex: Vertex,
    pub parent: Vertex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strategy {
    pub kind: StrategyKind,
    pub weight: WeightFunction,
    pub support: Support,
    pub attachments: Vec<Attachment>,
    /// Accepted without checking when no brute-force run is requested.
    pub trusted: bool,
}

/// First failed condition of a structural check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub vertex: Option<Vertex>,
    pub reason: String,
}

impl Violation {
    fn at(v: Vertex, reason: impl Into<String>) -> Self {
        Violation { vertex: Some(v), reason: reason.into() }
    }

    fn general(reason: impl Into<String>) -> Self {
        Violation { vertex: None, reason: reason.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.vertex {
            Some(v) => write!(f, "vertex {v}: {}", self.reason),
            None => f.write_str(&self.reason),
        }
    }
}

impl Strategy {
    pub fn tree(kind: StrategyKind, weight: WeightFunction, parent: BTreeMap<Vertex, Vertex>) -> Self {
        Strategy { kind, weight, support: Support::Tree { parent }, attachments: Vec::new(), trusted: false }
    }

    pub fn explicit(weight: WeightFunction, template: Option<Vec<(Vertex, Vertex)>>, trusted: bool) -> Self {
        Strategy {
            kind: StrategyKind::Explicit,
            weight,
            support: Support::Explicit { template },
            attachments: Vec::new(),
            trusted,
        }
    }

    pub fn root(&self) -> Vertex {
        self.weight.root()
    }

    /// The weight function before any attachments.
    pub fn base_weight(&self) -> WeightFunction {
        self.weight.with_zeroed(self.attachments.iter().map(|a| a.vertex))
    }

    /// Vertices the base shape occupies, root included.
    pub fn structure_vertices(&self) -> BTreeSet<Vertex> {
        let mut set = BTreeSet::from([self.root()]);
        match &self.support {
            Support::Tree { parent } => {
                set.extend(parent.keys().copied());
                set.extend(parent.values().copied());
            }
            Support::CycleTail { roles, .. } => {
                set.insert(roles.x0);
                set.extend(roles.upper.iter().chain(&roles.lower).chain(&roles.spine).copied());
            }
            Support::Explicit { template: Some(edges) } => {
                set.extend(edges.iter().flat_map(|&(u, v)| [u, v]));
            }
            Support::Explicit { template: None } => set.extend(0..self.weight.n()),
        }
        set
    }
}

/// Tree conditions: the support is a tree of `g` containing the root, the
/// weight vanishes off it, and `w(parent) = 2 w(v)` (basic) or
/// `w(parent) >= 2 w(v)` (nonbasic) for each tree vertex not adjacent to the
/// root in `g`.
pub fn validate_tree_strategy(g: &Graph, s: &Strategy) -> Result<(), Violation> {
    check_common(g, s)?;
    let Support::Tree { parent } = &s.support else {
        return Err(Violation::general("tree strategy without tree support"));
    };
    if !s.kind.is_tree() {
        return Err(Violation::general("strategy kind is not a tree kind"));
    }
    let w = s.base_weight();
    let root = s.root();
    if parent.contains_key(&root) {
        return Err(Violation::at(root, "root has a parent"));
    }
    for (&v, &p) in parent {
        if v >= g.n() || p >= g.n() {
            return Err(Violation::at(v.max(p), "vertex out of range"));
        }
        if !g.has_edge(v, p) {
            return Err(Violation::at(v, format!("tree edge {v}-{p} is not in the graph")));
        }
        if p != root && !parent.contains_key(&p) {
            return Err(Violation::at(p, "parent is not in the tree"));
        }
        // Walking up must reach the root.
        let (mut x, mut steps) = (v, 0);
        while x != root {
            x = parent[&x];
            steps += 1;
            if steps > parent.len() {
                return Err(Violation::at(v, "parent links form a cycle"));
            }
        }
    }
    let tree: BTreeSet<Vertex> = parent.keys().copied().chain([root]).collect();
    for v in 0..g.n() {
        if !tree.contains(&v) && w.get(v).is_positive() {
            return Err(Violation::at(v, "positive weight off the tree"));
        }
    }
    for (&v, &p) in parent {
        if p == root || g.has_edge(v, root) {
            continue;
        }
        let twice = w.get(v) * int(2);
        let wp = w.get(p);
        match s.kind {
            StrategyKind::TreeBasic if *wp != twice => {
                return Err(Violation::at(v, format!("parent {p} weight is not twice this vertex's weight")));
            }
            StrategyKind::TreeNonbasic if *wp < twice => {
                return Err(Violation::at(v, format!("parent {p} weight is less than twice this vertex's weight")));
            }
            _ => {}
        }
    }
    validate_attachments(g, s)
}

fn check_common(g: &Graph, s: &Strategy) -> Result<(), Violation> {
    if s.weight.n() != g.n() {
        return Err(Violation::general(format!(
            "weight function has {} entries, graph has {} vertices",
            s.weight.n(),
            g.n()
        )));
    }
    Ok(())
}

/// `alpha = (2^s + 2^(t-1) - 2) / (2^s - 1)` with `s = t + tail`.
pub fn cycle_tail_alpha(t: usize, tail: usize) -> Result<Rational, Error> {
    check_cycle_params(t, tail)?;
    let s = t + tail;
    let two = |k: usize| BigInt::one() << k;
    let den = two(s) - BigInt::one();
    if den.is_zero() {
        return Err(Error::InvalidParameter { family: "cycle_tail", reason: "degenerate alpha".into() });
    }
    Ok(Rational::new(two(s) + two(t - 1) - BigInt::from(2), den))
}

/// `M = alpha + 2^(s+1) + 2^t - 4`, the total weight.
pub fn cycle_tail_total(t: usize, tail: usize) -> Result<Rational, Error> {
    let s = t + tail;
    let alpha = cycle_tail_alpha(t, tail)?;
    Ok(alpha + Rational::from_integer((BigInt::one() << (s + 1)) + (BigInt::one() << t) - BigInt::from(4)))
}

fn check_cycle_params(t: usize, tail: usize) -> Result<(), Error> {
    if t < 2 {
        return Err(Error::InvalidParameter { family: "cycle_tail", reason: "t must be at least 2".into() });
    }
    if t + tail > 60 {
        return Err(Error::TooLarge(format!("cycle tail with t = {t}, tail = {tail}")));
    }
    Ok(())
}

/// Template weights for given roles: `x'_i`, `x''_i` get `2^i`, the spine
/// vertex `x_i` gets `2^i`, `x0` gets alpha.
fn cycle_tail_expected(
    n: usize,
    root: Vertex,
    t: usize,
    tail: usize,
    roles: &CycleRoles,
) -> Result<WeightFunction, Error> {
    let mut pairs = vec![(roles.x0, cycle_tail_alpha(t, tail)?)];
    for i in 1..t {
        let w = Rational::from_integer(BigInt::one() << i);
        pairs.push((roles.upper[i - 1], w.clone()));
        pairs.push((roles.lower[i - 1], w));
    }
    for (j, &v) in roles.spine.iter().enumerate() {
        pairs.push((v, Rational::from_integer(BigInt::one() << (t + j))));
    }
    WeightFunction::from_pairs(n, root, &pairs)
}

/// The cycle-with-tail template on its own graph, numbered
/// `0 = r`, `1 = x0`, `2..=t` upper path, `t+1..2t` lower path, `2t = x_t`,
/// then the rest of the spine down to the root's neighbour.
pub fn cycle_tail_weights(t: usize, tail: usize) -> Result<(Graph, Strategy), Error> {
    check_cycle_params(t, tail)?;
    let n = 2 * t + 1 + tail;
    let upper: Vec<Vertex> = (2..=t).collect();
    let lower: Vec<Vertex> = (t + 1..2 * t).collect();
    let spine: Vec<Vertex> = (2 * t..n).collect();
    let roles = CycleRoles { x0: 1, upper, lower, spine };
    let graph = Graph::from_edges(n, &cycle_tail_edges(0, &roles))?;
    let weight = cycle_tail_expected(n, 0, t, tail, &roles)?;
    let strategy = Strategy {
        kind: StrategyKind::CycleTail,
        weight,
        support: Support::CycleTail { t, tail, roles },
        attachments: Vec::new(),
        trusted: false,
    };
    Ok((graph, strategy))
}

fn cycle_tail_edges(root: Vertex, roles: &CycleRoles) -> Vec<(Vertex, Vertex)> {
    let xt = roles.spine[0];
    let mut edges = Vec::new();
    for side in [&roles.upper, &roles.lower] {
        let chain: Vec<Vertex> = core::iter::once(roles.x0).chain(side.iter().copied()).chain([xt]).collect();
        edges.extend(chain.windows(2).map(|w| (w[0], w[1])));
    }
    let spine: Vec<Vertex> = roles.spine.iter().copied().chain([root]).collect();
    edges.extend(spine.windows(2).map(|w| (w[0], w[1])));
    edges
}

/// The roles must be distinct vertices forming the template inside `g`,
/// and the weights must be a positive multiple of the template weights.
pub fn validate_cycle_tail(g: &Graph, s: &Strategy) -> Result<(), Violation> {
    check_common(g, s)?;
    let Support::CycleTail { t, tail, roles } = &s.support else {
        return Err(Violation::general("cycle-tail strategy without cycle-tail support"));
    };
    let (t, tail) = (*t, *tail);
    check_cycle_params(t, tail).map_err(|e| Violation::general(e.to_string()))?;
    if roles.upper.len() != t - 1 || roles.lower.len() != t - 1 || roles.spine.len() != tail + 1 {
        return Err(Violation::general("role lists do not match t and tail"));
    }
    let root = s.root();
    let all: Vec<Vertex> = core::iter::once(root)
        .chain([roles.x0])
        .chain(roles.upper.iter().copied())
        .chain(roles.lower.iter().copied())
        .chain(roles.spine.iter().copied())
        .collect();
    let mut seen = BTreeSet::new();
    for &v in &all {
        if v >= g.n() {
            return Err(Violation::at(v, "vertex out of range"));
        }
        if !seen.insert(v) {
            return Err(Violation::at(v, "vertex plays two roles"));
        }
    }
    for (u, v) in cycle_tail_edges(root, roles) {
        if !g.has_edge(u, v) {
            return Err(Violation::at(u, format!("template edge {u}-{v} is not in the graph")));
        }
    }
    let expected = cycle_tail_expected(g.n(), root, t, tail, roles).map_err(|e| Violation::general(e.to_string()))?;
    let w = s.base_weight();
    let xt = roles.spine[0];
    let scale = w.get(xt) / expected.get(xt);
    if !scale.is_positive() {
        return Err(Violation::at(xt, "weight must be positive"));
    }
    for v in 0..g.n() {
        if *w.get(v) != expected.get(v) * &scale {
            return Err(Violation::at(v, "weight differs from the scaled template"));
        }
    }
    validate_attachments(g, s)
}

/// Each attachment hangs a fresh vertex off what came before, away from the root, with at most half the parent's weight.
pub fn validate_attachments(g: &Graph, s: &Strategy) -> Result<(), Violation> {
    let root = s.root();
    let mut occupied = s.structure_vertices();
    for a in &s.attachments {
        let (v, p) = (a.vertex, a.parent);
        if v >= g.n() || p >= g.n() {
            return Err(Violation::at(v.max(p), "vertex out of range"));
        }
        if p == root {
            return Err(Violation::at(v, "attached directly to the root"));
        }
        if occupied.contains(&v) {
            return Err(Violation::at(v, "attached vertex is already part of the strategy"));
        }
        if !occupied.contains(&p) {
            return Err(Violation::at(p, "attachment parent is not part of the strategy"));
        }
        if !g.has_edge(v, p) {
            return Err(Violation::at(v, format!("attachment edge {v}-{p} is not in the graph")));
        }
        if s.weight.get(v) * int(2) > *s.weight.get(p) {
            return Err(Violation::at(v, format!("weight exceeds half of parent {p}")));
        }
        occupied.insert(v);
    }
    for v in 0..g.n() {
        if !occupied.contains(&v) && s.weight.get(v).is_positive() {
            return Err(Violation::at(v, "positive weight outside the strategy"));
        }
    }
    Ok(())
}

/// Structural check by kind. Explicit strategies have none.
pub fn validate_structural(g: &Graph, s: &Strategy) -> Result<(), Violation> {
    match s.kind {
        StrategyKind::TreeBasic | StrategyKind::TreeNonbasic => validate_tree_strategy(g, s),
        StrategyKind::CycleTail => validate_cycle_tail(g, s),
        StrategyKind::Explicit => Err(Violation::general("explicit strategy has no structural check")),
    }
}

/// Extends `s` by a tree hung at `attach_at`. Each entry is
/// `(vertex, parent, weight)` with the parent either `attach_at` or an
/// earlier entry.
pub fn attach_tree(
    g: &Graph,
    s: &Strategy,
    attach_at: Vertex,
    subtree: &[(Vertex, Vertex, Rational)],
) -> Result<Strategy, Violation> {
    let mut out = s.clone();
    let mut allowed = BTreeSet::from([attach_at]);
    for (v, p, w) in subtree {
        if !allowed.contains(p) {
            return Err(Violation::at(*v, format!("parent {p} is not in the attached tree")));
        }
        if *v >= out.weight.n() {
            return Err(Violation::at(*v, "vertex out of range"));
        }
        if w.is_negative() {
            return Err(Violation::at(*v, "negative weight"));
        }
        out.weight.weights[*v] = w.clone();
        out.attachments.push(Attachment { vertex: *v, parent: *p });
        allowed.insert(*v);
    }
    validate_attachments(g, &out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;
    use crate::rational::ratio;

    fn w(root: Vertex, xs: &[i64]) -> WeightFunction {
        WeightFunction::new(root, xs.iter().map(|&x| int(x)).collect()).unwrap()
    }

    fn path_strategy(kind: StrategyKind, weights: &[i64]) -> (Graph, Strategy) {
        let n = weights.len();
        let g = path(n).unwrap();
        let parent = (1..n).map(|v| (v, v - 1)).collect();
        (g, Strategy::tree(kind, w(0, weights), parent))
    }

    #[test]
    fn weight_function_invariants() {
        assert!(WeightFunction::new(0, vec![int(1), int(0)]).is_err());
        assert!(WeightFunction::new(0, vec![int(0), int(-1)]).is_err());
        let f = w(0, &[0, 4, 2, 1]);
        assert_eq!(f.total(), int(7));
        assert_eq!(f.dot(&Configuration::new(vec![0, 0, 0, 7])), int(7));
    }

    #[test]
    fn path_tree_strategy() {
        let (g, s) = path_strategy(StrategyKind::TreeBasic, &[0, 4, 2, 1]);
        assert_eq!(validate_tree_strategy(&g, &s), Ok(()));
        let (g, s) = path_strategy(StrategyKind::TreeBasic, &[0, 4, 1, 1]);
        assert_eq!(validate_tree_strategy(&g, &s).unwrap_err().vertex, Some(2));
        let (g, s) = path_strategy(StrategyKind::TreeNonbasic, &[0, 4, 1, 0]);
        assert_eq!(validate_tree_strategy(&g, &s), Ok(()));
    }

    #[test]
    fn tree_must_follow_edges() {
        let g = path(3).unwrap();
        let parent = BTreeMap::from([(2, 0), (1, 0)]);
        let s = Strategy::tree(StrategyKind::TreeBasic, w(0, &[0, 2, 1]), parent);
        assert!(validate_tree_strategy(&g, &s).is_err());
        let parent = BTreeMap::from([(1, 0)]);
        let s = Strategy::tree(StrategyKind::TreeBasic, w(0, &[0, 2, 1]), parent);
        assert_eq!(validate_tree_strategy(&g, &s).unwrap_err().vertex, Some(2));
    }

    #[test]
    fn cycle_tail_template() {
        let (g, s) = cycle_tail_weights(2, 1).unwrap();
        assert_eq!(g.n(), 6);
        assert_eq!(cycle_tail_alpha(2, 1).unwrap(), ratio(8, 7));
        let Support::CycleTail { roles, .. } = &s.support else { panic!() };
        assert_eq!(s.weight.get(roles.upper[0]), &int(2));
        assert_eq!(s.weight.get(roles.lower[0]), &int(2));
        assert_eq!(s.weight.get(roles.spine[0]), &int(4));
        assert_eq!(s.weight.get(roles.spine[1]), &int(8));
        assert_eq!(s.weight.total(), cycle_tail_total(2, 1).unwrap());
        assert_eq!(validate_cycle_tail(&g, &s), Ok(()));
        for (t, tail) in [(2, 0), (3, 2), (4, 1), (5, 0)] {
            let (_, s) = cycle_tail_weights(t, tail).unwrap();
            assert_eq!(s.weight.total(), cycle_tail_total(t, tail).unwrap());
        }
        assert!(cycle_tail_weights(1, 0).is_err());
    }

    #[test]
    fn cycle_tail_scaled_and_tampered() {
        let (g, s) = cycle_tail_weights(2, 0).unwrap();
        let mut scaled = s.clone();
        scaled.weight = s.weight.scale(&int(3)).unwrap();
        assert_eq!(scaled.weight.weights(), [int(0), int(4), int(6), int(6), int(12)]);
        assert_eq!(validate_cycle_tail(&g, &scaled), Ok(()));
        scaled.weight.weights[2] = int(7);
        assert_eq!(validate_cycle_tail(&g, &scaled).unwrap_err().vertex, Some(2));
    }

    #[test]
    fn combining() {
        let a = w(0, &[0, 1, 2]);
        let b = w(0, &[0, 3, 0]);
        let c = combine(&[(&a, int(2)), (&b, ratio(1, 3))]).unwrap();
        assert_eq!(c.weights(), [int(0), int(3), int(4)]);
        assert_eq!(combine(&[(&a, int(1))]).unwrap(), a);
        let other = w(1, &[1, 0, 0]);
        assert_eq!(combine(&[(&a, int(1)), (&other, int(1))]), Err(Error::RootMismatch(0, 1)));
        assert!(combine(&[(&a, int(0))]).is_err());
    }

    #[test]
    fn covering() {
        let f = w(0, &[0, 4, 3, 3, 4]);
        let b = covering_bound(&f).unwrap();
        assert_eq!((b.total.clone(), b.min.clone(), b.bound), (int(14), int(3), 5));
        assert_eq!(covering_bound(&w(0, &[0, 1, 0])), Err(Error::ZeroWeight(2)));
        let scaled = f.scale(&ratio(7, 3)).unwrap();
        assert_eq!(covering_bound(&scaled).unwrap().bound, 5);
    }

    #[test]
    fn attachments() {
        // Square template with a pendant vertex 5 hung off x'_1 = 2.
        let (g0, s) = cycle_tail_weights(2, 0).unwrap();
        let mut edges: Vec<_> = g0.edges().collect();
        edges.push((2, 5));
        let g = Graph::from_edges(6, &edges).unwrap();
        let mut s6 = s.clone();
        let mut ws = s.weight.weights().to_vec();
        ws.push(int(0));
        s6.weight = WeightFunction::new(0, ws).unwrap();
        let ok = attach_tree(&g, &s6, 2, &[(5, 2, int(1))]).unwrap();
        assert_eq!(validate_cycle_tail(&g, &ok), Ok(()));
        assert!(attach_tree(&g, &s6, 2, &[(5, 2, int(0))]).is_ok());
        let err = attach_tree(&g, &s6, 2, &[(5, 2, ratio(3, 2))]).unwrap_err();
        assert_eq!(err.vertex, Some(5));
    }
}
