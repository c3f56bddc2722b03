//! Structural reasons a graph cannot be Class 0, and the audit pipeline
//! that combines them with exact search.
//!
//! A graph is Class 0 when `pi(G) = n`. Each obstruction here produces a
//! configuration of at least `n` pebbles that some root cannot be reached
//! from, or names an edge-count bound the graph falls below.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::config::Configuration;
use crate::generators::{family_f, family_g, petersen_generalized};
use crate::graph::{Graph, Vertex};
use crate::search::{is_class0, Class0};
use crate::solver::{is_solvable, Solvability};
use crate::{Error, SolverBudget};

/// Which degree/distance pattern made a pair `(u, v)` applicable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SnlStatement {
    /// `d(u) = 2`, `dist(u, v) >= 3`, `d(v) <= 3`.
    DegreeTwo,
    /// `d(u) = 3`, `dist(u, v) >= 4`, `d(v) <= 3` and every neighbour of
    /// `v` has degree 3.
    DegreeThree,
}

impl SnlStatement {
    pub fn number(self) -> u8 {
        match self {
            SnlStatement::DegreeTwo => 1,
            SnlStatement::DegreeThree => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct SnlHit {
    pub u: Vertex,
    pub v: Vertex,
    pub statement: SnlStatement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SnlWitness {
    /// Unsolvable for root `u`, with at least `n` pebbles.
    Witness {
        statement: SnlStatement,
        configuration: Configuration,
    },
    NotApplicable(String),
}

fn statement_for(g: &Graph, dist_u: &[usize], u: Vertex, v: Vertex) -> Result<SnlStatement, String> {
    if g.degree(v) > 3 {
        return Err(format!("d(v) = {} exceeds 3", g.degree(v)));
    }
    match g.degree(u) {
        2 if dist_u[v] >= 3 => Ok(SnlStatement::DegreeTwo),
        2 => Err(format!("dist(u, v) = {} is below 3", dist_u[v])),
        3 if dist_u[v] < 4 => Err(format!("dist(u, v) = {} is below 4", dist_u[v])),
        3 => match g.neighbors(v).iter().find(|&&x| g.degree(x) != 3) {
            Some(&x) => Err(format!("neighbour {x} of v has degree {}", g.degree(x))),
            None => Ok(SnlStatement::DegreeThree),
        },
        d => Err(format!("d(u) = {d} is neither 2 nor 3")),
    }
}

/// With `d(u) = 2`: 7 pebbles on `v`, none on `N[u]` or `N(v)`, one
/// elsewhere. With `d(u) = 3`: 15 on `v`, none on `N[u]` or on
/// `N[N[v]] - v`, one elsewhere. Root `u` in both cases.
pub fn snl_witness(g: &Graph, u: Vertex, v: Vertex) -> Result<SnlWitness, Error> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    let dist_u = g.bfs(u);
    let statement = match statement_for(g, &dist_u, u, v) {
        Ok(s) => s,
        Err(why) => return Ok(SnlWitness::NotApplicable(why)),
    };
    let mut counts = vec![1u32; g.n()];
    counts[u] = 0;
    for &x in g.neighbors(u) {
        counts[x] = 0;
    }
    for &x in g.neighbors(v) {
        counts[x] = 0;
        if statement == SnlStatement::DegreeThree {
            for &y in g.neighbors(x) {
                counts[y] = 0;
            }
        }
    }
    counts[v] = match statement {
        SnlStatement::DegreeTwo => 7,
        SnlStatement::DegreeThree => 15,
    };
    Ok(SnlWitness::Witness { statement, configuration: Configuration::new(counts) })
}

/// Every ordered pair to which one of the two patterns applies.
pub fn scan_snl(g: &Graph) -> Vec<SnlHit> {
    let mut hits = Vec::new();
    for u in 0..g.n() {
        if !matches!(g.degree(u), 2 | 3) {
            continue;
        }
        let dist_u = g.bfs(u);
        for v in 0..g.n() {
            if let Ok(statement) = statement_for(g, &dist_u, u, v) {
                hits.push(SnlHit { u, v, statement });
            }
        }
    }
    hits
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutWitness {
    pub cut_vertex: Vertex,
    pub v1: Vertex,
    pub v2: Vertex,
    pub root: Vertex,
    pub configuration: Configuration,
}

/// 3 pebbles on `v1`, none on `u` or `v2`, one elsewhere, root `v2`, where
/// `v1` and `v2` are the first neighbours of `u` in different components
/// of `g - u`.
pub fn cut_vertex_witness(g: &Graph, u: Vertex) -> Result<CutWitness, Error> {
    g.check_vertex(u)?;
    let comp = g.components_without(u);
    let nbrs = g.neighbors(u);
    let not_cut = || Error::InvalidParameter { family: "cut vertex", reason: format!("{u} is not a cut vertex") };
    let &v1 = nbrs.first().ok_or_else(not_cut)?;
    let &v2 = nbrs.iter().find(|&&x| comp[x] != comp[v1]).ok_or_else(not_cut)?;
    let mut counts = vec![1u32; g.n()];
    counts[u] = 0;
    counts[v2] = 0;
    counts[v1] = 3;
    Ok(CutWitness { cut_vertex: u, v1, v2, root: v2, configuration: Configuration::new(counts) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Reported for reference; never used to refute.
    Info,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Info => "info",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Checked unsolvable by exact search unless `verified` is false.
    Unsolvable {
        root: Vertex,
        configuration: Configuration,
        verified: bool,
    },
    CutVertex {
        vertex: Vertex,
        root: Vertex,
        configuration: Configuration,
        verified: bool,
    },
    /// The graph has `edges` edges but the bound asks for `required`.
    EdgeCount {
        edges: usize,
        required: usize,
    },
}

impl Witness {
    fn solver_checked(&self) -> bool {
        match self {
            Witness::Unsolvable { verified, .. } | Witness::CutVertex { verified, .. } => *verified,
            Witness::EdgeCount { .. } => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub condition: String,
    pub status: Status,
    pub detail: String,
    pub witness: Option<Witness>,
}

/// Diameter-dependent edge lower bounds for Class 0 graphs.
///
/// Diameter at least 3 needs `3e >= 5n - 11`. Diameter 2 without a cut
/// vertex needs `e >= 2n - 5`. The `floor(3n/2)` line is informational.
pub fn audit_edge_bounds(g: &Graph) -> Vec<Verdict> {
    let (n, e, d) = (g.n(), g.edge_count(), g.diameter());
    let mut out = Vec::new();
    if d >= 3 {
        let required = (5 * n).saturating_sub(11).div_ceil(3);
        out.push(edge_verdict("diameter_3_edge_bound", e, required, format!("3e >= 5n - 11 with n = {n}, e = {e}")));
    } else if d == 2 && g.cut_vertices().is_empty() {
        let required = (2 * n).saturating_sub(5);
        out.push(edge_verdict("diameter_2_edge_bound", e, required, format!("e >= 2n - 5 with n = {n}, e = {e}")));
    }
    out.push(Verdict {
        condition: "three_halves_edge_bound".into(),
        status: Status::Info,
        detail: format!("e = {e}, floor(3n/2) = {}", 3 * n / 2),
        witness: None,
    });
    out
}

fn edge_verdict(name: &str, e: usize, required: usize, detail: String) -> Verdict {
    let pass = e >= required;
    Verdict {
        condition: name.into(),
        status: if pass { Status::Pass } else { Status::Fail },
        detail,
        witness: (!pass).then_some(Witness::EdgeCount { edges: e, required }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqualityClass {
    Petersen,
    F(usize, usize),
    G(usize, usize, usize),
}

impl core::fmt::Display for EqualityClass {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            EqualityClass::Petersen => write!(f, "petersen"),
            EqualityClass::F(p, q) => write!(f, "F({p},{q})"),
            EqualityClass::G(p, q, r) => write!(f, "G({p},{q},{r})"),
        }
    }
}

/// Identifies diameter-2, cut-vertex-free graphs with exactly `2n - 5`
/// edges. Parameters are returned sorted.
pub fn classify_equality_diam2(g: &Graph) -> Option<EqualityClass> {
    let n = g.n();
    if n < 5 || g.diameter() != 2 || !g.cut_vertices().is_empty() || g.edge_count() != 2 * n - 5 {
        return None;
    }
    if n == 10 && isomorphism(g, &petersen_generalized(5, 2).ok()?).is_some() {
        return Some(EqualityClass::Petersen);
    }
    for p in 1..=(n - 3) / 2 {
        let q = n - 3 - p;
        if isomorphism(g, &family_f(p, q).ok()?).is_some() {
            return Some(EqualityClass::F(p, q));
        }
    }
    if n >= 7 {
        for p in 1..=(n - 4) / 3 {
            for q in p..=(n - 4 - p) / 2 {
                let r = n - 4 - p - q;
                if isomorphism(g, &family_g(p, q, r).ok()?).is_some() {
                    return Some(EqualityClass::G(p, q, r));
                }
            }
        }
    }
    None
}

/// A bijection `f` with `uv` an edge of `g` iff `f(u)f(v)` is an edge of
/// `h`, found by backtracking in BFS order after invariant screening.
pub fn isomorphism(g: &Graph, h: &Graph) -> Option<Vec<Vertex>> {
    let n = g.n();
    if n != h.n() || g.edge_count() != h.edge_count() || g.degree_sequence() != h.degree_sequence() {
        return None;
    }
    let profile = |x: &Graph| {
        let mut p: Vec<Vec<usize>> = x
            .distance_matrix()
            .into_iter()
            .map(|row| {
                let mut r = row;
                r.sort_unstable();
                r
            })
            .collect();
        p.sort_unstable();
        p
    };
    if profile(g) != profile(h) {
        return None;
    }
    if n == 0 {
        return Some(Vec::new());
    }
    let order = {
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let start = (0..n).max_by_key(|&v| (g.degree(v), core::cmp::Reverse(v))).unwrap();
        seen[start] = true;
        order.push(start);
        let mut i = 0;
        while i < order.len() {
            for &y in g.neighbors(order[i]) {
                if !seen[y] {
                    seen[y] = true;
                    order.push(y);
                }
            }
            i += 1;
        }
        order
    };
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(g, h, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn extend(g: &Graph, h: &Graph, order: &[Vertex], i: usize, map: &mut [Vertex], used: &mut [bool]) -> bool {
    let Some(&v) = order.get(i) else {
        return true;
    };
    for x in 0..h.n() {
        if used[x] || h.degree(x) != g.degree(v) {
            continue;
        }
        let consistent = order[..i].iter().all(|&u| g.has_edge(u, v) == h.has_edge(map[u], x));
        if !consistent {
            continue;
        }
        map[v] = x;
        used[x] = true;
        if extend(g, h, order, i + 1, map, used) {
            return true;
        }
        used[x] = false;
        map[v] = usize::MAX;
    }
    false
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Conclusion {
    /// No obstruction found; `confirmed` when exact search agreed.
    PossiblyClass0,
    ConfirmedClass0,
    /// The first failing verdict, with a solver-checked configuration when
    /// one is available.
    NotClass0 {
        reason: String,
        witness: Witness,
    },
}

impl Conclusion {
    pub fn as_str(&self) -> &'static str {
        match self {
            Conclusion::PossiblyClass0 => "possibly_class0",
            Conclusion::ConfirmedClass0 => "confirmed_class0",
            Conclusion::NotClass0 { .. } => "not_class0",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub n: usize,
    pub edges: usize,
    pub diameter: usize,
    pub min_degree: usize,
    pub verdicts: Vec<Verdict>,
    pub equality_class: Option<EqualityClass>,
    /// Whether the exact Class 0 search ran out of budget.
    pub budget_exceeded: bool,
    pub conclusion: Conclusion,
}

/// Cut vertices, degree/distance patterns, edge bounds, then exact search.
/// Each witness configuration is checked with the solver under `budget`.
pub fn refute_class0(g: &Graph, budget: &SolverBudget) -> Result<AuditReport, Error> {
    let mut verdicts = Vec::new();
    let check = |root: Vertex, p: &Configuration| -> Result<Option<bool>, Error> {
        Ok(match is_solvable(g, root, p, budget)? {
            Solvability::Unsolvable => Some(true),
            Solvability::BudgetExceeded => Some(false),
            Solvability::Solvable(_) => None,
        })
    };

    let cuts = g.cut_vertices();
    match cuts.first() {
        None => verdicts.push(pass("no_cut_vertex", "graph is 2-connected".into())),
        Some(&u) => {
            let w = cut_vertex_witness(g, u)?;
            let detail = format!("cut vertex {u} separates {} from {}", w.v1, w.v2);
            verdicts.push(match check(w.root, &w.configuration)? {
                Some(verified) => Verdict {
                    condition: "no_cut_vertex".into(),
                    status: Status::Fail,
                    detail,
                    witness: Some(Witness::CutVertex {
                        vertex: u,
                        root: w.root,
                        configuration: w.configuration,
                        verified,
                    }),
                },
                None => unexpected("no_cut_vertex", detail),
            });
        }
    }

    let hits = scan_snl(g);
    match hits.first() {
        None => verdicts.push(pass("small_neighbourhood", "no applicable pair".into())),
        Some(hit) => {
            let SnlWitness::Witness { configuration, .. } = snl_witness(g, hit.u, hit.v)? else {
                unreachable!("scan only returns applicable pairs")
            };
            let detail = format!(
                "{} applicable pairs; first u = {}, v = {}, pattern {}",
                hits.len(),
                hit.u,
                hit.v,
                hit.statement.number()
            );
            verdicts.push(match check(hit.u, &configuration)? {
                Some(verified) => Verdict {
                    condition: "small_neighbourhood".into(),
                    status: Status::Fail,
                    detail,
                    witness: Some(Witness::Unsolvable { root: hit.u, configuration, verified }),
                },
                None => unexpected("small_neighbourhood", detail),
            });
        }
    }

    verdicts.extend(audit_edge_bounds(g));
    let equality_class = classify_equality_diam2(g);
    let is_equality = g.diameter() == 2 && cuts.is_empty() && g.n() >= 3 && g.edge_count() == 2 * g.n() - 5;
    if is_equality {
        verdicts.push(match equality_class {
            Some(c) => Verdict {
                condition: "edge_bound_equality".into(),
                status: Status::Pass,
                detail: format!("{c}"),
                witness: None,
            },
            None => Verdict {
                condition: "edge_bound_equality".into(),
                status: Status::Fail,
                detail: "meets e = 2n - 5 but matches no known equality graph".into(),
                witness: Some(Witness::EdgeCount { edges: g.edge_count(), required: g.edge_count() + 1 }),
            },
        });
    }

    let mut budget_exceeded = false;
    let failure = verdicts
        .iter()
        .filter(|v| v.status == Status::Fail)
        .min_by_key(|v| !v.witness.as_ref().is_some_and(Witness::solver_checked));
    let conclusion = match failure {
        Some(v) if v.witness.as_ref().is_some_and(Witness::solver_checked) => {
            Conclusion::NotClass0 { reason: v.condition.clone(), witness: v.witness.clone().unwrap() }
        }
        _ => match is_class0(g, budget)? {
            Class0::Yes if failure.is_none() => Conclusion::ConfirmedClass0,
            Class0::Yes => {
                let v = failure.unwrap();
                verdicts
                    .push(unexpected("exact_search", format!("exact search finds Class 0 despite {}", v.condition)));
                Conclusion::ConfirmedClass0
            }
            Class0::No { root, witness } => Conclusion::NotClass0 {
                reason: failure.map_or_else(|| "exact_search".into(), |v| v.condition.clone()),
                witness: Witness::Unsolvable { root, configuration: witness, verified: true },
            },
            Class0::BudgetExceeded => {
                budget_exceeded = true;
                match failure {
                    Some(v) => {
                        Conclusion::NotClass0 { reason: v.condition.clone(), witness: v.witness.clone().unwrap() }
                    }
                    None => Conclusion::PossiblyClass0,
                }
            }
        },
    };
    Ok(AuditReport {
        n: g.n(),
        edges: g.edge_count(),
        diameter: g.diameter(),
        min_degree: g.min_degree(),
        verdicts,
        equality_class,
        budget_exceeded,
        conclusion,
    })
}

fn pass(name: &str, detail: String) -> Verdict {
    Verdict { condition: name.into(), status: Status::Pass, detail, witness: None }
}

/// A structural witness the solver found solvable; this would be a bug.
fn unexpected(name: &str, detail: String) -> Verdict {
    Verdict {
        condition: name.into(),
        status: Status::Info,
        detail: format!("{detail}; witness unexpectedly solvable"),
        witness: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    fn budget() -> SolverBudget {
        SolverBudget::default()
    }

    #[test]
    fn petersen_not_applicable() {
        let g = petersen_generalized(5, 2).unwrap();
        assert!(scan_snl(&g).is_empty());
        assert!(matches!(snl_witness(&g, 0, 1).unwrap(), SnlWitness::NotApplicable(_)));
    }

    #[test]
    fn scan_empty_cases() {
        assert!(scan_snl(&complete(5).unwrap()).is_empty());
        assert!(scan_snl(&hypercube(3).unwrap()).is_empty());
    }

    #[test]
    fn degree_two_witness() {
        let g = cycle(7).unwrap();
        let SnlWitness::Witness { statement, configuration } = snl_witness(&g, 0, 3).unwrap() else { panic!() };
        assert_eq!(statement, SnlStatement::DegreeTwo);
        assert!(configuration.size() >= 7);
        assert_eq!(is_solvable(&g, 0, &configuration, &budget()).unwrap(), Solvability::Unsolvable);
    }

    #[test]
    fn cut_vertex_on_path() {
        let g = path(3).unwrap();
        let w = cut_vertex_witness(&g, 1).unwrap();
        assert_eq!(w.configuration.counts(), [3, 0, 0]);
        assert_eq!(w.root, 2);
        assert_eq!(w.configuration.size(), 3);
        assert!(cut_vertex_witness(&cycle(5).unwrap(), 0).is_err());
        let report = refute_class0(&g, &budget()).unwrap();
        assert_eq!(report.conclusion.as_str(), "not_class0");
    }

    #[test]
    fn classify_families() {
        assert_eq!(classify_equality_diam2(&petersen_generalized(5, 2).unwrap()), Some(EqualityClass::Petersen));
        assert_eq!(classify_equality_diam2(&family_f(3, 4).unwrap()), Some(EqualityClass::F(3, 4)));
        assert_eq!(classify_equality_diam2(&family_f(4, 3).unwrap()), Some(EqualityClass::F(3, 4)));
        assert_eq!(classify_equality_diam2(&family_g(3, 1, 2).unwrap()), Some(EqualityClass::G(1, 2, 3)));
        assert_eq!(classify_equality_diam2(&complete(5).unwrap()), None);
    }

    #[test]
    fn edge_bounds() {
        let v = audit_edge_bounds(&family_g(2, 2, 2).unwrap());
        assert_eq!(v[0].status, Status::Pass);
        let v = audit_edge_bounds(&cycle(8).unwrap());
        assert_eq!(v[0].condition, "diameter_3_edge_bound");
        assert_eq!(v[0].status, Status::Fail);
    }

    #[test]
    fn cube_confirmed() {
        let r = refute_class0(&hypercube(3).unwrap(), &budget()).unwrap();
        assert_eq!(r.conclusion, Conclusion::ConfirmedClass0);
    }

    #[test]
    fn budget_leaves_possible() {
        let r = refute_class0(&hypercube(3).unwrap(), &SolverBudget::states(1)).unwrap();
        assert!(r.budget_exceeded);
        assert_eq!(r.conclusion, Conclusion::PossiblyClass0);
    }
}
