//! Hand-built certificates for small named graphs.
//!
//! Weights are given by vertex label; cycle-with-tail roles are recovered
//! from the weights by walking the graph.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::certificate::{Certificate, CertificateEntry};
use crate::generators;
use crate::graph::{Graph, Vertex};
use crate::rational::{int, ratio, Rational};
use crate::strategy::{cycle_tail_alpha, CycleRoles, Strategy, StrategyKind, Support, WeightFunction};

fn id(g: &Graph, label: &str) -> Vertex {
    g.vertex_labelled(label).unwrap_or_else(|| panic!("no vertex labelled {label}"))
}

/// Tree strategy from `(child, parent, weight)` triples.
fn tree(g: &Graph, root: Vertex, kind: StrategyKind, edges: &[(Vertex, Vertex, Rational)]) -> Strategy {
    let pairs: Vec<(Vertex, Rational)> = edges.iter().map(|(v, _, w)| (*v, w.clone())).collect();
    let parent: BTreeMap<Vertex, Vertex> = edges.iter().map(|&(v, p, _)| (v, p)).collect();
    let w = WeightFunction::from_pairs(g.n(), root, &pairs).expect("static weights");
    Strategy::tree(kind, w, parent)
}

fn tree_labels(g: &Graph, root: &str, kind: StrategyKind, edges: &[(&str, &str, i64)]) -> Strategy {
    let edges: Vec<_> = edges.iter().map(|&(v, p, w)| (id(g, v), id(g, p), int(w))).collect();
    tree(g, id(g, root), kind, &edges)
}

/// A root path `v_1 .. v_k` weighted `2^(k-1) .. 1`.
fn path_labels(g: &Graph, root: &str, path: &[&str]) -> Strategy {
    let k = path.len();
    let mut edges = Vec::with_capacity(k);
    let mut prev = root;
    for (i, &v) in path.iter().enumerate() {
        edges.push((v, prev, 1i64 << (k - 1 - i)));
        prev = v;
    }
    tree_labels(g, root, StrategyKind::TreeBasic, &edges)
}

/// Cycle-with-tail strategy whose roles are read off the weights: the
/// spine descends from the root's neighbour by halving to `x_t`, the two
/// cycle sides halve from `x_t` down to 2, and `x0` carries alpha. Any
/// common positive scale is allowed.
pub fn cycle_tail_from_weights(
    g: &Graph,
    root: Vertex,
    t: usize,
    tail: usize,
    pairs: &[(Vertex, Rational)],
) -> Option<Strategy> {
    let w = WeightFunction::from_pairs(g.n(), root, pairs).ok()?;
    let s = t + tail;
    let pow = |k: usize| Rational::from_integer(BigInt::one() << k);
    let top = g.neighbors(root).iter().copied().max_by(|a, b| w.get(*a).cmp(w.get(*b)))?;
    let scale = w.get(top) / pow(s);
    let step = |from: Vertex, want: Rational, skip: &[Vertex]| {
        g.neighbors(from).iter().copied().find(|&x| *w.get(x) == want && !skip.contains(&x))
    };
    let mut spine = vec![top];
    for k in (t..s).rev() {
        let next = step(*spine.last().unwrap(), pow(k) * &scale, &spine)?;
        spine.push(next);
    }
    spine.reverse();
    let xt = spine[0];
    let mut sides: Vec<Vec<Vertex>> = Vec::new();
    let mut used = spine.clone();
    for _ in 0..2 {
        let mut side = vec![step(xt, pow(t - 1) * &scale, &used)?];
        used.push(side[0]);
        for k in (1..t - 1).rev() {
            let next = step(*side.last().unwrap(), pow(k) * &scale, &used)?;
            used.push(next);
            side.push(next);
        }
        side.reverse();
        sides.push(side);
    }
    let alpha = cycle_tail_alpha(t, tail).ok()? * &scale;
    let x0 = step(sides[0][0], alpha, &used)?;
    let lower = sides.pop()?;
    let upper = sides.pop()?;
    Some(Strategy {
        kind: StrategyKind::CycleTail,
        weight: w,
        support: Support::CycleTail { t, tail, roles: CycleRoles { x0, upper, lower, spine } },
        attachments: Vec::new(),
        trusted: false,
    })
}

fn entry(strategy: Strategy, coefficient: Rational) -> CertificateEntry {
    CertificateEntry { strategy, coefficient }
}

fn unit(strategies: Vec<Strategy>) -> Vec<CertificateEntry> {
    strategies.into_iter().map(|s| entry(s, int(1))).collect()
}

/// `C5` rooted at 0: the two three-edge paths, `S = 14`, `C = 3`.
pub fn five_cycle() -> Certificate {
    let g = generators::cycle(5).expect("static");
    let a = tree(&g, 0, StrategyKind::TreeBasic, &[(1, 0, int(4)), (2, 1, int(2)), (3, 2, int(1))]);
    let b = tree(&g, 0, StrategyKind::TreeBasic, &[(4, 0, int(4)), (3, 4, int(2)), (2, 3, int(1))]);
    Certificate { graph: g, root: 0, entries: unit(vec![a, b]), claimed_bound: 5 }
}

/// The 3-cube rooted at `000`: the square weights times 3 around each
/// neighbour of the root, giving 12 on every other vertex.
pub fn cube() -> Certificate {
    let g = generators::hypercube(3).expect("static");
    let root = id(&g, "000");
    let all = id(&g, "111");
    let entries = [1usize, 2, 4]
        .iter()
        .map(|&hub| {
            let mut pairs = vec![(hub, int(12)), (all, int(4))];
            pairs.extend([1usize, 2, 4].iter().filter(|&&b| b != hub).map(|&b| (hub | b, int(6))));
            entry(cycle_tail_from_weights(&g, root, 2, 0, &pairs).expect("static"), int(1))
        })
        .collect();
    Certificate { graph: g, root, entries, claimed_bound: 8 }
}

/// Template of the three-path weight function: `r - a(12)`, `a - b_i(6)`,
/// `b_i - x(5)`, as edges of the Lemke graph.
fn lemke_centre_template() -> Vec<(Vertex, Vertex)> {
    vec![(0, 1), (1, 2), (1, 3), (1, 4), (2, 5), (3, 5), (4, 5)]
}

/// The three-path weight function on its own six-vertex graph, root 0.
pub fn three_path_weights() -> (Graph, WeightFunction) {
    let g = Graph::from_edges(6, &lemke_centre_template()).expect("static");
    let w = WeightFunction::new(0, vec![int(0), int(12), int(6), int(6), int(6), int(5)]).expect("static");
    (g, w)
}

/// The Lemke graph at its hard root. The centre strategy is the three-path
/// weight function with `y` hung off `b1` at weight 3; the right one is a
/// nonbasic tree through `z`. `S = 55`, `C = 7`.
pub fn lemke() -> Certificate {
    let g = generators::lemke();
    let v = |l: &str| id(&g, l);
    let centre_w = WeightFunction::from_pairs(
        g.n(),
        v("r"),
        &[
            (v("a"), int(12)),
            (v("b1"), int(6)),
            (v("b2"), int(6)),
            (v("b3"), int(6)),
            (v("x"), int(5)),
            (v("y"), int(3)),
        ],
    )
    .expect("static");
    let mut centre = Strategy::explicit(centre_w, Some(lemke_centre_template()), true);
    centre.attachments.push(crate::strategy::Attachment { vertex: v("y"), parent: v("b1") });
    let right = tree_labels(
        &g,
        "r",
        StrategyKind::TreeNonbasic,
        &[("z", "r", 8), ("y", "z", 4), ("b1", "y", 1), ("x", "y", 2), ("b2", "x", 1), ("b3", "x", 1)],
    );
    Certificate { root: v("r"), entries: unit(vec![centre, right]), graph: g, claimed_bound: 8 }
}

/// Roots of `G(1,1,1)` with a bundled certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum G111Root {
    /// The subdivision vertex between `v` and `a`.
    S1,
    V,
    A,
}

impl G111Root {
    pub const ALL: [G111Root; 3] = [G111Root::S1, G111Root::V, G111Root::A];

    pub fn label(self) -> &'static str {
        match self {
            G111Root::S1 => "s1",
            G111Root::V => "v",
            G111Root::A => "a",
        }
    }
}

/// `G(1,1,1)` certificates: 20/3, 24/4 and 46/7, each giving 7.
pub fn g111(root: G111Root) -> Certificate {
    let g = generators::family_g(1, 1, 1).expect("static");
    let basic = StrategyKind::TreeBasic;
    let strategies = match root {
        G111Root::S1 => vec![
            tree_labels(
                &g,
                "s1",
                basic,
                &[("v", "s1", 4), ("u1", "v", 2), ("t1", "v", 2), ("c", "u1", 1), ("b", "t1", 1)],
            ),
            tree_labels(
                &g,
                "s1",
                basic,
                &[("a", "s1", 4), ("b", "a", 2), ("c", "a", 2), ("t1", "b", 1), ("u1", "c", 1)],
            ),
        ],
        G111Root::V => vec![
            tree_labels(&g, "v", basic, &[("u1", "v", 4), ("c", "u1", 2), ("a", "c", 1), ("b", "c", 1)]),
            tree_labels(&g, "v", basic, &[("s1", "v", 4), ("a", "s1", 2), ("c", "a", 1), ("b", "a", 1)]),
            tree_labels(&g, "v", basic, &[("t1", "v", 4), ("b", "t1", 2), ("a", "b", 1), ("c", "b", 1)]),
        ],
        G111Root::A => vec![
            path_labels(&g, "a", &["b", "t1", "v", "u1"]),
            path_labels(&g, "a", &["c", "u1", "v", "t1"]),
            tree_labels(&g, "a", basic, &[("s1", "a", 8), ("v", "s1", 4), ("t1", "v", 2), ("u1", "v", 2)]),
        ],
    };
    let root = id(&g, root.label());
    Certificate { graph: g, root, entries: unit(strategies), claimed_bound: 7 }
}

/// The weak Bruhat order on `S_4` rooted at `1234`: two cycle-with-tail
/// strategies at coefficient 1/8, one at 1/4, and an explicit strategy at
/// 1/4 accepted without an exhaustive check. `S = 63`, `C = 1`.
pub fn bruhat4() -> Certificate {
    let g = generators::bruhat(4).expect("static");
    let root = id(&g, "1234");
    let weights = |xs: &[(&str, Rational)]| -> Vec<(Vertex, Rational)> {
        xs.iter().map(|(l, w)| (id(&g, l), w.clone())).collect()
    };
    let left = weights(&[
        ("1243", int(32)),
        ("1423", int(16)),
        ("1432", int(8)),
        ("4123", int(8)),
        ("4132", int(4)),
        ("4213", int(4)),
        ("4231", int(2)),
        ("4312", int(2)),
        ("4321", ratio(38, 31)),
    ]);
    let middle = weights(&[
        ("1324", int(30)),
        ("1342", int(15)),
        ("3124", int(15)),
        ("3142", int(10)),
        ("3412", int(5)),
        ("3421", ratio(5, 2)),
        ("4312", ratio(5, 2)),
        ("4321", ratio(40, 31)),
    ]);
    let right1 = weights(&[
        ("2134", int(32)),
        ("2143", int(16)),
        ("2314", int(16)),
        ("2413", int(8)),
        ("3214", int(8)),
        ("2431", int(4)),
        ("3241", int(4)),
        ("3421", int(2)),
        ("4231", int(2)),
        ("4321", ratio(46, 31)),
    ]);
    let right2 = weights(&[
        ("2134", int(32)),
        ("2143", int(16)),
        ("2314", int(16)),
        ("2341", int(8)),
        ("2413", int(8)),
        ("2431", int(4)),
        ("3241", int(4)),
        ("3421", int(2)),
        ("4231", int(2)),
        ("4321", ratio(46, 31)),
    ]);
    let template: Vec<(Vertex, Vertex)> = [
        ("1234", "1324"),
        ("1324", "1342"),
        ("1324", "3124"),
        ("1342", "3142"),
        ("3124", "3142"),
        ("3142", "3412"),
        ("3412", "3421"),
        ("3412", "4312"),
        ("3421", "4321"),
        ("4312", "4321"),
    ]
    .iter()
    .map(|(a, b)| (id(&g, a), id(&g, b)))
    .collect();
    let middle =
        Strategy::explicit(WeightFunction::from_pairs(g.n(), root, &middle).expect("static"), Some(template), true);
    let ct = |t, tail, pairs: &[(Vertex, Rational)]| cycle_tail_from_weights(&g, root, t, tail, pairs).expect("static");
    let entries = vec![
        entry(ct(4, 1, &left), ratio(1, 4)),
        entry(middle, ratio(1, 4)),
        entry(ct(5, 0, &right1), ratio(1, 8)),
        entry(ct(5, 0, &right2), ratio(1, 8)),
    ];
    Certificate { graph: g, root, entries, claimed_bound: 64 }
}

/// Every bundled certificate with its short name.
pub fn all() -> Vec<(&'static str, Certificate)> {
    vec![
        ("c5", five_cycle()),
        ("q3", cube()),
        ("lemke", lemke()),
        ("g111_s1", g111(G111Root::S1)),
        ("g111_v", g111(G111Root::V)),
        ("g111_a", g111(G111Root::A)),
        ("b4", bruhat4()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::{verify_certificate, EntryStatus, VerifyMode};
    use crate::strategy::covering_bound;
    use crate::SolverBudget;

    #[test]
    fn all_confirm_structurally() {
        for (name, c) in all() {
            let r = verify_certificate(&c, VerifyMode::Structural, &SolverBudget::default());
            assert!(r.is_confirmed(), "{name}: {r:?}");
        }
    }

    #[test]
    fn totals_and_minima() {
        let expect = [
            ("c5", int(14), int(3)),
            ("q3", int(84), int(12)),
            ("lemke", int(55), int(7)),
            ("g111_s1", int(20), int(3)),
            ("g111_v", int(24), int(4)),
            ("g111_a", int(46), int(7)),
            ("b4", int(63), int(1)),
        ];
        for ((name, c), (want, total, min)) in all().into_iter().zip(expect) {
            assert_eq!(name, want);
            let cb = covering_bound(&c.combined().unwrap()).unwrap();
            assert_eq!((cb.total, cb.min, cb.bound), (total, min, c.claimed_bound), "{name}");
        }
    }

    #[test]
    fn cube_is_flat() {
        let w = cube().combined().unwrap();
        assert!((1..8).all(|v| *w.get(v) == int(12)));
    }

    #[test]
    fn lemke_centre_by_exhaustion() {
        let r = verify_certificate(&lemke(), VerifyMode::Bruteforce, &SolverBudget::default());
        assert!(r.is_confirmed(), "{r:?}");
        assert_eq!(r.entries[0].status, EntryStatus::Bruteforce);
    }

    #[test]
    fn b4_middle_is_trusted() {
        let r = verify_certificate(&bruhat4(), VerifyMode::Structural, &SolverBudget::default());
        let statuses: Vec<_> = r.entries.iter().map(|e| e.status.as_str()).collect();
        assert_eq!(statuses, ["valid_structural", "trusted_unchecked", "valid_structural", "valid_structural"]);
    }
}
