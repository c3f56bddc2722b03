//! Graph families.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::graph::{Graph, Vertex};
use crate::Error;

/// Largest `m` accepted by [`bruhat`].
pub const BRUHAT_DEFAULT_CAP: usize = 6;

fn bad(family: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter { family, reason: reason.into() }
}

pub fn path(n: usize) -> Result<Graph, Error> {
    if n == 0 {
        return Err(bad("path", "n must be at least 1"));
    }
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges)
}

pub fn cycle(n: usize) -> Result<Graph, Error> {
    if n < 3 {
        return Err(bad("cycle", "n must be at least 3"));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

pub fn complete(n: usize) -> Result<Graph, Error> {
    if n == 0 {
        return Err(bad("complete", "n must be at least 1"));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges)
}

/// `d`-cube; vertex `i` is labelled by its `d`-bit binary string.
pub fn hypercube(d: usize) -> Result<Graph, Error> {
    if d > 16 {
        return Err(Error::TooLarge(format!("hypercube dimension {d} exceeds 16")));
    }
    let n = 1usize << d;
    let mut edges = Vec::new();
    for u in 0..n {
        for b in 0..d {
            let v = u ^ (1 << b);
            if u < v {
                edges.push((u, v));
            }
        }
    }
    let labels = (0..n).map(|v| (v, (0..d).rev().map(|b| if v >> b & 1 == 1 { '1' } else { '0' }).collect())).collect();
    Graph::from_edges(n, &edges)?.with_labels(labels)
}

/// Outer cycle `u_i = i`, inner vertices `w_i = n + i`, spokes `u_i w_i`
/// and inner edges `w_i w_{i+k}`.
pub fn petersen_generalized(n: usize, k: usize) -> Result<Graph, Error> {
    if n < 3 {
        return Err(bad("petersen", "n must be at least 3"));
    }
    if k == 0 || 2 * k >= n {
        return Err(bad("petersen", "k must satisfy 1 <= k < n/2"));
    }
    let mut edges = Vec::with_capacity(3 * n);
    for i in 0..n {
        edges.push((i, (i + 1) % n));
        edges.push((i, n + i));
        edges.push((n + i, n + (i + k) % n));
    }
    let mut labels = BTreeMap::new();
    for i in 0..n {
        labels.insert(i, format!("u{i}"));
        labels.insert(n + i, format!("w{i}"));
    }
    Graph::from_edges(2 * n, &edges)?.with_labels(labels)
}

/// The eight-vertex Lemke graph, vertex 0 being the root that needs the
/// non-tree weight function. See [`LEMKE_EDGES`].
pub fn lemke() -> Graph {
    let labels = LEMKE_LABELS.iter().enumerate().map(|(v, l)| (v, l.to_string())).collect();
    Graph::from_edges(8, &LEMKE_EDGES).and_then(|g| g.with_labels(labels)).expect("static edge list is valid")
}

/// Lemke graph edge list. `r` is the hard root and `a` its degree-four
/// neighbour. `b1 b2 b3` are the common neighbours of `a`, `x` and `y`;
/// `y` also sees `x` and `z`, and `z` closes the cycle back to `r`.
pub const LEMKE_EDGES: [(Vertex, Vertex); 13] =
    [(0, 1), (0, 7), (1, 2), (1, 3), (1, 4), (2, 5), (3, 5), (4, 5), (2, 6), (3, 6), (4, 6), (5, 6), (6, 7)];

pub const LEMKE_LABELS: [&str; 8] = ["r", "a", "b1", "b2", "b3", "x", "y", "z"];

/// Permutations of `1..=m`, adjacent when they differ by swapping two
/// neighbouring positions. Vertex ids follow lexicographic order, so the
/// identity is vertex 0.
pub fn bruhat(m: usize) -> Result<Graph, Error> {
    bruhat_capped(m, BRUHAT_DEFAULT_CAP)
}

pub fn bruhat_capped(m: usize, cap: usize) -> Result<Graph, Error> {
    if m < 2 {
        return Err(bad("bruhat", "m must be at least 2"));
    }
    if m > cap || m > 9 {
        return Err(Error::TooLarge(format!("bruhat order {m} exceeds cap {}", cap.min(9))));
    }
    let perms = permutations(m);
    let index: BTreeMap<&[u8], Vertex> = perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let mut edges = Vec::new();
    for (u, p) in perms.iter().enumerate() {
        for i in 0..m - 1 {
            let mut q = p.clone();
            q.swap(i, i + 1);
            let v = index[q.as_slice()];
            if u < v {
                edges.push((u, v));
            }
        }
    }
    let labels =
        perms.iter().enumerate().map(|(i, p)| (i, p.iter().map(|&d| char::from(b'0' + d)).collect())).collect();
    Graph::from_edges(perms.len(), &edges)?.with_labels(labels)
}

fn permutations(m: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (1..=m as u8).collect();
    loop {
        out.push(cur.clone());
        // Next lexicographic permutation.
        let Some(i) = (0..m - 1).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..m).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
}

/// Triangle `v a b` with the edges `va`, `vb` replaced by `p` and `q`
/// subdivided paths. Ids: `v = 0`, `a = 1`, `b = 2`, then the `p` middle
/// vertices on `v..a`, then the `q` on `v..b`.
pub fn family_f(p: usize, q: usize) -> Result<Graph, Error> {
    if p == 0 || q == 0 {
        return Err(bad("familyF", "p and q must be at least 1"));
    }
    let n = 3 + p + q;
    let mut edges = Vec::with_capacity(2 * n - 5);
    edges.push((1, 2));
    let mut labels: BTreeMap<Vertex, String> =
        [(0, "v"), (1, "a"), (2, "b")].into_iter().map(|(i, l)| (i, l.to_string())).collect();
    let mut next = 3;
    for (end, count, tag) in [(1, p, "s"), (2, q, "t")] {
        for i in 0..count {
            edges.push((0, next));
            edges.push((next, end));
            labels.insert(next, format!("{tag}{}", i + 1));
            next += 1;
        }
    }
    Graph::from_edges(n, &edges)?.with_labels(labels)
}

/// `K4` on `v a b c` with `va`, `vb`, `vc` replaced by `p`, `q`, `r`
/// subdivided paths. Ids: `v = 0`, `a = 1`, `b = 2`, `c = 3`, then the
/// middle vertices in the order `v..a`, `v..b`, `v..c`.
pub fn family_g(p: usize, q: usize, r: usize) -> Result<Graph, Error> {
    if p == 0 || q == 0 || r == 0 {
        return Err(bad("familyG", "p, q and r must be at least 1"));
    }
    let n = 4 + p + q + r;
    let mut edges = alloc::vec![(1, 2), (2, 3), (1, 3)];
    let mut labels: BTreeMap<Vertex, String> =
        [(0, "v"), (1, "a"), (2, "b"), (3, "c")].into_iter().map(|(i, l)| (i, l.to_string())).collect();
    let mut next = 4;
    for (end, count, tag) in [(1, p, "s"), (2, q, "t"), (3, r, "u")] {
        for i in 0..count {
            edges.push((0, next));
            edges.push((next, end));
            labels.insert(next, format!("{tag}{}", i + 1));
            next += 1;
        }
    }
    Graph::from_edges(n, &edges)?.with_labels(labels)
}

/// Adds vertex `n` with the same open neighbourhood as `v`.
pub fn clone_vertex(g: &Graph, v: Vertex) -> Result<Graph, Error> {
    g.check_vertex(v)?;
    let n = g.n();
    let mut edges: Vec<_> = g.edges().collect();
    edges.extend(g.neighbors(v).iter().map(|&u| (u, n)));
    let mut labels = g.labels().clone();
    if let Some(l) = g.label(v) {
        labels.insert(n, format!("{l}'"));
    }
    Graph::from_edges(n + 1, &edges)?.with_labels(labels)
}

/// Named members of every family with at most `max_n` vertices, smallest
/// parameters first. Families are cut off at their first oversized member.
pub fn standard_graphs(max_n: usize) -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    let mut keep = |name: String, g: Result<Graph, Error>| match g {
        Ok(g) if g.n() <= max_n => {
            out.push((name, g));
            true
        }
        _ => false,
    };
    for n in 2.. {
        if !keep(format!("path({n})"), path(n)) {
            break;
        }
    }
    for n in 3.. {
        if !keep(format!("cycle({n})"), cycle(n)) {
            break;
        }
    }
    for n in 2.. {
        if !keep(format!("complete({n})"), complete(n)) {
            break;
        }
    }
    for d in 2.. {
        if !keep(format!("hypercube({d})"), hypercube(d)) {
            break;
        }
    }
    for m in 2..=9 {
        if !keep(format!("bruhat({m})"), bruhat(m)) {
            break;
        }
    }
    for n in 3..=max_n / 2 {
        for k in 1..=(n - 1) / 2 {
            keep(format!("petersen({n},{k})"), petersen_generalized(n, k));
        }
    }
    keep("lemke".to_string(), Ok(lemke()));
    for p in 1..max_n {
        for q in p..max_n {
            keep(format!("familyF({p},{q})"), family_f(p, q));
            for r in q..max_n {
                keep(format!("familyG({p},{q},{r})"), family_g(p, q, r));
            }
        }
    }
    out
}
