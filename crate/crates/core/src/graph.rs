//! Connected simple graphs with dense vertex ids `0..n`.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::Error;

pub type Vertex = usize;

/// A finite, simple, undirected, connected graph.
///
/// Adjacency lists are kept sorted, so every traversal is deterministic.
/// Labels are metadata and never influence an algorithm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    edge_count: usize,
    labels: BTreeMap<Vertex, String>,
}

impl Graph {
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut adj = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::UnknownVertex { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(Error::DuplicateEdge(key.0, key.1));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let g = Graph { adj, edge_count: seen.len(), labels: BTreeMap::new() };
        if !g.is_connected_without(None) {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    pub fn with_labels(mut self, labels: BTreeMap<Vertex, String>) -> Result<Self, Error> {
        if let Some(&v) = labels.keys().find(|&&v| v >= self.n()) {
            return Err(Error::UnknownVertex { vertex: v, n: self.n() });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn labels(&self) -> &BTreeMap<Vertex, String> {
        &self.labels
    }

    pub fn label(&self, v: Vertex) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    /// First vertex carrying `label`, if any.
    pub fn vertex_labelled(&self, label: &str) -> Option<Vertex> {
        self.labels.iter().find(|(_, l)| l.as_str() == label).map(|(&v, _)| v)
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<(), Error> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::UnknownVertex { vertex: v, n: self.n() })
        }
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.edge_count == n * (n - 1) / 2
    }

    /// Breadth-first distances from `v`.
    pub fn distances(&self, v: Vertex) -> Result<Vec<usize>, Error> {
        self.check_vertex(v)?;
        Ok(self.bfs(v))
    }

    pub(crate) fn bfs(&self, v: Vertex) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        dist[v] = 0;
        let mut queue = VecDeque::from([v]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn distance_matrix(&self) -> Vec<Vec<usize>> {
        (0..self.n()).map(|v| self.bfs(v)).collect()
    }

    pub fn eccentricity(&self, v: Vertex) -> Result<usize, Error> {
        Ok(self.distances(v)?.into_iter().max().unwrap_or(0))
    }

    pub fn diameter(&self) -> usize {
        (0..self.n()).map(|v| self.bfs(v).into_iter().max().unwrap_or(0)).max().unwrap_or(0)
    }

    /// Articulation points, sorted ascending.
    pub fn cut_vertices(&self) -> Vec<Vertex> {
        let n = self.n();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut cut = vec![false; n];
        let mut timer = 0;
        // Iterative Tarjan: (vertex, parent, next neighbour index).
        let mut stack: Vec<(Vertex, Option<Vertex>, usize)> = vec![(0, None, 0)];
        disc[0] = 0;
        low[0] = 0;
        timer += 1;
        let mut root_children = 0;
        while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
            if *idx < self.adj[v].len() {
                let w = self.adj[v][*idx];
                *idx += 1;
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    if v == 0 {
                        root_children += 1;
                    }
                    stack.push((w, Some(v), 0));
                } else if Some(w) != parent {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(p) = parent {
                    low[p] = low[p].min(low[v]);
                    if p != 0 && low[v] >= disc[p] {
                        cut[p] = true;
                    }
                }
            }
        }
        if root_children > 1 {
            cut[0] = true;
        }
        (0..n).filter(|&v| cut[v]).collect()
    }

    /// Connectivity of the graph with `removed` deleted.
    pub(crate) fn is_connected_without(&self, removed: Option<Vertex>) -> bool {
        let n = self.n();
        let Some(start) = (0..n).find(|&v| Some(v) != removed) else {
            return true;
        };
        let mut seen = vec![false; n];
        seen[start] = true;
        let mut count = 1;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &y in &self.adj[x] {
                if Some(y) != removed && !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == n - usize::from(removed.is_some())
    }

    /// Component ids of the graph with `removed` deleted (`usize::MAX` for
    /// the removed vertex).
    pub(crate) fn components_without(&self, removed: Vertex) -> Vec<usize> {
        let n = self.n();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        for s in 0..n {
            if s == removed || comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &y in &self.adj[x] {
                    if y != removed && comp[y] == usize::MAX {
                        comp[y] = next;
                        stack.push(y);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    /// Sorted degree sequence (descending).
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }
}

/// A graph together with a designated root vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedGraph {
    pub graph: Graph,
    pub root: Vertex,
}

impl RootedGraph {
    pub fn new(graph: Graph, root: Vertex) -> Result<Self, Error> {
        graph.check_vertex(root)?;
        Ok(RootedGraph { graph, root })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    #[test]
    fn rejects_bad_input() {
        assert_eq!(Graph::from_edges(0, &[]), Err(Error::EmptyGraph));
        assert_eq!(Graph::from_edges(2, &[(0, 0)]), Err(Error::SelfLoop(0)));
        assert_eq!(Graph::from_edges(2, &[(0, 1), (1, 0)]), Err(Error::DuplicateEdge(0, 1)));
        assert_eq!(Graph::from_edges(3, &[(0, 1)]), Err(Error::Disconnected));
        assert!(matches!(Graph::from_edges(2, &[(0, 2)]), Err(Error::UnknownVertex { vertex: 2, .. })));
    }

    #[test]
    fn path_distances() {
        let g = path(4).unwrap();
        assert_eq!(g.distances(0).unwrap(), [0, 1, 2, 3]);
        assert!(g.distances(4).is_err());
    }

    #[test]
    fn odd_cycle_eccentricity() {
        let g = cycle(5).unwrap();
        for v in 0..5 {
            assert_eq!(g.eccentricity(v).unwrap(), 2);
        }
    }

    #[test]
    fn diameters() {
        assert_eq!(complete(4).unwrap().diameter(), 1);
        assert_eq!(path(1).unwrap().diameter(), 0);
        assert_eq!(bruhat(4).unwrap().diameter(), 6);
    }

    #[test]
    fn cut_vertex_cases() {
        assert_eq!(path(3).unwrap().cut_vertices(), [1]);
        assert!(cycle(5).unwrap().cut_vertices().is_empty());
        assert_eq!(path(5).unwrap().cut_vertices(), [1, 2, 3]);
        // Two triangles sharing vertex 0.
        let bowtie = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(bowtie.cut_vertices(), [0]);
    }

    #[test]
    fn cut_vertices_match_removal_test() {
        let graphs = [family_f(2, 2).unwrap(), lemke(), path(6).unwrap(), clone_vertex(&path(4).unwrap(), 1).unwrap()];
        for g in &graphs {
            let by_removal: Vec<Vertex> = (0..g.n()).filter(|&v| !g.is_connected_without(Some(v))).collect();
            assert_eq!(g.cut_vertices(), by_removal);
        }
        assert!(family_f(2, 2).unwrap().cut_vertices().is_empty());
    }
}
