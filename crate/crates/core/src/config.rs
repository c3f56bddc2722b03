//! Pebble configurations and single pebbling moves.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Graph, Vertex};
use crate::Error;

/// Pebble counts on every vertex of a graph, with the total cached.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    counts: Vec<u32>,
    size: u64,
}

impl Configuration {
    pub fn new(counts: Vec<u32>) -> Self {
        let size = counts.iter().map(|&c| u64::from(c)).sum();
        Configuration { counts, size }
    }

    pub fn zeros(n: usize) -> Self {
        Configuration { counts: vec![0; n], size: 0 }
    }

    /// `1` on every vertex.
    pub fn ones(n: usize) -> Self {
        Self::new(vec![1; n])
    }

    /// Checks the configuration covers exactly the vertices of `g`.
    pub fn check_for(&self, g: &Graph) -> Result<(), Error> {
        if self.counts.len() == g.n() {
            Ok(())
        } else {
            Err(Error::ConfigurationLength { expected: g.n(), got: self.counts.len() })
        }
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn into_counts(self) -> Vec<u32> {
        self.counts
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn get(&self, v: Vertex) -> u32 {
        self.counts[v]
    }

    pub fn set(&mut self, v: Vertex, value: u32) {
        self.size = self.size - u64::from(self.counts[v]) + u64::from(value);
        self.counts[v] = value;
    }

    /// Componentwise `self <= other`.
    pub fn is_dominated_by(&self, other: &Configuration) -> bool {
        self.counts.len() == other.counts.len() && self.counts.iter().zip(&other.counts).all(|(a, b)| a <= b)
    }

    /// Vertices holding at least one pebble.
    pub fn support_size(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PebblingMove {
    pub from: Vertex,
    pub to: Vertex,
}

impl PebblingMove {
    pub fn new(from: Vertex, to: Vertex) -> Self {
        PebblingMove { from, to }
    }
}

/// Removes two pebbles from `m.from` and adds one to `m.to`.
pub fn apply_move(g: &Graph, p: &Configuration, m: PebblingMove) -> Result<Configuration, Error> {
    p.check_for(g)?;
    let illegal = |reason| Error::IllegalMove { from: m.from, to: m.to, reason };
    if m.from >= g.n() || m.to >= g.n() {
        return Err(illegal("vertex out of range"));
    }
    if !g.has_edge(m.from, m.to) {
        return Err(illegal("not an edge"));
    }
    if p.counts[m.from] < 2 {
        return Err(illegal("fewer than two pebbles on source"));
    }
    let mut q = p.clone();
    q.counts[m.from] -= 2;
    q.counts[m.to] += 1;
    q.size -= 1;
    Ok(q)
}

/// Replays `moves` from `p`, returning the final configuration.
pub fn replay(g: &Graph, p: &Configuration, moves: &[PebblingMove]) -> Result<Configuration, Error> {
    let mut q = p.clone();
    for &m in moves {
        q = apply_move(g, &q, m)?;
    }
    Ok(q)
}
