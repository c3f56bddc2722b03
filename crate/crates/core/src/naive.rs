//! Reference implementations by plain exhaustive search, for cross-checking
//! the optimised solver. Exponential; meant for graphs of a handful of
//! vertices.

use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::graph::{Graph, Vertex};

/// Memoised move-by-move search for one root.
pub struct NaiveSolver<'g> {
    g: &'g Graph,
    root: Vertex,
    memo: HashMap<Vec<u32>, bool>,
}

impl<'g> NaiveSolver<'g> {
    pub fn new(g: &'g Graph, root: Vertex) -> Self {
        NaiveSolver { g, root, memo: HashMap::new() }
    }

    /// Tries every legal move from every configuration reached.
    pub fn is_solvable(&mut self, counts: &[u32]) -> bool {
        if counts[self.root] > 0 {
            return true;
        }
        if let Some(&known) = self.memo.get(counts) {
            return known;
        }
        let mut next = counts.to_vec();
        let mut found = false;
        'outer: for u in 0..counts.len() {
            if counts[u] < 2 {
                continue;
            }
            for &v in self.g.neighbors(u) {
                next[u] -= 2;
                next[v] += 1;
                let ok = self.is_solvable(&next);
                next[u] += 2;
                next[v] -= 1;
                if ok {
                    found = true;
                    break 'outer;
                }
            }
        }
        self.memo.insert(counts.to_vec(), found);
        found
    }

    /// Smallest `k` such that every configuration of size `k` is solvable.
    pub fn pebbling_number(&mut self) -> u64 {
        let n = self.g.n();
        let mut k = 1u32;
        loop {
            let mut all = true;
            for_each_composition(k, n, &mut |c| {
                if all && c[self.root] == 0 && !self.is_solvable(c) {
                    all = false;
                }
            });
            if all {
                return u64::from(k);
            }
            k += 1;
        }
    }
}

/// Calls `f` on every vector of `parts` nonnegative integers summing to
/// `total`.
pub fn for_each_composition(total: u32, parts: usize, f: &mut impl FnMut(&[u32])) {
    fn go(rest: u32, i: usize, cur: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
        if i + 1 == cur.len() {
            cur[i] = rest;
            f(cur);
            return;
        }
        for x in 0..=rest {
            cur[i] = x;
            go(rest - x, i + 1, cur, f);
        }
    }
    if parts == 0 {
        return;
    }
    let mut cur = alloc::vec![0; parts];
    go(total, 0, &mut cur, f);
}

pub fn naive_pebbling_number_rooted(g: &Graph, root: Vertex) -> u64 {
    NaiveSolver::new(g, root).pebbling_number()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;

    #[test]
    fn small_values() {
        assert_eq!(naive_pebbling_number_rooted(&path(4).unwrap(), 0), 8);
        assert_eq!(naive_pebbling_number_rooted(&cycle(5).unwrap(), 0), 5);
        assert_eq!(naive_pebbling_number_rooted(&complete(4).unwrap(), 2), 4);
    }

    #[test]
    fn compositions_count() {
        let mut count = 0;
        for_each_composition(3, 3, &mut |_| count += 1);
        assert_eq!(count, 10);
    }
}
