//! Planarity by exhaustive search for a Kuratowski subdivision (K5 or K3,3).
//!
//! Vertices of degree at most one are deleted and degree-two vertices are
//! suppressed first. Both steps preserve planarity, and they shrink the set of
//! candidate branch vertices considerably.

use super::algorithms::components_within;
use super::{subsets_of_size, Graph, VertexSet};
use crate::error::{cap, Result};

pub const PLANARITY_CAP: usize = 12;

/// Local adjacency over at most 64 vertices.
#[derive(Clone)]
struct Work {
    adj: Vec<u64>,
    alive: u64,
}

impl Work {
    fn degree(&self, v: usize) -> usize {
        (self.adj[v] & self.alive).count_ones() as usize
    }

    fn remove(&mut self, v: usize) {
        self.alive &= !(1 << v);
        for u in VertexSet::from_bits(self.adj[v]).iter() {
            self.adj[u] &= !(1 << v);
        }
        self.adj[v] = 0;
    }

    fn edge_count(&self) -> usize {
        VertexSet::from_bits(self.alive)
            .iter()
            .map(|v| (self.adj[v] & self.alive).count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    fn reduce(&mut self) {
        loop {
            let alive = VertexSet::from_bits(self.alive);
            let Some(v) = alive.iter().find(|&v| self.degree(v) <= 2) else {
                return;
            };
            if self.degree(v) == 2 {
                let mut nb = VertexSet::from_bits(self.adj[v] & self.alive).iter();
                let (a, b) = (nb.next().unwrap(), nb.next().unwrap());
                self.remove(v);
                self.adj[a] |= 1 << b;
                self.adj[b] |= 1 << a;
            } else {
                self.remove(v);
            }
        }
    }
}

struct Router<'a> {
    work: &'a Work,
    pairs: Vec<(usize, usize)>,
}

impl Router<'_> {
    /// Routes `pairs[idx..]` as internally disjoint paths through `free`.
    fn route(&self, idx: usize, free: u64) -> bool {
        let Some(&(a, b)) = self.pairs.get(idx) else {
            return true;
        };
        if self.work.adj[a] >> b & 1 == 1 && self.route(idx + 1, free) {
            return true;
        }
        self.extend(idx, a, b, free)
    }

    /// Extends a partial path ending at `at` toward `target` using vertices in `avail`.
    fn extend(&self, idx: usize, at: usize, target: usize, avail: u64) -> bool {
        let mut step = self.work.adj[at] & avail;
        while step != 0 {
            let w = step.trailing_zeros() as usize;
            step &= step - 1;
            let avail = avail & !(1 << w);
            if self.work.adj[w] >> target & 1 == 1 && self.route(idx + 1, avail) {
                return true;
            }
            if self.extend(idx, w, target, avail) {
                return true;
            }
        }
        false
    }
}

fn has_k5_subdivision(work: &Work) -> bool {
    let alive = VertexSet::from_bits(work.alive);
    let candidates: VertexSet = alive.iter().filter(|&v| work.degree(v) >= 4).collect();
    subsets_of_size(candidates, 5).any(|branch| {
        let b = branch.to_vec();
        let mut pairs = Vec::with_capacity(10);
        for i in 0..5 {
            for j in i + 1..5 {
                pairs.push((b[i], b[j]));
            }
        }
        let router = Router { work, pairs };
        router.route(0, work.alive & !branch.bits())
    })
}

fn has_k33_subdivision(work: &Work) -> bool {
    let alive = VertexSet::from_bits(work.alive);
    let candidates: VertexSet = alive.iter().filter(|&v| work.degree(v) >= 3).collect();
    subsets_of_size(candidates, 6).any(|branch| {
        let b = branch.to_vec();
        // side A always holds b[0]
        subsets_of_size(VertexSet::from_bits(0b111110), 2).any(|rest| {
            let side_a: Vec<usize> = std::iter::once(b[0]).chain(rest.iter().map(|i| b[i])).collect();
            let side_b: Vec<usize> = (1..6)
                .filter(|&i| !rest.contains(i))
                .map(|i| b[i])
                .collect();
            let mut pairs = Vec::with_capacity(9);
            for &x in &side_a {
                for &y in &side_b {
                    pairs.push((x, y));
                }
            }
            let router = Router { work, pairs };
            router.route(0, work.alive & !branch.bits())
        })
    })
}

fn component_is_planar(g: &Graph, comp: VertexSet) -> bool {
    let mut work = Work {
        adj: (0..g.n()).map(|v| g.adjacency_bits(v) & comp.bits()).collect(),
        alive: comp.bits(),
    };
    work.reduce();
    let n = work.alive.count_ones() as usize;
    let m = work.edge_count();
    if n < 5 || m < 9 {
        return true;
    }
    if m > 3 * n - 6 {
        return false;
    }
    !(has_k5_subdivision(&work) || has_k33_subdivision(&work))
}

pub(crate) fn is_planar_within(g: &Graph, within: VertexSet) -> bool {
    let n = within.len();
    let m = g.edges_within(within);
    if n < 5 || m < 9 {
        return true;
    }
    if m > 3 * n - 6 {
        return false;
    }
    components_within(g, within)
        .into_iter()
        .all(|comp| component_is_planar(g, comp))
}

pub fn is_planar(g: &Graph) -> Result<bool> {
    cap("vertex count for planarity", g.n(), PLANARITY_CAP)?;
    Ok(is_planar_within(g, g.vertices()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{all_graphs, standard_graph};

    fn named(name: &str, params: &[usize]) -> Graph {
        standard_graph(name, params).unwrap()
    }

    #[test]
    fn kuratowski_graphs() {
        assert!(!is_planar(&named("complete", &[5])).unwrap());
        assert!(!is_planar(&named("bipartite", &[3, 3])).unwrap());
        assert!(is_planar(&named("complete", &[4])).unwrap());
        assert!(!is_planar(&named("petersen", &[])).unwrap());
        assert!(is_planar(&named("wheel", &[8])).unwrap());
    }

    #[test]
    fn subdivided_k33_is_nonplanar() {
        // K3,3 on {0,1,2} x {3,4,5} with edge 0-3 subdivided by vertex 6
        let mut g = named("bipartite", &[3, 3]);
        let mut h = Graph::empty(7).unwrap();
        g.remove_edge(0, 3).unwrap();
        for (u, v) in g.edges() {
            h.add_edge(u, v).unwrap();
        }
        h.add_edge(0, 6).unwrap();
        h.add_edge(6, 3).unwrap();
        assert!(!is_planar(&h).unwrap());
    }

    #[test]
    fn planar_counts_match_known_sequence() {
        // unlabeled planar graphs: 33 of 34 on five vertices, 142 of 156 on six
        let planar = |n| {
            all_graphs(n)
                .unwrap()
                .iter()
                .filter(|g| is_planar(g).unwrap())
                .count()
        };
        assert_eq!(planar(5), 33);
        assert_eq!(planar(6), 142);
    }

    #[test]
    fn cap_enforced() {
        assert!(is_planar(&named("cycle", &[13])).is_err());
    }
}
