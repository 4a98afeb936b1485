use std::collections::BTreeMap;

use super::PropertySpec;
use crate::error::{cap, Error, Result};
use crate::graph::{subsets_of_size, Graph, VertexSet};

/// Largest base graph for which a full truth table is built.
pub const TRUTH_TABLE_CAP: usize = 20;
pub const WITNESS_SIZE_CAP: usize = 8;

/// The function `S -> [G[S] satisfies P]`, tabulated over all `2^n` subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanFunction {
    n: usize,
    table: Vec<bool>,
    monotone_decreasing: bool,
}

impl BooleanFunction {
    /// Tabulates `p` on every induced subgraph of `g`. For hereditary `p` a set
    /// is failing as soon as one of its maximal proper subsets is.
    pub fn new(p: &PropertySpec, g: &Graph) -> Result<Self> {
        cap("vertex count for a truth table", g.n(), TRUTH_TABLE_CAP)?;
        let n = g.n();
        let hereditary = p.is_hereditary();
        let mut table = vec![false; 1 << n];
        for mask in 0..1u64 << n {
            let s = VertexSet::from_bits(mask);
            let inherited_failure = hereditary && s.iter().any(|v| !table[(mask & !(1 << v)) as usize]);
            table[mask as usize] = !inherited_failure && p.holds_within(g, s)?;
        }
        Ok(Self::from_table(n, table))
    }

    /// Wraps a raw truth table indexed by subset bitmask.
    pub fn from_table(n: usize, table: Vec<bool>) -> Self {
        assert_eq!(table.len(), 1 << n, "truth table length must be 2^n");
        let monotone_decreasing = (0..table.len()).all(|mask| {
            !table[mask] || (0..n).all(|v| mask >> v & 1 == 0 || table[mask & !(1 << v)])
        });
        BooleanFunction {
            n,
            table,
            monotone_decreasing,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eval(&self, s: VertexSet) -> bool {
        self.table[s.bits() as usize]
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    /// `f(T) implies f(S)` whenever `S` is a subset of `T`.
    pub fn is_monotone_decreasing(&self) -> bool {
        self.monotone_decreasing
    }

    pub fn is_constant(&self) -> bool {
        self.table.iter().all(|&b| b == self.table[0])
    }

    /// Vertices `v` for which some `S` has `f(S) != f(S - v)`.
    pub fn relevant_vertices(&self) -> VertexSet {
        let mut relevant = VertexSet::EMPTY;
        for mask in 0..self.table.len() {
            for v in VertexSet::from_bits(mask as u64).difference(relevant).iter() {
                if self.table[mask] != self.table[mask & !(1 << v)] {
                    relevant.insert(v);
                }
            }
        }
        relevant
    }

    /// Is every vertex relevant?
    pub fn is_graph_relevant(&self) -> bool {
        self.relevant_vertices() == VertexSet::full(self.n)
    }

    /// Vertices whose flip changes the value at `x`.
    pub fn sensitive_vertices(&self, x: VertexSet) -> VertexSet {
        let fx = self.eval(x);
        (0..self.n)
            .filter(|&v| self.eval(x.symmetric_difference(VertexSet::singleton(v))) != fx)
            .collect()
    }

    /// Is `S` failing with every proper subset satisfying?
    pub fn is_minimal_failing(&self, s: VertexSet) -> bool {
        if self.eval(s) {
            return false;
        }
        if self.monotone_decreasing {
            return s.iter().all(|v| self.eval(s.without(v)));
        }
        // without monotonicity every proper subset must be checked
        let bits = s.bits();
        let mut sub = bits.wrapping_sub(1) & bits;
        loop {
            if !self.eval(VertexSet::from_bits(sub)) {
                return false;
            }
            if sub == 0 {
                return true;
            }
            sub = sub.wrapping_sub(1) & bits;
        }
    }
}

pub fn boolean_function(p: &PropertySpec, g: &Graph) -> Result<BooleanFunction> {
    BooleanFunction::new(p, g)
}

/// Vertices that can flip the property; the graph is relevant when this is every vertex.
pub fn relevant_vertices(p: &PropertySpec, g: &Graph) -> Result<VertexSet> {
    Ok(BooleanFunction::new(p, g)?.relevant_vertices())
}

/// Minimal failing vertex sets of a graph, grouped by size.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WitnessFamilies {
    pub by_size: BTreeMap<usize, Vec<VertexSet>>,
}

impl WitnessFamilies {
    pub fn family(&self, size: usize) -> &[VertexSet] {
        self.by_size.get(&size).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn all(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.by_size.values().flatten().copied()
    }

    pub fn total(&self) -> usize {
        self.by_size.values().map(Vec::len).sum()
    }

    /// Size of the largest minimal witness, if any.
    pub fn largest_size(&self) -> Option<usize> {
        self.by_size.keys().next_back().copied()
    }

    pub fn smallest_size(&self) -> Option<usize> {
        self.by_size.keys().next().copied()
    }

    /// Collects witnesses of every size `1..=k_max` from an existing truth table.
    pub fn from_function(f: &BooleanFunction, k_max: usize) -> Self {
        let mut by_size = BTreeMap::new();
        for size in 1..=k_max.min(f.n()) {
            let family: Vec<VertexSet> = subsets_of_size(VertexSet::full(f.n()), size)
                .filter(|&s| f.is_minimal_failing(s))
                .collect();
            if !family.is_empty() {
                by_size.insert(size, family);
            }
        }
        WitnessFamilies { by_size }
    }
}

/// For each size `i <= k_max`, every `S` with `|S| = i`, `G[S]` failing `p`,
/// and every proper subset of `S` satisfying `p`.
pub fn witness_families(p: &PropertySpec, g: &Graph, k_max: usize) -> Result<WitnessFamilies> {
    if k_max > WITNESS_SIZE_CAP {
        return Err(Error::CapExceeded {
            what: "witness size",
            value: k_max,
            cap: WITNESS_SIZE_CAP,
        });
    }
    let f = BooleanFunction::new(p, g)?;
    Ok(WitnessFamilies::from_function(&f, k_max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::standard_graph;
    use crate::property::PropertySpec;

    fn named(name: &str, params: &[usize]) -> Graph {
        standard_graph(name, params).unwrap()
    }

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn emptiness_on_single_edge() {
        let f = boolean_function(&PropertySpec::emptiness(), &named("complete", &[2])).unwrap();
        assert!(f.eval(set(&[])));
        assert!(f.eval(set(&[0])));
        assert!(!f.eval(set(&[0, 1])));
        assert!(f.is_monotone_decreasing());
    }

    #[test]
    fn acyclic_on_c4_fails_only_on_everything() {
        let f = boolean_function(&PropertySpec::acyclic(), &named("cycle", &[4])).unwrap();
        let failing: Vec<u64> = (0..16).filter(|&m| !f.eval(VertexSet::from_bits(m))).collect();
        assert_eq!(failing, vec![0b1111]);
    }

    #[test]
    fn hereditary_monotonicity_witness() {
        let f = boolean_function(&PropertySpec::triangle_free(), &named("complete", &[4])).unwrap();
        assert!(!f.eval(set(&[0, 1, 2])));
        assert!(!f.eval(set(&[0, 1, 2, 3])));
    }

    #[test]
    fn connectivity_is_not_monotone() {
        let f = boolean_function(&PropertySpec::connected(), &named("path", &[3])).unwrap();
        assert!(!f.is_monotone_decreasing());
        assert!(!f.eval(set(&[0, 2])));
        assert!(f.eval(set(&[0, 1, 2])));
    }

    #[test]
    fn relevance_examples() {
        let e = PropertySpec::emptiness();
        let k2_plus = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(relevant_vertices(&e, &k2_plus).unwrap(), set(&[0, 1]));
        assert_eq!(relevant_vertices(&e, &named("cycle", &[4])).unwrap(), set(&[0, 1, 2, 3]));
        let k3_pendant = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        assert_eq!(
            relevant_vertices(&PropertySpec::triangle_free(), &k3_pendant).unwrap(),
            set(&[0, 1, 2])
        );
        assert!(relevant_vertices(&e, &named("path", &[21])).is_err());
    }

    #[test]
    fn witness_examples() {
        let w = witness_families(&PropertySpec::emptiness(), &named("cycle", &[4]), 4).unwrap();
        assert_eq!(w.family(2), &[set(&[0, 1]), set(&[0, 3]), set(&[1, 2]), set(&[2, 3])][..]);
        assert_eq!(w.total(), 4);
        for p in [PropertySpec::triangle_free(), PropertySpec::acyclic()] {
            let w = witness_families(&p, &named("complete", &[4]), 4).unwrap();
            assert_eq!(w.family(3).len(), 4);
            assert_eq!(w.total(), 4);
        }
        assert!(witness_families(&PropertySpec::emptiness(), &named("cycle", &[4]), 9).is_err());
    }

    #[test]
    fn witnesses_are_minimal_failing() {
        let g = named("wheel", &[5]);
        for p in [PropertySpec::acyclic(), PropertySpec::bipartite(), PropertySpec::path_free(4).unwrap()] {
            let w = witness_families(&p, &g, 6).unwrap();
            for s in w.all() {
                let h = g.induced_subgraph(s).unwrap();
                assert!(!crate::property::evaluate(&p, &h).unwrap());
                for v in s.iter() {
                    let h = g.induced_subgraph(s.without(v)).unwrap();
                    assert!(crate::property::evaluate(&p, &h).unwrap());
                }
            }
        }
    }

    #[test]
    fn non_monotone_minimality_checks_all_subsets() {
        // f true on {} and {0,1}, false elsewhere; {0,1,2} has a failing 1-element subset
        let mut table = vec![false; 8];
        table[0] = true;
        table[0b011] = true;
        let f = BooleanFunction::from_table(3, table);
        assert!(!f.is_minimal_failing(set(&[0, 1, 2])));
        assert!(f.is_minimal_failing(set(&[0])));
    }
}
