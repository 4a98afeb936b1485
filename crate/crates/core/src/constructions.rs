//! Explicit low-cost graphs for hereditary properties and the query
//! algorithm that achieves their cost.

use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{cap, Error, Result};
use crate::graph::{standard_graph, subsets_of_size, write_graph6, parse_graph6, Graph, VertexSet};
use crate::property::{compute_cp, compute_dp, BooleanFunction, PropertyFile, PropertySpec, TRUTH_TABLE_CAP};
use crate::solver::{function_cost, EXACT_COST_CAP};

pub const MANIFEST_SCHEMA_VERSION: u32 = 1;

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Petals attached to one `d_P`-subset of the clique.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PetalGroup {
    /// Indices into `clique_vertices`.
    pub clique: Vec<usize>,
    /// Petal vertices; position is the copy index.
    pub vertices: Vec<usize>,
}

/// A clique on `k` vertices plus, for every `d_P`-subset `S` of it, a group of
/// petal vertices adjacent exactly to `S`.
#[derive(Clone, Debug, PartialEq)]
pub struct UpperBoundInstance {
    pub graph: Graph,
    pub k: usize,
    pub clique_vertices: Vec<usize>,
    pub petal_groups: Vec<PetalGroup>,
    pub property: PropertySpec,
    pub d_p: usize,
    pub c_p: usize,
}

impl UpperBoundInstance {
    /// Petal vertex for clique subset `s` (clique indices) and copy `copy`.
    pub fn petal(&self, s: &[usize], copy: usize) -> Option<usize> {
        self.petal_groups
            .iter()
            .find(|g| g.clique == s)
            .and_then(|g| g.vertices.get(copy).copied())
    }

    /// `k (1 + C(c_P - 1, d_P))`.
    pub fn budget(&self) -> usize {
        self.k * (1 + binomial(self.c_p.saturating_sub(1), self.d_p))
    }

    /// Worst-case query count of [`run_algorithm1`]; equals [`Self::budget`]
    /// unless padding enlarged the first group.
    pub fn query_bound(&self) -> usize {
        let largest = self.petal_groups.iter().map(|g| g.vertices.len()).max().unwrap_or(0);
        self.k + binomial(self.c_p.saturating_sub(1), self.d_p) * largest
    }

    fn clique_set(&self, indices: &[usize]) -> VertexSet {
        indices.iter().map(|&i| self.clique_vertices[i]).collect()
    }

    pub fn manifest(&self) -> Manifest {
        Manifest {
            schema_version: MANIFEST_SCHEMA_VERSION,
            graph6: write_graph6(&self.graph),
            property: self.property.name.clone(),
            property_file: PropertyFile::from_spec(&self.property).ok(),
            k: self.k,
            d_p: self.d_p,
            c_p: self.c_p,
            budget: self.budget(),
            clique_vertices: self.clique_vertices.clone(),
            petal_groups: self.petal_groups.clone(),
        }
    }

    /// Writes `<stem>.g6` and the `<stem>.json` manifest.
    pub fn save(&self, stem: impl AsRef<Path>) -> Result<()> {
        let stem = stem.as_ref();
        std::fs::write(stem.with_extension("g6"), format!("{}\n", write_graph6(&self.graph)))?;
        let json = serde_json::to_string_pretty(&self.manifest())?;
        std::fs::write(stem.with_extension("json"), json + "\n")?;
        Ok(())
    }
}

/// Sidecar description of an [`UpperBoundInstance`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub schema_version: u32,
    pub graph6: String,
    pub property: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub property_file: Option<PropertyFile>,
    pub k: usize,
    pub d_p: usize,
    pub c_p: usize,
    pub budget: usize,
    pub clique_vertices: Vec<usize>,
    pub petal_groups: Vec<PetalGroup>,
}

impl Manifest {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }

    pub fn into_instance(self) -> Result<UpperBoundInstance> {
        if self.schema_version != MANIFEST_SCHEMA_VERSION {
            return Err(Error::Precondition(format!(
                "unsupported manifest schema version {}",
                self.schema_version
            )));
        }
        let property = match self.property_file {
            Some(file) => file.into_spec()?,
            None => PropertySpec::from_name(&self.property)?,
        };
        let graph = parse_graph6(self.graph6.as_bytes())?;
        let n = graph.n();
        let out_of_range = self
            .clique_vertices
            .iter()
            .chain(self.petal_groups.iter().flat_map(|g| &g.vertices))
            .find(|&&v| v >= n);
        if let Some(&vertex) = out_of_range {
            return Err(Error::VertexOutOfRange { vertex, n });
        }
        if self.clique_vertices.len() != self.k
            || self.petal_groups.iter().flat_map(|g| &g.clique).any(|&i| i >= self.k)
        {
            return Err(Error::Precondition("manifest clique indices are inconsistent".into()));
        }
        Ok(UpperBoundInstance {
            graph,
            k: self.k,
            clique_vertices: self.clique_vertices,
            petal_groups: self.petal_groups,
            property,
            d_p: self.d_p,
            c_p: self.c_p,
        })
    }
}

/// Builds the clique-and-petals instance on exactly `n` vertices.
///
/// `k` is the largest value with `k + k C(k, d_P) <= n`; leftover vertices
/// become extra petals on the first `d_P` clique vertices.
pub fn build_upper_bound_graph(p: &PropertySpec, n: usize) -> Result<UpperBoundInstance> {
    if !p.is_hereditary() {
        return Err(Error::Property {
            name: p.name.clone(),
            reason: "the construction needs a hereditary property".into(),
        });
    }
    cap("construction size", n, Graph::MAX_VERTICES)?;
    let d_p = compute_dp(p)?;
    let c_p = compute_cp(p)?;
    if d_p == 0 {
        return Err(Error::Property {
            name: p.name.clone(),
            reason: "d_P = 0 leaves petals isolated".into(),
        });
    }
    let size = |k: usize| k + k * binomial(k, d_p);
    let smallest = d_p.max(2);
    if size(smallest) > n {
        return Err(Error::Precondition(format!(
            "n = {n} is below the smallest instance ({} vertices) for `{}`",
            size(smallest),
            p.name
        )));
    }
    let mut k = smallest;
    while size(k + 1) <= n {
        k += 1;
    }

    let mut graph = standard_graph("complete", &[k])?.disjoint_union(&Graph::empty(n - k)?)?;
    let clique_vertices: Vec<usize> = (0..k).collect();
    let mut next = k;
    let mut petal_groups: Vec<PetalGroup> = subsets_of_size(VertexSet::full(k), d_p)
        .map(|s| PetalGroup {
            clique: s.to_vec(),
            vertices: Vec::new(),
        })
        .collect();
    petal_groups.sort_by(|a, b| a.clique.cmp(&b.clique));
    let padding = n - size(k);
    for (gi, group) in petal_groups.iter_mut().enumerate() {
        let copies = if gi == 0 { k + padding } else { k };
        for _ in 0..copies {
            for &i in &group.clique {
                graph.add_edge(next, clique_vertices[i])?;
            }
            group.vertices.push(next);
            next += 1;
        }
    }
    debug_assert_eq!(next, n);
    Ok(UpperBoundInstance {
        graph,
        k,
        clique_vertices,
        petal_groups,
        property: p.clone(),
        d_p,
        c_p,
    })
}

/// One execution of the query algorithm.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Algorithm1Run {
    pub output: bool,
    pub queries: usize,
    /// Every vertex queried, in any order.
    pub queried: VertexSet,
}

/// Queries the clique, rejects on `c_P` present clique vertices, then queries
/// the petal groups whose clique subset is entirely present.
pub fn run_algorithm1(inst: &UpperBoundInstance, truth: VertexSet) -> Result<Algorithm1Run> {
    let mut queried = VertexSet::EMPTY;
    let mut present_clique = Vec::new();
    for (i, &v) in inst.clique_vertices.iter().enumerate() {
        queried.insert(v);
        if truth.contains(v) {
            present_clique.push(i);
        }
    }
    if present_clique.len() >= inst.c_p {
        return Ok(Algorithm1Run {
            output: false,
            queries: queried.len(),
            queried,
        });
    }
    let present_set: VertexSet = present_clique.iter().copied().collect();
    for group in &inst.petal_groups {
        let s: VertexSet = group.clique.iter().copied().collect();
        if s.is_subset(present_set) {
            for &u in &group.vertices {
                queried.insert(u);
            }
        }
    }
    let known_present = truth.intersection(queried);
    Ok(Algorithm1Run {
        output: inst.property.holds_within(&inst.graph, known_present)?,
        queries: queried.len(),
        queried,
    })
}

/// One failed check, with the truth that exhibits it when there is one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationFailure {
    pub check: &'static str,
    pub truth: Option<VertexSet>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub n: usize,
    pub k: usize,
    pub budget: usize,
    pub query_bound: usize,
    pub max_queries: usize,
    pub truths_checked: usize,
    /// `None` when the graph is above the solver cap.
    pub exact_cost: Option<usize>,
    pub failures: Vec<ValidationFailure>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn into_result(self) -> Result<Self> {
        match self.failures.first() {
            None => Ok(self),
            Some(f) => Err(Error::Validation(match f.truth {
                Some(t) => format!("{}: {} (truth {t:?})", f.check, f.detail),
                None => format!("{}: {}", f.check, f.detail),
            })),
        }
    }
}

/// Checks structure, relevance, Algorithm 1 on every truth, the petal
/// invariant along every trace, and the exact cost against the budget.
pub fn validate_construction(inst: &UpperBoundInstance) -> Result<ValidationReport> {
    let g = &inst.graph;
    let n = g.n();
    cap("construction validation size", n, TRUTH_TABLE_CAP)?;
    let mut failures = structural_failures(inst);

    let f = BooleanFunction::new(&inst.property, g)?;
    let irrelevant = g.vertices().difference(f.relevant_vertices());
    if !irrelevant.is_empty() {
        failures.push(ValidationFailure {
            check: "relevance",
            truth: None,
            detail: format!("irrelevant vertices {irrelevant:?}"),
        });
    }

    let bound = inst.query_bound();
    let outcomes: Vec<(usize, Option<ValidationFailure>)> = (0..1u64 << n)
        .into_par_iter()
        .map(|bits| {
            let truth = VertexSet::from_bits(bits);
            let run = match run_algorithm1(inst, truth) {
                Ok(run) => run,
                Err(e) => {
                    return (0, Some(failure("algorithm", truth, e.to_string())));
                }
            };
            let expected = f.eval(truth);
            if run.output != expected {
                let detail = format!("output {} but the property is {}", run.output, expected);
                return (run.queries, Some(failure("algorithm", truth, detail)));
            }
            if run.queries > bound {
                let detail = format!("{} queries exceed the bound {bound}", run.queries);
                return (run.queries, Some(failure("query-bound", truth, detail)));
            }
            (run.queries, trace_failure(inst, truth, &run))
        })
        .collect();
    let max_queries = outcomes.iter().map(|(q, _)| *q).max().unwrap_or(0);
    // first failing truth per check, in numeric order
    for fail in outcomes.into_iter().filter_map(|(_, f)| f) {
        if failures.iter().all(|seen| seen.check != fail.check) {
            failures.push(fail);
        }
    }

    let exact = if n <= EXACT_COST_CAP {
        let cost = function_cost(&f)?;
        if cost > inst.budget().max(bound) {
            failures.push(ValidationFailure {
                check: "exact-cost",
                truth: None,
                detail: format!("exact cost {cost} exceeds the budget {}", inst.budget().max(bound)),
            });
        }
        Some(cost)
    } else {
        None
    };

    Ok(ValidationReport {
        n,
        k: inst.k,
        budget: inst.budget(),
        query_bound: bound,
        max_queries,
        truths_checked: 1usize << n,
        exact_cost: exact,
        failures,
    })
}

fn failure(check: &'static str, truth: VertexSet, detail: String) -> ValidationFailure {
    ValidationFailure {
        check,
        truth: Some(truth),
        detail,
    }
}

/// Unqueried petals have fewer than `d_P` present neighbors, and a petal is
/// only queried once its whole clique subset is present.
fn trace_failure(inst: &UpperBoundInstance, truth: VertexSet, run: &Algorithm1Run) -> Option<ValidationFailure> {
    let clique_present = inst.clique_set(&(0..inst.k).collect::<Vec<_>>()).intersection(truth);
    for group in &inst.petal_groups {
        let s = inst.clique_set(&group.clique);
        for &u in &group.vertices {
            if run.queried.contains(u) {
                if !s.is_subset(clique_present) {
                    return Some(failure("trace", truth, format!("petal {u} queried with its clique subset incomplete")));
                }
            } else if clique_present.len() < inst.c_p && inst.graph.degree_within(u, truth) >= inst.d_p {
                return Some(failure(
                    "trace",
                    truth,
                    format!("unqueried petal {u} has {} present neighbors", inst.graph.degree_within(u, truth)),
                ));
            }
        }
    }
    None
}

fn structural_failures(inst: &UpperBoundInstance) -> Vec<ValidationFailure> {
    let g = &inst.graph;
    let mut out = Vec::new();
    let clique = inst.clique_set(&(0..inst.k).collect::<Vec<_>>());
    if clique.len() != inst.k || g.edges_within(clique) != binomial(inst.k, 2) {
        out.push(ValidationFailure {
            check: "structure",
            truth: None,
            detail: "clique vertices do not induce K_k".into(),
        });
    }
    let mut covered = clique;
    for group in &inst.petal_groups {
        let s = inst.clique_set(&group.clique);
        for &u in &group.vertices {
            covered.insert(u);
            if g.neighbors(u) != s || s.len() != inst.d_p {
                out.push(ValidationFailure {
                    check: "structure",
                    truth: None,
                    detail: format!("petal {u} has neighbors {:?}, expected {s:?}", g.neighbors(u)),
                });
            }
        }
    }
    if covered != g.vertices() {
        out.push(ValidationFailure {
            check: "structure",
            truth: None,
            detail: format!("vertices {:?} are neither clique nor petal", g.vertices().difference(covered)),
        });
    }
    out
}

/// The star `K_{1,n-1}` (center 0) with two designated leaves.
#[derive(Clone, Debug, PartialEq)]
pub struct StarInstance {
    pub graph: Graph,
    pub s: usize,
    pub t: usize,
    pub property: PropertySpec,
}

pub fn build_star_local_con(n: usize, s: usize, t: usize) -> Result<StarInstance> {
    if n < 3 {
        return Err(Error::Precondition(format!("a star with two leaves needs n >= 3, got {n}")));
    }
    if s == t || s == 0 || t == 0 || s >= n || t >= n {
        return Err(Error::Precondition(format!(
            "s = {s} and t = {t} must be distinct leaves of K_1,{}",
            n - 1
        )));
    }
    Ok(StarInstance {
        graph: standard_graph("star", &[n - 1])?,
        s,
        t,
        property: PropertySpec::st_connected(s, t),
    })
}
